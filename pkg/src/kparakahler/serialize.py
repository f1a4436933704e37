"""JSON encodings. Indices are 1-based and scalars are "p/q" strings."""

from __future__ import annotations

import json
from fractions import Fraction

from . import linalg as la
from .double import RMatrixFamily
from .errors import FormatError
from .ksymplectic import KSymplecticData
from .lowdim import LowDimSpec
from .lsa import KLSA, CommAssocAlgebra, KxKLSA
from .multilinear import BilinearProduct, TwoForm


def q_to_json(x: Fraction) -> str:
    return la.fmt_q(x)


def q_from_json(x) -> Fraction:
    if isinstance(x, bool) or not isinstance(x, (str, int)):
        raise FormatError(f"expected a rational as string or integer, got {x!r}")
    try:
        return la.to_q(x)
    except (ValueError, ZeroDivisionError) as exc:
        raise FormatError(f"bad rational {x!r}") from exc


def _get(obj: dict, key: str, where: str):
    if not isinstance(obj, dict):
        raise FormatError(f"{where}: expected an object")
    if key not in obj:
        raise FormatError(f"{where}: missing key {key!r}")
    return obj[key]


def _int(x, where: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int) or x < 0:
        raise FormatError(f"{where}: expected a non-negative integer, got {x!r}")
    return x


def _list(x, where: str) -> list:
    if not isinstance(x, list):
        raise FormatError(f"{where}: expected a list")
    return x


# -- vectors and matrices ---------------------------------------------------


def vec_to_json(v) -> list:
    return [q_to_json(x) for x in v]


def vec_from_json(x, where: str = "vector") -> tuple:
    return tuple(q_from_json(t) for t in _list(x, where))


def mat_to_json(m) -> list:
    return [vec_to_json(row) for row in m]


def mat_from_json(x, rows: int = None, cols: int = None, where: str = "matrix") -> tuple:
    m = tuple(vec_from_json(r, where) for r in _list(x, where))
    if rows is not None and len(m) != rows:
        raise FormatError(f"{where}: expected {rows} rows")
    if m and len({len(r) for r in m}) != 1:
        raise FormatError(f"{where}: ragged rows")
    if cols is not None and any(len(r) != cols for r in m):
        raise FormatError(f"{where}: expected {cols} columns")
    return m


# -- products and forms -----------------------------------------------------


def product_to_json(p: BilinearProduct) -> dict:
    return {"dim": p.dim, "terms": [[i + 1, j + 1, l + 1, q_to_json(x)] for i, j, l, x in p.terms()]}


def product_from_json(x, where: str = "product") -> BilinearProduct:
    n = _int(_get(x, "dim", where), where + ".dim")
    terms = []
    for t in _list(_get(x, "terms", where), where + ".terms"):
        if not isinstance(t, list) or len(t) != 4:
            raise FormatError(f"{where}: each term is [i, j, l, coeff]")
        i, j, l = (_int(v, where) for v in t[:3])
        if not all(1 <= v <= n for v in (i, j, l)):
            raise FormatError(f"{where}: index out of range 1..{n} in {t}")
        terms.append((i - 1, j - 1, l - 1, q_from_json(t[3])))
    return BilinearProduct.from_terms(n, terms)


def twoform_to_json(t: TwoForm) -> dict:
    return {"dim": t.dim, "wedge_terms": [[i + 1, j + 1, q_to_json(x)] for i, j, x in t.wedge_terms()]}


def twoform_from_json(x, where: str = "two-form") -> TwoForm:
    n = _int(_get(x, "dim", where), where + ".dim")
    terms = []
    for t in _list(_get(x, "wedge_terms", where), where + ".wedge_terms"):
        if not isinstance(t, list) or len(t) != 3:
            raise FormatError(f"{where}: each wedge term is [i, j, coeff]")
        i, j = (_int(v, where) for v in t[:2])
        if not (1 <= i <= n and 1 <= j <= n):
            raise FormatError(f"{where}: index out of range 1..{n} in {t}")
        terms.append((i - 1, j - 1, q_from_json(t[2])))
    return TwoForm.from_wedge_terms(n, terms)


def subspace_to_json(s: la.Subspace) -> dict:
    return {"basis": mat_to_json(s.basis)}


def subspace_from_json(x, n: int, where: str = "subspace") -> la.Subspace:
    rows = mat_from_json(_get(x, "basis", where), cols=n if _get(x, "basis", where) else None, where=where)
    return la.Subspace.span(rows, n)


# -- structures -------------------------------------------------------------


def _check_dim(p: BilinearProduct, n: int, where: str):
    if p.dim != n:
        raise FormatError(f"{where}: dimension {p.dim} differs from declared {n}")


def klsa_to_json(a: KLSA) -> dict:
    return {"dim": a.n, "k": a.k, "products": [product_to_json(p) for p in a.products]}


def klsa_from_json(x) -> KLSA:
    n = _int(_get(x, "dim", "klsa"), "klsa.dim")
    k = _int(_get(x, "k", "klsa"), "klsa.k")
    prods = tuple(product_from_json(p, "klsa.products") for p in _list(_get(x, "products", "klsa"), "klsa.products"))
    if len(prods) != k:
        raise FormatError(f"klsa: expected {k} products")
    for p in prods:
        _check_dim(p, n, "klsa")
    return KLSA(n, k, prods)


def kxklsa_to_json(b: KxKLSA) -> dict:
    return {
        "dim": b.n,
        "k": b.k,
        "star": [[product_to_json(p) for p in row] for row in b.star],
        "bracket": product_to_json(b.bracket),
    }


def kxklsa_from_json(x) -> KxKLSA:
    n = _int(_get(x, "dim", "kxk"), "kxk.dim")
    k = _int(_get(x, "k", "kxk"), "kxk.k")
    grid = _list(_get(x, "star", "kxk"), "kxk.star")
    if len(grid) != k or any(not isinstance(r, list) or len(r) != k for r in grid):
        raise FormatError(f"kxk: star must be a {k}×{k} grid")
    star = tuple(tuple(product_from_json(p, "kxk.star") for p in row) for row in grid)
    bracket = product_from_json(_get(x, "bracket", "kxk"), "kxk.bracket")
    for p in [bracket] + [p for row in star for p in row]:
        _check_dim(p, n, "kxk")
    return KxKLSA(n, k, star, bracket)


def ksymplectic_to_json(d: KSymplecticData) -> dict:
    out = {
        "k": d.k,
        "n": d.n,
        "bracket": product_to_json(d.bracket),
        "h": subspace_to_json(d.h),
        "thetas": [twoform_to_json(t) for t in d.thetas],
    }
    if d.p is not None:
        out["p"] = subspace_to_json(d.p)
    return out


def ksymplectic_from_json(x) -> KSymplecticData:
    k = _int(_get(x, "k", "ks"), "ks.k")
    n = _int(_get(x, "n", "ks"), "ks.n")
    bracket = product_from_json(_get(x, "bracket", "ks"), "ks.bracket")
    g = bracket.dim
    h = subspace_from_json(_get(x, "h", "ks"), g, "ks.h")
    thetas = tuple(twoform_from_json(t, "ks.thetas") for t in _list(_get(x, "thetas", "ks"), "ks.thetas"))
    if any(t.dim != g for t in thetas):
        raise FormatError("ks: forms and bracket have different dimensions")
    p = subspace_from_json(x["p"], g, "ks.p") if "p" in x else None
    return KSymplecticData(k, n, bracket, h, thetas, p)


def rmatrix_to_json(r: RMatrixFamily) -> dict:
    return {"n": r.n, "k": r.k, "r": [mat_to_json(m) for m in r.r]}


def rmatrix_from_json(x) -> RMatrixFamily:
    n = _int(_get(x, "n", "r"), "r.n")
    k = _int(_get(x, "k", "r"), "r.k")
    mats = tuple(mat_from_json(m, n, n, "r.r") for m in _list(_get(x, "r", "r"), "r.r"))
    if len(mats) != k:
        raise FormatError(f"r: expected {k} matrices")
    return RMatrixFamily(n, k, mats)


def gelfand_from_json(x) -> tuple:
    """{"dim": n, "product": product-json, "D1": matrix-json, "D2": matrix-json}."""
    n = _int(_get(x, "dim", "gelfand"), "gelfand.dim")
    prod = product_from_json(_get(x, "product", "gelfand"), "gelfand.product")
    _check_dim(prod, n, "gelfand")
    D1 = mat_from_json(_get(x, "D1", "gelfand"), n, n, "gelfand.D1")
    D2 = mat_from_json(_get(x, "D2", "gelfand"), n, n, "gelfand.D2")
    return CommAssocAlgebra(n, prod), D1, D2


def lowdim_to_json(s: LowDimSpec) -> dict:
    return {"k": s.k, "a": vec_to_json(s.a), "D": mat_to_json(s.D)}


def lowdim_from_json(x) -> LowDimSpec:
    k = _int(_get(x, "k", "lowdim"), "lowdim.k")
    a = vec_from_json(_get(x, "a", "lowdim"), "lowdim.a")
    if len(a) != k:
        raise FormatError(f"lowdim: a must have {k} entries")
    D = mat_from_json(_get(x, "D", "lowdim"), k, k, "lowdim.D")
    return LowDimSpec(k, a, D)


def load(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from exc


def dumps(obj) -> str:
    return json.dumps(obj, indent=2)
