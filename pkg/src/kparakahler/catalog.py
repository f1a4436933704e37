"""The two-dimensional 2-left-symmetric structures, their compatible (2×2)
structures and the resulting six-dimensional 2-para-Kähler Lie algebras,
encoded as parameter templates, plus the batch verification harness.

Six-dimensional algebras use the basis order (e1, e2, f1, f2, f3, f4), which
is the coordinate layout of the double: f1, f2 span the first copy of p* and
f3, f4 the second.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from . import linalg as la
from .double import RMatrixFamily, build_phantom, compatibility_report, phantom_forms
from .errors import ConstraintViolation
from .ksymplectic import KSymplecticData, build_F_iso, extract_products, verify_kparakahler
from .lie import AxiomReport, check_jacobi
from .linalg import Mat, Q, Subspace
from .lsa import KLSA, CommAssocAlgebra, KxKLSA, check_klsa, check_kxklsa, gelfand
from .multilinear import BilinearProduct

HALF = Q(1, 2)


@dataclass(frozen=True)
class Param:
    name: str
    exclude: tuple = ()
    fixed: Optional[Fraction] = None


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    table: int
    params: tuple
    build: Callable
    note: str = ""
    # Table 3 parameter name → name of the same parameter in Table 2
    rename: tuple = ()

    def param(self, name: str) -> Param:
        return next(p for p in self.params if p.name == name)


# ---------------------------------------------------------------------------
# helpers


def prod2(*terms) -> BilinearProduct:
    """Product on R^2 from 1-based ``(i, j, {l: coeff})`` triples."""
    flat = []
    for i, j, image in terms:
        for l, x in image.items():
            flat.append((i - 1, j - 1, l - 1, x))
    return BilinearProduct.from_terms(2, flat)


def from_left_mult2(mats: dict) -> BilinearProduct:
    """Product on R^2 from left multiplication matrices keyed by 1-based basis index.

    Matrices use the column convention: column j is the image of e_j.
    """
    zero = la.zeros(2, 2)
    return BilinearProduct.from_left_mults([la.mat(mats.get(i, zero)) for i in (1, 2)])


def klsa2(p1: BilinearProduct, p2: BilinearProduct) -> KLSA:
    return KLSA(2, 2, (p1, p2))


def scaled_pair(p1: BilinearProduct, a) -> KLSA:
    return klsa2(p1, p1.scaled(a))


def kxk2(grid) -> KxKLSA:
    return KxKLSA(2, 2, tuple(tuple(row) for row in grid), grid[0][0].commutator())


ZERO2 = BilinearProduct.zero(2)


def trivial_kxk2() -> KxKLSA:
    return KxKLSA.trivial(2, 2)


# ---------------------------------------------------------------------------
# Table 1


def _b1alpha(v):
    p = prod2((2, 1, {1: 1}), (2, 2, {2: v["alpha"]}))
    return scaled_pair(p, v["a"])


def _b1half(v):
    a, b = v["a"], v["b"]
    p1 = prod2((2, 1, {1: 1}), (2, 2, {2: HALF}))
    p2 = prod2((2, 1, {1: a}), (2, 2, {1: b, 2: a / 2}))
    return klsa2(p1, p2)


def _b11(v):
    a, b = v["a"], v["b"]
    p1 = prod2((2, 1, {1: 1}), (2, 2, {2: 1}))
    p2 = prod2((1, 1, {1: a}), (1, 2, {2: a}), (2, 1, {1: b}), (2, 2, {2: b}))
    return klsa2(p1, p2)


def _b2(v):
    return scaled_pair(prod2((2, 1, {1: 1}), (2, 2, {1: 1, 2: 1})), v["a"])


def _b3alpha(v):
    al = v["alpha"]
    p = prod2((1, 2, {1: 1}), (2, 1, {1: 1 - 1 / al}), (2, 2, {2: 1}))
    return scaled_pair(p, v["a"])


def _b31(v):
    a, b = v["a"], v["b"]
    p1 = prod2((1, 2, {1: 1}), (2, 2, {2: 1}))
    p2 = prod2((1, 1, {1: a}), (1, 2, {1: b}), (2, 1, {2: a}), (2, 2, {2: b}))
    return klsa2(p1, p2)


def _b4(v):
    return scaled_pair(prod2((1, 2, {1: 1}), (2, 2, {1: 1, 2: 1})), v["a"])


def _b5(sign):
    def build(v):
        p = prod2((1, 1, {2: sign}), (2, 1, {1: -1}), (2, 2, {2: -2}))
        return scaled_pair(p, v["a"])

    return build


def _c2(v):
    return klsa2(prod2((2, 2, {2: 1})), prod2((1, 1, {1: v["a"]}), (2, 2, {2: v["b"]})))


def _c31(v):
    a, b = v["a"], v["b"]
    return klsa2(prod2((2, 2, {1: 1})), prod2((2, 1, {1: 2 * a}), (2, 2, {1: b, 2: a})))


def _c32(v):
    a, b = v["a"], v["b"]
    return klsa2(prod2((2, 2, {1: 1})), prod2((1, 2, {1: a}), (2, 1, {1: a}), (2, 2, {1: b, 2: a})))


def _c4(v):
    a, b = v["a"], v["b"]
    p1 = prod2((2, 2, {2: 1}), (1, 2, {1: 1}), (2, 1, {1: 1}))
    p2 = prod2((1, 2, {1: a}), (2, 1, {1: a}), (2, 2, {1: b, 2: a}))
    return klsa2(p1, p2)


def _c5plus(v):
    a, b = v["a"], v["b"]
    p1 = prod2((1, 1, {2: 1}), (2, 2, {2: 1}), (1, 2, {1: 1}), (2, 1, {1: 1}))
    p2 = prod2((1, 2, {1: b, 2: a}), (2, 1, {1: b, 2: a}), (1, 1, {1: a, 2: b}), (2, 2, {1: a, 2: b}))
    return klsa2(p1, p2)


def _c5minus(v):
    a, b = v["a"], v["b"]
    p1 = prod2((1, 1, {2: -1}), (2, 2, {2: 1}), (1, 2, {1: 1}), (2, 1, {1: 1}))
    p2 = prod2((1, 2, {1: b, 2: a}), (2, 1, {1: b, 2: a}), (1, 1, {1: a, 2: -b}), (2, 2, {1: -a, 2: b}))
    return klsa2(p1, p2)


A = Param("a")
B = Param("b")

TABLE1 = [
    CatalogEntry("b_{1,alpha}", 1, (Param("alpha", (Q(1), HALF)), A), _b1alpha),
    CatalogEntry("b_{1,1/2}", 1, (A, B), _b1half),
    CatalogEntry("b_{1,1}", 1, (A, B), _b11, "first term of the second product read as e1 •_2 e1"),
    CatalogEntry("b_2", 1, (A,), _b2),
    CatalogEntry("b_{3,alpha}", 1, (Param("alpha", (Q(1), Q(0))), A), _b3alpha),
    CatalogEntry("b_{3,1}", 1, (A, B), _b31),
    CatalogEntry("b_4", 1, (A,), _b4),
    CatalogEntry("b_5^+", 1, (A,), _b5(1)),
    CatalogEntry("b_5^-", 1, (A,), _b5(-1)),
    CatalogEntry("c_2", 1, (A, B), _c2),
    CatalogEntry("c_3^1", 1, (A, B), _c31),
    CatalogEntry("c_3^2", 1, (A, B), _c32, "first product read as e2 •_1 e2 = e1"),
    CatalogEntry("c_4", 1, (A, B), _c4, "first product term read as e2 •_1 e2 = e2"),
    CatalogEntry("c_5^+", 1, (A, B), _c5plus),
    CatalogEntry("c_5^-", 1, (A, B), _c5minus),
]


# ---------------------------------------------------------------------------
# Table 2


def _diag_e2(x):
    return {2: [[0, 0], [0, x]]}


def _col_e1(top, bottom):
    return {1: [[top, 0], [bottom, 0]]}


def _bb1alpha(v):
    a, c, d = v["a"], v["c"], v["d"]
    grid = [
        [from_left_mult2(_diag_e2(-a * c)), from_left_mult2(_diag_e2(-a * d))],
        [from_left_mult2(_diag_e2(c)), from_left_mult2(_diag_e2(d))],
    ]
    return kxk2(grid), _b1alpha({"alpha": Q(0), "a": a})


def _bb11(v):
    return trivial_kxk2(), _b11({"a": Q(0), "b": v["b"]})


def _bb2_generic(v):
    return trivial_kxk2(), _b2(v)


def _bb2_a1(v):
    c = v["c"]
    m = from_left_mult2(_diag_e2(-c))
    pm = from_left_mult2(_diag_e2(c))
    return kxk2([[m, m], [pm, pm]]), _b2({"a": Q(1)})


def _bb31(v):
    return trivial_kxk2(), _b31(v)


def _bb4(v):
    a, c = v["a"], v["c"]
    grid = [
        [from_left_mult2(_col_e1(0, -a * c)), from_left_mult2(_col_e1(0, -a * a * c))],
        [from_left_mult2(_col_e1(0, c)), from_left_mult2(_col_e1(0, a * c))],
    ]
    return kxk2(grid), _b4(v)


def _cc_generic(klsa_builder):
    def build(v):
        return trivial_kxk2(), klsa_builder(v)

    return build


def _cc_a0(klsa_builder, d12: str, d22: str):
    def build(v):
        b = v["b"]
        c1, c2, g1, g2 = v["c1"], v["c2"], v["g1"], v["g2"]
        grid = [
            [from_left_mult2(_col_e1(c1, c2)), from_left_mult2(_col_e1(b * c1, v[d12]))],
            [from_left_mult2(_col_e1(g1, g2)), from_left_mult2(_col_e1(b * g1, v[d22]))],
        ]
        return kxk2(grid), klsa_builder({"a": Q(0), "b": b})

    return build


def _cc5plus(v):
    c = v["c"]
    ones = [[1, 1], [1, 1]]
    minus = from_left_mult2({1: la.mat_scale(-c, la.mat(ones)), 2: la.mat_scale(-c, la.mat(ones))})
    plus = from_left_mult2({1: la.mat_scale(c, la.mat(ones)), 2: la.mat_scale(c, la.mat(ones))})
    return kxk2([[minus, minus], [plus, plus]]), _c5plus(v)


C = Param("c")
D = Param("d")

TABLE2 = [
    CatalogEntry("bb_{1,alpha}", 2, (A, C, D), _bb1alpha, "alpha fixed to 0"),
    CatalogEntry("bb_{1,1}", 2, (B,), _bb11, "a fixed to 0"),
    CatalogEntry("bb_2[a!=1]", 2, (Param("a", (Q(1),)),), _bb2_generic),
    CatalogEntry("bb_2[a=1]", 2, (C,), _bb2_a1),
    CatalogEntry("bb_{3,1}", 2, (Param("a", (Q(0),)), B), _bb31),
    CatalogEntry("bb_4", 2, (A, C), _bb4),
    CatalogEntry("cc_3^1[a!=0]", 2, (Param("a", (Q(0),)), B), _cc_generic(_c31)),
    CatalogEntry(
        "cc_3^1[a=0]",
        2,
        (B, Param("c1"), Param("c2"), Param("d1"), Param("g1"), Param("g2"), Param("d2")),
        _cc_a0(_c31, "d1", "d2"),
    ),
    CatalogEntry("cc_3^2[a!=0]", 2, (Param("a", (Q(0),)), B), _cc_generic(_c32)),
    CatalogEntry(
        "cc_3^2[a=0]",
        2,
        (B, Param("c1"), Param("c2"), Param("d"), Param("g1"), Param("g2"), Param("h")),
        _cc_a0(_c32, "d", "h"),
    ),
    CatalogEntry("cc_5^+", 2, (A, B, C), _cc5plus),
]


# ---------------------------------------------------------------------------
# Table 3

NAMES6 = {"e1": 0, "e2": 1, "f1": 2, "f2": 3, "f3": 4, "f4": 5}


def bracket6(rels: dict) -> BilinearProduct:
    """Antisymmetric bracket on the six-dimensional space from ``{(x, y): {z: coeff}}``."""
    terms = []
    for (x, y), image in rels.items():
        i, j = NAMES6[x], NAMES6[y]
        for z, coeff in image.items():
            if coeff:
                terms.append((i, j, NAMES6[z], coeff))
                terms.append((j, i, NAMES6[z], -coeff))
    return BilinearProduct.from_terms(6, terms)


def _t3_bb1alpha(v):
    a, c, d = v["a"], v["c"], v["d"]
    return bracket6({
        ("f1", "f2"): {"f1": -1},
        ("f1", "f4"): {"f1": -a},
        ("f2", "f3"): {"f3": 1},
        ("f3", "f4"): {"f3": -a},
        ("f2", "e1"): {"e1": -1},
        ("f2", "e2"): {"f2": -c * a, "f4": c},
        ("f4", "e1"): {"e1": -a},
        ("f4", "e2"): {"f2": -d * a, "f4": d},
    })


def _t3_bb11(v):
    b = v["b"]
    return bracket6({
        ("f1", "f2"): {"f1": -1},
        ("f1", "f4"): {"f1": -b},
        ("f2", "f3"): {"f3": 1},
        ("f2", "f4"): {"f2": -b, "f4": 1},
        ("f3", "f4"): {"f3": -b},
        ("f2", "e1"): {"e1": -1},
        ("f2", "e2"): {"e2": -1},
        ("f4", "e1"): {"e1": -b},
        ("f4", "e2"): {"e2": -b},
    })


def _t3_bb2_generic(v):
    a = v["a"]
    return bracket6({
        ("f1", "f2"): {"f1": -1},
        ("f1", "f4"): {"f1": -a},
        ("f2", "f3"): {"f3": 1},
        ("f2", "f4"): {"f1": -a, "f2": -a, "f3": 1, "f4": 1},
        ("f3", "f4"): {"f3": -a},
        ("f2", "e1"): {"e1": -1, "e2": -1},
        ("f2", "e2"): {"e2": -1},
        ("f4", "e1"): {"e1": -a, "e2": -a},
        ("f4", "e2"): {"e2": -a},
    })


def _t3_bb2_a1(v):
    c = v["c"]
    return bracket6({
        ("f1", "f2"): {"f1": -1},
        ("f1", "f4"): {"f1": -1},
        ("f2", "f3"): {"f3": 1},
        ("f2", "f4"): {"f1": -1, "f2": -1, "f3": 1, "f4": 1},
        ("f3", "f4"): {"f3": -1},
        ("f2", "e1"): {"e1": -1, "e2": -1},
        ("f2", "e2"): {"f2": -c, "f4": c, "e2": -1},
        ("f4", "e1"): {"e1": -1, "e2": -1},
        ("f4", "e2"): {"f2": -c, "f4": c, "e2": -1},
    })


def _t3_bb31(v):
    a, b = v["a"], v["b"]
    return bracket6({
        ("f1", "f2"): {"f1": 1},
        ("f1", "f3"): {"f1": -a},
        ("f1", "f4"): {"f2": -a, "f3": 1},
        ("f2", "f3"): {"f1": -b},
        ("f2", "f4"): {"f2": -b, "f4": 1},
        ("f3", "f4"): {"f3": b, "f4": -a},
        ("f1", "e1"): {"e2": -1},
        ("f2", "e2"): {"e2": -1},
        ("f3", "e1"): {"e1": -a, "e2": -b},
        ("f4", "e2"): {"e1": -a, "e2": -b},
    })


def _t3_bb4(v):
    a, c = v["a"], v["c"]
    return bracket6({
        ("f1", "f2"): {"f1": 1},
        ("f1", "f4"): {"f3": 1},
        ("f2", "f3"): {"f1": -a},
        ("f2", "f4"): {"f1": -a, "f2": -a, "f3": 1, "f4": 1},
        ("f3", "f4"): {"f3": a},
        ("f1", "e1"): {"e2": -1},
        ("f2", "e1"): {"f1": -c * a, "f3": c, "e2": -1},
        ("f2", "e2"): {"e2": -1},
        ("f3", "e1"): {"e2": -a},
        ("f4", "e1"): {"f1": -a * c * a, "f3": a * c, "e2": -a},
        ("f4", "e2"): {"e2": -a},
    })


def _t3_cc31_generic(v):
    a, b = v["a"], v["b"]
    return bracket6({
        ("f1", "f4"): {"f1": -2 * a},
        ("f2", "f4"): {"f1": -b, "f2": -a, "f3": 1},
        ("f3", "f4"): {"f3": -2 * a},
        ("f2", "e1"): {"e2": -1},
        ("f4", "e1"): {"e1": -2 * a, "e2": -b},
        ("f4", "e2"): {"e2": -a},
    })


def _t3_cc3_a0(last: str):
    def build(v):
        b = v["b"]
        c1, c2, g1, g2 = v["c1"], v["c2"], v["g1"], v["g2"]
        return bracket6({
            ("f2", "f4"): {"f1": -b, "f3": 1},
            ("f1", "e1"): {"f1": c1, "f3": g1},
            ("f2", "e1"): {"f1": c2, "f3": g2, "e2": -1},
            ("f3", "e1"): {"f1": b * c1, "f3": b * g1},
            ("f4", "e1"): {"f1": v[last], "f3": v["h"], "e2": -b},
        })

    return build


def _t3_cc32_generic(v):
    a, b = v["a"], v["b"]
    return bracket6({
        ("f1", "f4"): {"f1": -a},
        ("f2", "f3"): {"f1": -a},
        ("f2", "f4"): {"f1": -b, "f2": -a, "f3": 1},
        ("f2", "e1"): {"e2": -1},
        ("f3", "e1"): {"e2": -a},
        ("f4", "e1"): {"e1": -a, "e2": -b},
        ("f4", "e2"): {"e2": -a},
    })


def _t3_cc5plus(v):
    a, b, c = v["a"], v["b"], v["c"]
    common = {"f1": -c, "f2": -c, "f3": c, "f4": c}

    def plus(extra):
        out = dict(common)
        for key, x in extra.items():
            out[key] = out.get(key, 0) + x
        return out

    return bracket6({
        ("f1", "f3"): {"f1": -a, "f2": -b, "f4": 1},
        ("f1", "f4"): {"f1": -b, "f2": -a, "f3": 1},
        ("f2", "f3"): {"f1": -b, "f2": -a, "f3": 1},
        ("f2", "f4"): {"f1": -a, "f2": -b, "f4": 1},
        ("f1", "e1"): plus({"e2": -1}),
        ("f1", "e2"): plus({"e1": -1}),
        ("f2", "e1"): plus({"e1": -1}),
        ("f2", "e2"): plus({"e2": -1}),
        ("f3", "e1"): plus({"e1": -a, "e2": -b}),
        ("f3", "e2"): plus({"e1": -b, "e2": -a}),
        ("f4", "e1"): plus({"e1": -b, "e2": -a}),
        ("f4", "e2"): plus({"e1": -a, "e2": -b}),
    })


TABLE3 = [
    CatalogEntry("bb_{1,alpha}", 3, (A, C, D), _t3_bb1alpha),
    CatalogEntry("bb_{1,1}", 3, (B,), _t3_bb11),
    CatalogEntry("bb_2[a!=1]", 3, (Param("a", (Q(1),)),), _t3_bb2_generic),
    CatalogEntry("bb_2[a=1]", 3, (C,), _t3_bb2_a1),
    CatalogEntry("bb_{3,1}", 3, (Param("a", (Q(0),)), B), _t3_bb31),
    CatalogEntry("bb_4", 3, (A, C), _t3_bb4),
    CatalogEntry("cc_3^1[a!=0]", 3, (Param("a", (Q(0),)), B), _t3_cc31_generic),
    CatalogEntry(
        "cc_3^1[a=0]",
        3,
        (B, Param("c1"), Param("c2"), Param("g1"), Param("g2"), Param("d2"), Param("h")),
        _t3_cc3_a0("d2"),
        "tabulated with parameters d2, h standing for d1, d2 of the compatible structure",
        rename=(("d2", "d1"), ("h", "d2")),
    ),
    CatalogEntry("cc_3^2[a!=0]", 3, (Param("a", (Q(0),)), B), _t3_cc32_generic),
    CatalogEntry(
        "cc_3^2[a=0]",
        3,
        (B, Param("c1"), Param("c2"), Param("d"), Param("g1"), Param("g2"), Param("h")),
        _t3_cc3_a0("d"),
    ),
    CatalogEntry("cc_5^+", 3, (A, B, C), _t3_cc5plus),
]

TABLES = {1: TABLE1, 2: TABLE2, 3: TABLE3}


# ---------------------------------------------------------------------------
# four-dimensional examples: a Gelfand-type 2-left-symmetric structure and an
# S_2-matrix candidate on it


def r4_algebra() -> CommAssocAlgebra:
    """R^4 with e1 the unit: e1·e_i = e_i·e1 = e_i, all other products zero."""
    terms = [(0, 0, 0, 1)] + [(0, i, i, 1) for i in (1, 2, 3)] + [(i, 0, i, 1) for i in (1, 2, 3)]
    return CommAssocAlgebra(4, BilinearProduct.from_terms(4, terms))


def r4_derivations(a, b, c) -> tuple:
    D1 = la.mat([[0, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]])
    D2 = la.mat([[0, 0, 0, 0], [0, 0, a, b], [0, 0, 0, c], [0, 0, 0, 0]])
    return D1, D2


def _gelfand_r4(v):
    return gelfand(r4_algebra(), *r4_derivations(v["a"], v["b"], v["c"]))


def sym_product_matrix(n: int, terms) -> Mat:
    """Matrix of Σ x e_i⊙e_j with e_i⊙e_j = e_i⊗e_j + e_j⊗e_i (1-based indices)."""
    m = [[Q(0)] * n for _ in range(n)]
    for i, j, x in terms:
        m[i - 1][j - 1] += la.to_q(x)
        m[j - 1][i - 1] += la.to_q(x)
    return la.mat(m)


def _s2_r4(v):
    A = _gelfand_r4(v)
    r1 = sym_product_matrix(4, [(2, 4, v["r24"]), (2, 2, v["r22"]), (4, 4, v["r44"])])
    r2 = la.mat_add(
        la.mat([[v["s11"], 0, 0, 0], [0] * 4, [0] * 4, [0] * 4]),
        sym_product_matrix(4, [(1, 2, v["s12"])]),
    )
    return A, RMatrixFamily(4, 2, (r1, r2))


EXAMPLES = [
    CatalogEntry("gelfand_r4", 0, (A, B, C), _gelfand_r4, "KLSA from two commuting derivations"),
    CatalogEntry(
        "s2_matrix_r4",
        0,
        (A, B, C, Param("r22"), Param("r24"), Param("r44"), Param("s11"), Param("s12")),
        _s2_r4,
        "symmetric pair (r^1, r^2) on the Gelfand structure",
    ),
]


def get_example(name: str) -> CatalogEntry:
    return next(e for e in EXAMPLES if e.name == name)


def get_entry(table: int, name: str) -> CatalogEntry:
    for e in TABLES[table]:
        if e.name == name:
            return e
    raise KeyError(f"no entry {name!r} in table {table}")


# ---------------------------------------------------------------------------
# instantiation and sampling


def check_assignment(entry: CatalogEntry, assignment: dict) -> dict:
    values = {}
    for p in entry.params:
        if p.name not in assignment:
            raise ConstraintViolation(f"{entry.name}: missing parameter {p.name}")
        x = la.to_q(assignment[p.name])
        if x in p.exclude:
            raise ConstraintViolation(f"{entry.name}: {p.name} must differ from {la.fmt_q(x)}")
        values[p.name] = x
    extra = set(assignment) - {p.name for p in entry.params}
    if extra:
        raise ConstraintViolation(f"{entry.name}: unknown parameters {sorted(extra)}")
    return values


def instantiate(entry: CatalogEntry, assignment: dict):
    """Table 1 → KLSA, table 2 → (KxKLSA, KLSA), table 3 → KSymplecticData.

    Examples (table 0) return a KLSA or a (KLSA, RMatrixFamily) pair.
    """
    values = check_assignment(entry, assignment)
    built = entry.build(values)
    if entry.table == 3:
        return table3_data(built)
    return built


def table3_data(bracket: BilinearProduct) -> KSymplecticData:
    return KSymplecticData(
        k=2,
        n=2,
        bracket=bracket,
        h=Subspace.coordinate(6, range(2, 6)),
        thetas=phantom_forms(2, 2),
        p=Subspace.coordinate(6, range(2)),
    )


def sample_rational(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-5, 5), rng.randint(1, 5))


def sample_assignment(entry: CatalogEntry, rng: random.Random) -> dict:
    out = {}
    for p in entry.params:
        x = sample_rational(rng)
        while x in p.exclude:
            x = sample_rational(rng)
        out[p.name] = x
    return out


def sample_assignments(entry: CatalogEntry, count: int, seed: int, table: int) -> list:
    rng = random.Random(f"{seed}:{table}:{entry.name}")
    return [sample_assignment(entry, rng) for _ in range(count)]


# ---------------------------------------------------------------------------
# verification runs


@dataclass
class VerificationRun:
    entry: str
    table: int
    sample: int
    assignment: dict
    reports: dict = field(default_factory=dict)
    discrepancy: Optional[dict] = None
    convention_note: str = ""

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.reports.values()) and self.discrepancy is None

    def first_failure(self) -> str:
        for name, r in self.reports.items():
            if not r.passed:
                return f"{name}: {r.failures[0].describe()}"
        if self.discrepancy is not None:
            return "TABLE-DISCREPANCY: " + self.discrepancy["summary"]
        return ""

    def to_json(self) -> dict:
        return {
            "entry": self.entry,
            "table": self.table,
            "sample": self.sample,
            "assignment": {k: la.fmt_q(v) for k, v in self.assignment.items()},
            "verdict": "PASS" if self.passed else "FAIL",
            "reports": {name: r.to_json() for name, r in self.reports.items()},
            "discrepancy": self.discrepancy,
            "convention_note": self.convention_note,
        }


def verify_table1(entry: CatalogEntry, values: dict) -> dict:
    return {"klsa": check_klsa(instantiate(entry, values))}


def verify_table2(entry: CatalogEntry, values: dict) -> dict:
    Bs, As = instantiate(entry, values)
    comp = compatibility_report(Bs, As)
    return {
        "klsa": comp.klsa,
        "kxklsa": comp.kxklsa,
        "compatibility": comp.combined(),
        "phantom-jacobi": comp.phantom_jacobi,
    }


def _table2_values(entry3: CatalogEntry, values: dict) -> dict:
    back = {new: old for old, new in entry3.rename}
    e2 = get_entry(2, entry3.name)
    return {p.name: values[back.get(p.name, p.name)] for p in e2.params}


def bracket_difference(tabulated: BilinearProduct, oracle: BilinearProduct) -> list:
    """Basis pairs (1-based names) where the tabulated bracket differs from the oracle."""
    names = list(NAMES6)
    diffs = []
    for i in range(6):
        for j in range(i + 1, 6):
            if tabulated.c[i][j] != oracle.c[i][j]:
                diffs.append({
                    "pair": [names[i], names[j]],
                    "tabulated": _fmt_combo(tabulated.c[i][j]),
                    "oracle": _fmt_combo(oracle.c[i][j]),
                })
    return diffs


def _fmt_combo(v) -> str:
    names = list(NAMES6)
    parts = [f"{la.fmt_q(x)}*{names[l]}" for l, x in enumerate(v) if x]
    return " + ".join(parts) if parts else "0"


def verify_table3(entry: CatalogEntry, values: dict):
    data = instantiate(entry, values)
    reports = {"jacobi": check_jacobi(data.bracket), "kparakahler": verify_kparakahler(data)}
    if reports["jacobi"].passed and reports["kparakahler"].passed:
        ext = extract_products(data)
        _, f_rep = build_F_iso(data, ext)
        reports["extraction"] = ext.report
        reports["F-isomorphism"] = f_rep
    Bs, As = get_entry(2, entry.name).build(_table2_values(entry, values))
    oracle = build_phantom(Bs, As)
    discrepancy = None
    diffs = bracket_difference(data.bracket, oracle.bracket)
    if diffs:
        oracle_ok = check_jacobi(oracle.bracket).passed
        discrepancy = {
            "summary": f"{len(diffs)} bracket(s) differ from the double of the compatible structure",
            "oracle_jacobi": oracle_ok,
            "differences": diffs,
        }
    return reports, discrepancy


def run_table(table_id: int, samples_per_entry: int, seed: int) -> list:
    """Deterministic sampled verification of one table, ordered by entry then sample."""
    if table_id not in TABLES:
        raise ValueError(f"unknown table {table_id}")
    runs = []
    for entry in TABLES[table_id]:
        for idx, values in enumerate(sample_assignments(entry, samples_per_entry, seed, table_id)):
            run = VerificationRun(entry.name, table_id, idx, values)
            if table_id == 1:
                run.reports = verify_table1(entry, values)
            elif table_id == 2:
                run.reports = verify_table2(entry, values)
            else:
                run.reports, run.discrepancy = verify_table3(entry, values)
            if not run.passed:
                run.convention_note = _convention_note(entry, values, run)
            runs.append(run)
    return runs


def _convention_note(entry: CatalogEntry, values: dict, run: VerificationRun) -> str:
    """Whether flipping the wedge sign convention would rescue a failing form check."""
    if entry.table != 3:
        return "no two-forms involved"
    data = instantiate(entry, values)
    flipped = KSymplecticData(
        data.k, data.n, data.bracket, data.h, tuple(t.scaled(-1) for t in data.thetas), data.p
    )
    if verify_kparakahler(flipped).passed != run.reports["kparakahler"].passed:
        return "the opposite wedge convention changes the form verdict"
    return "the opposite wedge convention gives the same verdict"
