"""Exact rational linear algebra.

Vectors are tuples of :class:`fractions.Fraction`, matrices are tuples of
row tuples.  Nothing in here ever touches a float.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

Q = Fraction
Vec = tuple
Mat = tuple

ZERO = Fraction(0)
ONE = Fraction(1)


class DimensionError(ValueError):
    pass


def to_q(x) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def fmt_q(x: Fraction) -> str:
    x = to_q(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def vec(entries: Iterable) -> Vec:
    return tuple(to_q(e) for e in entries)


def mat(rows: Iterable[Iterable]) -> Mat:
    return tuple(vec(r) for r in rows)


def zero_vec(n: int) -> Vec:
    return (ZERO,) * n


def unit(n: int, i: int) -> Vec:
    return tuple(ONE if j == i else ZERO for j in range(n))


def zeros(rows: int, cols: int) -> Mat:
    return tuple((ZERO,) * cols for _ in range(rows))


def identity(n: int) -> Mat:
    return tuple(unit(n, i) for i in range(n))


def shape(m: Mat) -> tuple[int, int]:
    if not m:
        return (0, 0)
    return (len(m), len(m[0]))


def is_zero(v: Sequence) -> bool:
    return not any(v)


def _same_length(u: Sequence, v: Sequence):
    if len(u) != len(v):
        raise DimensionError(f"vectors of length {len(u)} and {len(v)}")


def add(u: Vec, v: Vec) -> Vec:
    _same_length(u, v)
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Vec, v: Vec) -> Vec:
    _same_length(u, v)
    return tuple(a - b for a, b in zip(u, v))


def scale(t, v: Vec) -> Vec:
    return tuple(t * a for a in v)


def neg(v: Vec) -> Vec:
    return tuple(-a for a in v)


def dot(u: Sequence, v: Sequence) -> Fraction:
    _same_length(u, v)
    s = ZERO
    for a, b in zip(u, v):
        if a and b:
            s += a * b
    return s


def lincomb(coeffs: Sequence, vectors: Sequence[Vec], n: Optional[int] = None) -> Vec:
    """Sum of coeffs[i] * vectors[i]; ``n`` is needed when the list is empty."""
    if n is None:
        n = len(vectors[0])
    out = [ZERO] * n
    for t, v in zip(coeffs, vectors):
        if not t:
            continue
        for j, x in enumerate(v):
            if x:
                out[j] += t * x
    return tuple(out)


def transpose(m: Mat) -> Mat:
    return tuple(zip(*m)) if m else ()


def mat_vec(m: Mat, v: Sequence) -> Vec:
    return tuple(dot(row, v) for row in m)


def mat_mul(a: Mat, b: Mat) -> Mat:
    if a and b and len(a[0]) != len(b):
        raise DimensionError(f"cannot multiply {shape(a)} by {shape(b)}")
    bt = transpose(b)
    return tuple(tuple(dot(row, col) for col in bt) for row in a)


def mat_add(a: Mat, b: Mat) -> Mat:
    if shape(a) != shape(b):
        raise DimensionError(f"cannot add {shape(a)} and {shape(b)}")
    return tuple(add(r, s) for r, s in zip(a, b))


def mat_sub(a: Mat, b: Mat) -> Mat:
    return tuple(sub(r, s) for r, s in zip(a, b))


def mat_scale(t, m: Mat) -> Mat:
    return tuple(scale(t, r) for r in m)


def commutator(a: Mat, b: Mat) -> Mat:
    return mat_sub(mat_mul(a, b), mat_mul(b, a))


def from_columns(cols: Sequence[Vec]) -> Mat:
    return transpose(tuple(cols))


def kron(a: Mat, b: Mat) -> Mat:
    ra, ca = shape(a)
    rb, cb = shape(b)
    return tuple(
        tuple(a[i][j] * b[k][l] for j in range(ca) for l in range(cb))
        for i in range(ra)
        for k in range(rb)
    )


def block_matrix(blocks: Sequence[Sequence[Mat]]) -> Mat:
    rows = []
    for brow in blocks:
        for r in range(len(brow[0])):
            rows.append(tuple(x for b in brow for x in b[r]))
    return tuple(rows)


# ---------------------------------------------------------------------------
# elimination


def rref(m: Mat) -> tuple[Mat, int, list[int]]:
    """Reduced row echelon form, rank and pivot columns of ``m``."""
    rows = [list(r) for r in m]
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if rows[i][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        p = rows[r][c]
        if p != 1:
            rows[r] = [x / p for x in rows[r]]
        prow = rows[r]
        for i in range(nrows):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y if y else x for x, y in zip(rows[i], prow)]
        pivots.append(c)
        r += 1
    return tuple(tuple(row) for row in rows), len(pivots), pivots


def rank(m: Mat) -> int:
    if not m:
        return 0
    return rref(m)[1]


def kernel_basis(m: Mat, ncols: Optional[int] = None) -> list[Vec]:
    """Basis of the null space, one vector per free column."""
    if not m:
        if ncols is None:
            raise DimensionError("column count of an empty matrix is ambiguous")
        return [unit(ncols, i) for i in range(ncols)]
    ncols = len(m[0])
    red, rk, pivots = rref(m)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [ZERO] * ncols
        v[f] = ONE
        for row, pc in zip(red, pivots):
            v[pc] = -row[f]
        basis.append(tuple(v))
    return basis


def kernel(m: Mat, ncols: Optional[int] = None) -> "Subspace":
    if not m and ncols is None:
        raise DimensionError("column count of an empty matrix is ambiguous")
    n = len(m[0]) if m else ncols
    return Subspace.span(kernel_basis(m, ncols), n)


def solve(a: Mat, b: Vec) -> Optional[Vec]:
    """One solution x of a x = b, or None when the system is inconsistent."""
    ncols = len(a[0])
    aug = tuple(tuple(row) + (rhs,) for row, rhs in zip(a, b))
    red, rk, pivots = rref(aug)
    if pivots and pivots[-1] == ncols:
        return None
    x = [ZERO] * ncols
    for row, pc in zip(red, pivots):
        x[pc] = row[-1]
    return tuple(x)


def inverse(m: Mat) -> Mat:
    n = len(m)
    aug = tuple(tuple(row) + unit(n, i) for i, row in enumerate(m))
    red, rk, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return tuple(tuple(row[n:]) for row in red)


def det(m: Mat) -> Fraction:
    rows = [list(r) for r in m]
    n = len(rows)
    d = ONE
    for c in range(n):
        piv = next((i for i in range(c, n) if rows[i][c]), None)
        if piv is None:
            return ZERO
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            d = -d
        p = rows[c][c]
        d *= p
        for i in range(c + 1, n):
            if rows[i][c]:
                f = rows[i][c] / p
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[c])]
    return d


# ---------------------------------------------------------------------------
# subspaces


@dataclass(frozen=True)
class Subspace:
    """A linear subspace of Q^ambient_dim.

    The basis is kept in reduced row echelon form, so equal subspaces are equal
    dataclasses.
    """

    ambient_dim: int
    basis: tuple = ()

    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient_dim: Optional[int] = None) -> "Subspace":
        vs = [vec(v) for v in vectors]
        if ambient_dim is None:
            if not vs:
                raise DimensionError("ambient dimension of an empty span is ambiguous")
            ambient_dim = len(vs[0])
        for v in vs:
            if len(v) != ambient_dim:
                raise DimensionError(f"vector of length {len(v)} in Q^{ambient_dim}")
        if not vs:
            return cls(ambient_dim, ())
        red, rk, _ = rref(tuple(vs))
        return cls(ambient_dim, tuple(red[:rk]))

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(n, identity(n))

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n, ())

    @classmethod
    def coordinate(cls, n: int, indices: Iterable[int]) -> "Subspace":
        return cls.span([unit(n, i) for i in indices], n)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __contains__(self, v) -> bool:
        return membership(self, v) is not None

    def matrix(self) -> Mat:
        """Basis vectors as columns."""
        return from_columns(self.basis) if self.basis else ()


def _check_ambient(a: int, b: int):
    if a != b:
        raise DimensionError(f"ambient dimensions differ: {a} != {b}")


def intersect(a: Subspace, b: Subspace) -> Subspace:
    _check_ambient(a.ambient_dim, b.ambient_dim)
    n = a.ambient_dim
    if not a.basis or not b.basis:
        return Subspace.zero(n)
    # x in a∩b  <=>  x = A s = B t ; kernel of [A | -B]
    stacked = tuple(
        tuple(col[i] for col in a.basis) + tuple(-col[i] for col in b.basis) for i in range(n)
    )
    sols = kernel_basis(stacked)
    da = a.dim
    return Subspace.span([lincomb(s[:da], a.basis, n) for s in sols], n)


def sum_spaces(a: Subspace, b: Subspace) -> Subspace:
    _check_ambient(a.ambient_dim, b.ambient_dim)
    return Subspace.span(a.basis + b.basis, a.ambient_dim)


def membership(s: Subspace, v: Sequence) -> Optional[Vec]:
    """Coordinates of ``v`` in the stored basis of ``s``, or None."""
    v = vec(v)
    _check_ambient(s.ambient_dim, len(v))
    if not s.basis:
        return () if is_zero(v) else None
    return solve(s.matrix(), v)


def coordinates(basis: Sequence[Vec], v: Sequence) -> Optional[Vec]:
    """Coordinates of ``v`` in an arbitrary (independent) list of vectors."""
    if not basis:
        return () if is_zero(v) else None
    return solve(from_columns(basis), vec(v))
