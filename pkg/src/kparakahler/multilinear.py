"""Structure-constant tensors: bilinear products, two-forms and linear maps.

Covectors are identified with vectors through the dual of the working basis,
so the pairing is the plain dot product.  Linear maps are matrices acting on
column vectors: column ``j`` holds the image of basis vector ``j``.

Wedge convention: ``(a ∧ b)(x, y) = a(x) b(y) - a(y) b(x)``, i.e. the matrix
``a bᵀ - b aᵀ``; in particular ``(f* ∧ e*)(f, e) = +1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from . import linalg as la
from .linalg import ZERO, Mat, Vec


@dataclass(frozen=True, eq=False)
class BilinearProduct:
    """``c[i][j][l]`` is the coefficient of ``e_l`` in ``e_i · e_j``."""

    dim: int
    c: tuple

    def __post_init__(self):
        n = self.dim
        if len(self.c) != n or any(len(row) != n for row in self.c):
            raise la.DimensionError("structure constants must have shape n×n×n")
        if any(len(v) != n for row in self.c for v in row):
            raise la.DimensionError("structure constants must have shape n×n×n")

    # -- construction -----------------------------------------------------
    @classmethod
    def zero(cls, n: int) -> "BilinearProduct":
        z = la.zero_vec(n)
        return cls(n, tuple(tuple(z for _ in range(n)) for _ in range(n)))

    @classmethod
    def from_terms(cls, n: int, terms: Iterable) -> "BilinearProduct":
        """Build from ``(i, j, l, coeff)`` tuples, 0-based; repeated terms add up."""
        c = [[[ZERO] * n for _ in range(n)] for _ in range(n)]
        for i, j, l, coeff in terms:
            for idx in (i, j, l):
                if not 0 <= idx < n:
                    raise la.DimensionError(f"index {idx} out of range for dimension {n}")
            c[i][j][l] += la.to_q(coeff)
        return cls(n, tuple(tuple(tuple(v) for v in row) for row in c))

    @classmethod
    def from_function(cls, n: int, f) -> "BilinearProduct":
        """``f(i, j)`` returns the vector e_i · e_j."""
        return cls(n, tuple(tuple(la.vec(f(i, j)) for j in range(n)) for i in range(n)))

    @classmethod
    def from_left_mults(cls, mats: Sequence[Mat]) -> "BilinearProduct":
        """Product whose left multiplication by e_i has matrix ``mats[i]``."""
        n = len(mats)
        return cls.from_function(n, lambda i, j: tuple(mats[i][l][j] for l in range(n)))

    # -- views ------------------------------------------------------------
    @cached_property
    def nonzero(self) -> tuple:
        """Sparse view: ``nonzero[i][j]`` lists ``(l, coeff)`` with coeff != 0."""
        return tuple(
            tuple(tuple((l, x) for l, x in enumerate(v) if x) for v in row) for row in self.c
        )

    def terms(self) -> list:
        return [
            (i, j, l, x)
            for i, row in enumerate(self.nonzero)
            for j, nz in enumerate(row)
            for l, x in nz
        ]

    def mul(self, i: int, j: int) -> Vec:
        return self.c[i][j]

    def __call__(self, x: Sequence, y: Sequence) -> Vec:
        return apply(self, x, y)

    def is_zero(self) -> bool:
        return not any(self.nonzero[i][j] for i in range(self.dim) for j in range(self.dim))

    def is_antisymmetric(self) -> bool:
        n = self.dim
        return all(
            self.c[i][j] == la.neg(self.c[j][i]) for i in range(n) for j in range(i, n)
        )

    def is_commutative(self) -> bool:
        n = self.dim
        return all(self.c[i][j] == self.c[j][i] for i in range(n) for j in range(i + 1, n))

    # -- algebra of products --------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, BilinearProduct):
            return NotImplemented
        return self.dim == other.dim and self.c == other.c

    def __hash__(self):
        return hash((self.dim, self.c))

    def __add__(self, other: "BilinearProduct") -> "BilinearProduct":
        _same_dim(self, other)
        return BilinearProduct.from_function(self.dim, lambda i, j: la.add(self.c[i][j], other.c[i][j]))

    def __sub__(self, other: "BilinearProduct") -> "BilinearProduct":
        _same_dim(self, other)
        return BilinearProduct.from_function(self.dim, lambda i, j: la.sub(self.c[i][j], other.c[i][j]))

    def scaled(self, t) -> "BilinearProduct":
        t = la.to_q(t)
        return BilinearProduct.from_function(self.dim, lambda i, j: la.scale(t, self.c[i][j]))

    def commutator(self) -> "BilinearProduct":
        """The bracket x·y − y·x."""
        return BilinearProduct.from_function(self.dim, lambda i, j: la.sub(self.c[i][j], self.c[j][i]))

    def transported(self, P: Mat) -> "BilinearProduct":
        """Structure constants in the basis given by the columns of ``P``."""
        Pinv = la.inverse(P)
        cols = la.transpose(P)
        return BilinearProduct.from_function(
            self.dim, lambda i, j: la.mat_vec(Pinv, apply(self, cols[i], cols[j]))
        )

    def __repr__(self):
        inner = ", ".join(f"e{i + 1}·e{j + 1}={_fmt_vec(self.c[i][j])}" for i, j, *_ in _pairs(self))
        return f"BilinearProduct(dim={self.dim}{', ' if inner else ''}{inner})"


def _pairs(p: BilinearProduct):
    for i in range(p.dim):
        for j in range(p.dim):
            if p.nonzero[i][j]:
                yield i, j


def _fmt_vec(v: Vec) -> str:
    parts = [f"{la.fmt_q(x)}e{l + 1}" for l, x in enumerate(v) if x]
    return " + ".join(parts) if parts else "0"


def _same_dim(p: BilinearProduct, q: BilinearProduct):
    if p.dim != q.dim:
        raise la.DimensionError(f"dimension mismatch: {p.dim} != {q.dim}")


def apply(p: BilinearProduct, x: Sequence, y: Sequence) -> Vec:
    """Bilinear evaluation Σ x_i y_j c[i][j]."""
    n = p.dim
    if len(x) != n or len(y) != n:
        raise la.DimensionError(f"vectors must have length {n}")
    out = [ZERO] * n
    nz = p.nonzero
    for i, xi in enumerate(x):
        if not xi:
            continue
        row = nz[i]
        for j, yj in enumerate(y):
            if not yj or not row[j]:
                continue
            t = xi * yj
            for l, cval in row[j]:
                out[l] += t * cval
    return tuple(out)


def left_mult(p: BilinearProduct, x: Sequence) -> Mat:
    """Matrix of y ↦ x·y."""
    n = p.dim
    if len(x) != n:
        raise la.DimensionError(f"vector must have length {n}")
    m = [[ZERO] * n for _ in range(n)]
    for i, xi in enumerate(x):
        if not xi:
            continue
        for j in range(n):
            for l, cval in p.nonzero[i][j]:
                m[l][j] += xi * cval
    return tuple(tuple(r) for r in m)


def left_mult_basis(p: BilinearProduct, i: int) -> Mat:
    return left_mult(p, la.unit(p.dim, i))


def right_mult(p: BilinearProduct, y: Sequence) -> Mat:
    """Matrix of x ↦ x·y."""
    n = p.dim
    m = [[ZERO] * n for _ in range(n)]
    for j, yj in enumerate(y):
        if not yj:
            continue
        for i in range(n):
            for l, cval in p.nonzero[i][j]:
                m[l][i] += yj * cval
    return tuple(tuple(r) for r in m)


def dual_map(L: Mat) -> Mat:
    """The dual action ⟨L*(γ), y⟩ = −⟨γ, L(y)⟩, i.e. the matrix −Lᵀ."""
    r, c = la.shape(L)
    if r != c:
        raise la.DimensionError("dual_map needs a square matrix")
    return tuple(tuple(-x for x in col) for col in la.transpose(L))


def associator(p: BilinearProduct, x: Sequence, y: Sequence, z: Sequence) -> Vec:
    """(x·y)·z − x·(y·z)."""
    return la.sub(apply(p, apply(p, x, y), z), apply(p, x, apply(p, y, z)))


@dataclass(frozen=True)
class TwoForm:
    """Antisymmetric bilinear form with Gram matrix ``m``: ω(x, y) = xᵀ m y."""

    dim: int
    m: tuple

    def __post_init__(self):
        n = self.dim
        if la.shape(self.m) != (n, n) and n:
            raise la.DimensionError("two-form matrix must be dim×dim")
        for i in range(n):
            for j in range(i, n):
                if self.m[i][j] != -self.m[j][i]:
                    raise ValueError(f"matrix is not antisymmetric at ({i + 1},{j + 1})")

    @classmethod
    def zero(cls, n: int) -> "TwoForm":
        return cls(n, la.zeros(n, n))

    @classmethod
    def from_wedge_terms(cls, n: int, terms: Iterable) -> "TwoForm":
        """Σ coeff · e_i* ∧ e_j* from ``(i, j, coeff)`` tuples, 0-based."""
        m = [[ZERO] * n for _ in range(n)]
        for i, j, coeff in terms:
            t = la.to_q(coeff)
            m[i][j] += t
            m[j][i] -= t
        return cls(n, tuple(tuple(r) for r in m))

    def __call__(self, x: Sequence, y: Sequence) -> la.Q:
        return la.dot(x, la.mat_vec(self.m, y))

    def __add__(self, other: "TwoForm") -> "TwoForm":
        return TwoForm(self.dim, la.mat_add(self.m, other.m))

    def scaled(self, t) -> "TwoForm":
        return TwoForm(self.dim, la.mat_scale(la.to_q(t), self.m))

    def pullback(self, P: Mat) -> "TwoForm":
        """The form (x, y) ↦ ω(Px, Py)."""
        return TwoForm(la.shape(P)[1], la.mat_mul(la.transpose(P), la.mat_mul(self.m, P)))

    def contract(self, x: Sequence) -> Vec:
        """The covector y ↦ ω(x, y)."""
        return la.mat_vec(la.transpose(self.m), x)

    def wedge_terms(self) -> list:
        n = self.dim
        return [(i, j, self.m[i][j]) for i in range(n) for j in range(i + 1, n) if self.m[i][j]]


def wedge(a: Sequence, b: Sequence) -> TwoForm:
    a, b = la.vec(a), la.vec(b)
    if len(a) != len(b):
        raise la.DimensionError("covectors must have the same length")
    n = len(a)
    return TwoForm(n, tuple(tuple(a[i] * b[j] - b[i] * a[j] for j in range(n)) for i in range(n)))
