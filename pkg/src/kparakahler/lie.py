"""Lie algebra axioms, subalgebras, representations and 1-cocycles.

All checks run over basis tuples only; by multilinearity that is complete.
Each report keeps the first failing witness per axiom together with its
residual, which is what one needs when a table entry refuses to check out.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from . import linalg as la
from .linalg import ZERO, Mat, Vec
from .multilinear import BilinearProduct, left_mult_basis


@dataclass(frozen=True)
class Failure:
    axiom: str
    witness: tuple  # 0-based indices
    residual: tuple = ()

    def to_json(self) -> dict:
        return {
            "axiom": self.axiom,
            "witness": [i + 1 if isinstance(i, int) else i for i in self.witness],
            "residual": [la.fmt_q(x) for x in self.residual],
        }

    def describe(self) -> str:
        w = ",".join(str(i + 1) if isinstance(i, int) else str(i) for i in self.witness)
        res = "[" + ", ".join(la.fmt_q(x) for x in self.residual) + "]"
        return f"{self.axiom} fails at ({w}); residual {res}"


@dataclass
class AxiomReport:
    failures: list = field(default_factory=list)
    checked: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def __bool__(self) -> bool:
        return self.passed

    def fail(self, axiom: str, witness: Iterable = (), residual: Iterable = ()) -> None:
        self.failures.append(Failure(axiom, tuple(witness), _flatten(residual)))

    def note(self, axiom: str) -> None:
        if axiom not in self.checked:
            self.checked.append(axiom)

    def failed(self, axiom: str) -> bool:
        return any(f.axiom == axiom for f in self.failures)

    def first(self, axiom: Optional[str] = None) -> Optional[Failure]:
        for f in self.failures:
            if axiom is None or f.axiom == axiom:
                return f
        return None

    def extend(self, other: "AxiomReport", prefix: str = "") -> "AxiomReport":
        for f in other.failures:
            self.failures.append(Failure(prefix + f.axiom, f.witness, f.residual))
        for a in other.checked:
            self.note(prefix + a)
        return self

    @classmethod
    def merged(cls, *reports: "AxiomReport") -> "AxiomReport":
        out = cls()
        for r in reports:
            out.extend(r)
        return out

    def to_json(self) -> dict:
        return {"passed": self.passed, "failures": [f.to_json() for f in self.failures]}

    def summary(self) -> str:
        if self.passed:
            return "PASS"
        return "FAIL: " + self.failures[0].describe()


def _flatten(x) -> tuple:
    if isinstance(x, (tuple, list)):
        out = []
        for item in x:
            out.extend(_flatten(item))
        return tuple(out)
    return (la.to_q(x),)


@dataclass(frozen=True)
class Representation:
    """Linear maps ``rho[i]`` (space_dim × space_dim) for the algebra basis e_i."""

    algebra_dim: int
    space_dim: int
    rho: tuple

    def __post_init__(self):
        if len(self.rho) != self.algebra_dim:
            raise la.DimensionError("one matrix per algebra basis vector is required")
        for m in self.rho:
            if la.shape(m) != (self.space_dim, self.space_dim) and self.space_dim:
                raise la.DimensionError("representation matrices have the wrong shape")

    def of(self, x: Sequence) -> Mat:
        m = la.zeros(self.space_dim, self.space_dim)
        for xi, r in zip(x, self.rho):
            if xi:
                m = la.mat_add(m, la.mat_scale(xi, r))
        return m

    def act(self, x: Sequence, v: Sequence) -> Vec:
        out = la.zero_vec(self.space_dim)
        for xi, r in zip(x, self.rho):
            if xi:
                out = la.add(out, la.scale(xi, la.mat_vec(r, v)))
        return out

    def dual(self) -> "Representation":
        """Contragredient representation x ↦ −ρ(x)ᵀ."""
        from .multilinear import dual_map

        return Representation(self.algebra_dim, self.space_dim, tuple(dual_map(r) for r in self.rho))

    def tensor(self, other: "Representation") -> "Representation":
        """ρ ⊗ σ acting on row-major flattened tensors: ρ(x) ⊗ 1 + 1 ⊗ σ(x)."""
        if self.algebra_dim != other.algebra_dim:
            raise la.DimensionError("tensor product needs representations of the same algebra")
        i1 = la.identity(self.space_dim)
        i2 = la.identity(other.space_dim)
        return Representation(
            self.algebra_dim,
            self.space_dim * other.space_dim,
            tuple(la.mat_add(la.kron(a, i2), la.kron(i1, b)) for a, b in zip(self.rho, other.rho)),
        )

    @classmethod
    def zero(cls, algebra_dim: int, space_dim: int) -> "Representation":
        return cls(algebra_dim, space_dim, tuple(la.zeros(space_dim, space_dim) for _ in range(algebra_dim)))


def adjoint(b: BilinearProduct) -> Representation:
    return Representation(b.dim, b.dim, tuple(left_mult_basis(b, i) for i in range(b.dim)))


def bracket_with_basis(b: BilinearProduct, v: Sequence, k: int) -> Vec:
    """[v, e_k] computed sparsely."""
    out = [ZERO] * b.dim
    for l, vl in enumerate(v):
        if vl:
            for m, cval in b.nonzero[l][k]:
                out[m] += vl * cval
    return tuple(out)


def check_antisymmetry(b: BilinearProduct) -> AxiomReport:
    rep = AxiomReport()
    rep.note("antisymmetry")
    n = b.dim
    for i in range(n):
        for j in range(i, n):
            s = la.add(b.c[i][j], b.c[j][i])
            if any(s):
                rep.fail("antisymmetry", (i, j), s)
                return rep
    return rep


def jacobi_residual(b: BilinearProduct, i: int, j: int, k: int) -> Vec:
    c = b.c
    r1 = bracket_with_basis(b, c[i][j], k)
    r2 = bracket_with_basis(b, c[j][k], i)
    r3 = bracket_with_basis(b, c[k][i], j)
    return tuple(x + y + z for x, y, z in zip(r1, r2, r3))


def check_jacobi(b: BilinearProduct) -> AxiomReport:
    """Antisymmetry, then the cyclic sum over basis triples i < j < k."""
    rep = check_antisymmetry(b)
    rep.note("jacobi")
    n = b.dim
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                r = jacobi_residual(b, i, j, k)
                if any(r):
                    rep.fail("jacobi", (i, j, k), r)
                    return rep
    return rep


def is_lie(b: BilinearProduct) -> bool:
    return check_jacobi(b).passed


def check_subalgebra(b: BilinearProduct, s: la.Subspace, axiom: str = "subalgebra") -> AxiomReport:
    la._check_ambient(b.dim, s.ambient_dim)
    rep = AxiomReport()
    rep.note(axiom)
    basis = s.basis
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            v = b(basis[i], basis[j])
            if la.membership(s, v) is None:
                rep.fail(axiom, (i, j), v)
                return rep
    return rep


def check_representation(b: BilinearProduct, r: Representation, axiom: str = "representation") -> AxiomReport:
    """ρ([e_i, e_j]) = [ρ(e_i), ρ(e_j)] on all basis pairs."""
    if r.algebra_dim != b.dim:
        raise la.DimensionError("representation and algebra dimensions differ")
    rep = AxiomReport()
    rep.note(axiom)
    n = b.dim
    for i in range(n):
        for j in range(i, n):
            lhs = r.of(b.c[i][j])
            rhs = la.commutator(r.rho[i], r.rho[j])
            if lhs != rhs:
                rep.fail(axiom, (i, j), la.mat_sub(lhs, rhs))
                return rep
    return rep


def check_one_cocycle(b: BilinearProduct, r: Representation, c: Mat, axiom: str = "cocycle") -> AxiomReport:
    """c([x, y]) = ρ(x)c(y) − ρ(y)c(x); ``c`` has the image of e_i as column i."""
    if la.shape(c) != (r.space_dim, b.dim) and r.space_dim:
        raise la.DimensionError("cocycle must map the algebra into the representation space")
    rep = AxiomReport()
    rep.note(axiom)
    n = b.dim
    cols = la.transpose(c) if r.space_dim else tuple(() for _ in range(n))
    for i in range(n):
        for j in range(i + 1, n):
            lhs = la.mat_vec(c, b.c[i][j]) if r.space_dim else ()
            rhs = la.sub(la.mat_vec(r.rho[i], cols[j]), la.mat_vec(r.rho[j], cols[i]))
            res = la.sub(lhs, rhs)
            if any(res):
                rep.fail(axiom, (i, j), res)
                return rep
    return rep


def coboundary(r: Representation, v0: Sequence) -> Mat:
    """The 1-cocycle x ↦ ρ(x) v0 as a matrix."""
    return la.from_columns([la.mat_vec(m, v0) for m in r.rho])
