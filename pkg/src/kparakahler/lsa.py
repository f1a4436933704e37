"""Left-symmetric structures: k-LSAs, (k×k)-LSAs and the Gelfand construction.

Block layout of A^k: copy α (0-based) occupies coordinates [αn, (α+1)n).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import linalg as la
from .errors import DerivationsDoNotCommute, NotADerivation, NotCommutativeAssociative
from .lie import AxiomReport, Representation, check_representation
from .linalg import ZERO, Mat
from .multilinear import BilinearProduct, apply, left_mult_basis


@dataclass(frozen=True)
class KLSA:
    """k products •_1, …, •_k on one n-dimensional space."""

    n: int
    k: int
    products: tuple

    def __post_init__(self):
        if len(self.products) != self.k:
            raise la.DimensionError(f"expected {self.k} products, got {len(self.products)}")
        for p in self.products:
            if p.dim != self.n:
                raise la.DimensionError("product dimension does not match n")

    @classmethod
    def trivial(cls, n: int, k: int) -> "KLSA":
        return cls(n, k, tuple(BilinearProduct.zero(n) for _ in range(k)))

    def L(self, alpha: int, a: Sequence) -> Mat:
        """Left multiplication b ↦ a •_α b."""
        from .multilinear import left_mult

        return left_mult(self.products[alpha], a)


@dataclass(frozen=True)
class KxKLSA:
    """A k×k grid of products ⋆_{α,β} together with the bracket they should induce."""

    n: int
    k: int
    star: tuple
    bracket: BilinearProduct

    def __post_init__(self):
        if len(self.star) != self.k or any(len(row) != self.k for row in self.star):
            raise la.DimensionError("star must be a k×k grid of products")
        for row in self.star:
            for p in row:
                if p.dim != self.n:
                    raise la.DimensionError("product dimension does not match n")
        if self.bracket.dim != self.n:
            raise la.DimensionError("bracket dimension does not match n")

    @classmethod
    def trivial(cls, n: int, k: int) -> "KxKLSA":
        z = BilinearProduct.zero(n)
        return cls(n, k, tuple(tuple(z for _ in range(k)) for _ in range(k)), z)

    @classmethod
    def from_diagonal(cls, products: Sequence[BilinearProduct]) -> "KxKLSA":
        """⋆_{α,α} = •_α and ⋆_{α,β} = 0 otherwise; bracket from •_1."""
        k = len(products)
        n = products[0].dim
        z = BilinearProduct.zero(n)
        star = tuple(tuple(products[a] if a == b else z for b in range(k)) for a in range(k))
        return cls(n, k, star, products[0].commutator())

    def L(self, q: Sequence, alpha: int, beta: int) -> Mat:
        """L_q^{α,β} : p ↦ q ⋆_{α,β} p."""
        from .multilinear import left_mult

        return left_mult(self.star[alpha][beta], q)


@dataclass(frozen=True)
class CommAssocAlgebra:
    n: int
    product: BilinearProduct


# ---------------------------------------------------------------------------
# left symmetry


def _ass_basis(p: BilinearProduct, i: int, j: int, l: int):
    c = p.c
    n = p.dim
    return la.sub(apply(p, c[i][j], la.unit(n, l)), apply(p, la.unit(n, i), c[j][l]))


def check_left_symmetric(p: BilinearProduct, axiom: str = "left-symmetry") -> AxiomReport:
    """ass(x, y, z) = ass(y, x, z) on all basis triples."""
    rep = AxiomReport()
    rep.note(axiom)
    n = p.dim
    for i in range(n):
        for j in range(i + 1, n):
            for l in range(n):
                r = la.sub(_ass_basis(p, i, j, l), _ass_basis(p, j, i, l))
                if any(r):
                    rep.fail(axiom, (i, j, l), r)
                    return rep
    return rep


def _mixed(pa: BilinearProduct, pb: BilinearProduct, i: int, j: int, l: int):
    """a •_α (b •_β c) − (a •_α b) •_β c for basis a, b, c."""
    n = pa.dim
    ei, el = la.unit(n, i), la.unit(n, l)
    return la.sub(apply(pa, ei, pb.c[j][l]), apply(pb, pa.c[i][j], el))


def mixed_associator_residual(a: KLSA, alpha: int, beta: int, i: int, j: int, l: int):
    pa, pb = a.products[alpha], a.products[beta]
    return la.sub(_mixed(pa, pb, i, j, l), _mixed(pb, pa, j, i, l))


def check_mixed_associator(a: KLSA) -> AxiomReport:
    """The pairwise identity between •_α and •_β on basis triples, all (α, β)."""
    rep = AxiomReport()
    rep.note("mixed-associator")
    n = a.n
    for alpha in range(a.k):
        for beta in range(alpha, a.k):
            for i in range(n):
                for j in range(n):
                    for l in range(n):
                        r = mixed_associator_residual(a, alpha, beta, i, j, l)
                        if any(r):
                            rep.fail("mixed-associator", (alpha, beta, i, j, l), r)
                            return rep
    return rep


def check_klsa(a: KLSA) -> AxiomReport:
    rep = AxiomReport()
    for alpha, p in enumerate(a.products):
        sub = check_left_symmetric(p)
        for f in sub.failures:
            rep.fail("left-symmetry", (alpha,) + f.witness, f.residual)
        rep.note("left-symmetry")
    rep.extend(check_mixed_associator(a))
    return rep


def build_circ(a: KLSA) -> BilinearProduct:
    """The product ∘ on A^k: (x ∘ y)_γ = Σ_α x_α •_α y_γ."""
    n, k = a.n, a.k
    terms = []
    for alpha, p in enumerate(a.products):
        for i, j, l, x in p.terms():
            for beta in range(k):
                terms.append((alpha * n + i, beta * n + j, beta * n + l, x))
    return BilinearProduct.from_terms(n * k, terms)


def build_phi(a: KLSA) -> Representation:
    """φ_{(x_1..x_k)} = Σ_α L^α_{x_α}, a candidate representation of (A^k, [ , ]_∘) on A."""
    rho = []
    for alpha, p in enumerate(a.products):
        for i in range(a.n):
            rho.append(left_mult_basis(p, i))
    return Representation(a.n * a.k, a.n, tuple(rho))


def check_phi_representation(a: KLSA) -> AxiomReport:
    return check_representation(build_circ(a).commutator(), build_phi(a), "phi-representation")


# ---------------------------------------------------------------------------
# (k×k) structures


def build_psi(b: KxKLSA) -> Representation:
    """ψ_q on p^k: output block β collects Σ_α L_q^{α,β} p_α."""
    n, k = b.n, b.k
    rho = []
    for i in range(n):
        blocks = [[left_mult_basis(b.star[alpha][beta], i) for alpha in range(k)] for beta in range(k)]
        rho.append(la.block_matrix(blocks))
    return Representation(n, n * k, tuple(rho))


def componentwise_psi_residual(b: KxKLSA, alpha: int, gamma: int, i: int, j: int) -> Mat:
    """L^{α,γ}_{[u,v]} − Σ_β (L_u^{β,γ} L_v^{α,β} − L_v^{β,γ} L_u^{α,β}) for u = e_i, v = e_j."""
    n = b.n
    lhs = b.L(b.bracket.c[i][j], alpha, gamma)
    acc = la.zeros(n, n)
    for beta in range(b.k):
        Lu_bg = left_mult_basis(b.star[beta][gamma], i)
        Lv_ab = left_mult_basis(b.star[alpha][beta], j)
        Lv_bg = left_mult_basis(b.star[beta][gamma], j)
        Lu_ab = left_mult_basis(b.star[alpha][beta], i)
        acc = la.mat_add(acc, la.mat_sub(la.mat_mul(Lu_bg, Lv_ab), la.mat_mul(Lv_bg, Lu_ab)))
    return la.mat_sub(lhs, acc)


def check_componentwise_psi(b: KxKLSA) -> AxiomReport:
    rep = AxiomReport()
    rep.note("componentwise-identity")
    for i in range(b.n):
        for j in range(i + 1, b.n):
            for alpha in range(b.k):
                for gamma in range(b.k):
                    r = componentwise_psi_residual(b, alpha, gamma, i, j)
                    if any(any(row) for row in r):
                        rep.fail("componentwise-identity", (alpha, gamma, i, j), r)
                        return rep
    return rep


def check_kxklsa(b: KxKLSA) -> AxiomReport:
    """Diagonal commutators, off-diagonal commutativity and ψ as a representation.

    The representation property is checked twice, once through the assembled
    block matrices and once component by component; a disagreement between the
    two is itself reported.
    """
    rep = AxiomReport()
    n, k = b.n, b.k
    rep.note("diagonal-commutator")
    for alpha in range(k):
        comm = b.star[alpha][alpha].commutator()
        if comm != b.bracket:
            i, j = next((i, j) for i in range(n) for j in range(n) if comm.c[i][j] != b.bracket.c[i][j])
            rep.fail("diagonal-commutator", (alpha, i, j), la.sub(comm.c[i][j], b.bracket.c[i][j]))
            break
    rep.note("off-diagonal-commutativity")
    done = False
    for alpha in range(k):
        for beta in range(k):
            if alpha == beta or done:
                continue
            p = b.star[alpha][beta]
            for i in range(n):
                for j in range(i + 1, n):
                    if p.c[i][j] != p.c[j][i]:
                        rep.fail("off-diagonal-commutativity", (alpha, beta, i, j), la.sub(p.c[i][j], p.c[j][i]))
                        done = True
                        break
                if done:
                    break
    via_rep = check_representation(b.bracket, build_psi(b), "psi-representation")
    via_components = check_componentwise_psi(b)
    rep.extend(via_rep)
    rep.extend(via_components)
    if via_rep.passed != via_components.passed:
        rep.fail("psi-identity-disagreement")
    return rep


# ---------------------------------------------------------------------------
# Gelfand construction


def check_comm_assoc(A: CommAssocAlgebra) -> AxiomReport:
    rep = AxiomReport()
    p = A.product
    rep.note("commutative")
    if not p.is_commutative():
        i, j = next((i, j) for i in range(p.dim) for j in range(p.dim) if p.c[i][j] != p.c[j][i])
        rep.fail("commutative", (i, j), la.sub(p.c[i][j], p.c[j][i]))
    rep.note("associative")
    for i in range(p.dim):
        for j in range(p.dim):
            for l in range(p.dim):
                r = _ass_basis(p, i, j, l)
                if any(r):
                    rep.fail("associative", (i, j, l), r)
                    return rep
    return rep


def derivation_residual(A: CommAssocAlgebra, D: Mat, i: int, j: int):
    p = A.product
    n = A.n
    Di = tuple(row[i] for row in D)
    Dj = tuple(row[j] for row in D)
    lhs = la.mat_vec(D, p.c[i][j])
    rhs = la.add(apply(p, Di, la.unit(n, j)), apply(p, la.unit(n, i), Dj))
    return la.sub(lhs, rhs)


def gelfand(A: CommAssocAlgebra, D1: Mat, D2: Mat) -> KLSA:
    """The pair of products a •_i b = a·(D_i b) from two commuting derivations."""
    if not check_comm_assoc(A).passed:
        raise NotCommutativeAssociative(check_comm_assoc(A).summary())
    n = A.n
    for which, D in ((1, D1), (2, D2)):
        if la.shape(D) != (n, n):
            raise la.DimensionError(f"D{which} must be {n}×{n}")
        for i in range(n):
            for j in range(i, n):
                r = derivation_residual(A, D, i, j)
                if any(r):
                    raise NotADerivation(which, (i, j), r)
    if la.mat_mul(D1, D2) != la.mat_mul(D2, D1):
        raise DerivationsDoNotCommute("D1 D2 != D2 D1")
    products = []
    for D in (D1, D2):
        cols = la.transpose(D)
        products.append(
            BilinearProduct.from_function(n, lambda i, j, cols=cols: apply(A.product, la.unit(n, i), cols[j]))
        )
    return KLSA(n, 2, tuple(products))


__all__ = [
    "KLSA",
    "KxKLSA",
    "CommAssocAlgebra",
    "check_left_symmetric",
    "check_klsa",
    "check_mixed_associator",
    "build_circ",
    "build_phi",
    "check_phi_representation",
    "build_psi",
    "check_kxklsa",
    "check_componentwise_psi",
    "check_comm_assoc",
    "gelfand",
    "ZERO",
]
