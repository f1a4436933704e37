"""k-symplectic and k-para-Kähler data: axiom checks, the h^α splitting,
the products induced on h, p and p*, and the isomorphism onto the double.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from . import linalg as la
from .errors import DegenerateStructure, MissingComplement, SingularPairing
from .lie import AxiomReport, check_subalgebra
from .linalg import Mat, Subspace
from .lsa import KLSA, KxKLSA, check_klsa, check_left_symmetric
from .multilinear import BilinearProduct, TwoForm


@dataclass(frozen=True)
class KSymplecticData:
    k: int
    n: int
    bracket: BilinearProduct
    h: Subspace
    thetas: tuple
    p: Optional[Subspace] = None

    @property
    def g_dim(self) -> int:
        return self.bracket.dim

    def with_complement(self, p: Subspace) -> "KSymplecticData":
        return KSymplecticData(self.k, self.n, self.bracket, self.h, self.thetas, p)


# ---------------------------------------------------------------------------
# axioms


def _check_dimensions(d: KSymplecticData) -> AxiomReport:
    rep = AxiomReport()
    rep.note("dimensions")
    g = d.g_dim
    problems = []
    if g != (d.k + 1) * d.n:
        problems.append((g, (d.k + 1) * d.n))
    if d.h.ambient_dim != g or d.h.dim != d.n * d.k:
        problems.append((d.h.dim, d.n * d.k))
    if len(d.thetas) != d.k or any(t.dim != g for t in d.thetas):
        problems.append((len(d.thetas), d.k))
    if d.p is not None and (d.p.ambient_dim != g or d.p.dim != d.n):
        problems.append((d.p.dim, d.n))
    if problems:
        rep.fail("dimensions", (), problems[0])
    return rep


def _closedness_residual(b: BilinearProduct, t: TwoForm, i: int, j: int, l: int):
    n = b.dim
    return (
        t(b.c[i][j], la.unit(n, l)) + t(b.c[j][l], la.unit(n, i)) + t(b.c[l][i], la.unit(n, j))
    )


def check_nondegenerate(thetas: Sequence[TwoForm], g_dim: int) -> AxiomReport:
    """∩ ker θ^i = 0, i.e. the stacked Gram matrices have full column rank."""
    rep = AxiomReport()
    rep.note("nondegeneracy")
    stacked = tuple(row for t in thetas for row in t.m)
    ker = la.kernel(stacked, g_dim) if stacked else Subspace.full(g_dim)
    if ker.dim:
        rep.fail("nondegeneracy", (), ker.basis[0])
    return rep


def check_closed(b: BilinearProduct, thetas: Sequence[TwoForm]) -> AxiomReport:
    rep = AxiomReport()
    rep.note("closedness")
    n = b.dim
    for a, t in enumerate(thetas):
        for i in range(n):
            for j in range(i + 1, n):
                for l in range(j + 1, n):
                    r = _closedness_residual(b, t, i, j, l)
                    if r:
                        rep.fail("closedness", (a, i, j, l), (r,))
                        return rep
    return rep


def check_isotropic(s: Subspace, thetas: Sequence[TwoForm], axiom: str = "isotropy") -> AxiomReport:
    rep = AxiomReport()
    rep.note(axiom)
    for a, t in enumerate(thetas):
        for i, u in enumerate(s.basis):
            for j in range(i + 1, s.dim):
                v = t(u, s.basis[j])
                if v:
                    rep.fail(axiom, (a, i, j), (v,))
                    return rep
    return rep


def verify_ksymplectic(d: KSymplecticData) -> AxiomReport:
    """Dimensions, nondegeneracy, closedness, isotropy of h and h a subalgebra.

    Antisymmetry of each form is enforced when a :class:`TwoForm` is built,
    so it is recorded as checked without a separate pass.
    """
    rep = _check_dimensions(d)
    if not rep.passed:
        return rep
    rep.note("form-antisymmetry")
    rep.extend(check_nondegenerate(d.thetas, d.g_dim))
    rep.extend(check_closed(d.bracket, d.thetas))
    rep.extend(check_isotropic(d.h, d.thetas))
    rep.extend(check_subalgebra(d.bracket, d.h))
    return rep


def check_complement(h: Subspace, p: Subspace, axiom: str = "complement") -> AxiomReport:
    rep = AxiomReport()
    rep.note(axiom)
    total = la.sum_spaces(h, p)
    if total.dim != h.ambient_dim or h.dim + p.dim != h.ambient_dim:
        rep.fail(axiom, (), (total.dim, h.dim + p.dim))
    return rep


def verify_kparakahler(d: KSymplecticData) -> AxiomReport:
    if d.p is None:
        raise MissingComplement("k-para-Kähler verification needs a complement p")
    rep = verify_ksymplectic(d)
    if rep.failed("dimensions"):
        return rep
    rep.extend(check_subalgebra(d.bracket, d.p, "complement-subalgebra"))
    rep.extend(check_isotropic(d.p, d.thetas, "complement-isotropy"))
    rep.extend(check_complement(d.h, d.p))
    return rep


# ---------------------------------------------------------------------------
# splitting and extraction


def split_h_alpha(d: KSymplecticData) -> list:
    """h^α = {x ∈ h : θ^β(x, ·) = 0 for every β ≠ α}."""
    H = d.h.matrix()
    out = []
    for alpha in range(d.k):
        rows = []
        for beta, t in enumerate(d.thetas):
            if beta != alpha:
                rows.extend(la.mat_mul(t.m, H))
        coeffs = la.kernel_basis(tuple(rows), d.h.dim) if rows else [la.unit(d.h.dim, i) for i in range(d.h.dim)]
        vecs = [la.mat_vec(H, c) for c in coeffs]
        s = Subspace.span(vecs, d.g_dim)
        if s.dim != d.n:
            raise DegenerateStructure(f"h^{alpha + 1} has dimension {s.dim}, expected {d.n}")
        out.append(s)
    if Subspace.span([v for s in out for v in s.basis], d.g_dim).dim != d.h.dim:
        raise DegenerateStructure("the subspaces h^α do not span h")
    return out


@dataclass
class ExtractedStructures:
    """Products induced by a k-para-Kähler structure with complement p.

    ``h_basis`` is the adapted basis of h (the bases of h^1, …, h^k in order);
    ``h_products`` is expressed in it.  Covectors on p use the dual of the
    stored basis of p.
    """

    p: Subspace
    h_alpha: list
    h_basis: tuple
    h_products: BilinearProduct
    i_maps: tuple
    p_bracket: BilinearProduct
    star: tuple
    star_defining: tuple
    pstar_products: tuple
    klsa: KLSA
    kxklsa: KxKLSA
    report: AxiomReport = field(default_factory=AxiomReport)


def _solve_unique(a: Mat, b) -> tuple:
    x = la.solve(a, b)
    if x is None:
        raise SingularPairing("linear system for an induced product is inconsistent")
    return x


def extract_products(d: KSymplecticData) -> ExtractedStructures:
    if d.p is None:
        raise MissingComplement("extraction needs a complement p")
    n, k, g = d.n, d.k, d.g_dim
    b = d.bracket
    thetas = d.thetas
    pb = d.p.basis
    h_alpha = split_h_alpha(d)
    hb = tuple(v for s in h_alpha for v in s.basis)

    # i_α : h^α → p*, column j = i_α(h^α_j) in the dual basis of pb
    i_maps = []
    for alpha, s in enumerate(h_alpha):
        I = tuple(tuple(thetas[alpha](s.basis[j], pb[m]) for j in range(n)) for m in range(n))
        if la.det(I) == 0:
            raise SingularPairing(f"i_{alpha + 1} is not invertible")
        i_maps.append(I)
    i_inv = [la.inverse(I) for I in i_maps]

    rep = AxiomReport()

    # product on h: Θ_α(u•v)(p_m) = −θ^α(v, [u, p_m])
    theta_mat = tuple(
        tuple(thetas[alpha](hb[r], pb[m]) for r in range(n * k)) for alpha in range(k) for m in range(n)
    )
    bracket_up = [[b(u, p) for p in pb] for u in hb]

    def h_prod(s: int, t: int):
        v = hb[t]
        rhs = tuple(-thetas[alpha](v, bracket_up[s][m]) for alpha in range(k) for m in range(n))
        return _solve_unique(theta_mat, rhs)

    h_products = BilinearProduct.from_function(n * k, h_prod)

    rep.note("representative-independence")
    done = False
    for s, u in enumerate(hb):
        for t, v in enumerate(hb):
            for r, w in enumerate(d.h.basis):
                for alpha in range(k):
                    x = thetas[alpha](v, b(u, w))
                    if x:
                        rep.fail("representative-independence", (alpha, s, t, r), (x,))
                        done = True
                        break
                if done:
                    break
            if done:
                break
        if done:
            break

    # left symmetry and Lie-admissibility on h
    sub = check_left_symmetric(h_products, "h-left-symmetric")
    rep.extend(sub)
    rep.note("h-lie-admissible")
    hb_mat = la.from_columns(hb)
    for s in range(n * k):
        for t in range(s + 1, n * k):
            lhs = la.mat_vec(hb_mat, la.sub(h_products.c[s][t], h_products.c[t][s]))
            if lhs != b(hb[s], hb[t]):
                rep.fail("h-lie-admissible", (s, t), la.sub(lhs, b(hb[s], hb[t])))
                break
        if rep.failed("h-lie-admissible"):
            break
    rep.note("h-preserves-h-alpha")
    for s in range(n * k):
        for t in range(n * k):
            beta = t // n
            w = h_products.c[s][t]
            off = [x for r, x in enumerate(w) if x and r // n != beta]
            if off:
                rep.fail("h-preserves-h-alpha", (s, t), w)
                break
        if rep.failed("h-preserves-h-alpha"):
            break

    # bracket on p in the basis pb
    pmat = la.from_columns(pb)

    def p_coords(v):
        x = la.solve(pmat, v)
        if x is None:
            raise MissingComplement("p is not closed under the bracket")
        return x

    p_bracket = BilinearProduct.from_function(n, lambda i, j: p_coords(b(pb[i], pb[j])))

    # ⋆_{α,β}: θ^α(p_i ⋆ p_j, h) = −θ^β(p_j, [p_i, h]) for h ∈ h^α
    star = []
    for alpha in range(k):
        ha = h_alpha[alpha].basis
        lhs = tuple(tuple(thetas[alpha](pb[m], ha[l]) for m in range(n)) for l in range(n))
        row = []
        for beta in range(k):
            def f(i, j, alpha=alpha, beta=beta, ha=ha, lhs=lhs):
                rhs = tuple(-thetas[beta](pb[j], b(pb[i], ha[l])) for l in range(n))
                return _solve_unique(lhs, rhs)

            row.append(BilinearProduct.from_function(n, f))
        star.append(tuple(row))
    # The defining relation pairs the first index with h^α while ψ reads the
    # first index as the source block; transpose so the double reproduces g.
    star_defining = tuple(star)
    star = tuple(tuple(star_defining[beta][alpha] for beta in range(k)) for alpha in range(k))

    rep.note("star-diagonal-commutator")
    for alpha in range(k):
        if star[alpha][alpha].commutator() != p_bracket:
            rep.fail("star-diagonal-commutator", (alpha,))
            break
    rep.note("star-off-diagonal-commutative")
    for alpha in range(k):
        for beta in range(k):
            if alpha != beta and not star[alpha][beta].is_commutative():
                if not rep.failed("star-off-diagonal-commutative"):
                    rep.fail("star-off-diagonal-commutative", (alpha, beta))

    # •_{αβ} on p*: a •_{αβ} b = i_β(i_α⁻¹(a) • i_β⁻¹(b))
    def embed(alpha: int, coords):
        out = [la.ZERO] * (n * k)
        out[alpha * n:(alpha + 1) * n] = coords
        return tuple(out)

    def pstar(alpha: int, beta: int) -> BilinearProduct:
        def f(s, t):
            u = embed(alpha, la.mat_vec(i_inv[alpha], la.unit(n, s)))
            v = embed(beta, la.mat_vec(i_inv[beta], la.unit(n, t)))
            w = h_products(u, v)
            return la.mat_vec(i_maps[beta], w[beta * n:(beta + 1) * n])

        return BilinearProduct.from_function(n, f)

    grid = [[pstar(alpha, beta) for beta in range(k)] for alpha in range(k)]
    rep.note("pstar-independent-of-beta")
    for alpha in range(k):
        for beta in range(k):
            if grid[alpha][beta] != grid[alpha][alpha]:
                if not rep.failed("pstar-independent-of-beta"):
                    rep.fail("pstar-independent-of-beta", (alpha, beta))
    pstar_products = tuple(grid[alpha][alpha] for alpha in range(k))

    klsa = KLSA(n, k, pstar_products)
    kxklsa = KxKLSA(n, k, star, p_bracket)
    rep.extend(check_klsa(klsa), "pstar-")

    return ExtractedStructures(
        p=d.p,
        h_alpha=h_alpha,
        h_basis=hb,
        h_products=h_products,
        i_maps=tuple(i_maps),
        p_bracket=p_bracket,
        star=star,
        star_defining=star_defining,
        pstar_products=pstar_products,
        klsa=klsa,
        kxklsa=kxklsa,
        report=rep,
    )


def build_F_iso(d: KSymplecticData, e: ExtractedStructures) -> tuple:
    """The map F(h_1 + … + h_k + p) = (p, i_1(h_1), …, i_k(h_k)) and its checks.

    Returns ``(F, report)``; F is a matrix from coordinates of g to the
    coordinates of the double built from the extracted structures.
    """
    from .double import build_phantom

    n, k, g = d.n, d.k, d.g_dim
    T = la.from_columns(tuple(e.p.basis) + tuple(e.h_basis))
    rep = AxiomReport()
    rep.note("bijective")
    if la.det(T) == 0:
        rep.fail("bijective")
        return None, rep
    blocks = [[la.identity(n) if i == j else la.zeros(n, n) for j in range(k + 1)] for i in range(k + 1)]
    for alpha in range(k):
        blocks[alpha + 1][alpha + 1] = e.i_maps[alpha]
    F = la.mat_mul(la.block_matrix(blocks), la.inverse(T))

    phantom = build_phantom(e.kxklsa, e.klsa)
    cols = la.transpose(F)
    rep.note("lie-homomorphism")
    for i in range(g):
        for j in range(i + 1, g):
            lhs = la.mat_vec(F, d.bracket.c[i][j])
            rhs = phantom.bracket(cols[i], cols[j])
            if lhs != rhs:
                rep.fail("lie-homomorphism", (i, j), la.sub(lhs, rhs))
                break
        if rep.failed("lie-homomorphism"):
            break
    rep.note("forms")
    for alpha in range(k):
        pulled = phantom.rhos[alpha].pullback(F)
        if pulled.m != d.thetas[alpha].m:
            diff = la.mat_sub(pulled.m, d.thetas[alpha].m)
            i, j = next((i, j) for i in range(g) for j in range(g) if diff[i][j])
            rep.fail("forms", (alpha, i, j), (diff[i][j],))
            break
    return F, rep
