"""Seeded random generators of small exact structures for property tests."""

from __future__ import annotations

import random
from fractions import Fraction

from kparakahler import linalg as la
from kparakahler.catalog import TABLE1, TABLE2, instantiate, sample_assignment
from kparakahler.double import RMatrixFamily, psi_from_r
from kparakahler.errors import HypothesisViolation
from kparakahler.lie import check_jacobi
from kparakahler.lowdim import LowDimSpec, build_lowdim
from kparakahler.lsa import KLSA, KxKLSA, CommAssocAlgebra, gelfand
from kparakahler.multilinear import BilinearProduct

SMALL = [Fraction(x) for x in (-2, -1, 1, 2)] + [Fraction(1, 2), Fraction(-1, 2)]


def small(rng: random.Random) -> Fraction:
    return rng.choice(SMALL)


def sparse_product(rng: random.Random, n: int, density: float = 0.15) -> BilinearProduct:
    terms = [(i, j, l, small(rng)) for i in range(n) for j in range(n) for l in range(n) if rng.random() < density]
    return BilinearProduct.from_terms(n, terms)


def random_klsa_products(rng: random.Random, n: int, k: int) -> KLSA:
    return KLSA(n, k, tuple(sparse_product(rng, n) for _ in range(k)))


def one_dim_pair(rng: random.Random, k: int) -> tuple:
    """n = 1: every choice of scalars is a KLSA and a (k×k) structure."""
    prods = tuple(BilinearProduct.from_terms(1, [(0, 0, 0, rng.choice([0, 0] + SMALL))]) for _ in range(k))
    star = tuple(
        tuple(BilinearProduct.from_terms(1, [(0, 0, 0, rng.choice([0, 0] + SMALL))]) for _ in range(k))
        for _ in range(k)
    )
    return KxKLSA(1, k, star, BilinearProduct.zero(1)), KLSA(1, k, prods)


def r3_gelfand(rng: random.Random) -> KLSA:
    """Gelfand structure on R^3 with unit e1 and commuting diagonal derivations."""
    terms = [(0, 0, 0, 1), (0, 1, 1, 1), (1, 0, 1, 1), (0, 2, 2, 1), (2, 0, 2, 1)]
    A = CommAssocAlgebra(3, BilinearProduct.from_terms(3, terms))
    D1 = la.mat([[0, 0, 0], [0, small(rng), 0], [0, 0, small(rng)]])
    D2 = la.mat([[0, 0, 0], [0, small(rng), 0], [0, 0, small(rng)]])
    return gelfand(A, D1, D2)


def scaled_copies(rng: random.Random, base: BilinearProduct, k: int) -> KLSA:
    return KLSA(base.dim, k, tuple(base.scaled(rng.choice([0] + SMALL)) for _ in range(k)))


def random_r(rng: random.Random, n: int, k: int, symmetric: bool = True) -> RMatrixFamily:
    mats = []
    for _ in range(k):
        m = [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            for j in range(i if symmetric else 0, n):
                if rng.random() < 0.4:
                    m[i][j] = small(rng)
                    if symmetric:
                        m[j][i] = m[i][j]
        mats.append(la.mat(m))
    return RMatrixFamily(n, k, tuple(mats))


def random_valid_pair(rng: random.Random) -> tuple:
    """(B, A) with both structures satisfying their own axioms; compatibility varies."""
    kind = rng.randrange(5)
    if kind == 0:
        return one_dim_pair(rng, rng.choice([1, 2, 3]))
    if kind == 1:
        e1 = rng.choice(TABLE1)
        A = instantiate(e1, sample_assignment(e1, rng))
        e2 = rng.choice(TABLE2)
        B, _ = instantiate(e2, sample_assignment(e2, rng))
        return B, A
    if kind == 2:
        A = r3_gelfand(rng)
        return KxKLSA.trivial(3, 2), A
    if kind == 3:
        e1 = rng.choice(TABLE1)
        A = instantiate(e1, sample_assignment(e1, rng))
        try:
            return psi_from_r(A, random_r(rng, 2, 2)), A
        except HypothesisViolation:
            return KxKLSA.trivial(2, 2), A
    e2 = rng.choice(TABLE2)
    return instantiate(e2, sample_assignment(e2, rng))


def random_lowdim(rng: random.Random, k: int, entries=(-2, -1, 0, 1, 2)) -> LowDimSpec:
    a = [rng.choice(entries) for _ in range(k)]
    D = [[rng.choice(entries) for _ in range(k)] for _ in range(k)]
    return LowDimSpec.of(a, D)


def jacobi_lowdim_k2(rng: random.Random) -> LowDimSpec:
    """Rejection-sampled k = 2 data satisfying Jacobi."""
    while True:
        s = random_lowdim(rng, 2)
        if check_jacobi(build_lowdim(s).bracket).passed:
            return s


def normal_form_lowdim(rng: random.Random, k: int, a1=None) -> tuple:
    """Data (ℓ, D) with prescribed (λ, b): D g_1 = λ g_1 + Σ b_i g_i and D g_i = −λ g_i, g_i = a_1 f_i − a_i f_1."""
    a = [Fraction(a1 if a1 is not None else rng.choice([-2, -1, 1, 2, 3]))] + [small(rng) if rng.random() < 0.6 else Fraction(0) for _ in range(k - 1)]
    lam = rng.choice([0] + SMALL)
    b = [rng.choice([0] + SMALL) for _ in range(k - 1)]
    g = [la.unit(k, 0)] + [la.sub(la.scale(a[0], la.unit(k, i)), la.scale(a[i], la.unit(k, 0))) for i in range(1, k)]
    images = [la.add(la.scale(lam, g[0]), la.lincomb(b, g[1:], k))] + [la.scale(-lam, gi) for gi in g[1:]]
    G = la.from_columns(g)
    D = la.mat_mul(la.from_columns(images), la.inverse(G))
    return LowDimSpec.of(a, D), lam, tuple(b)
