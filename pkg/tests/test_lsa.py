import random

import pytest

from kparakahler import linalg as la
from kparakahler.catalog import TABLE1, get_entry, get_example, instantiate, r4_algebra, r4_derivations, sample_assignment
from kparakahler.errors import DerivationsDoNotCommute, NotADerivation
from kparakahler.lie import check_representation
from kparakahler.lsa import (
    KLSA,
    CommAssocAlgebra,
    KxKLSA,
    build_circ,
    build_phi,
    build_psi,
    check_componentwise_psi,
    check_klsa,
    check_kxklsa,
    check_left_symmetric,
    gelfand,
)
from kparakahler.multilinear import BilinearProduct, apply, left_mult

from helpers import random_klsa_products


def prod(n, terms):
    return BilinearProduct.from_terms(n, terms)


def test_left_symmetric_examples():
    comm_assoc = prod(2, [(0, 0, 0, 1), (0, 1, 1, 1), (1, 0, 1, 1)])
    assert check_left_symmetric(comm_assoc).passed
    b2 = instantiate(get_entry(1, "b_2"), {"a": 1}).products[0]
    assert check_left_symmetric(b2).passed
    # e1·e2 = e1, e2·e1 = e2: (e1,e2,e1) associator differs from (e2,e1,e1)
    rep = check_left_symmetric(prod(2, [(0, 1, 0, 1), (1, 0, 1, 1)]))
    assert not rep.passed


def test_klsa_examples():
    p = instantiate(get_entry(1, "b_2"), {"a": 1}).products[0]
    assert check_klsa(KLSA(2, 3, (p, p, p))).passed
    assert check_klsa(instantiate(get_entry(1, "b_{1,1/2}"), {"a": 1, "b": 1})).passed
    assert check_klsa(instantiate(get_example("gelfand_r4"), {"a": 1, "b": 2, "c": 3})).passed


def test_klsa_mixed_failure_is_caught():
    # each product is left-symmetric but the pair is not
    p1 = prod(2, [(1, 0, 0, 1), (1, 1, 1, 1)])
    p2 = prod(2, [(0, 0, 1, 1)])
    assert check_left_symmetric(p1).passed and check_left_symmetric(p2).passed
    rep = check_klsa(KLSA(2, 2, (p1, p2)))
    assert rep.passed == check_left_symmetric(build_circ(KLSA(2, 2, (p1, p2)))).passed


def test_build_circ_collapses_for_k1_and_zero():
    p = instantiate(get_entry(1, "b_2"), {"a": 1}).products[0]
    assert build_circ(KLSA(2, 1, (p,))) == p
    assert build_circ(KLSA.trivial(2, 3)) == BilinearProduct.zero(6)


def test_build_circ_b11_left_mult_is_identity_on_both_blocks():
    A = instantiate(get_entry(1, "b_{1,1}"), {"a": 0, "b": 1})
    circ = build_circ(A)
    L = left_mult(circ, la.unit(4, 1))  # (e2*, 0)
    assert L == la.identity(4)


def test_phi_representation():
    assert check_representation(BilinearProduct.zero(4), build_phi(KLSA.trivial(2, 2))).passed
    A = instantiate(get_entry(1, "b_{3,1}"), {"a": 1, "b": 0})
    assert check_representation(build_circ(A).commutator(), build_phi(A)).passed


def test_phi_detects_corrupted_klsa():
    A = instantiate(get_entry(1, "b_{1,1}"), {"a": 0, "b": 1})
    c = [[list(v) for v in row] for row in A.products[0].c]
    c[1][0][0] += 1  # e2 •_1 e1 = 2 e1
    bad = KLSA(2, 2, (BilinearProduct(2, tuple(tuple(tuple(v) for v in row) for row in c)), A.products[1]))
    assert not check_representation(build_circ(bad).commutator(), build_phi(bad)).passed
    assert not check_klsa(bad).passed


def test_kxklsa_examples():
    assert check_kxklsa(KxKLSA.trivial(2, 2)).passed
    p = instantiate(get_entry(1, "b_2"), {"a": 1}).products[0]
    assert check_kxklsa(KxKLSA.from_diagonal([p, p])).passed
    B, _ = instantiate(get_entry(2, "bb_4"), {"a": 1, "c": 1})
    assert check_kxklsa(B).passed
    B, _ = instantiate(get_entry(2, "bb_{1,alpha}"), {"a": 1, "c": 1, "d": 1})
    assert check_kxklsa(B).passed


def test_kxklsa_reports_diagonal_and_commutativity_failures():
    p = instantiate(get_entry(1, "b_2"), {"a": 1}).products[0]
    z = BilinearProduct.zero(2)
    rep = check_kxklsa(KxKLSA(2, 2, ((p, z), (z, z)), p.commutator()))
    assert rep.failed("diagonal-commutator")
    nc = prod(2, [(0, 1, 0, 1)])
    rep = check_kxklsa(KxKLSA(2, 2, ((z, nc), (z, z)), z))
    assert rep.failed("off-diagonal-commutativity")


def test_psi_zero_and_k1():
    psi = build_psi(KxKLSA.trivial(2, 2))
    assert all(m == la.zeros(4, 4) for m in psi.rho)
    p = instantiate(get_entry(1, "b_2"), {"a": 1}).products[0]
    B = KxKLSA.from_diagonal([p])
    psi = build_psi(B)
    for i in range(2):
        assert psi.rho[i] == left_mult(p, la.unit(2, i))
    assert check_representation(p.commutator(), psi).passed


def test_gelfand_example_products():
    for a, b, c in [(1, 2, 3), (0, 0, 0), (-2, 1, 5)]:
        A = gelfand(r4_algebra(), *r4_derivations(a, b, c))
        e = [la.unit(4, i) for i in range(4)]
        for i in (1, 2, 3):
            assert apply(A.products[0], e[0], e[i]) == e[i]
        assert apply(A.products[1], e[0], e[2]) == la.scale(a, e[1])
        assert apply(A.products[1], e[0], e[3]) == la.add(la.scale(b, e[1]), la.scale(c, e[2]))
        assert check_klsa(A).passed


def test_gelfand_trivial_and_one_dim():
    A = gelfand(r4_algebra(), la.zeros(4, 4), la.zeros(4, 4))
    assert all(p == BilinearProduct.zero(4) for p in A.products)
    # the identity is not a derivation of e·e = e, since D(e·e) = e but D(e)·e + e·D(e) = 2e
    one = CommAssocAlgebra(1, prod(1, [(0, 0, 0, 1)]))
    with pytest.raises(NotADerivation):
        gelfand(one, la.identity(1), la.zeros(1, 1))
    # on the zero product it is, and a •_1 b = a·(D b) vanishes
    null = CommAssocAlgebra(1, BilinearProduct.zero(1))
    assert gelfand(null, la.identity(1), la.zeros(1, 1)).products[0] == BilinearProduct.zero(1)


def test_gelfand_errors():
    with pytest.raises(NotADerivation):
        gelfand(r4_algebra(), la.identity(4), la.zeros(4, 4))
    D1 = la.mat([[0, 0, 0, 0], [0, 1, 0, 0], [0, 0, 2, 0], [0, 0, 0, 3]])
    D2 = la.mat([[0, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 0], [0, 0, 0, 0]])
    with pytest.raises(DerivationsDoNotCommute):
        gelfand(r4_algebra(), D1, D2)


def test_klsa_verdict_matches_circ_left_symmetry_random():
    rng = random.Random(11)
    seen = set()
    for _ in range(150):
        A = random_klsa_products(rng, rng.choice([1, 2]), rng.choice([1, 2, 3]))
        v = check_klsa(A).passed
        assert v == check_left_symmetric(build_circ(A)).passed
        seen.add(v)
    for e in TABLE1:
        A = instantiate(e, sample_assignment(e, rng))
        assert check_klsa(A).passed == check_left_symmetric(build_circ(A)).passed
    assert seen == {True, False}


def test_psi_verdicts_agree_random():
    rng = random.Random(3)
    for _ in range(60):
        n, k = rng.choice([1, 2]), rng.choice([1, 2])
        star = tuple(tuple(random_klsa_products(rng, n, 1).products[0] for _ in range(k)) for _ in range(k))
        B = KxKLSA(n, k, star, star[0][0].commutator())
        psi_ok = check_representation(B.bracket, build_psi(B)).passed
        assert psi_ok == check_componentwise_psi(B).passed
