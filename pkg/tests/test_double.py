import random

import pytest

from kparakahler import linalg as la
from kparakahler.catalog import TABLE1, TABLE2, get_entry, get_example, instantiate, sample_assignment
from kparakahler.double import (
    K_matrix,
    RMatrixFamily,
    build_bracket_r,
    build_bracket_triangle_r,
    build_phantom,
    check_compatibility,
    check_quasi_sk,
    check_sk_matrix,
    compatibility_report,
    psi_from_r,
    symmetric_twisted_form_matrix,
    twisted_forms,
    verify_K_iso,
)
from kparakahler.errors import HypothesisViolation
from kparakahler.ksymplectic import verify_kparakahler
from kparakahler.lie import check_jacobi
from kparakahler.lsa import KLSA, KxKLSA, check_kxklsa
from kparakahler.multilinear import BilinearProduct

from helpers import random_r, random_valid_pair

E1, E2, F1, F2, F3, F4 = range(6)


def unit6(i):
    return la.unit(6, i)


def s2_instance(a, b, c, r22=1, r24=1, r44=1, s11=1, s12=1):
    v = dict(a=a, b=b, c=c, r22=r22, r24=r24, r44=r44, s11=s11, s12=s12)
    return instantiate(get_example("s2_matrix_r4"), v)


def one_dim_klsa(k, scale=1):
    e = BilinearProduct.from_terms(1, [(0, 0, 0, scale)])
    return KLSA(1, k, tuple(e for _ in range(k)))


def test_zero_double_is_abelian():
    ph = build_phantom(KxKLSA.trivial(2, 2), KLSA.trivial(2, 2))
    assert ph.bracket == BilinearProduct.zero(6)
    assert verify_kparakahler(ph.as_ksymplectic()).passed


def test_double_of_bb11_matches_table3():
    B, A = instantiate(get_entry(2, "bb_{1,1}"), {"b": 1})
    ph = build_phantom(B, A)
    assert ph.bracket(unit6(F1), unit6(F2)) == la.scale(-1, unit6(F1))
    assert ph.bracket(unit6(F2), unit6(E1)) == la.scale(-1, unit6(E1))
    assert ph.bracket == instantiate(get_entry(3, "bb_{1,1}"), {"b": 1}).bracket


def test_double_of_cc5plus_matches_table3():
    v = {"a": 1, "b": 0, "c": 1}
    B, A = instantiate(get_entry(2, "cc_5^+"), v)
    assert build_phantom(B, A).bracket == instantiate(get_entry(3, "cc_5^+"), v).bracket


def test_build_phantom_shape_mismatch():
    with pytest.raises(la.DimensionError):
        build_phantom(KxKLSA.trivial(2, 2), KLSA.trivial(3, 2))


def test_trivial_partners_are_compatible():
    rng = random.Random(1)
    for e in TABLE1:
        A = instantiate(e, sample_assignment(e, rng))
        assert check_compatibility(KxKLSA.trivial(2, 2), A).passed
    for e in TABLE2:
        B, _ = instantiate(e, sample_assignment(e, rng))
        assert check_compatibility(B, KLSA.trivial(2, 2)).passed


def test_bb2_branch_and_cross_pairing():
    B1, A1 = instantiate(get_entry(2, "bb_2[a=1]"), {"c": 1})
    assert check_compatibility(B1, A1).passed
    _, A2 = instantiate(get_entry(2, "bb_2[a!=1]"), {"a": 2})
    rep = compatibility_report(B1, A2)
    assert rep.hypotheses_hold
    assert not rep.cocycles.passed and not rep.phantom_jacobi.passed


def test_cocycle_verdict_matches_double_jacobi_random():
    rng = random.Random(5)
    verdicts = set()
    for _ in range(120):
        B, A = random_valid_pair(rng)
        rep = compatibility_report(B, A)
        if rep.hypotheses_hold:
            assert rep.verdicts_agree
            verdicts.add(rep.cocycles.passed)
    assert verdicts == {True, False}


def test_psi_from_zero_r():
    A = instantiate(get_entry(1, "b_2"), {"a": 1})
    B = psi_from_r(A, RMatrixFamily.zero(2, 2))
    assert B == KxKLSA.trivial(2, 2)


def test_psi_from_r_rejects_bad_antisymmetric_part():
    A = instantiate(get_entry(1, "b_{1,1}"), {"a": 0, "b": 1})
    r = RMatrixFamily(2, 2, (la.mat([[0, 1], [-1, 0]]), la.zeros(2, 2)))
    with pytest.raises(HypothesisViolation):
        psi_from_r(A, r)


def test_example_s2_matrix_with_b_c_zero():
    for a in (0, 1, -3):
        A, r = s2_instance(a, 0, 0)
        assert check_sk_matrix(A, r).passed
        B = psi_from_r(A, r)
        assert check_kxklsa(B).passed and check_compatibility(B, A).passed


@pytest.mark.parametrize("abc", [(1, 1, 1), (0, 1, 0), (0, 0, 1)])
def test_example_s2_matrix_fails_when_b_or_c_nonzero(abc):
    # every independent oracle agrees the pair is not an S_2-matrix here
    A, r = s2_instance(*abc)
    assert not check_sk_matrix(A, r).passed
    assert not check_quasi_sk(A, r).passed
    B = psi_from_r(A, r)
    assert not check_kxklsa(B).passed
    assert not check_jacobi(build_bracket_r(A, r, check=False).bracket).passed


def test_sk_zero_and_one_dim_scaled_copies():
    A = instantiate(get_entry(1, "b_2"), {"a": 1})
    assert check_sk_matrix(A, RMatrixFamily.zero(2, 2)).passed
    A = one_dim_klsa(2)
    for t in (1, 2, -1):
        r = RMatrixFamily(1, 2, (la.mat([[t]]), la.mat([[t]])))
        assert check_sk_matrix(A, r).passed
        assert check_jacobi(build_bracket_r(A, r).bracket).passed


def test_sk_requires_symmetry():
    p = instantiate(get_entry(1, "b_2"), {"a": 1}).products[0]
    r = RMatrixFamily(2, 1, (la.mat([[0, 1], [0, 0]]),))
    assert not check_sk_matrix(KLSA(2, 1, (p,)), r).passed


def test_sk_implies_quasi():
    for a in (0, 2):
        A, r = s2_instance(a, 0, 0, r22=2, r24=-1, r44=1, s11=3, s12=1)
        assert check_sk_matrix(A, r).passed
        assert check_quasi_sk(A, r).passed
    A = instantiate(get_entry(1, "b_2"), {"a": 1})
    assert check_quasi_sk(A, RMatrixFamily.zero(2, 2)).passed


def test_quasi_with_antisymmetric_part_on_b11():
    A = instantiate(get_entry(1, "b_{1,1}"), {"a": 0, "b": 1})
    r = RMatrixFamily(2, 2, (la.mat([[0, 1], [-1, 0]]), la.zeros(2, 2)))
    assert not check_quasi_sk(A, r).passed
    assert not check_quasi_sk(A, r, weak=True).passed


def test_bracket_r_zero_is_semidirect():
    A = instantiate(get_entry(1, "b_{3,1}"), {"a": 1, "b": 2})
    ph = build_bracket_r(A, RMatrixFamily.zero(2, 2))
    assert ph.bracket == build_phantom(KxKLSA.trivial(2, 2), A).bracket


def test_bracket_r_one_dim_k1():
    A = one_dim_klsa(1)
    r = RMatrixFamily(1, 1, (la.mat([[3]]),))
    assert check_sk_matrix(A, r).passed
    ph = build_bracket_r(A, r)
    assert check_jacobi(ph.bracket).passed
    assert verify_kparakahler(ph.as_ksymplectic()).passed
    assert verify_K_iso(A, r).passed


def test_bracket_r_example_is_kparakahler():
    A, r = s2_instance(2, 0, 0, r22=1, r24=2, r44=-1, s11=1, s12=3)
    assert verify_kparakahler(build_bracket_r(A, r).as_ksymplectic()).passed


def test_K_iso_zero_r_is_identity():
    A = instantiate(get_entry(1, "b_2"), {"a": 1})
    r = RMatrixFamily.zero(2, 2)
    assert K_matrix(r) == la.identity(6)
    assert build_bracket_triangle_r(A, r) == build_bracket_r(A, r).bracket
    assert verify_K_iso(A, r).passed


def test_K_iso_example():
    A, r = s2_instance(1, 0, 0, r22=2, r24=1, r44=3, s11=-1, s12=2)
    rep = verify_K_iso(A, r)
    assert rep.passed


def test_twisted_forms_are_two_forms_and_symmetric_variant_is_not():
    r = random_r(random.Random(2), 2, 2, symmetric=False)
    twisted_forms(r)  # constructing a TwoForm checks antisymmetry
    s = RMatrixFamily(2, 2, (la.identity(2), la.zeros(2, 2)))
    m = symmetric_twisted_form_matrix(s, 0)
    assert any(m[i][j] != -m[j][i] for i in range(6) for j in range(6))


def test_strong_quasi_implies_weak_on_random():
    rng = random.Random(8)
    A = instantiate(get_entry(1, "b_{1,1}"), {"a": 0, "b": 1})
    for _ in range(40):
        r = random_r(rng, 2, 2, symmetric=False)
        if check_quasi_sk(A, r).passed:
            assert check_quasi_sk(A, r, weak=True).passed
