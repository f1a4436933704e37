import pytest

from kparakahler import linalg as la
from kparakahler.catalog import get_entry, instantiate
from kparakahler.double import build_phantom, phantom_forms
from kparakahler.errors import MissingComplement
from kparakahler.ksymplectic import (
    KSymplecticData,
    build_F_iso,
    extract_products,
    split_h_alpha,
    verify_kparakahler,
    verify_ksymplectic,
)
from kparakahler.linalg import Subspace
from kparakahler.lowdim import sl2_bracket, sol_bracket
from kparakahler.lsa import KLSA, KxKLSA
from kparakahler.multilinear import BilinearProduct, TwoForm


def sl2_data(theta1, theta2):
    return KSymplecticData(2, 1, sl2_bracket(), Subspace.coordinate(3, [0, 1]), (theta1, theta2))


def sol_data(b, c):
    t1 = TwoForm.from_wedge_terms(3, [(0, 2, 1), (1, 2, b)])
    t2 = TwoForm.from_wedge_terms(3, [(0, 2, c), (1, 2, 1)])
    return KSymplecticData(2, 1, sol_bracket(), Subspace.coordinate(3, [0, 1]), (t1, t2), Subspace.coordinate(3, [2]))


def toy_k1(p_basis):
    theta = TwoForm.from_wedge_terms(2, [(0, 1, 1)])
    p = Subspace.span([la.vec(v) for v in p_basis], 2)
    return KSymplecticData(1, 1, BilinearProduct.zero(2), Subspace.coordinate(2, [0]), (theta,), p)


def table3(name, values):
    return instantiate(get_entry(3, name), values)


def test_abelian_is_ksymplectic():
    thetas = tuple(TwoForm.from_wedge_terms(3, [(i, 2, 1)]) for i in range(2))
    d = KSymplecticData(2, 1, BilinearProduct.zero(3), Subspace.coordinate(3, [0, 1]), thetas)
    assert verify_ksymplectic(d).passed


def test_sl2_structure_and_degenerate_variant():
    rho1 = TwoForm.from_wedge_terms(3, [(0, 2, 1), (1, 2, 1)])
    rho2 = TwoForm.from_wedge_terms(3, [(1, 2, 1)])
    assert verify_ksymplectic(sl2_data(rho1, rho2)).passed
    rep = verify_ksymplectic(sl2_data(rho2, rho2))
    assert rep.failed("nondegeneracy")


def test_closedness_failure_is_reported():
    # f1*∧e* on sl2 is not closed
    bad = TwoForm.from_wedge_terms(3, [(0, 1, 1)])
    rep = verify_ksymplectic(sl2_data(bad, TwoForm.from_wedge_terms(3, [(1, 2, 1)])))
    assert not rep.passed


def test_isotropy_failure_is_reported():
    thetas = (TwoForm.from_wedge_terms(3, [(0, 1, 1), (0, 2, 1)]), TwoForm.from_wedge_terms(3, [(1, 2, 1)]))
    d = KSymplecticData(2, 1, BilinearProduct.zero(3), Subspace.coordinate(3, [0, 1]), thetas)
    assert verify_ksymplectic(d).failed("isotropy")


def test_wrong_dimensions_reported():
    thetas = tuple(TwoForm.from_wedge_terms(3, [(i, 2, 1)]) for i in range(2))
    d = KSymplecticData(2, 1, BilinearProduct.zero(3), Subspace.coordinate(3, [0]), thetas)
    assert not verify_ksymplectic(d).passed


def test_kparakahler_examples():
    assert verify_kparakahler(table3("bb_{1,1}", {"b": 1})).passed
    assert verify_kparakahler(toy_k1([[0, 1]])).passed
    assert not verify_kparakahler(toy_k1([[0, 1], [1, 1]])).passed
    assert not verify_kparakahler(toy_k1([[1, 0]])).passed


def test_kparakahler_needs_complement():
    rho1 = TwoForm.from_wedge_terms(3, [(0, 2, 1), (1, 2, 1)])
    with pytest.raises(MissingComplement):
        verify_kparakahler(sl2_data(rho1, TwoForm.from_wedge_terms(3, [(1, 2, 1)])))


def test_split_h_alpha():
    ph = build_phantom(KxKLSA.trivial(2, 2), KLSA.trivial(2, 2)).as_ksymplectic()
    parts = split_h_alpha(ph)
    assert parts[0].basis == Subspace.coordinate(6, [2, 3]).basis
    assert parts[1].basis == Subspace.coordinate(6, [4, 5]).basis
    rho1 = TwoForm.from_wedge_terms(3, [(0, 2, 1), (1, 2, 1)])
    parts = split_h_alpha(sl2_data(rho1, TwoForm.from_wedge_terms(3, [(1, 2, 1)])))
    assert [p.dim for p in parts] == [1, 1]
    assert la.membership(parts[0], (1, 0, 0)) is not None
    assert la.membership(parts[1], (1, -1, 0)) is not None
    parts = split_h_alpha(table3("bb_{1,1}", {"b": 2}))
    assert [p.basis for p in parts] == [Subspace.coordinate(6, [2, 3]).basis, Subspace.coordinate(6, [4, 5]).basis]


def test_extraction_round_trip_on_double():
    B, A = instantiate(get_entry(2, "bb_4"), {"a": 2, "c": -1})
    ph = build_phantom(B, A).as_ksymplectic()
    e = extract_products(ph)
    assert e.klsa == A
    assert e.kxklsa.star == B.star and e.kxklsa.bracket == B.bracket
    F, rep = build_F_iso(ph, e)
    assert rep.passed and F == la.identity(6)


def test_extraction_of_table3_bb11():
    e = extract_products(table3("bb_{1,1}", {"b": 3}))
    _, A = instantiate(get_entry(2, "bb_{1,1}"), {"b": 3})
    assert e.klsa == A
    assert e.klsa == instantiate(get_entry(1, "b_{1,1}"), {"a": 0, "b": 3})
    assert e.report.passed


def test_extraction_k1_toy_is_trivial():
    e = extract_products(toy_k1([[0, 1]]))
    assert e.klsa.products[0] == BilinearProduct.zero(1)
    assert e.kxklsa.star[0][0] == BilinearProduct.zero(1)


def test_F_iso_table3_bb2():
    d = table3("bb_2[a!=1]", {"a": 2})
    _, rep = build_F_iso(d, extract_products(d))
    assert rep.passed


def test_F_iso_sol():
    for b, c in [(1, 0), (2, 3), (0, 0)]:
        d = sol_data(b, c)
        assert verify_kparakahler(d).passed
        _, rep = build_F_iso(d, extract_products(d))
        assert rep.passed


def test_sol_forms_degenerate_when_bc_is_one():
    assert verify_kparakahler(sol_data(1, 1)).failed("nondegeneracy")


def test_star_index_order_matters_for_round_trip():
    # an instance with nonzero off-diagonal stars
    d = table3("cc_5^+", {"a": 1, "b": 2, "c": 1})
    e = extract_products(d)
    assert e.star != e.star_defining
    _, rep = build_F_iso(d, e)
    assert rep.passed
    swapped = KxKLSA(e.kxklsa.n, e.kxklsa.k, e.star_defining, e.kxklsa.bracket)
    e.kxklsa = swapped
    _, rep = build_F_iso(d, e)
    assert not rep.passed


def test_phantom_forms_shape():
    rho = phantom_forms(2, 2)
    assert rho[0].wedge_terms() == [(0, 2, -1), (1, 3, -1)]
    assert rho[1].wedge_terms() == [(0, 4, -1), (1, 5, -1)]
