import itertools
import random

import pytest

from kparakahler import linalg as la
from kparakahler.errors import JacobiFailed
from kparakahler.ksymplectic import KSymplecticData, build_F_iso, check_closed, extract_products, verify_ksymplectic
from kparakahler.lie import check_jacobi
from kparakahler.lowdim import (
    LowDimSpec,
    alternate_sol_witness,
    build_lowdim,
    check_bracket_map,
    check_lowdim_jacobi,
    classify,
    classify_dim3,
    classify_dimk,
    complement_line,
    sl2_bracket,
    sol_bracket,
)

from helpers import jacobi_lowdim_k2, normal_form_lowdim, random_lowdim


def spec(a, D):
    return LowDimSpec.of(a, D)


def grid_k2():
    vals = (-1, 0, 1)
    for a in itertools.product(vals, repeat=2):
        for d in itertools.product(vals, repeat=4):
            yield spec(a, [d[:2], d[2:]])


def test_build_abelian():
    s = spec([0, 0], [[0, 0], [0, 0]])
    d = build_lowdim(s)
    assert all(not any(v) for row in d.bracket.c for v in row)
    assert verify_ksymplectic(d).passed


def test_build_k3_normal_form_directly():
    s = spec([1, 0, 0], [[1, 0, 0], [0, -1, 0], [0, 0, -1]])
    res = classify(s)
    assert res.case_tag == "NormalFormK" and res.params["lambda"] == 1
    assert res.verified.passed


def test_jacobi_examples():
    assert check_lowdim_jacobi(spec([0, 0], [[1, 2], [3, 4]])).passed
    assert check_lowdim_jacobi(spec([1, 0], [[1, 0], [0, -1]])).passed
    rep = check_lowdim_jacobi(spec([1, 0], [[1, 0], [0, 1]]))
    assert rep.failed("reduced-jacobi")
    assert rep.first("reduced-jacobi").witness == (0, 1)


def test_reduced_jacobi_equals_jacobi_on_grid():
    for s in grid_k2():
        reduced = check_lowdim_jacobi(s)
        assert not reduced.failed("agrees-with-jacobi")


def test_jacobi_implies_closed_but_not_conversely():
    s = spec([1, 1, 1], [[1, 1, 1], [0, 0, 0], [0, 0, 0]])
    d = build_lowdim(s)
    assert check_closed(d.bracket, d.thetas).passed
    assert not check_jacobi(d.bracket).passed
    rng = random.Random(4)
    for _ in range(200):
        s = random_lowdim(rng, rng.choice([2, 3]))
        d = build_lowdim(s)
        if check_jacobi(d.bracket).passed:
            assert check_closed(d.bracket, d.thetas).passed


def test_worked_sl2_classification():
    s = spec([1, 0], [[0, 1], [0, 0]])
    res = classify_dim3(s)
    assert res.case_tag == "SL2"
    assert res.verified.passed
    assert res.witness == la.from_columns([(2, 0, 0), (0, -1, 0), (0, 0, 2)])
    assert res.params["b"] == 0 and res.params["scale1"] == 4 and res.params["scale2"] == -2


def test_listed_sl2_witness_is_not_a_homomorphism():
    # (2f_1, g_2, −(2e + g_2)) with g_2 = −f_2
    s = spec([1, 0], [[0, 1], [0, 0]])
    W = la.from_columns([(2, 0, 0), (0, -1, 0), (0, 1, -2)])
    assert not check_bracket_map(W, build_lowdim(s).bracket, sl2_bracket()).passed


def test_worked_sol_classification():
    s = spec([1, 0], [[1, 0], [0, -1]])
    res = classify_dim3(s)
    assert res.case_tag == "Sol" and res.verified.passed
    assert res.params["c"] == 0


def test_alternate_sol_witness_is_lie_isomorphism():
    s = spec([1, 0], [[1, 0], [0, -1]])
    W = alternate_sol_witness(s)
    assert check_bracket_map(W, build_lowdim(s).bracket, sol_bracket()).passed
    assert W == la.from_columns([(0, 0, -1), (0, -1, 0), (1, 0, 1)])


def test_abelian_ideal_cases():
    assert classify_dim3(spec([0, 0], [[0, 1], [0, 0]])).case_tag == "AbelianIdealExtension"
    res = classify_dimk(spec([0, 0, 0], [[1, 2, 3], [0, 1, 0], [5, 0, 0]]))
    assert res.case_tag == "AbelianK" and res.verified.passed


def test_jacobi_failure_raises():
    with pytest.raises(JacobiFailed):
        classify(spec([1, 0], [[1, 0], [0, 1]]))


def test_k3_example_with_b():
    s = spec([1, 0, 0], [[2, 0, 0], [3, -2, 0], [0, 0, -2]])
    res = classify_dimk(s)
    assert res.case_tag == "NormalFormK" and res.verified.passed
    assert (res.params["lambda"], res.params["a1"], res.params["b2"], res.params["b3"]) == (2, 1, 3, 0)
    d = build_lowdim(s)
    f = [la.unit(4, i) for i in range(4)]
    for i in (1, 2):
        assert d.bracket(f[0], f[i]) == f[i]


def test_k4_normal_form_round_trip():
    rng = random.Random(9)
    for _ in range(10):
        s, lam, b = normal_form_lowdim(rng, 4, a1=2)
        assert check_jacobi(build_lowdim(s).bracket).passed
        res = classify_dimk(s)
        assert res.verified.passed
        assert res.params["lambda"] == lam
        assert tuple(res.params[f"b{i}"] for i in (2, 3, 4)) == b


def test_grid_classification_is_verified_and_para_kahler():
    tags = {}
    for s in grid_k2():
        if not check_jacobi(build_lowdim(s).bracket).passed:
            continue
        res = classify_dim3(s)
        assert res.verified.passed, (s, res.verified.summary())
        assert complement_line(s) is not None
        tags[res.case_tag] = tags.get(res.case_tag, 0) + 1
    assert tags == {"SL2": 160, "Sol": 56, "AbelianIdealExtension": 81}


def test_random_k2_includes_degenerate_branch():
    rng = random.Random(21)
    degenerate = 0
    for _ in range(80):
        s = jacobi_lowdim_k2(rng)
        res = classify_dim3(s)
        assert res.verified.passed
        if res.case_tag == "Sol" and res.params["d11"] == 0 and res.params["d12"] == 0:
            degenerate += 1
    assert degenerate > 0


def test_lowdim_round_trip_through_extraction():
    s = spec([1, 0], [[1, 0], [0, -1]])
    d = build_lowdim(s)
    _, rep = build_F_iso(d, extract_products(d))
    assert rep.passed
