from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import system_solutions
from sphpoly.errors import ValidationError
from sphpoly.feasibility import (
    AngleSignature,
    DegreeSolution,
    check_angles,
    exponents_at_infinity,
    parse_angle,
    satisfies_system,
    sigma,
    signature,
    solve_degree_system,
)


def test_parse_angle():
    assert parse_angle("3/2") == F(3, 2)
    assert parse_angle("1.5") == F(3, 2)
    assert parse_angle(0.1) == F(1, 10)
    assert parse_angle(2) == F(2)
    with pytest.raises(ValidationError):
        parse_angle("abc")
    with pytest.raises(ValidationError):
        parse_angle(float("nan"))


@pytest.mark.parametrize(
    "args",
    [
        ("1", (2,), "1/2"),
        ("1/2", (2,), "-1/2"),
        ("1/2", (1,), "1/2"),
        ("1/2", (), "1/2"),
    ],
)
def test_invalid_signatures(args):
    with pytest.raises(ValidationError):
        signature(*args)


def test_sigma():
    assert sigma(signature("1/2", (2, 2), "1/2")) == 2
    assert sigma(signature("1/2", (3, 2, 4), "1/2")) == 6


def test_worked_examples():
    rep = check_angles(signature("1/2", (2, 2), "1/2"))
    assert rep.feasible and rep.branch == "a" and rep.reason == "ok"
    assert [s.as_tuple() for s in rep.solutions] == [(1, 1, 0, 0, F(1, 2)), (1, 2, 0, 1, F(1, 2))]
    assert rep.canonical.case_id == 1

    rep = check_angles(signature("3/2", (2,), "1/2"))
    assert rep.feasible
    assert rep.canonical.as_tuple() == (1, 1, 1, 0, F(1, 2))

    rep = check_angles(signature("1/2", (2, 2, 2), "1/2"))
    assert rep.feasible and rep.branch == "b"
    assert rep.canonical.as_tuple() == (2, 2, 0, 1, F(1, 2))
    assert rep.canonical.case_id == 2

    rep = check_angles(signature("1/2", (2,), "5/2"))
    assert not rep.feasible and rep.branch == "b" and rep.reason == "inequality"
    assert rep.canonical is None


def test_not_integral():
    rep = check_angles(signature("1/3", (2, 2), "1/2"))
    assert not rep.feasible and rep.reason == "not-integral"


@pytest.mark.parametrize(
    "sig",
    [
        (F(1, 2), (2, 2), F(1, 2)),
        (F(3, 2), (2,), F(1, 2)),
        (F(1, 2), (2, 2, 2), F(1, 2)),
        (F(1, 2), (2,), F(5, 2)),
        (F(1, 3), (2, 3), F(2, 3)),
        (F(5, 4), (3,), F(1, 4)),
    ],
)
def test_against_search(sig):
    rep = check_angles(AngleSignature(*sig))
    expected = system_solutions(*sig)
    assert rep.feasible == bool(expected)
    assert sorted((s.p, s.q, s.p0, s.q0, s.alpha) for s in rep.solutions) == expected


def test_inversion_maps_cases():
    sol = DegreeSolution(1, 1, 0, 0, F(1, 2), 1)
    inv = sol.inverted()
    assert inv.as_tuple() == (1, 2, 0, 1, F(1, 2)) and inv.case_id == 4
    assert inv.inverted().as_tuple() == sol.as_tuple()
    sol = DegreeSolution(1, 2, 0, 0, F(1, 3), 3)
    inv = sol.inverted()
    assert inv.case_id == 2 and inv.as_tuple() == (2, 2, 0, 1, F(2, 3))


def test_exponents_at_infinity():
    sig = signature("1/2", (2, 2), "1/2")
    hi, lo, neg = exponents_at_infinity(sig)
    assert (hi, lo, neg) == (F(-1), F(-3, 2), True)
    total = sig.alpha0 + sum(sig.interior) + hi + lo
    assert total == sig.n - 2
    assert hi - lo == sig.alpha_inf


def test_satisfies_system_rejects_bad_data():
    sig = signature("1/2", (2, 2), "1/2")
    assert satisfies_system(sig, DegreeSolution(1, 1, 0, 0, F(1, 2), 1))
    assert not satisfies_system(sig, DegreeSolution(2, 0, 0, 0, F(1, 2), 1))
    assert not satisfies_system(sig, DegreeSolution(1, 1, 1, 1, F(1, 2), 1))


angle = st.fractions(min_value=F(1, 4), max_value=F(15, 4), max_denominator=6).filter(
    lambda x: x.denominator != 1
)


@settings(max_examples=150, deadline=None)
@given(angle, st.lists(st.integers(2, 4), min_size=1, max_size=3), angle)
def test_criterion_matches_search(a0, interior, ai):
    sig = AngleSignature(a0, tuple(interior), ai)
    rep = check_angles(sig)
    expected = system_solutions(a0, interior, ai)
    assert rep.feasible == bool(expected)
    for sol in rep.solutions:
        assert satisfies_system(sig, sol)


@settings(max_examples=100, deadline=None)
@given(angle, st.lists(st.integers(2, 4), min_size=1, max_size=3), angle)
def test_solutions_closed_under_inversion(a0, interior, ai):
    sig = AngleSignature(a0, tuple(interior), ai)
    sols = solve_degree_system(sig)
    tuples = {s.as_tuple() for s in sols}
    for s in sols:
        inv = s.inverted()
        assert satisfies_system(sig, inv)
        assert inv.as_tuple() in tuples


@settings(max_examples=60, deadline=None)
@given(angle, st.lists(st.integers(2, 4), min_size=1, max_size=3), angle, st.randoms(use_true_random=False))
def test_interior_order_irrelevant(a0, interior, ai, rnd):
    shuffled = list(interior)
    rnd.shuffle(shuffled)
    a = check_angles(AngleSignature(a0, tuple(interior), ai))
    b = check_angles(AngleSignature(a0, tuple(shuffled), ai))
    assert (a.feasible, a.branch, a.reason) == (b.feasible, b.branch, b.reason)
    assert [s.as_tuple() for s in a.solutions] == [s.as_tuple() for s in b.solutions]
