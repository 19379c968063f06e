import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import diagram_count, odd_diagrams, ssyt_count
from sphpoly.combinatorics import (
    ChordDiagram,
    OddDiagram,
    Tableau,
    binomial_count,
    catalan,
    compositions,
    crossing_parity_counts,
    enumerate_diagrams,
    enumerate_odd_diagrams,
    enumerate_ssyt,
    kostka,
    odd_count_formula,
    reduction_params,
)
from sphpoly.errors import ValidationError

# values produced by the brute-force oracles in tests/oracles.py
FROZEN_KOSTKA = {
    (1, 1, 1, 1): 2,
    (2, 1, 1): 1,
    (2, 2, 2): 1,
    (1, 2, 3, 2): 2,
    (3, 3): 1,
    (2, 2, 1, 1, 2): 4,
    (1,) * 8: 14,
    (4, 2, 2): 1,
    (3, 1, 1, 1): 1,
}

FROZEN_ODD = {
    (0, (1, 1), 0): (2, [0, 2]),
    (2, (1, 1), 2): (2, [0, 0]),
    (0, (2,), 2): (1, [1]),
    (2, (1,), 0): (1, [0]),
    (0, (1, 2, 1), 0): (4, [0, 2, 2, 4]),
    (4, (1, 1), 0): (1, [0]),
    (2, (2, 2), 2): (3, [0, 0, 2]),
    (0, (1, 1, 1), 2): (3, [0, 0, 2]),
}


@pytest.mark.parametrize("mult,expected", sorted(FROZEN_KOSTKA.items()))
def test_kostka_frozen(mult, expected):
    assert kostka(mult) == expected
    assert len(enumerate_ssyt(mult)) == expected
    assert len(enumerate_diagrams(mult)) == expected


def test_kostka_small_cases():
    assert kostka((1, 1)) == 1
    assert kostka((1, 2)) == 0
    assert kostka((3, 1)) == 0
    assert kostka((1, 1, 1)) == 0
    assert kostka(()) == 1


def test_catalan_and_binomial():
    assert [catalan(d) for d in range(1, 7)] == [1, 2, 5, 14, 42, 132]
    assert [binomial_count(m) for m in range(1, 9)] == [1, 2, 3, 6, 10, 20, 35, 70]


@pytest.mark.parametrize("d", range(1, 6))
def test_all_ones_is_catalan(d):
    assert kostka((1,) * (2 * d)) == catalan(d)


def test_tableaux_are_semistandard_with_right_content():
    mult = (2, 1, 2, 1)
    tableaux = enumerate_ssyt(mult)
    assert tableaux
    for t in tableaux:
        assert t.is_semistandard()
        assert t.content(len(mult)) == mult
    assert len(set(tableaux)) == len(tableaux)


def test_tableau_rejects_column_violation():
    assert not Tableau((1, 2), (1, 3)).is_semistandard()
    assert not Tableau((1, 3), (2, 2)).is_semistandard()
    assert Tableau((1, 1), (2, 2)).is_semistandard()


def test_negative_multiplicity_rejected():
    with pytest.raises(ValidationError):
        kostka((1, -1))


@pytest.mark.parametrize("total", range(0, 9))
def test_diagrams_match_oracles(total):
    for mult in compositions(total):
        assert len(enumerate_diagrams(mult)) == diagram_count(mult) == ssyt_count(mult)


def test_diagrams_valid_and_distinct():
    mult = (2, 1, 2, 1, 2)
    diagrams = enumerate_diagrams(mult)
    assert all(d.is_valid() for d in diagrams)
    assert len({d.word for d in diagrams}) == len(diagrams)
    assert [d.word for d in diagrams] == sorted(d.word for d in diagrams)


def test_diagram_validity_checks():
    verts = ((0, 1), (1, 1), (2, 1), (3, 1))
    assert ChordDiagram(verts, ((0, 1), (2, 3))).is_valid()
    assert not ChordDiagram(verts, ((0, 2), (1, 3))).is_valid()
    loop = ((0, 2), (1, 2))
    assert not ChordDiagram(loop, ((0, 1), (2, 3))).is_valid()


@pytest.mark.parametrize("args,expected", sorted(FROZEN_ODD.items()))
def test_odd_diagrams_frozen(args, expected):
    count, nus = expected
    diagrams = enumerate_odd_diagrams(*args)
    assert len(diagrams) == count
    assert sorted(d.crossing_count for d in diagrams) == nus
    assert all(d.is_valid() for d in diagrams)


def test_odd_diagrams_match_geometric_oracle():
    for s in range(0, 4):
        for inter in compositions(s):
            for m0 in range(0, 7, 2):
                for mi in range(0, 7, 2):
                    if m0 + mi + 2 * s > 10:
                        continue
                    ours = enumerate_odd_diagrams(m0, inter, mi)
                    ref = odd_diagrams(m0, inter, mi)
                    assert len(ours) == len(ref)
                    assert sorted(d.crossing_count for d in ours) == sorted(n for _, n in ref)


def test_crossing_parity_follows_mu():
    for s in range(0, 4):
        for inter in compositions(s):
            for m0 in range(0, 5, 2):
                for mi in range(0, 5, 2):
                    mu = (m0 + mi) // 2 + s
                    even, odd = crossing_parity_counts(m0, inter, mi)
                    assert (odd if mu % 2 == 0 else even) == 0


def test_odd_axis_rejected():
    with pytest.raises(ValidationError):
        enumerate_odd_diagrams(1, (1,), 0)
    with pytest.raises(ValidationError):
        odd_count_formula(0, (1,), 3)


def test_reflection_is_an_involution():
    for d in enumerate_odd_diagrams(2, (1, 2), 2):
        assert d.reflect().arcs == d.diagram.arcs
        again = OddDiagram(d.m0, d.interior, d.m_inf, d.reflect())
        assert again.reflect().arcs == d.diagram.arcs


@pytest.mark.parametrize(
    "args,expected",
    [
        ((0, (1, 1), 0), (2, True, 2, 2, 2)),
        ((0, (1,), 0), (1, False, 1, 2, 1)),
        ((2, (1, 1), 2), (4, True, 1, 2, 2)),
    ],
)
def test_reduction_examples(args, expected):
    red = reduction_params(*args)
    assert (red.mu, red.mu_even, red.k, red.r, red.s) == expected


def test_reduction_counts():
    assert odd_count_formula(0, (1, 1), 0) == 2
    assert odd_count_formula(0, (1,), 0) == 1 == kostka((2, 1, 1))
    assert odd_count_formula(2, (1, 1), 2) == 2 == kostka((2, 1, 1, 2))


def test_explicit_k_below_threshold_rejected():
    with pytest.raises(ValidationError):
        reduction_params(0, (3, 3), 0, k=0)


@pytest.mark.parametrize("m", range(1, 9))
def test_all_ones_odd_count(m):
    assert odd_count_formula(0, (1,) * m, 0) == math.comb(m, m // 2)
    if m <= 6:
        assert len(enumerate_odd_diagrams(0, (1,) * m, 0)) == math.comb(m, m // 2)


def test_formula_matches_enumeration_and_is_stable_in_k():
    for s in range(0, 4):
        for inter in compositions(s):
            for m0 in range(0, 7, 2):
                for mi in range(0, 7, 2):
                    if m0 + mi + 2 * s > 10:
                        continue
                    count = len(enumerate_odd_diagrams(m0, inter, mi))
                    k0 = reduction_params(m0, inter, mi).k
                    values = {odd_count_formula(m0, inter, mi, k0 + j) for j in range(3)}
                    assert values == {count}


def test_recursions_on_small_inputs():
    for s in range(0, 4):
        for inter in compositions(s):
            for m0 in range(0, 7, 2):
                for mi in range(0, 7, 2):
                    if m0 + mi + 2 * s > 8:
                        continue
                    even, odd = crossing_parity_counts(m0, inter, mi)
                    assert even == crossing_parity_counts(m0 + 2, inter, mi + 2)[0]
                    if mi > 0:
                        assert odd == crossing_parity_counts(m0 + 2, inter, mi - 2)[1]
                    if m0 > 0:
                        assert odd == crossing_parity_counts(m0 - 2, inter, mi + 2)[1]
                    if m0 == 0:
                        assert odd == crossing_parity_counts(0, inter, mi + 2)[0]
                    if mi == 0:
                        assert odd == crossing_parity_counts(m0 + 2, inter, 0)[0]


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(0, 3), min_size=1, max_size=5), st.randoms(use_true_random=False))
def test_kostka_symmetric_in_content(mult, rnd):
    shuffled = list(mult)
    rnd.shuffle(shuffled)
    assert kostka(mult) == kostka(shuffled)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(0, 3), min_size=1, max_size=5))
def test_zero_entries_do_not_matter(mult):
    assert kostka(mult) == kostka([m for m in mult if m])


@settings(max_examples=25, deadline=None)
@given(st.lists(st.integers(1, 3), min_size=1, max_size=4))
def test_enumeration_and_dp_agree(mult):
    if sum(mult) <= 10:
        assert len(enumerate_diagrams(mult)) == kostka(mult)
