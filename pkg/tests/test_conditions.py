import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from oracles import columns_condition_oracle
from partreg.conditions import (EmpiricalBudget, check_columns_condition, check_first_entries,
                                check_milliken_taylor, check_segmented, check_subtracted,
                                find_segmentation, is_monic, solve_in_span)
from partreg.generators import example_212, finite_sums_matrix, schur_matrix, vdw_matrix
from partreg.rational import RatMatrix


def test_columns_condition_anchor():
    w = check_columns_condition(RatMatrix([[2, -2, 1]]))
    assert w.blocks == ((0, 1), (2,))
    assert w.coefficients == (((0, Fraction(1, 2)), (1, Fraction(0))),)
    assert w.verify(RatMatrix([[2, -2, 1]]))


def test_columns_condition_examples():
    w = check_columns_condition(RatMatrix([[1, 1, -1]]))
    assert w.blocks == ((0, 2), (1,))
    assert check_columns_condition(RatMatrix([[1, 1, 1]])) is None
    # x + y = 2z: the whole column set sums to zero
    assert check_columns_condition(RatMatrix([[1, 1, -2]])).blocks == ((0, 1, 2),)


def test_witness_verify_rejects_tampering():
    A = RatMatrix([[2, -2, 1]])
    w = check_columns_condition(A)
    bad = type(w)(w.blocks, (((0, Fraction(1)), (1, Fraction(0))),))
    assert not bad.verify(A)
    assert not type(w)(((0,), (1, 2)), w.coefficients).verify(A)


def test_columns_condition_cap():
    with pytest.raises(ValueError):
        check_columns_condition(RatMatrix([[1] * 11]))


@given(st.lists(st.lists(st.integers(-3, 3), min_size=4, max_size=4), min_size=1, max_size=2))
@settings(max_examples=150, deadline=None)
def test_columns_condition_matches_oracle_4_cols(rows):
    A = RatMatrix(rows)
    w = check_columns_condition(A)
    expected = columns_condition_oracle(rows)
    assert (w.blocks if w else None) == expected
    if w:
        assert w.verify(A)


def test_solve_in_span():
    cols = [[Fraction(1), Fraction(0)], [Fraction(1), Fraction(1)]]
    assert solve_in_span(cols, [Fraction(3), Fraction(2)]) == [1, 2]
    assert solve_in_span([[Fraction(1), Fraction(1)]], [Fraction(1), Fraction(2)]) is None
    assert solve_in_span([], [Fraction(0)]) == []


def test_first_entries_examples():
    rep = check_first_entries(vdw_matrix(5))
    assert rep.satisfies and rep.first_entries == (1,)
    rep = check_first_entries(RatMatrix([[0, 0], [1, 1]]))
    assert not rep.satisfies and rep.violations[0][0] == 0
    rep = check_first_entries(RatMatrix([[2, 1], [0, 3], [2, 0]]))
    assert rep.satisfies and rep.first_entries == (2, 3)
    assert not check_first_entries(RatMatrix([[2, 1], [3, 0]])).satisfies
    assert not check_first_entries(RatMatrix([[-1, 1]])).satisfies


def test_is_monic():
    assert is_monic(schur_matrix())
    assert not is_monic(example_212())
    assert not is_monic(RatMatrix([[3, 1], [3, 2]]))
    with pytest.raises(ValueError):
        is_monic(RatMatrix([[0, 0]]))


def test_segmented_examples():
    v = check_segmented(example_212(9), (0, 1, 4))
    assert v.satisfies
    assert [s["rows"] for s in v.segments] == [1, 7]
    assert check_segmented(schur_matrix(), (0, 2), mode="monic").satisfies
    assert not check_segmented(RatMatrix([[1, 0], [0, 0]]), (0, 1)).satisfies
    assert not check_segmented(example_212(), (0,), mode="monic").satisfies


def test_segmented_alpha_validation():
    for alpha in [(1, 2), (0, 2, 1), (0, 9)]:
        with pytest.raises(ValueError):
            check_segmented(schur_matrix(), alpha)


def test_segmented_general_mode_uses_search():
    # -x + 2y fails first entries, yet x = y makes it trivially regular
    v = check_segmented(RatMatrix([[-1, 2]]), (0,), mode="general", budget=EmpiricalBudget(r=2, N=6))
    assert v.satisfies
    assert v.segments[0]["certification"].startswith("empirical")
    # (x, 2x) is not regular: colour by parity of the 2-adic valuation
    v = check_segmented(RatMatrix([[1], [2]]), (0,), mode="general", budget=EmpiricalBudget(r=2, N=8))
    assert not v.satisfies
    assert check_segmented(RatMatrix([[-1, 2]]), (0,), mode="general").segments[0]["certification"] == "uncertified"


def test_find_segmentation():
    v = find_segmentation(example_212(9))
    assert v.satisfies and v.alpha[0] == 0


def test_milliken_taylor_check():
    from partreg.generators import mt_matrix_prefix
    assert check_milliken_taylor(mt_matrix_prefix((1, 2), 3), (1, 2))
    assert not check_milliken_taylor(RatMatrix([[2, 1, 0]]), (1, 2))
    partial = RatMatrix([[1, 2, 0], [1, 0, 2]])
    assert not check_milliken_taylor(partial, (1, 2))
    with pytest.raises(ValueError):
        check_milliken_taylor(partial, (1, 1))


def test_subtracted_examples():
    v = check_subtracted(example_212(9), 1, 3)
    assert v.satisfies
    assert v.band["certified"]
    assert v.remainder["certified"]
    assert not check_subtracted(RatMatrix([[1, 0], [0, 0]]), 0, 1).satisfies


@pytest.mark.parametrize("k", [2, 3])
def test_finite_sums_never_subtracted(k):
    A = finite_sums_matrix(k)
    for n in range(k):
        for width in range(1, k - n + 1):
            assert not check_subtracted(A, n, width).satisfies


def test_subtracted_rejects_bad_split():
    with pytest.raises(ValueError):
        check_subtracted(example_212(), 2, 3)
    with pytest.raises(ValueError):
        check_subtracted(example_212(), 0, 0)


def test_verdicts_serialize():
    import json
    for d in (check_subtracted(example_212(9), 1, 3).to_dict(),
              check_segmented(example_212(9), (0, 1, 4)).to_dict(),
              check_first_entries(schur_matrix()).to_dict()):
        json.dumps(d, default=str)
    assert check_subtracted(example_212(9), 1, 3).to_dict()["certification"]


def test_exhaustive_1x3_small():
    for row in itertools.product(range(-1, 2), repeat=3):
        w = check_columns_condition(RatMatrix([row]))
        assert (w.blocks if w else None) == columns_condition_oracle([row])
