import itertools

import pytest

from oracles import compress_oracle
from partreg.conditions import (check_first_entries, check_milliken_taylor, check_segmented,
                                check_subtracted, is_monic, mt_row_count)
from partreg.generators import (example_212, finite_sums_matrix, mt_matrix_prefix, schur_matrix,
                                segmented_builder, subtracted_builder, vdw_matrix)
from partreg.matrixspec import (DiagonalSum, Example212, FiniteSums, Literal, MillikenTaylor,
                                Schur, Segmented, SubtractedCentrally, VanDerWaerden,
                                parse_shortcut, spec_from_dict)
from partreg.rational import RatMatrix, mat_vec_mul
from partreg.sequences import finite_sums

EX212_ROWS = [
    [2, 0, 1, 0], [2, 1, 0, 0], [2, 1, 1, 0], [2, 0, 0, 1], [2, 0, 1, 0],
    [2, 1, 0, 1], [2, 1, 1, 1], [2, 0, 1, 1], [2, 0, 0, 0],
]


def test_schur_and_vdw():
    assert schur_matrix() == RatMatrix([[1, 0], [0, 1], [1, 1]])
    assert vdw_matrix(3) == RatMatrix([[1, 0], [1, 1], [1, 2]])
    assert mat_vec_mul(vdw_matrix(5), (3, 4)) == (3, 7, 11, 15, 19)
    assert is_monic(schur_matrix())
    for n in range(1, 11):
        assert is_monic(vdw_matrix(n))
    with pytest.raises(ValueError):
        vdw_matrix(0)


def test_finite_sums_matrix():
    assert finite_sums_matrix(2) == RatMatrix([[0, 1], [1, 0], [1, 1]])
    for k in range(1, 6):
        A = finite_sums_matrix(k)
        assert is_monic(A)
        x = [5 ** i for i in range(k)]
        assert sorted(set(mat_vec_mul(A, x))) == finite_sums(x)


def test_mt_prefix_examples():
    assert mt_matrix_prefix((1,), 2) == finite_sums_matrix(2)
    rows = mt_matrix_prefix((1, 2), 3).to_lists()
    # every length-3 vector over {0,1,2} compressing to (1,2), including (1,1,2)
    assert rows == [["0", "1", "2"], ["1", "0", "2"], ["1", "1", "2"], ["1", "2", "0"],
                    ["1", "2", "2"]]
    with pytest.raises(ValueError):
        mt_matrix_prefix((1, 1), 3)
    with pytest.raises(ValueError):
        mt_matrix_prefix((1, 2, 3), 2)


@pytest.mark.parametrize("a", [(1,), (2,), (1, 2), (2, 1), (1, 3, 1), (3, 1, 2)])
@pytest.mark.parametrize("n", range(1, 7))
def test_mt_prefix_against_brute_force(a, n):
    if len(a) > n:
        return
    alphabet = sorted({0, *a})
    expected = [r for r in itertools.product(alphabet, repeat=n) if compress_oracle(r) == a]
    M = mt_matrix_prefix(a, n)
    assert [tuple(int(v) for v in row) for row in M] == expected
    assert M.rows == mt_row_count(len(a), n)
    assert check_milliken_taylor(M, a)
    assert check_first_entries(M).satisfies


def test_example_212_rows():
    assert example_212(9) == RatMatrix(EX212_ROWS)
    assert example_212(8) == RatMatrix(EX212_ROWS[:8])
    assert example_212(12).rows == 12
    assert not is_monic(example_212())


def test_example_212_as_builder():
    built = subtracted_builder(finite_sums_matrix(3), [RatMatrix([[2]])], n=1, k=3, depth=9,
                               head_pattern=(1, 3, 5, 0, 1, 4, 6, 2, None))
    assert built == RatMatrix(EX212_ROWS)


def test_segmented_builder_defaults():
    A, alpha = segmented_builder([schur_matrix()])
    assert A == schur_matrix() and alpha == (0, 2)
    B, alpha = segmented_builder([RatMatrix([[2]]), finite_sums_matrix(2)], depth=10)
    assert alpha == (0, 1, 3)
    assert B.rows == 10
    assert all(any(v != 0 for v in row) for row in B)
    assert check_segmented(B, alpha).satisfies


def test_segmented_builder_rejects_bad_blocks():
    with pytest.raises(ValueError):
        segmented_builder([RatMatrix([[2, 1], [3, 0]])])
    with pytest.raises(ValueError):
        segmented_builder([schur_matrix()], pattern=[(None,)])


def test_subtracted_builder_round_trip():
    A = subtracted_builder(vdw_matrix(3), [RatMatrix([[1]]), schur_matrix()], n=1, k=2, depth=7)
    assert all(any(v != 0 for v in row) for row in A)
    assert check_subtracted(A, 1, 2).satisfies


def test_spec_round_trips():
    specs = [Schur(), VanDerWaerden(4), FiniteSums(3), MillikenTaylor((1, 2), 4), Example212(5),
             Literal(RatMatrix([["1/2", 3]])),
             Segmented((RatMatrix([[2]]), finite_sums_matrix(2)), depth=6),
             SubtractedCentrally(finite_sums_matrix(2), Segmented((RatMatrix([[1]]),)), 1, 2, 5),
             DiagonalSum(Schur(), MillikenTaylor((1,), 2))]
    for s in specs:
        again = spec_from_dict(s.to_dict())
        assert again.to_dict() == s.to_dict()
        assert again.materialize() == s.materialize()
        assert s.materialize() == s.materialize()


def test_truncation_reported_for_infinite_kinds():
    assert Schur().truncation() is None
    assert MillikenTaylor((1, 2), 3).truncation() == {"columns": 3}
    assert Example212(4).truncation() == {"rows": 4}
    assert DiagonalSum(Schur(), MillikenTaylor((1,), 2)).truncation() == {
        "first": None, "second": {"columns": 2}}


def test_shortcuts():
    assert parse_shortcut("schur") == Schur()
    assert parse_shortcut("vdw:3") == VanDerWaerden(3)
    assert parse_shortcut("fs:2") == FiniteSums(2)
    assert parse_shortcut("mt:1,2/3") == MillikenTaylor((1, 2), 3)
    assert parse_shortcut("ex212:4") == Example212(4)
    for bad in ("nope", "mt:1,2", "mt:1,1/3", "fs:0"):
        with pytest.raises(ValueError):
            parse_shortcut(bad)
