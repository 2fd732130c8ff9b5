import itertools

import pytest
from hypothesis import given, strategies as st

from oracles import (block_systems_oracle, compress_oracle, is_square, mt_set_oracle, ps_oracle,
                     subset_products, subset_sums)
from partreg.sequences import (block_systems, compress, delete_zeros, finite_products,
                               finite_sums, is_compressed, milliken_taylor_set,
                               mult_thick_prefix_test, power_complement_witness, products_across,
                               ps_m, require_compressed, sp_m, sum_subsystem, sums_across)

seqs = st.lists(st.integers(0, 4), max_size=10)
naturals = st.lists(st.integers(1, 30), min_size=1, max_size=6)


def test_delete_zeros():
    assert delete_zeros((2, 0, 1, 0, 3)) == (2, 1, 3)
    assert delete_zeros((0, 0)) == ()
    assert delete_zeros((5,)) == (5,)


def test_compress_examples():
    assert compress((2, 0, 1, 1, 3)) == (2, 1, 3)
    assert compress((1, 2, 2, 1)) == (1, 2, 1)
    assert compress((1, 0, 1)) == (1,)


@given(seqs)
def test_compress_matches_oracle(x):
    assert compress(x) == compress_oracle(x)
    assert compress(compress(x)) == compress(x)


def test_require_compressed():
    assert require_compressed([1, 2]) == (1, 2)
    for bad in ([1, 1], [], [1, 0, 2], [-1]):
        with pytest.raises(ValueError):
            require_compressed(bad)


def test_finite_sums_and_products():
    assert finite_sums((1, 2, 4)) == list(range(1, 8))
    assert finite_products((2, 3)) == [2, 3, 6]


@given(naturals)
def test_fs_fp_match_oracle(x):
    assert set(finite_sums(x)) == subset_sums(x)
    assert set(finite_products(x)) == subset_products(x)
    assert len(finite_sums(x)) <= 2 ** len(x) - 1


@pytest.mark.parametrize("n", range(1, 8))
def test_fs_full_size_for_super_increasing(n):
    x = [3 ** i for i in range(n)]
    assert len(finite_sums(x)) == 2 ** n - 1


def test_finite_sums_rejects_bad_input():
    for bad in ([], [0, 1], [-2], list(range(1, 30))):
        with pytest.raises(ValueError):
            finite_sums(bad)


@pytest.mark.parametrize("n, m", [(n, m) for n in range(1, 7) for m in range(1, 4)])
def test_block_systems_match_oracle(n, m):
    assert sorted(block_systems(n, m)) == sorted(block_systems_oracle(n, m))


def test_milliken_taylor_examples():
    got = milliken_taylor_set((1, 2), (1, 10, 100))
    # F1 < F2 over (1, 10, 100): {0}{1}, {0}{2}, {1}{2}, {0}{1,2}, {0,1}{2}
    assert got == [21, 201, 210, 211, 221]
    assert set(got) == mt_set_oracle((1, 2), (1, 10, 100))
    assert milliken_taylor_set((1,), (3, 5, 9)) == finite_sums((3, 5, 9))


@given(st.lists(st.integers(1, 3), min_size=1, max_size=3), naturals)
def test_milliken_taylor_matches_oracle(a, x):
    assert set(milliken_taylor_set(a, x)) == mt_set_oracle(a, x)


def test_sum_subsystem():
    assert sum_subsystem((1, 2, 4, 8), ({0, 1}, {2, 3})) == (3, 12)
    assert sum_subsystem((5, 6, 7), ({0}, {2})) == (5, 7)
    with pytest.raises(ValueError):
        sum_subsystem((1, 2, 3), ({1}, {0}))
    with pytest.raises(ValueError):
        sum_subsystem((1, 2, 3), ({0}, set()))


@given(naturals, st.data())
def test_sum_subsystem_fs_inclusion(x, data):
    m = data.draw(st.integers(1, len(x)))
    H = data.draw(st.sampled_from(list(block_systems(len(x), m))))
    assert subset_sums(sum_subsystem(x, H)) <= subset_sums(x)


def test_across():
    assert products_across((2, 3), (5,)) == [10, 15]
    assert sums_across((1, 2), (10, 20)) == [11, 12, 21, 22]


@given(st.lists(st.lists(st.integers(1, 9), min_size=1, max_size=3), min_size=1, max_size=3))
def test_products_across_count_bound(vs):
    bound = 1
    for v in vs:
        bound *= len(set(v))
    assert len(products_across(*vs)) <= bound


def test_ps_and_sp():
    assert ps_m((1, 2, 4), 2) == [2, 4, 6, 8, 12]
    assert ps_m((1, 2, 4), 1) == finite_sums((1, 2, 4))
    assert sp_m((2, 3, 5), 1) == finite_products((2, 3, 5))
    with pytest.raises(ValueError):
        ps_m((1, 2), 3)


@given(naturals, st.integers(1, 3))
def test_ps_matches_oracle(x, m):
    if m <= len(x):
        assert set(ps_m(x, m)) == ps_oracle(x, m)


def test_mult_thick_prefix():
    non_squares = [v for v in range(1, 31) if not is_square(v)]
    assert mult_thick_prefix_test(non_squares, 4, 30) == 5
    assert mult_thick_prefix_test(range(1, 21), 7, 20) == 1
    squares = [v * v for v in range(1, 11)]
    assert mult_thick_prefix_test(squares, 2, 100) is None


def test_power_complement_witness_examples():
    assert power_complement_witness(2, 4) == 5
    assert power_complement_witness(3, 1) == 2
    assert power_complement_witness(2, 6) == 7
    with pytest.raises(ValueError):
        power_complement_witness(1, 3)


def test_exhaustive_compression_laws():
    for n in range(7):
        for x in itertools.product(range(4), repeat=n):
            c = compress(x)
            assert compress(c) == c
            assert delete_zeros(x) == tuple(v for v in x if v)
            assert is_compressed(x) == (compress(x) == x)
