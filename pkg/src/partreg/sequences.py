"""Finite combinatorial structures: compression, FS/FP, Milliken-Taylor sets,
sum-subsystems, products/sums across vectors, PS_m / SP_m, thickness tests.

Every set-valued function returns a sorted list without duplicates.
"""
from __future__ import annotations

import itertools
import math
from typing import Iterator, Sequence

from .rational import integer_root

FS_CAP = 20
BLOCK_CAP = 12


def delete_zeros(x: Sequence[int]) -> tuple[int, ...]:
    return tuple(a for a in x if a != 0)


def compress(x: Sequence[int]) -> tuple[int, ...]:
    """Drop zeros, then drop every entry equal to its immediate predecessor."""
    out: list[int] = []
    for a in delete_zeros(x):
        if not out or out[-1] != a:
            out.append(a)
    return tuple(out)


def is_compressed(x: Sequence[int]) -> bool:
    return tuple(x) == compress(x)


def require_compressed(a: Sequence[int]) -> tuple[int, ...]:
    a = tuple(int(v) for v in a)
    if not a:
        raise ValueError("compressed sequence must be nonempty")
    if any(v < 0 for v in a):
        raise ValueError(f"entries must come from omega, got {a}")
    if not is_compressed(a):
        raise ValueError(f"{a} is not compressed (compression is {compress(a)})")
    return a


def _check_naturals(x: Sequence[int], cap: int, what: str) -> tuple[int, ...]:
    x = tuple(int(v) for v in x)
    if not x:
        raise ValueError(f"{what}: sequence must be nonempty")
    if len(x) > cap:
        raise ValueError(f"{what}: length {len(x)} exceeds cap {cap}")
    if any(v < 1 for v in x):
        raise ValueError(f"{what}: entries must be positive integers")
    return x


def _subset_fold(x: tuple[int, ...], op) -> list[int]:
    seen: set[int] = set()
    for a in x:
        seen |= {op(v, a) for v in seen}
        seen.add(a)
    return sorted(seen)


def _add(a, b):
    return a + b


def _mul(a, b):
    return a * b


def finite_sums(x: Sequence[int]) -> list[int]:
    """All sums over nonempty subsets of positions of x."""
    return _subset_fold(_check_naturals(x, FS_CAP, "finite_sums"), _add)


def finite_products(x: Sequence[int]) -> list[int]:
    """All products over nonempty subsets of positions of x."""
    return _subset_fold(_check_naturals(x, FS_CAP, "finite_products"), _mul)


def block_systems(length: int, m: int) -> Iterator[tuple[tuple[int, ...], ...]]:
    """Yield every F_1 < ... < F_m of nonempty subsets of range(length).

    ``F_i < F_{i+1}`` means ``max F_i < min F_{i+1}``.
    """
    if m < 1:
        raise ValueError("need at least one block")

    blocks: list[list[int]] = []

    def rec(t: int):
        if t == length:
            if len(blocks) == m:
                yield tuple(tuple(b) for b in blocks)
            return
        # t skipped
        yield from rec(t + 1)
        # t joins the current block
        if blocks:
            blocks[-1].append(t)
            yield from rec(t + 1)
            blocks[-1].pop()
        # t opens the next block
        if len(blocks) < m:
            blocks.append([t])
            yield from rec(t + 1)
            blocks.pop()

    yield from rec(0)


def milliken_taylor_set(a: Sequence[int], x: Sequence[int]) -> list[int]:
    """MT(a, x): sum_i a_i * (sum_{t in F_i} x_t) over all block systems F_1 < ... < F_m."""
    a = tuple(int(v) for v in a)
    if not a:
        raise ValueError("milliken_taylor_set: empty a")
    if any(v < 1 for v in a):
        raise ValueError("milliken_taylor_set: a needs positive entries")
    x = _check_naturals(x, BLOCK_CAP, "milliken_taylor_set")
    out = set()
    for F in block_systems(len(x), len(a)):
        out.add(sum(ai * sum(x[t] for t in Fi) for ai, Fi in zip(a, F)))
    return sorted(out)


def validate_block_system(H: Sequence[Sequence[int]], length: int | None = None) -> tuple[tuple[int, ...], ...]:
    H = tuple(tuple(sorted(set(int(s) for s in block))) for block in H)
    prev = -1
    for t, block in enumerate(H):
        if not block:
            raise ValueError(f"block {t} is empty")
        if block[0] <= prev:
            raise ValueError(f"block ordering violated at block {t}: need max H_{t-1} < min H_{t}")
        if length is not None and (block[0] < 0 or block[-1] >= length):
            raise ValueError(f"block {t} has an index outside range({length})")
        prev = block[-1]
    return H


def sum_subsystem(x: Sequence[int], H: Sequence[Sequence[int]]) -> tuple[int, ...]:
    """y_t = sum_{s in H_t} x_s."""
    H = validate_block_system(H, len(x))
    return tuple(sum(x[s] for s in block) for block in H)


def _across(vectors, op, unit):
    vectors = [tuple(v) for v in vectors]
    if not vectors:
        raise ValueError("need at least one vector")
    if any(not v for v in vectors):
        raise ValueError("every vector must be nonempty")
    out = set()
    for choice in itertools.product(*vectors):
        acc = unit
        for c in choice:
            acc = op(acc, c)
        out.add(acc)
    return sorted(out)


def products_across(*vectors: Sequence[int]) -> list[int]:
    """P(y1, ..., ym): one entry from each vector, multiplied."""
    return _across(vectors, _mul, 1)


def sums_across(*vectors: Sequence[int]) -> list[int]:
    """S(y1, ..., ym): one entry from each vector, added."""
    return _across(vectors, _add, 0)


def _block_combine(x, m, inner, outer):
    x = _check_naturals(x, BLOCK_CAP, "block structure")
    if not 1 <= m <= len(x):
        raise ValueError(f"m={m} out of range 1..{len(x)}")
    out = set()
    for F in block_systems(len(x), m):
        vals = [inner(x[t] for t in Fi) for Fi in F]
        out.add(outer(vals))
    return sorted(out)


def ps_m(x: Sequence[int], m: int) -> list[int]:
    """PS_m: products of m ordered block-sums."""
    return _block_combine(x, m, sum, math.prod)


def sp_m(x: Sequence[int], m: int) -> list[int]:
    """SP_m: sums of m ordered block-products."""
    return _block_combine(x, m, math.prod, sum)


def mult_thick_prefix_test(S, n: int, bound: int) -> int | None:
    """Least x <= bound with x, 2x, ..., nx all in S (S is a finite subset of [1..bound])."""
    S = set(S)
    for x in range(1, bound + 1):
        if n * x > bound:
            break
        if all(i * x in S for i in range(1, n + 1)):
            return x
    return None


def is_perfect_power(n: int, k: int) -> bool:
    return integer_root(n, k) is not None


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def power_complement_witness(k: int, n: int) -> int:
    """Smallest prime p > n with none of p, 2p, ..., np a perfect k-th power.

    Any prime above n works (p divides ip exactly once); the loop still
    checks every multiple rather than relying on that.
    """
    if k < 2 or n < 1:
        raise ValueError("need k >= 2 and n >= 1")
    p = n + 1
    while True:
        if is_prime(p) and not any(is_perfect_power(i * p, k) for i in range(1, n + 1)):
            return p
        p += 1
