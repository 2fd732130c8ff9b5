"""Independent brute-force oracles used by the tests.

These are deliberately naive and share no code with the package: rank by
minors instead of elimination, compression by groupby, MT sets by explicit
block-system enumeration.
"""
import itertools
import math
from fractions import Fraction


def det(M):
    n = len(M)
    if n == 0:
        return Fraction(1)
    if n == 1:
        return Fraction(M[0][0])
    total = Fraction(0)
    for j in range(n):
        minor = [row[:j] + row[j + 1:] for row in M[1:]]
        total += (-1) ** j * Fraction(M[0][j]) * det(minor)
    return total


def rank(cols):
    """Rank of the matrix whose columns are ``cols``, by largest nonzero minor."""
    if not cols:
        return 0
    m = len(cols[0])
    for k in range(min(m, len(cols)), 0, -1):
        for rs in itertools.combinations(range(m), k):
            for cs in itertools.combinations(range(len(cols)), k):
                if det([[cols[c][r] for c in cs] for r in rs]) != 0:
                    return k
    return 0


def ordered_partitions(n):
    """All ordered set partitions of range(n), as tuples of sorted tuples."""
    out = []
    for labels in itertools.product(range(n), repeat=n):
        used = sorted(set(labels))
        if used != list(range(len(used))):
            continue
        out.append(tuple(tuple(j for j in range(n) if labels[j] == b) for b in used))
    return sorted(set(out), key=lambda p: (len(p), p))


def columns_condition_oracle(rows):
    """First ordered partition (by block count, then blocks) meeting Rado's condition, or None."""
    cols = [[Fraction(r[j]) for r in rows] for j in range(len(rows[0]))]
    m = len(rows)
    for part in ordered_partitions(len(cols)):
        first = [sum(cols[j][i] for j in part[0]) for i in range(m)]
        if any(first):
            continue
        ok = True
        earlier = list(part[0])
        for block in part[1:]:
            target = [sum(cols[j][i] for j in block) for i in range(m)]
            base = [cols[j] for j in earlier]
            if rank(base + [target]) != rank(base):
                ok = False
                break
            earlier += block
        if ok:
            return part
    return None


def compress_oracle(x):
    nonzero = [v for v in x if v != 0]
    return tuple(k for k, _ in itertools.groupby(nonzero))


def block_systems_oracle(n, m, start=0):
    """Ordered block systems (F_1 < ... < F_m) of nonempty subsets of range(start, n)."""
    if m == 0:
        yield ()
        return
    for k in range(1, n - start + 1):
        for F in itertools.combinations(range(start, n), k):
            for rest in block_systems_oracle(n, m - 1, F[-1] + 1):
                yield (F,) + rest


def mt_set_oracle(a, x):
    return {sum(ai * sum(x[t] for t in F) for ai, F in zip(a, Fs))
            for Fs in block_systems_oracle(len(x), len(a))}


def ps_oracle(x, m):
    return {math.prod(sum(x[t] for t in F) for F in Fs) for Fs in block_systems_oracle(len(x), m)}


def subset_sums(x):
    return {sum(c) for k in range(1, len(x) + 1) for c in itertools.combinations(x, k)}


def subset_products(x):
    return {math.prod(c) for k in range(1, len(x) + 1) for c in itertools.combinations(x, k)}


def is_square(n):
    return math.isqrt(n) ** 2 == n
