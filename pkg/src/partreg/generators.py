"""Named matrix constructors with deterministic row order.

Infinite matrices only ever exist here as finite truncations; the callers
(MatrixSpec.materialize) carry the truncation depth alongside.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .rational import RatMatrix
from .sequences import require_compressed

FS_MATRIX_CAP = 12

# Middle-band row order of the ex212 subtracted-image prefix, as
# indices into finite_sums_matrix(3) (binary order 001, 010, ..., 111);
# None is the all-zero band row.
EXAMPLE_212_BAND = (1, 3, 5, 0, 1, 4, 6, 2, None)


def schur_matrix() -> RatMatrix:
    return RatMatrix([[1, 0], [0, 1], [1, 1]])


def vdw_matrix(n: int) -> RatMatrix:
    """n x 2 matrix with rows (1, i), i = 0..n-1; its image is an n-term progression."""
    if n < 1:
        raise ValueError(f"vdw_matrix needs n >= 1, got {n}")
    return RatMatrix([[1, i] for i in range(n)])


def finite_sums_matrix(k: int) -> RatMatrix:
    """All nonzero 0/1 rows of length k, ordered by binary value (column 0 is the high bit)."""
    if not 1 <= k <= FS_MATRIX_CAP:
        raise ValueError(f"finite_sums_matrix needs 1 <= k <= {FS_MATRIX_CAP}, got {k}")
    return RatMatrix([[(b >> (k - 1 - j)) & 1 for j in range(k)] for b in range(1, 2**k)])


def mt_matrix_prefix(a: Sequence[int], n: int) -> RatMatrix:
    """Rows r of length n with compression c(r) == a, in lexicographic order."""
    a = require_compressed(a)
    if any(v < 1 for v in a):
        raise ValueError("Milliken-Taylor vector needs positive entries")
    m = len(a)
    if m > n:
        raise ValueError(f"need len(a) <= n, got {m} > {n}")

    rows: list[tuple[int, ...]] = []
    row: list[int] = []

    def rec(pos: int, matched: int):
        left = n - pos
        if left == 0:
            if matched == m:
                rows.append(tuple(row))
            return
        if m - matched > left:
            return
        options = {0: matched}
        if matched:
            options[a[matched - 1]] = matched
        if matched < m:
            options[a[matched]] = matched + 1
        for value in sorted(options):
            row.append(value)
            rec(pos + 1, options[value])
            row.pop()

    rec(0, 0)
    return RatMatrix(rows)


def _check_first_entries_block(block: RatMatrix, what: str):
    from .conditions import check_first_entries

    report = check_first_entries(block)
    if not report.satisfies:
        raise ValueError(f"{what} is not a first-entries matrix: {report.violations}")


def _cycle(seq, depth):
    return [seq[i % len(seq)] for i in range(depth)]


def segmented_builder(blocks: Sequence[RatMatrix], depth: int | None = None,
                      pattern: Sequence[Sequence[int | None]] | None = None):
    """Stack first-entries blocks into a segmented first-entries prefix.

    ``pattern`` lists output rows as one entry per segment: a row index into
    that segment's block, or None for a zero segment. The default pattern is
    block diagonal. Rows cycle through the pattern until ``depth`` rows exist.

    Returns ``(matrix, alpha)`` where alpha holds the segment boundaries,
    starting at 0 and ending at the column count.
    """
    blocks = list(blocks)
    if not blocks:
        raise ValueError("segmented_builder needs at least one block")
    for s, block in enumerate(blocks):
        _check_first_entries_block(block, f"block {s}")
    if pattern is None:
        pattern = []
        for s, block in enumerate(blocks):
            for i in range(block.rows):
                pattern.append(tuple(i if t == s else None for t in range(len(blocks))))
    pattern = [tuple(p) for p in pattern]
    for p in pattern:
        if len(p) != len(blocks):
            raise ValueError(f"pattern row {p} does not have one entry per block")
        if all(i is None for i in p):
            raise ValueError("pattern row selects no block row; it would be a zero row")
    depth = len(pattern) if depth is None else depth
    if depth < 1:
        raise ValueError("depth must be >= 1")

    rows = []
    for p in _cycle(pattern, depth):
        row: list[Fraction] = []
        for block, i in zip(blocks, p):
            row.extend(block[i] if i is not None else (Fraction(0),) * block.cols)
        rows.append(row)
    alpha = [0]
    for block in blocks:
        alpha.append(alpha[-1] + block.cols)
    return RatMatrix(rows), tuple(alpha)


def subtracted_builder(head: RatMatrix, tail_blocks: Sequence[RatMatrix], n: int, k: int,
                       depth: int | None = None,
                       head_pattern: Sequence[int | None] | None = None,
                       tail_pattern: Sequence[Sequence[int | None]] | None = None) -> RatMatrix:
    """Insert the finite band ``head`` at columns n..n+k-1 of a segmented tail.

    Row i combines tail row i (cycled) with ``head_pattern[i]`` (cycled), where
    None leaves the band zero. The tail keeps every row nonzero.
    """
    _check_first_entries_block(head, "head")
    if head.cols != k:
        raise ValueError(f"head has {head.cols} columns but k={k}")
    tail, _ = segmented_builder(tail_blocks, pattern=tail_pattern)
    if not 0 <= n <= tail.cols:
        raise ValueError(f"band position n={n} outside 0..{tail.cols}")
    if head_pattern is None:
        head_pattern = list(range(head.rows))
    head_pattern = list(head_pattern)
    if not head_pattern:
        raise ValueError("empty head pattern")
    if depth is None:
        depth = max(len(head_pattern), tail.rows)
    if depth < 1:
        raise ValueError("depth must be >= 1")
    zero_band = (Fraction(0),) * k
    rows = []
    for i in range(depth):
        t = tail[i % tail.rows]
        h = head_pattern[i % len(head_pattern)]
        band = head[h] if h is not None else zero_band
        rows.append(t[:n] + band + t[n:])
    return RatMatrix(rows)


def example_212(depth: int = 8) -> RatMatrix:
    """Prefix of the subtracted matrix with a constant-2 first column and a 0/1 band on columns 1..3."""
    return subtracted_builder(finite_sums_matrix(3), [RatMatrix([[2]])], n=1, k=3,
                              depth=depth, head_pattern=EXAMPLE_212_BAND)
