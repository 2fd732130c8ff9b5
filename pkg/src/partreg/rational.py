"""Exact rational matrices and the additive/multiplicative image maps.

Entries are :class:`fractions.Fraction`; nothing in this module touches
floating point.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence


class MatrixFormatError(ValueError):
    """Malformed matrix text; the message carries line/column."""


def to_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not matrix entries")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"cannot use {value!r} as an exact rational (floats are rejected)")


def parse_rational(token: str) -> Fraction:
    """Parse ``p`` or ``p/q``. Decimal points are rejected on purpose."""
    token = token.strip()
    num, sep, den = token.partition("/")
    try:
        p = int(num)
        q = int(den) if sep else 1
    except ValueError:
        raise ValueError(f"not a rational: {token!r}") from None
    if q == 0:
        raise ValueError(f"zero denominator: {token!r}")
    return Fraction(p, q)


def format_rational(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class RatMatrix:
    """Dense u x v matrix over Q. Immutable; equality is entrywise."""

    entries: tuple[tuple[Fraction, ...], ...]

    def __init__(self, rows: Iterable[Iterable]):
        entries = tuple(tuple(to_fraction(a) for a in row) for row in rows)
        if not entries or not entries[0]:
            raise ValueError("matrix must have at least one row and one column")
        width = len(entries[0])
        for i, row in enumerate(entries):
            if len(row) != width:
                raise ValueError(f"row {i} has {len(row)} entries, expected {width}")
        object.__setattr__(self, "entries", entries)

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0])

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __getitem__(self, idx):
        if isinstance(idx, tuple):
            i, j = idx
            return self.entries[i][j]
        return self.entries[idx]

    def __iter__(self):
        return iter(self.entries)

    def column(self, j: int) -> tuple[Fraction, ...]:
        return tuple(row[j] for row in self.entries)

    def columns(self) -> list[tuple[Fraction, ...]]:
        return [self.column(j) for j in range(self.cols)]

    def select_columns(self, idx: Sequence[int]) -> "RatMatrix":
        return RatMatrix([[row[j] for j in idx] for row in self.entries])

    def select_rows(self, idx: Sequence[int]) -> "RatMatrix":
        return RatMatrix([self.entries[i] for i in idx])

    def is_integral(self) -> bool:
        return all(a.denominator == 1 for row in self.entries for a in row)

    def to_lists(self) -> list[list[str]]:
        return [[format_rational(a) for a in row] for row in self.entries]

    def __repr__(self):
        body = "; ".join(" ".join(format_rational(a) for a in row) for row in self.entries)
        return f"RatMatrix([{body}])"


def mat_vec_mul(A: RatMatrix, x: Sequence[int]) -> tuple[Fraction, ...]:
    """Additive image A.x, computed exactly."""
    if len(x) != A.cols:
        raise ValueError(f"dimension mismatch: matrix has {A.cols} columns, vector has {len(x)}")
    return tuple(sum((a * xj for a, xj in zip(row, x)), Fraction(0)) for row in A.entries)


def mat_pow_image(x: Sequence[int], A: RatMatrix) -> tuple[Fraction, ...]:
    """Multiplicative image x^A: entry i is prod_j x_j ** A[i][j].

    Only integer exponents are accepted; a rational exponent raises instead
    of being approximated.
    """
    if len(x) != A.cols:
        raise ValueError(f"dimension mismatch: matrix has {A.cols} columns, vector has {len(x)}")
    if not A.is_integral():
        raise ValueError("multiplicative image needs integer exponents")
    out = []
    for row in A.entries:
        y = Fraction(1)
        for a, xj in zip(row, x):
            e = a.numerator
            if e:
                y *= Fraction(xj) ** e
        out.append(y)
    return tuple(out)


def diagonal_sum(A: RatMatrix, B: RatMatrix) -> RatMatrix:
    """Block matrix [[A, 0], [0, B]]."""
    zero_b = (Fraction(0),) * B.cols
    zero_a = (Fraction(0),) * A.cols
    rows = [row + zero_b for row in A.entries] + [zero_a + row for row in B.entries]
    return RatMatrix(rows)


def format_matrix(A: RatMatrix) -> str:
    lines = [f"{A.rows} {A.cols}"]
    lines += [" ".join(format_rational(a) for a in row) for row in A.entries]
    return "\n".join(lines) + "\n"


def parse_matrix(text: str) -> RatMatrix:
    """Read the ``u v`` header format produced by :func:`format_matrix`."""
    lines = [(n, ln) for n, ln in enumerate(text.splitlines(), start=1) if ln.strip()]
    if not lines:
        raise MatrixFormatError("empty matrix text")
    n0, header = lines[0]
    parts = header.split()
    if len(parts) != 2:
        raise MatrixFormatError(f"line {n0}: header must be 'u v', got {header!r}")
    try:
        u, v = int(parts[0]), int(parts[1])
    except ValueError:
        raise MatrixFormatError(f"line {n0}: header must be two integers, got {header!r}") from None
    if u < 1 or v < 1:
        raise MatrixFormatError(f"line {n0}: dimensions must be positive")
    body = lines[1:]
    if len(body) != u:
        raise MatrixFormatError(f"expected {u} rows after header, found {len(body)}")
    rows = []
    for lineno, line in body:
        tokens = line.split()
        if len(tokens) != v:
            raise MatrixFormatError(f"line {lineno}: expected {v} entries, found {len(tokens)}")
        row = []
        for col, tok in enumerate(tokens, start=1):
            try:
                row.append(parse_rational(tok))
            except ValueError as exc:
                raise MatrixFormatError(f"line {lineno}, column {col}: {exc}") from None
        rows.append(row)
    return RatMatrix(rows)


def integer_root(n: int, k: int) -> int | None:
    """Exact k-th root of a nonnegative int, or None when n is not a k-th power."""
    if n < 0 or k < 1:
        raise ValueError("integer_root needs n >= 0 and k >= 1")
    if n < 2 or k == 1:
        return n
    # Newton iteration from a power-of-two overestimate
    r = 1 << -(-n.bit_length() // k)
    while True:
        s = ((k - 1) * r + n // r ** (k - 1)) // k
        if s >= r:
            break
        r = s
    return r if r ** k == n else None


def rational_root(q: Fraction, k: int) -> Fraction | None:
    """Exact positive k-th root of a positive rational, or None."""
    if q <= 0:
        return None
    p = integer_root(q.numerator, k)
    if p is None:
        return None
    d = integer_root(q.denominator, k)
    if d is None:
        return None
    return Fraction(p, d)
