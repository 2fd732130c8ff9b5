"""Decision procedures for matrix classes.

Columns condition (Rado, over Q), first-entries / monic, segmented,
Milliken-Taylor and subtracted recognition on finite prefixes.

Where a class needs "a finite image partition regular matrix", certification
is either exact (first-entries condition, which is sufficient) or empirical
(exhaustive colouring verification at a stated budget). Verdicts always say
which one was used.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .rational import RatMatrix, format_rational
from .sequences import compress, require_compressed

COLUMNS_CAP = 10
SEGMENT_SEARCH_CAP = 16

ZERO = Fraction(0)


# ---------------------------------------------------------------- linear algebra

def solve_in_span(vectors: Sequence[Sequence[Fraction]], target: Sequence[Fraction]):
    """Coefficients c with sum_j c_j * vectors[j] == target, or None.

    Gauss-Jordan over Q. When the solution is not unique, free coefficients
    are set to zero, so the answer is canonical.
    """
    dim = len(target)
    nv = len(vectors)
    if nv == 0:
        return [] if all(t == 0 for t in target) else None
    # augmented matrix, one row per coordinate
    M = [[Fraction(vectors[j][i]) for j in range(nv)] + [Fraction(target[i])] for i in range(dim)]
    pivots = []
    r = 0
    for c in range(nv):
        p = next((i for i in range(r, dim) if M[i][c] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        pv = M[r][c]
        M[r] = [v / pv for v in M[r]]
        for i in range(dim):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == dim:
            break
    if any(M[i][nv] != 0 for i in range(r, dim)):
        return None
    coeffs = [ZERO] * nv
    for i, c in enumerate(pivots):
        coeffs[c] = M[i][nv]
    return coeffs


# ---------------------------------------------------------------- columns condition

@dataclass(frozen=True)
class ColumnsConditionWitness:
    blocks: tuple[tuple[int, ...], ...]
    # coefficients[t-1] maps each column of I_1 u ... u I_{t-1} to its coefficient
    coefficients: tuple[tuple[tuple[int, Fraction], ...], ...]

    def verify(self, A: RatMatrix) -> bool:
        cols = A.columns()
        flat = sorted(j for b in self.blocks for j in b)
        if flat != list(range(A.cols)) or any(not b for b in self.blocks):
            return False
        first = _block_sum(cols, self.blocks[0], A.rows)
        if any(v != 0 for v in first):
            return False
        if len(self.coefficients) != len(self.blocks) - 1:
            return False
        earlier = set(self.blocks[0])
        for block, coeffs in zip(self.blocks[1:], self.coefficients):
            if {j for j, _ in coeffs} - earlier:
                return False
            lhs = _block_sum(cols, block, A.rows)
            rhs = [sum((c * cols[j][i] for j, c in coeffs), ZERO) for i in range(A.rows)]
            if list(lhs) != rhs:
                return False
            earlier |= set(block)
        return True

    def to_dict(self):
        return {
            "blocks": [list(b) for b in self.blocks],
            "coefficients": [[[j, format_rational(c)] for j, c in co] for co in self.coefficients],
        }


def _block_sum(cols, block, rows):
    return tuple(sum((cols[j][i] for j in block), ZERO) for i in range(rows))


def _subsets_lex(items: Sequence[int]):
    subs = [s for k in range(1, len(items) + 1) for s in itertools.combinations(items, k)]
    return sorted(subs)


def check_columns_condition(A: RatMatrix) -> Optional[ColumnsConditionWitness]:
    """Canonical columns-condition witness, or None.

    Ordered partitions are tried by increasing block count, then
    lexicographically on the sorted block contents; the first one that works
    is returned. Each membership test is an exact solve.
    """
    v = A.cols
    if v > COLUMNS_CAP:
        raise ValueError(f"columns condition search is capped at {COLUMNS_CAP} columns, got {v}")
    cols = A.columns()
    span_cache: dict = {}

    def in_span(earlier: tuple[int, ...], block: tuple[int, ...]):
        key = (earlier, block)
        if key not in span_cache:
            target = _block_sum(cols, block, A.rows)
            sol = solve_in_span([cols[j] for j in earlier], target)
            span_cache[key] = None if sol is None else tuple(zip(earlier, sol))
        return span_cache[key]

    zero_blocks = {}

    def sums_to_zero(block):
        if block not in zero_blocks:
            zero_blocks[block] = all(x == 0 for x in _block_sum(cols, block, A.rows))
        return zero_blocks[block]

    def search(m: int, remaining: tuple[int, ...], chosen: list, coeffs: list):
        if len(chosen) == m:
            if not remaining:
                return ColumnsConditionWitness(tuple(chosen), tuple(coeffs))
            return None
        blocks_left = m - len(chosen)
        for block in _subsets_lex(remaining):
            rest = tuple(j for j in remaining if j not in block)
            if len(rest) < blocks_left - 1 or (blocks_left == 1 and rest):
                continue
            if not chosen:
                if not sums_to_zero(block):
                    continue
                found = search(m, rest, [block], [])
            else:
                earlier = tuple(sorted(j for b in chosen for j in b))
                sol = in_span(earlier, block)
                if sol is None:
                    continue
                found = search(m, rest, chosen + [block], coeffs + [sol])
            if found is not None:
                return found
        return None

    for m in range(1, v + 1):
        w = search(m, tuple(range(v)), [], [])
        if w is not None:
            return w
    return None


# ---------------------------------------------------------------- first entries

@dataclass(frozen=True)
class FirstEntriesReport:
    satisfies: bool
    first_entries: tuple[Fraction, ...]
    violations: tuple[tuple[int, str], ...]
    # column -> first entry occurring there
    by_column: tuple[tuple[int, Fraction], ...] = ()

    def to_dict(self):
        return {
            "satisfied": self.satisfies,
            "first_entries": [format_rational(d) for d in self.first_entries],
            "violations": [[i, why] for i, why in self.violations],
        }


def check_first_entries(A: RatMatrix) -> FirstEntriesReport:
    violations = []
    seen: dict[int, tuple[Fraction, int]] = {}
    for i, row in enumerate(A.entries):
        j = next((j for j, a in enumerate(row) if a != 0), None)
        if j is None:
            violations.append((i, "zero row"))
            continue
        d = row[j]
        if d < 0:
            violations.append((i, f"first nonzero entry {format_rational(d)} in column {j} is not positive"))
            continue
        if j in seen and seen[j][0] != d:
            d0, i0 = seen[j]
            violations.append((i, f"first entry {format_rational(d)} in column {j} differs from "
                                  f"{format_rational(d0)} (row {i0})"))
            continue
        seen.setdefault(j, (d, i))
    firsts = tuple(sorted({d for d, _ in seen.values()}))
    by_col = tuple(sorted((j, d) for j, (d, _) in seen.items()))
    return FirstEntriesReport(not violations, firsts, tuple(violations), by_col)


def is_monic(A: RatMatrix) -> bool:
    report = check_first_entries(A)
    if not report.satisfies:
        raise ValueError(f"not a first-entries matrix: {list(report.violations)}")
    return report.first_entries == (Fraction(1),)


# ---------------------------------------------------------------- certification

@dataclass(frozen=True)
class EmpiricalBudget:
    """Parameters for certifying a finite block by exhaustive colouring search."""
    r: int = 2
    N: int = 12
    max_nodes: int = 200_000

    def to_dict(self):
        return {"r": self.r, "N": self.N, "max_nodes": self.max_nodes}


def _distinct_nonzero_rows(A: RatMatrix, cols: Sequence[int]):
    out = []
    seen = set()
    for row in A.entries:
        t = tuple(row[j] for j in cols)
        if any(a != 0 for a in t) and t not in seen:
            seen.add(t)
            out.append(t)
    return out


def certify_finite_ipr(rows, mode: str, budget: Optional[EmpiricalBudget]):
    """Certify the finite matrix with the given rows as image partition regular.

    Returns (ok, certification string, detail dict).
    """
    B = RatMatrix(rows)
    report = check_first_entries(B)
    if mode == "monic":
        ok = report.satisfies and report.first_entries == (Fraction(1),)
        return ok, "monic", report.to_dict()
    if report.satisfies or mode == "first-entries":
        return report.satisfies, "first-entries", report.to_dict()
    if mode != "general":
        raise ValueError(f"unknown certification mode {mode!r}")
    if budget is None:
        return False, "uncertified", report.to_dict()
    from .search import AdditiveImage, SearchBudget, verify_all_colorings
    from .matrixspec import Literal

    cert = verify_all_colorings(AdditiveImage(Literal(B)), budget.r, budget.N,
                                SearchBudget(max_nodes=budget.max_nodes))
    tag = f"empirical(r={budget.r},N={budget.N})"
    return cert.outcome == "AllAdmit", tag, {"outcome": cert.outcome}


# ---------------------------------------------------------------- segmented

@dataclass(frozen=True)
class SegmentedVerdict:
    satisfies: bool
    alpha: tuple[int, ...]
    segments: tuple[dict, ...]
    violations: tuple[str, ...]
    mode: str
    budget: Optional[EmpiricalBudget] = None

    def to_dict(self):
        d = {"condition": "segmented", "satisfied": self.satisfies, "alpha": list(self.alpha),
             "mode": self.mode, "segments": list(self.segments), "violations": list(self.violations),
             "certification": sorted({s["certification"] for s in self.segments if s["status"] != "empty"})}
        if self.budget is not None:
            d["budget"] = self.budget.to_dict()
        return d


def _segments(alpha: Sequence[int], ncols: int):
    alpha = tuple(int(a) for a in alpha)
    if not alpha or alpha[0] != 0:
        raise ValueError(f"alpha must start at 0, got {alpha}")
    if any(b <= a for a, b in zip(alpha, alpha[1:])):
        raise ValueError(f"alpha must be strictly increasing, got {alpha}")
    if alpha[-1] > ncols:
        raise ValueError(f"alpha {alpha} runs past the {ncols} columns")
    bounds = list(alpha)
    if bounds[-1] < ncols:
        bounds.append(ncols)
    return [(a, b) for a, b in zip(bounds, bounds[1:])]


def check_segmented(A: RatMatrix, alpha: Sequence[int], mode: str = "first-entries",
                    budget: Optional[EmpiricalBudget] = None) -> SegmentedVerdict:
    """Check a finite prefix against the segmented conditions.

    Segments are [alpha_n, alpha_{n+1}); columns after the last boundary form
    one more segment. ``mode`` is "general", "first-entries" or "monic".
    In general mode a block that is not first-entries is certified
    empirically if a budget is given.
    """
    if mode not in ("general", "first-entries", "monic"):
        raise ValueError(f"unknown mode {mode!r}")
    segs = _segments(alpha, A.cols)
    violations = []
    for i, row in enumerate(A.entries):
        if all(a == 0 for a in row):
            violations.append(f"row {i} is zero")
    segments = []
    for a, b in segs:
        rows = _distinct_nonzero_rows(A, range(a, b))
        if not rows:
            segments.append({"columns": [a, b], "status": "empty", "certification": "none", "rows": 0})
            continue
        ok, how, detail = certify_finite_ipr(rows, mode, budget)
        segments.append({"columns": [a, b], "status": "certified" if ok else "failed",
                         "certification": how, "rows": len(rows), "detail": detail})
        if not ok:
            violations.append(f"segment [{a},{b}) not certified ({how})")
    return SegmentedVerdict(not violations, tuple(int(x) for x in alpha), tuple(segments),
                            tuple(violations), mode, budget if mode == "general" else None)


def find_segmentation(A: RatMatrix, mode: str = "first-entries",
                      budget: Optional[EmpiricalBudget] = None) -> SegmentedVerdict:
    """First boundary sequence (lexicographic on alpha) under which A passes check_segmented.

    If none passes, the verdict for the single-segment alpha (0,) is returned.
    """
    v = A.cols
    if v > SEGMENT_SEARCH_CAP:
        raise ValueError(f"segmentation search is capped at {SEGMENT_SEARCH_CAP} columns")
    candidates = [(0,) + c for k in range(v) for c in itertools.combinations(range(1, v), k)]
    for alpha in sorted(candidates):
        verdict = check_segmented(A, alpha, mode, budget)
        if verdict.satisfies:
            return verdict
    return check_segmented(A, (0,), mode, budget)


# ---------------------------------------------------------------- Milliken-Taylor

def mt_row_count(m: int, n: int) -> int:
    """Number of length-n vectors whose compression is a fixed compressed vector of length m.

    Such a vector is a choice of k >= m support positions cut into m
    consecutive nonempty runs: sum_k C(n, k) C(k-1, m-1).
    """
    return sum(math.comb(n, k) * math.comb(k - 1, m - 1) for k in range(m, n + 1))


def check_milliken_taylor(rows: RatMatrix, a: Sequence[int]) -> bool:
    """True iff every row compresses to a and no such row over these columns is missing."""
    a = require_compressed(a)
    distinct = set()
    for row in rows.entries:
        if any(v.denominator != 1 or v < 0 for v in row):
            return False
        r = tuple(v.numerator for v in row)
        if compress(r) != a:
            return False
        distinct.add(r)
    return len(distinct) == mt_row_count(len(a), rows.cols)


# ---------------------------------------------------------------- subtracted

@dataclass(frozen=True)
class SubtractedVerdict:
    satisfies: bool
    n: int
    k: int
    variant: str
    band: dict
    remainder: Optional[dict]
    violations: tuple[str, ...]
    budget: Optional[EmpiricalBudget] = None

    def to_dict(self):
        certs = [self.band.get("certification")]
        if self.remainder:
            certs.append(self.remainder.get("certification"))
        d = {"condition": f"subtracted-{self.variant}", "satisfied": self.satisfies,
             "n": self.n, "k": self.k, "band": self.band, "remainder": self.remainder,
             "violations": list(self.violations), "certification": [c for c in certs if c]}
        if self.budget is not None:
            d["budget"] = self.budget.to_dict()
        return d


def check_subtracted(A: RatMatrix, n: int, k: int, variant: str = "centrally",
                     budget: Optional[EmpiricalBudget] = None,
                     alpha: Optional[Sequence[int]] = None) -> SubtractedVerdict:
    """Check the subtracted (centrally / segmented) conditions on a finite prefix.

    The band is columns n..n+k-1; its distinct nonzero rows must form a
    certified finite IPR matrix (band rows that are entirely zero are
    ignored). The remaining columns, in their original order, must be
    nonempty with no zero row, and:

    * ``centrally``: pass check_segmented in first-entries mode for some
      boundary sequence (segmented first-entries matrices are centrally IPR);
    * ``segmented``: pass check_segmented with ``alpha`` (searched if omitted).
    """
    if variant not in ("centrally", "segmented"):
        raise ValueError(f"unknown variant {variant!r}")
    if n < 0 or k < 1 or n + k > A.cols:
        raise ValueError(f"bad split n={n}, k={k} for {A.cols} columns")
    violations = []
    for i, row in enumerate(A.entries):
        if all(a == 0 for a in row):
            violations.append(f"row {i} is zero")
    band_cols = list(range(n, n + k))
    band_rows = _distinct_nonzero_rows(A, band_cols)
    mode = "general" if budget is not None else "first-entries"
    if band_rows:
        ok, how, detail = certify_finite_ipr(band_rows, mode, budget)
        band = {"columns": [n, n + k], "certified": ok, "certification": how, "detail": detail}
        if not ok:
            violations.append(f"band columns [{n},{n + k}) not certified ({how})")
    else:
        band = {"columns": [n, n + k], "certified": False, "certification": "none", "detail": {}}
        violations.append("band is entirely zero")

    rest_cols = [j for j in range(A.cols) if j < n or j >= n + k]
    remainder = None
    if not rest_cols:
        violations.append("no remaining columns")
    else:
        R = A.select_columns(rest_cols)
        zero_rows = [i for i, row in enumerate(R.entries) if all(a == 0 for a in row)]
        if zero_rows:
            violations.append(f"remaining columns have zero rows {zero_rows[:5]}")
            remainder = {"columns": rest_cols, "certified": False, "certification": "none"}
        else:
            if variant == "centrally":
                seg = find_segmentation(R, "first-entries")
                how = "segmented-first-entries"
            elif alpha is not None:
                seg = check_segmented(R, alpha, mode, budget)
                how = "segmented"
            else:
                seg = find_segmentation(R, mode, budget)
                how = "segmented"
            remainder = {"columns": rest_cols, "certified": seg.satisfies,
                         "certification": how, "alpha": list(seg.alpha),
                         "segments": list(seg.segments)}
            if not seg.satisfies:
                violations.append(f"remaining columns not certified ({how})")
    return SubtractedVerdict(not violations, n, k, variant, band, remainder, tuple(violations),
                             budget)


def witness_to_dict(w: Optional[ColumnsConditionWitness]) -> dict:
    d = {"condition": "columns-condition", "satisfied": w is not None,
         "certification": "exact"}
    if w is not None:
        d["witness"] = w.to_dict()
    return d
