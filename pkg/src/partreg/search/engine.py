"""Witness search inside a colouring, and exhaustive verification over all colourings.

find_witness runs a lexicographic backtracking search over the variable
vector. After each coordinate is fixed, every coloured value that is now
fully determined is checked for range, integrality and colour; monotone
values also give a lower bound that cuts the loop once it passes N.

verify_all_colorings walks the colouring tree of [1..N] with colour
symmetry broken (1 gets colour 1, new colours appear in order). A node whose
prefix already holds a witness covers its whole subtree. The tree is split
at a fixed depth into independent subtrees; results are combined in
canonical order, so the certificate does not depend on the worker count.
"""
from __future__ import annotations

import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from ..rational import rational_root
from . import structures as st
from .compile import Problem, compile_structure

SPLIT_DEPTH = 6
DEFAULT_MAX_NODES = 1_000_000


class BudgetExceeded(Exception):
    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason


@dataclass(frozen=True)
class SearchBudget:
    """Caps for one search. ``max_component=None`` means "use N"."""
    max_component: Optional[int] = None
    max_nodes: int = DEFAULT_MAX_NODES
    time_cap: Optional[float] = None

    def __post_init__(self):
        if self.max_component is not None and self.max_component < 1:
            raise ValueError("max_component must be positive")
        if self.max_nodes < 1:
            raise ValueError("max_nodes must be positive")
        if self.time_cap is not None and self.time_cap <= 0:
            raise ValueError("time_cap must be positive")

    def to_dict(self):
        return {"max_component": self.max_component, "max_nodes": self.max_nodes,
                "time_cap": self.time_cap}

    @classmethod
    def from_dict(cls, d):
        return cls(d.get("max_component"), d.get("max_nodes", DEFAULT_MAX_NODES), d.get("time_cap"))


@dataclass(frozen=True)
class Coloring:
    N: int
    r: int
    assignment: tuple

    def __post_init__(self):
        a = tuple(int(c) for c in self.assignment)
        object.__setattr__(self, "assignment", a)
        if self.N < 1 or self.r < 1:
            raise ValueError("coloring needs N >= 1 and r >= 1")
        if len(a) != self.N:
            raise ValueError(f"coloring has {len(a)} entries, expected N={self.N}")
        for i, c in enumerate(a, start=1):
            if not 1 <= c <= self.r:
                raise ValueError(f"position {i}: color {c} out of range r={self.r}")

    def color(self, v: int) -> int:
        return self.assignment[v - 1]

    def table(self) -> list:
        """colors[v] for v in 1..N; index 0 unused."""
        return [0, *self.assignment]


def parse_coloring(text: str) -> Coloring:
    lines = [(n, ln) for n, ln in enumerate(text.splitlines(), start=1) if ln.strip()]
    if len(lines) != 2:
        raise ValueError(f"coloring text needs exactly 2 nonblank lines, found {len(lines)}")
    (n0, header), (n1, body) = lines
    parts = header.split()
    if len(parts) != 2:
        raise ValueError(f"line {n0}: header must be 'N r'")
    try:
        N, r = int(parts[0]), int(parts[1])
    except ValueError:
        raise ValueError(f"line {n0}: header must be two integers") from None
    tokens = body.split()
    if len(tokens) != N:
        raise ValueError(f"line {n1}: expected {N} colors, found {len(tokens)}")
    colors = []
    for col, tok in enumerate(tokens, start=1):
        try:
            c = int(tok)
        except ValueError:
            raise ValueError(f"line {n1}, column {col}: not an integer: {tok!r}") from None
        if not 1 <= c <= r:
            raise ValueError(f"line {n1}, column {col}: color {c} out of range r={r}")
        colors.append(c)
    return Coloring(N, r, tuple(colors))


def format_coloring(c: Coloring) -> str:
    return f"{c.N} {c.r}\n" + " ".join(str(v) for v in c.assignment) + "\n"


@dataclass
class Certificate:
    outcome: str                       # Witness | NoneFound | AllAdmit | BadColoring | Inconclusive
    spec: dict
    budget: dict
    N: int
    r: Optional[int] = None
    witness: Optional[dict] = None
    bad_coloring: Optional[list] = None
    cover: Optional[list] = None       # AllAdmit: [prefix, witness vectors] per covering prefix
    reason: Optional[str] = None
    truncation: Optional[object] = None
    nodes_explored: int = 0
    wall_time_ms: float = 0.0

    def to_dict(self, timing: bool = True) -> dict:
        d = {"spec": self.spec, "budget": self.budget, "outcome": self.outcome, "N": self.N,
             "nodes_explored": self.nodes_explored}
        if self.r is not None:
            d["r"] = self.r
        for key in ("witness", "bad_coloring", "cover", "reason", "truncation"):
            val = getattr(self, key)
            if val is not None:
                d[key] = val
        if timing:
            d["wall_time_ms"] = round(self.wall_time_ms, 3)
        return d


# ---------------------------------------------------------------- witness search

class _Searcher:
    def __init__(self, problem: Problem):
        self.p = problem
        K = problem.nvars
        self.K = K
        self.const_values = [c for c in problem.values if c.last < 0]
        self.const_aux = [c for c in problem.aux if c.last < 0]
        self.vals_last = [[] for _ in range(K)]
        self.vals_bound = [[] for _ in range(K)]
        for c in problem.values:
            if c.last >= 0:
                self.vals_last[c.last].append(c)
            if c.expr.monotone:
                for v in c.expr.vars:
                    if v != c.last:
                        self.vals_bound[v].append(c)
        self.aux_last = [[] for _ in range(K)]
        for c in problem.aux:
            if c.last >= 0:
                self.aux_last[c.last].append(c)
        self.cons_last = [[] for _ in range(K)]
        self.const_cons = []
        for c in problem.constraints:
            (self.cons_last[c.last] if c.last >= 0 else self.const_cons).append(c)
        self.distinct_before = [[] for _ in range(K)]
        for grp in problem.distinct:
            for pos, v in enumerate(grp):
                self.distinct_before[v].extend(grp[:pos])

    @staticmethod
    def _holds(c, x) -> bool:
        if c.kind == "linear":
            return sum((co * x[v] for v, co in c.coefs), Fraction(0)) == c.target
        acc = Fraction(1)
        for v, e in c.coefs:
            acc *= Fraction(x[v]) ** e
        return acc == c.target

    @staticmethod
    def _forced(c, x, j):
        """Value of x_j making constraint c hold given x_0..x_{j-1}, or None."""
        if c.kind == "linear":
            rest = c.target
            a = None
            for v, co in c.coefs:
                if v == j:
                    a = co
                else:
                    rest -= co * x[v]
            val = rest / a
        else:
            acc = Fraction(1)
            e = None
            for v, ex in c.coefs:
                if v == j:
                    e = ex
                else:
                    acc *= Fraction(x[v]) ** ex
            power = c.target / acc
            val = rational_root(power, e) if e > 0 else rational_root(1 / power, -e)
            if val is None:
                return None
        if val.denominator != 1:
            return None
        return val.numerator

    def run(self, colors: Sequence[int], N: int, X: int, max_nodes: int,
            deadline: Optional[float] = None):
        """Lexicographically least witness as (x, color), or None.

        Raises BudgetExceeded when the node cap or deadline is hit.
        """
        p = self.p
        K = self.K
        x = list(p.lo)
        hi = [min(X, N) if p.colored[j] else X for j in range(K)]
        self.nodes = 0
        color = None
        for c in self.const_values:
            v = _natural(c.fn(x))
            if v is None or v > N:
                return None
            if color is None:
                color = colors[v]
            elif colors[v] != color:
                return None
        for c in self.const_aux:
            if _natural(c.fn(x)) is None:
                return None
        for c in self.const_cons:
            if not self._holds(c, x):
                return None
        if K == 0:
            return ([], color)

        vals_last, vals_bound, aux_last = self.vals_last, self.vals_bound, self.aux_last
        cons_last, distinct_before, lo = self.cons_last, self.distinct_before, p.lo
        forced, holds = self._forced, self._holds

        def rec(j, color):
            cons = cons_last[j]
            if cons:
                f = forced(cons[0], x, j)
                candidates = (f,) if f is not None and lo[j] <= f <= hi[j] else ()
                rest_cons = cons[1:]
            else:
                candidates = range(lo[j], hi[j] + 1)
                rest_cons = ()
            for val in candidates:
                self.nodes += 1
                if self.nodes > max_nodes:
                    raise BudgetExceeded("max_nodes")
                if deadline is not None and not self.nodes & 4095 and time.monotonic() > deadline:
                    raise BudgetExceeded("time_cap")
                x[j] = val
                if distinct_before[j] and any(x[i] == val for i in distinct_before[j]):
                    continue
                if rest_cons and not all(holds(c, x) for c in rest_cons):
                    continue
                c2 = color
                ok = True
                stop = False
                for comp in vals_last[j]:
                    v = comp.fn(x)
                    if v.__class__ is not int:
                        if v.denominator != 1:
                            ok = False
                            break
                        v = v.numerator
                    if v > N:
                        ok = False
                        stop = comp.expr.monotone
                        break
                    if v < 1:
                        ok = False
                        break
                    cv = colors[v]
                    if c2 is None:
                        c2 = cv
                    elif cv != c2:
                        ok = False
                        break
                if ok:
                    for comp in vals_bound[j]:
                        if comp.fn(x) > N:
                            ok = False
                            stop = True
                            break
                if ok:
                    for comp in aux_last[j]:
                        if _natural(comp.fn(x)) is None:
                            ok = False
                            break
                if stop:
                    break
                if not ok:
                    continue
                if j + 1 == K or rec(j + 1, c2):
                    if j + 1 == K:
                        self.found_color = c2
                    return True
            x[j] = lo[j]
            return False

        self.found_color = None
        if rec(0, color):
            return (list(x), self.found_color)
        return None


def _natural(v):
    if v.__class__ is not int:
        if v.denominator != 1:
            return None
        v = v.numerator
    return v if v >= 1 else None


def _witness_dict(problem: Problem, x, color):
    values = set()
    for c in problem.values:
        v = c.fn(x)
        values.add(int(v))
    return {"color": color, "vectors": problem.split(x), "values": sorted(values)}


_PROBLEMS: dict = {}


def _problem_for(spec: st.StructureSpec) -> Problem:
    key = repr(spec.to_dict())
    prob = _PROBLEMS.get(key)
    if prob is None:
        if len(_PROBLEMS) > 64:
            _PROBLEMS.clear()
        prob = _PROBLEMS[key] = compile_structure(spec)
    return prob


def find_witness(spec: st.StructureSpec, coloring: Coloring,
                 budget: Optional[SearchBudget] = None) -> Certificate:
    """Search one colouring for a monochromatic witness of ``spec``."""
    budget = budget or SearchBudget()
    t0 = time.monotonic()
    problem = _problem_for(spec)
    searcher = _Searcher(problem)
    X = budget.max_component or coloring.N
    deadline = t0 + budget.time_cap if budget.time_cap else None
    cert = Certificate("NoneFound", spec.to_dict(), budget.to_dict(), coloring.N, coloring.r,
                       truncation=spec.truncation())
    try:
        res = searcher.run(coloring.table(), coloring.N, X, budget.max_nodes, deadline)
    except BudgetExceeded as exc:
        cert.outcome = "Inconclusive"
        cert.reason = exc.reason
        res = None
    if res is not None:
        x, color = res
        cert.outcome = "Witness"
        cert.witness = _witness_dict(problem, x, color)
    cert.nodes_explored = searcher.nodes
    cert.wall_time_ms = (time.monotonic() - t0) * 1000
    return cert


# ---------------------------------------------------------------- all colourings

def _explore(spec: st.StructureSpec, r: int, N: int, prefix: tuple, max_component,
             max_nodes: int, deadline: Optional[float], keep_cover: bool):
    """DFS below ``prefix`` (already checked, no witness). Stops at the first bad leaf."""
    problem = _problem_for(spec)
    searcher = _Searcher(problem)
    colors = [0, *prefix]
    state = {"nodes": 0, "cover": [] if keep_cover else None, "covered": 0}

    def witness_at(k):
        X = max_component or k
        left = max_nodes - state["nodes"]
        try:
            res = searcher.run(colors, k, X, left, deadline)
        finally:
            state["nodes"] += searcher.nodes
        return res

    def rec(k, used):
        # colors[1..k] fixed; choose colour of k + 1
        if k == N:
            return tuple(colors[1:])
        for c in range(1, min(r, used + 1) + 1):
            state["nodes"] += 1
            if state["nodes"] > max_nodes:
                raise BudgetExceeded("max_nodes")
            if deadline is not None and time.monotonic() > deadline:
                raise BudgetExceeded("time_cap")
            colors.append(c)
            res = witness_at(k + 1)
            if res is not None:
                state["covered"] += 1
                if keep_cover:
                    state["cover"].append([colors[1:], problem.split(res[0])])
            else:
                bad = rec(k + 1, max(used, c))
                if bad is not None:
                    return bad
            colors.pop()
        return None

    try:
        bad = rec(len(prefix), max(prefix) if prefix else 0)
        status = "bad" if bad is not None else "clear"
        reason = None
    except BudgetExceeded as exc:
        bad, status, reason = None, "inconclusive", exc.reason
    return {"status": status, "bad": bad, "nodes": state["nodes"], "cover": state["cover"],
            "covered": state["covered"], "reason": reason}


def _frontier(spec, r, N, depth, max_component, max_nodes, deadline, keep_cover):
    """Canonical prefixes of length ``depth`` with no witness yet, in lexicographic order.

    Prefixes that already hold a witness are covered and dropped. A frontier
    prefix of length N is itself a bad colouring.
    """
    problem = _problem_for(spec)
    searcher = _Searcher(problem)
    out = []
    cover = [] if keep_cover else None
    nodes = 0
    covered = 0
    colors = [0]

    def rec(k, used):
        nonlocal nodes, covered
        if k == depth:
            out.append(tuple(colors[1:]))
            return
        for c in range(1, min(r, used + 1) + 1):
            nodes += 1
            if nodes > max_nodes:
                raise BudgetExceeded("max_nodes")
            colors.append(c)
            try:
                res = searcher.run(colors, k + 1, max_component or (k + 1), max_nodes - nodes, deadline)
            finally:
                nodes += searcher.nodes
            if res is not None:
                covered += 1
                if keep_cover:
                    cover.append([colors[1:], problem.split(res[0])])
            else:
                rec(k + 1, max(used, c))
            colors.pop()

    rec(0, 0)
    return out, cover, nodes, covered


def verify_all_colorings(spec: st.StructureSpec, r: int, N: int,
                         budget: Optional[SearchBudget] = None, workers: int = 1,
                         keep_cover: bool = True) -> Certificate:
    """Decide whether every r-colouring of [1..N] admits a witness of ``spec``.

    Returns AllAdmit (with the covering prefixes), the canonical-least
    BadColoring, or Inconclusive when a cap is hit.
    """
    if r < 1 or N < 1:
        raise ValueError("need r >= 1 and N >= 1")
    budget = budget or SearchBudget()
    _problem_for(spec)  # validates the spec before any work
    t0 = time.monotonic()
    deadline = t0 + budget.time_cap if budget.time_cap else None
    cert = Certificate("AllAdmit", spec.to_dict(), budget.to_dict(), N, r,
                       truncation=spec.truncation())
    depth = min(N, SPLIT_DEPTH)
    cap = budget.max_nodes
    try:
        frontier, cover, nodes, covered = _frontier(spec, r, N, depth, budget.max_component,
                                                    cap, deadline, keep_cover)
    except BudgetExceeded as exc:
        cert.outcome, cert.reason, cert.nodes_explored = "Inconclusive", exc.reason, cap
        cert.wall_time_ms = (time.monotonic() - t0) * 1000
        return cert

    if depth == N:
        if frontier:
            cert.outcome = "BadColoring"
            cert.bad_coloring = list(frontier[0])
        else:
            cert.cover = cover
        cert.nodes_explored = nodes
        cert.wall_time_ms = (time.monotonic() - t0) * 1000
        return cert

    total = nodes
    results = _Results(spec, r, N, frontier, budget.max_component, cap, deadline, keep_cover, workers)
    try:
        for res in results.iter(lambda: cap - total):
            total += res["nodes"]
            if res["status"] == "inconclusive" or total > cap:
                cert.outcome = "Inconclusive"
                cert.reason = res["reason"] or "max_nodes"
                if cert.reason == "max_nodes":
                    total = cap
                break
            if keep_cover:
                cover.extend(res["cover"])
            if res["status"] == "bad":
                cert.outcome = "BadColoring"
                cert.bad_coloring = list(res["bad"])
                break
    finally:
        results.close()
    if cert.outcome == "AllAdmit":
        cert.cover = cover
    cert.nodes_explored = total
    cert.wall_time_ms = (time.monotonic() - t0) * 1000
    return cert


class _Results:
    """Subtree results in frontier order.

    With one worker each subtree runs lazily on whatever budget is left; the
    pool path gives every subtree the full cap. Either way a subtree's
    verdict is a function of its prefix and cap alone, so the combined
    certificate is the same.
    """

    def __init__(self, spec, r, N, frontier, max_component, cap, deadline, keep_cover, workers):
        self.args = (spec, r, N, max_component, deadline, keep_cover)
        self.frontier = frontier
        self.cap = cap
        self.pool = None
        if workers > 1 and len(frontier) > 1:
            self.pool = ProcessPoolExecutor(max_workers=workers)
            self.futures = [self.pool.submit(_explore, spec, r, N, pre, max_component, cap,
                                             deadline, keep_cover) for pre in frontier]

    def iter(self, remaining):
        if self.pool is not None:
            for f in self.futures:
                yield f.result()
            return
        spec, r, N, max_component, deadline, keep_cover = self.args
        for pre in self.frontier:
            yield _explore(spec, r, N, pre, max_component, max(0, remaining()), deadline, keep_cover)

    def close(self):
        if self.pool is not None:
            self.pool.shutdown(wait=True, cancel_futures=True)
            self.pool = None


# ---------------------------------------------------------------- drivers

@dataclass
class SweepResult:
    spec: dict
    r: int
    table: list = field(default_factory=list)   # (N, outcome, certificate)
    least_all_admit: Optional[int] = None
    flagged: list = field(default_factory=list)

    def to_dict(self, timing=True):
        return {"spec": self.spec, "r": self.r, "least_all_admit": self.least_all_admit,
                "flagged": self.flagged,
                "table": [{"N": n, "outcome": o, "certificate": c.to_dict(timing)} for n, o, c in self.table]}


def threshold_sweep(spec: st.StructureSpec, r: int, N_range: Sequence[int],
                    budget: Optional[SearchBudget] = None, workers: int = 1,
                    stop_at_first: bool = True, keep_cover: bool = False) -> SweepResult:
    """verify_all_colorings for each N in ascending order.

    Once some N is AllAdmit, a later non-AllAdmit verdict breaks
    monotonicity; such rows are re-labelled Inconclusive and flagged.
    """
    Ns = list(N_range)
    if any(b <= a for a, b in zip(Ns, Ns[1:])):
        raise ValueError("N_range must be strictly ascending")
    out = SweepResult(spec.to_dict(), r)
    for N in Ns:
        cert = verify_all_colorings(spec, r, N, budget, workers, keep_cover=keep_cover)
        outcome = cert.outcome
        if out.least_all_admit is not None and outcome != "AllAdmit":
            outcome = "Inconclusive"
            out.flagged.append({"N": N, "raw_outcome": cert.outcome,
                                "note": "non-monotone verdict after AllAdmit; budget truncation suspected"})
        out.table.append((N, outcome, cert))
        if outcome == "AllAdmit" and out.least_all_admit is None:
            out.least_all_admit = N
            if stop_at_first:
                break
    return out


_HUNT_LABEL = ("desk-scale evidence only: the verdict covers colourings of [1..N] with the "
               "stated budget and says nothing about the open question itself")


def hunt_counterexample(question: tuple, r: int, N: int, budget: Optional[SearchBudget] = None,
                        workers: int = 1) -> dict:
    """Run the finite shadow of one of the open questions.

    ``question`` is ("Q3.8", MatrixSpec), ("Q3.18", [MatrixSpec, ...]) or
    ("Q3.19", m) / ("Q3.19", m, length).
    """
    tag = str(question[0]).upper().replace("_", ".")
    if tag == "Q3.8":
        spec = st.SameVectorBoth(question[1])
    elif tag == "Q3.18":
        spec = st.SameVectorProduct(tuple(question[1]))
    elif tag == "Q3.19":
        m = int(question[1])
        if m < 2:
            raise ValueError("Q3.19 needs m >= 2")
        length = int(question[2]) if len(question) > 2 else m
        spec = st.Composite((st.PSm(m, length, distinct=True), st.PSm(1, length, distinct=True)))
    else:
        raise ValueError(f"unknown question {question[0]!r}")
    cert = verify_all_colorings(spec, r, N, budget, workers, keep_cover=False)
    if cert.outcome == "AllAdmit":
        verdict = "no counterexample at this scale (all colorings admit)"
    elif cert.outcome == "BadColoring":
        verdict = "coloring without the structure found at this scale"
    else:
        verdict = "inconclusive within budget"
    return {"question": tag, "r": r, "N": N, "verdict": verdict, "label": _HUNT_LABEL,
            "certificate": cert.to_dict()}


_FINITE_KINDS = ("literal", "schur", "vdw", "fs")


def diagonal_sum_scenario(A_spec, B_spec, r: int, N: int, budget: Optional[SearchBudget] = None,
                          workers: int = 1) -> Certificate:
    """All-colourings check of the additive image of diag(A, B) at the given truncations.

    A must be finite or subtracted; B must be finite or Milliken-Taylor.
    """
    from ..matrixspec import DiagonalSum

    if A_spec.kind not in _FINITE_KINDS + ("subtracted", "ex212"):
        raise ValueError(f"first block must be finite or subtracted, got {A_spec.kind!r}")
    if B_spec.kind not in _FINITE_KINDS + ("mt",):
        raise ValueError(f"second block must be finite or Milliken-Taylor, got {B_spec.kind!r}")
    spec = st.AdditiveImage(DiagonalSum(A_spec, B_spec))
    return verify_all_colorings(spec, r, N, budget, workers)


def default_workers() -> int:
    return max(1, os.cpu_count() or 1)
