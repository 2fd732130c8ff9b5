"""Rado's columns condition on small linear systems, next to what the search sees.

For a kernel system A x = 0 the columns condition decides partition
regularity. The search can only look at [1..N], so a failing matrix shows up
as a bad colouring and a passing one as AllAdmit somewhere below the cap.
"""
from partreg.conditions import check_columns_condition
from partreg.matrixspec import Literal
from partreg.rational import RatMatrix
from partreg.search import Kernel, SearchBudget, threshold_sweep

rows = [
    [1, 1, -1],    # x + y = z
    [1, 1, -2],    # x + y = 2z
    [2, -2, 1],
    [1, 1, 1],
    [1, 2, -4],
]

budget = SearchBudget(max_nodes=2_000_000)
for row in rows:
    A = RatMatrix([row])
    w = check_columns_condition(A)
    verdict = f"blocks {[list(b) for b in w.blocks]}" if w else "fails"
    res = threshold_sweep(Kernel(Literal(A)), 2, range(1, 41), budget)
    seen = res.least_all_admit or f"none up to {res.table[-1][0]}"
    print(f"{str(row):14s} columns condition: {verdict:24s} search AllAdmit: {seen}")
