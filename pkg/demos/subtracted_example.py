"""The constant-2 column with a finite-sums band, and a diagonal sum with a
Milliken-Taylor block.

The prefix passes the subtracted recognizer with the band at columns 1..3,
and the segmented recognizer with boundaries (0, 1, 4). The plain
finite-sums matrix passes neither for any split.
"""
from partreg.conditions import check_segmented, check_subtracted
from partreg.generators import example_212, finite_sums_matrix
from partreg.matrixspec import Example212, MillikenTaylor
from partreg.rational import format_matrix
from partreg.search import SearchBudget, diagonal_sum_scenario

A = example_212(9)
print(format_matrix(A))
print("subtracted (n=1, k=3):", check_subtracted(A, 1, 3).satisfies)
print("segmented alpha (0,1,4):", check_segmented(A, (0, 1, 4)).satisfies)

F = finite_sums_matrix(3)
splits = [(n, k) for n in range(3) for k in range(1, 4 - n)]
print("FS(3) passes some split:", any(check_subtracted(F, n, k).satisfies for n, k in splits))

# The statement checked here is about the truncations only.
for N in (6, 9, 12):
    cert = diagonal_sum_scenario(Example212(4), MillikenTaylor((1, 2), 3), 2, N,
                                 SearchBudget(max_nodes=500_000))
    print(f"diag(ex212[4 rows], MT((1,2))[3 cols]) N={N}: {cert.outcome}, "
          f"{cert.nodes_explored} nodes")
