"""Finite shadows of three open questions.

These runs only say what happens for colourings of [1..N] under a node cap.
A bad colouring here is not a counterexample to anything infinite, and
AllAdmit is not a proof.
"""
from partreg.matrixspec import Schur, VanDerWaerden
from partreg.search import SearchBudget, hunt_counterexample

budget = SearchBudget(max_nodes=3_000_000)
runs = [
    (("Q3.8", Schur()), range(4, 25, 4)),
    (("Q3.18", [Schur(), VanDerWaerden(2)]), range(4, 17, 4)),
    (("Q3.19", 2, 3), range(4, 17, 4)),
]
for question, Ns in runs:
    for N in Ns:
        rep = hunt_counterexample(question, 2, N, budget)
        cert = rep["certificate"]
        extra = f" {cert['bad_coloring']}" if "bad_coloring" in cert else ""
        print(f"{rep['question']} N={N:3d}: {cert['outcome']}{extra}")
print(rep["label"])
