"""Desk-scale thresholds for a few classical structures.

Each sweep runs the exhaustive colouring search for N = 1, 2, ... and stops
at the first N where every 2-colouring of [1..N] admits a monochromatic
witness. The bad colouring just below the threshold is re-checked with the
naive enumerator, which shares no code with the search.
"""
from partreg.matrixspec import Schur, VanDerWaerden
from partreg.search import (FSFP, AdditiveImage, BothImages, Coloring, check_bad_coloring,
                            threshold_sweep)

cases = [
    ("x, y, x+y", AdditiveImage(Schur())),
    ("3-term progression", AdditiveImage(VanDerWaerden(3))),
    ("FS(x1,x2) and FP(y1,y2)", FSFP(2)),
    ("Schur image, additive and multiplicative", BothImages(Schur())),
]

for label, spec in cases:
    res = threshold_sweep(spec, 2, range(1, 40))
    N = res.least_all_admit
    _, _, below = res.table[-2]
    ok = check_bad_coloring(spec, Coloring(N - 1, 2, below.bad_coloring))
    print(f"{label:45s} first AllAdmit at N={N}")
    print(f"{'':45s} bad at N={N - 1}: {''.join(map(str, below.bad_coloring))}  (re-checked: {ok})")
