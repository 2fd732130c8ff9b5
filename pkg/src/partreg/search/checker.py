"""Independent re-verification of search certificates.

Nothing here touches the compiled expressions or the pruning logic. Witnesses
are re-evaluated through ``StructureSpec.realize``, and "no witness" claims
are re-checked by plain enumeration over every variable vector in the box.
"""
from __future__ import annotations

import itertools
from typing import Optional

from . import structures as st
from .engine import Certificate, Coloring


def check_witness(spec: st.StructureSpec, coloring: Coloring, vectors: dict,
                  max_component: Optional[int] = None) -> bool:
    """True when ``vectors`` realize ``spec`` monochromatically under ``coloring``."""
    X = max_component or coloring.N
    for name, length, lo in spec.groups():
        vec = vectors.get(name)
        if vec is None or len(vec) != length:
            return False
        if any(int(v) != v or not lo <= v <= X for v in vec):
            return False
    res = spec.realize({k: [int(v) for v in vec] for k, vec in vectors.items()})
    if res is None:
        return False
    values, ok = res
    if not ok or not values:
        return False
    colors = set()
    for v in values:
        if v != int(v) or not 1 <= v <= coloring.N:
            return False
        colors.add(coloring.color(int(v)))
    return len(colors) == 1


def check_certificate_witness(spec: st.StructureSpec, coloring: Coloring, cert: Certificate) -> bool:
    """Witness certificate re-check, including the recorded colour and value set."""
    if cert.outcome != "Witness" or cert.witness is None:
        return False
    vectors = dict((name, vec) for name, vec in cert.witness["vectors"])
    X = cert.budget.get("max_component")
    if not check_witness(spec, coloring, vectors, X):
        return False
    values, _ = spec.realize(vectors)
    if sorted(int(v) for v in values) != list(cert.witness["values"]):
        return False
    return coloring.color(int(next(iter(values)))) == cert.witness["color"]


def _boxes(spec: st.StructureSpec, X: int):
    groups = spec.groups()
    ranges = [range(lo, X + 1) for _, length, lo in groups for _ in range(length)]
    for flat in itertools.product(*ranges):
        out, i = {}, 0
        for name, length, _ in groups:
            out[name] = list(flat[i:i + length])
            i += length
        yield out


def naive_find_witness(spec: st.StructureSpec, coloring: Coloring,
                       max_component: Optional[int] = None) -> Optional[dict]:
    """Lexicographically first witness by exhaustive enumeration, or None."""
    X = max_component or coloring.N
    for vectors in _boxes(spec, X):
        if check_witness(spec, coloring, vectors, X):
            return vectors
    return None


def check_bad_coloring(spec: st.StructureSpec, coloring: Coloring,
                       max_component: Optional[int] = None) -> bool:
    """True when no variable vector in the box gives a monochromatic witness."""
    return naive_find_witness(spec, coloring, max_component) is None


def naive_verify_all(spec: st.StructureSpec, r: int, N: int,
                     max_component: Optional[int] = None, limit_N: int = 12):
    """("AllAdmit", None) or ("BadColoring", first bad colouring) over all r**N colourings.

    Colourings are listed in plain lexicographic order and only those with
    colour 1 at position 1 and first appearances in order are kept, which
    gives the same canonical representative as the search.
    """
    if N > limit_N:
        raise ValueError(f"naive enumeration limited to N <= {limit_N}")
    for assignment in itertools.product(range(1, r + 1), repeat=N):
        if not _canonical(assignment):
            continue
        if check_bad_coloring(spec, Coloring(N, r, assignment), max_component):
            return "BadColoring", list(assignment)
    return "AllAdmit", None


def _canonical(assignment) -> bool:
    seen = 0
    for c in assignment:
        if c > seen + 1:
            return False
        seen = max(seen, c)
    return True


def check_all_admit(spec: st.StructureSpec, cert: Certificate) -> bool:
    """Re-check an AllAdmit certificate from its cover.

    Every canonical colouring of [1..N] must extend some covering prefix, and
    each prefix's witness must re-verify on that prefix alone.
    """
    if cert.outcome != "AllAdmit" or cert.cover is None:
        return False
    r, N = cert.r, cert.N
    X = cert.budget.get("max_component")
    prefixes = {}
    for prefix, vectors in cert.cover:
        prefix = tuple(prefix)
        k = len(prefix)
        if not _canonical(prefix) or max(prefix) > r:
            return False
        if not check_witness(spec, Coloring(k, r, prefix), dict(vectors), X):
            return False
        prefixes[prefix] = True
    for assignment in itertools.product(range(1, r + 1), repeat=N):
        if not _canonical(assignment):
            continue
        if not any(assignment[:k] in prefixes for k in range(1, N + 1)):
            return False
    return True
