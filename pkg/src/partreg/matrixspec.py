"""MatrixSpec: a finite matrix literal or a named generator plus truncation.

Specs are frozen dataclasses, hashable and picklable, with a JSON form
(``to_dict`` / ``spec_from_dict``) used by certificates and the CLI.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from . import generators as gen
from .rational import RatMatrix, diagonal_sum
from .sequences import require_compressed

DEFAULT_DEPTH = 8


class MatrixSpec:
    kind: str = ""
    infinite: bool = False

    def materialize(self) -> RatMatrix:
        raise NotImplementedError

    def to_dict(self) -> dict:
        raise NotImplementedError

    def truncation(self) -> Optional[dict]:
        return None


def _matrix_to_lists(m: RatMatrix):
    return m.to_lists()


@dataclass(frozen=True)
class Literal(MatrixSpec):
    matrix: RatMatrix
    kind = "literal"

    def materialize(self):
        return self.matrix

    def to_dict(self):
        return {"kind": self.kind, "rows": _matrix_to_lists(self.matrix)}


@dataclass(frozen=True)
class Schur(MatrixSpec):
    kind = "schur"

    def materialize(self):
        return gen.schur_matrix()

    def to_dict(self):
        return {"kind": self.kind}


@dataclass(frozen=True)
class VanDerWaerden(MatrixSpec):
    n: int
    kind = "vdw"

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("VanDerWaerden needs n >= 1")

    def materialize(self):
        return gen.vdw_matrix(self.n)

    def to_dict(self):
        return {"kind": self.kind, "n": self.n}


@dataclass(frozen=True)
class FiniteSums(MatrixSpec):
    k: int
    kind = "fs"

    def __post_init__(self):
        if not 1 <= self.k <= gen.FS_MATRIX_CAP:
            raise ValueError(f"FiniteSums needs 1 <= k <= {gen.FS_MATRIX_CAP}")

    def materialize(self):
        return gen.finite_sums_matrix(self.k)

    def to_dict(self):
        return {"kind": self.kind, "k": self.k}


@dataclass(frozen=True)
class MillikenTaylor(MatrixSpec):
    a: tuple
    n: int
    kind = "mt"
    infinite = True

    def __post_init__(self):
        object.__setattr__(self, "a", require_compressed(self.a))
        if any(v < 1 for v in self.a):
            raise ValueError("MillikenTaylor vector needs positive entries")
        if self.n < len(self.a):
            raise ValueError("MillikenTaylor support depth must be >= len(a)")

    def materialize(self):
        return gen.mt_matrix_prefix(self.a, self.n)

    def to_dict(self):
        return {"kind": self.kind, "a": list(self.a), "n": self.n}

    def truncation(self):
        return {"columns": self.n}


def _blocks_tuple(blocks):
    return tuple(b if isinstance(b, RatMatrix) else RatMatrix(b) for b in blocks)


def _pattern_tuple(pattern):
    if pattern is None:
        return None
    return tuple(tuple(p) if isinstance(p, (list, tuple)) else p for p in pattern)


@dataclass(frozen=True)
class Segmented(MatrixSpec):
    blocks: tuple
    depth: Optional[int] = None
    pattern: Optional[tuple] = None
    kind = "segmented"
    infinite = True

    def __post_init__(self):
        object.__setattr__(self, "blocks", _blocks_tuple(self.blocks))
        object.__setattr__(self, "pattern", _pattern_tuple(self.pattern))

    def build(self):
        return gen.segmented_builder(self.blocks, self.depth, self.pattern)

    def materialize(self):
        return self.build()[0]

    def to_dict(self):
        return {"kind": self.kind, "blocks": [_matrix_to_lists(b) for b in self.blocks],
                "depth": self.depth, "pattern": _lists(self.pattern)}

    def truncation(self):
        return {"rows": self.materialize().rows}


@dataclass(frozen=True)
class SubtractedCentrally(MatrixSpec):
    head: RatMatrix
    tail: Segmented
    n: int
    k: int
    depth: Optional[int] = DEFAULT_DEPTH
    head_pattern: Optional[tuple] = None
    kind = "subtracted"
    infinite = True

    def __post_init__(self):
        if not isinstance(self.head, RatMatrix):
            object.__setattr__(self, "head", RatMatrix(self.head))
        object.__setattr__(self, "head_pattern", _pattern_tuple(self.head_pattern))

    def materialize(self):
        return gen.subtracted_builder(self.head, self.tail.blocks, self.n, self.k, self.depth,
                                      self.head_pattern, self.tail.pattern)

    def to_dict(self):
        return {"kind": self.kind, "head": _matrix_to_lists(self.head), "tail": self.tail.to_dict(),
                "n": self.n, "k": self.k, "depth": self.depth,
                "head_pattern": _lists(self.head_pattern)}

    def truncation(self):
        return {"rows": self.materialize().rows}


@dataclass(frozen=True)
class Example212(MatrixSpec):
    depth: int = DEFAULT_DEPTH
    kind = "ex212"
    infinite = True

    def __post_init__(self):
        if self.depth < 1:
            raise ValueError("Example212 needs depth >= 1")

    def materialize(self):
        return gen.example_212(self.depth)

    def to_dict(self):
        return {"kind": self.kind, "depth": self.depth}

    def truncation(self):
        return {"rows": self.depth}


@dataclass(frozen=True)
class DiagonalSum(MatrixSpec):
    first: MatrixSpec
    second: MatrixSpec
    kind = "diag"

    @property
    def infinite(self):
        return self.first.infinite or self.second.infinite

    def materialize(self):
        return diagonal_sum(self.first.materialize(), self.second.materialize())

    def to_dict(self):
        return {"kind": self.kind, "first": self.first.to_dict(), "second": self.second.to_dict()}

    def truncation(self):
        t1, t2 = self.first.truncation(), self.second.truncation()
        if t1 is None and t2 is None:
            return None
        return {"first": t1, "second": t2}


def _lists(pattern):
    if pattern is None:
        return None
    return [list(p) if isinstance(p, tuple) else p for p in pattern]


def materialize(spec: MatrixSpec | RatMatrix) -> RatMatrix:
    if isinstance(spec, RatMatrix):
        return spec
    return spec.materialize()


def spec_from_dict(d: dict) -> MatrixSpec:
    kind = d.get("kind")
    if kind == "literal":
        return Literal(RatMatrix(d["rows"]))
    if kind == "schur":
        return Schur()
    if kind == "vdw":
        return VanDerWaerden(int(d["n"]))
    if kind == "fs":
        return FiniteSums(int(d["k"]))
    if kind == "mt":
        return MillikenTaylor(tuple(d["a"]), int(d["n"]))
    if kind == "segmented":
        return Segmented(tuple(RatMatrix(b) for b in d["blocks"]), d.get("depth"), d.get("pattern"))
    if kind == "subtracted":
        tail = spec_from_dict(d["tail"])
        if not isinstance(tail, Segmented):
            raise ValueError("subtracted tail must be a segmented spec")
        return SubtractedCentrally(RatMatrix(d["head"]), tail, int(d["n"]), int(d["k"]),
                                   d.get("depth", DEFAULT_DEPTH), d.get("head_pattern"))
    if kind == "ex212":
        return Example212(int(d.get("depth", DEFAULT_DEPTH)))
    if kind == "diag":
        return DiagonalSum(spec_from_dict(d["first"]), spec_from_dict(d["second"]))
    raise ValueError(f"unknown matrix spec kind {kind!r}")


def parse_shortcut(text: str) -> MatrixSpec:
    """Named shortcuts: ``schur``, ``vdw:n``, ``fs:k``, ``mt:a1,a2/cols``, ``ex212:depth``."""
    name, _, arg = text.partition(":")
    name = name.strip().lower()
    if name == "schur" and not arg:
        return Schur()
    if name == "vdw":
        return VanDerWaerden(int(arg))
    if name == "fs":
        return FiniteSums(int(arg))
    if name == "mt":
        a, _, cols = arg.partition("/")
        if not cols:
            raise ValueError("mt shortcut needs the form mt:a1,a2,.../cols")
        return MillikenTaylor(tuple(int(v) for v in a.split(",")), int(cols))
    if name == "ex212":
        return Example212(int(arg) if arg else DEFAULT_DEPTH)
    raise ValueError(f"unknown matrix shortcut {text!r}")
