"""Structure specifications: which monochromatic configuration to look for.

``realize`` gives the plain mathematical meaning of each variant, computed
with the core image maps and sequence functions only. The search engine
compiles specs separately (see ``compile.py``); certificate checking goes
through ``realize`` so the two routes stay independent.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from fractions import Fraction
from typing import Optional

from ..matrixspec import MatrixSpec, spec_from_dict
from ..rational import RatMatrix, mat_pow_image, mat_vec_mul
from ..sequences import finite_products, finite_sums, products_across, ps_m, sums_across

FSFP_CAP = 6
PSM_CAP = 8


class StructureSpec:
    name: str = ""

    def to_dict(self) -> dict:
        raise NotImplementedError

    def groups(self) -> list[tuple[str, int, int]]:
        """Variable groups as (name, length, least allowed entry)."""
        raise NotImplementedError

    def realize(self, vectors: dict) -> Optional[tuple[set, bool]]:
        """(coloured values, constraints hold) for the given variable vectors.

        Returns None when some intermediate quantity that must be a natural
        number is not one.
        """
        raise NotImplementedError

    def truncation(self):
        return None


def _as_spec(m):
    if isinstance(m, MatrixSpec):
        return m
    if isinstance(m, RatMatrix):
        from ..matrixspec import Literal
        return Literal(m)
    if isinstance(m, dict):
        return spec_from_dict(m)
    raise TypeError(f"expected a MatrixSpec, got {type(m).__name__}")


def _integral(A: RatMatrix, what: str):
    if not A.is_integral():
        raise ValueError(f"{what} needs an integer matrix (exponents must be integers)")


def _naturals(values) -> Optional[list[int]]:
    out = []
    for v in values:
        v = Fraction(v)
        if v.denominator != 1 or v < 1:
            return None
        out.append(v.numerator)
    return out


@dataclass(frozen=True)
class _OneMatrix(StructureSpec):
    matrix: MatrixSpec

    def __post_init__(self):
        object.__setattr__(self, "matrix", _as_spec(self.matrix))

    @cached_property
    def A(self) -> RatMatrix:
        return self.matrix.materialize()

    def to_dict(self):
        return {"variant": self.name, "matrix": self.matrix.to_dict()}

    def truncation(self):
        return self.matrix.truncation()


@dataclass(frozen=True)
class AdditiveImage(_OneMatrix):
    """Entries of A x monochromatic."""
    name = "additive-image"

    def groups(self):
        return [("x", self.A.cols, 1)]

    def realize(self, vectors):
        return set(mat_vec_mul(self.A, vectors["x"])), True


@dataclass(frozen=True)
class MultImage(_OneMatrix):
    """Entries of y^A monochromatic."""
    name = "mult-image"

    def __post_init__(self):
        super().__post_init__()
        _integral(self.A, self.name)

    def groups(self):
        return [("y", self.A.cols, 1)]

    def realize(self, vectors):
        return set(mat_pow_image(vectors["y"], self.A)), True


@dataclass(frozen=True)
class Kernel(_OneMatrix):
    """Monochromatic x with A x = 0."""
    name = "kernel"

    def groups(self):
        return [("x", self.A.cols, 1)]

    def realize(self, vectors):
        x = vectors["x"]
        return set(x), all(v == 0 for v in mat_vec_mul(self.A, x))


@dataclass(frozen=True)
class MultKernel(_OneMatrix):
    """Monochromatic x in [2..N] with x^C = 1."""
    name = "mult-kernel"

    def __post_init__(self):
        super().__post_init__()
        _integral(self.A, self.name)

    def groups(self):
        return [("x", self.A.cols, 2)]

    def realize(self, vectors):
        x = vectors["x"]
        return set(x), all(v == 1 for v in mat_pow_image(x, self.A))


@dataclass(frozen=True)
class BothImages(_OneMatrix):
    """One colour holds some A x and some y^A."""
    name = "both-images"

    def __post_init__(self):
        super().__post_init__()
        _integral(self.A, self.name)

    def groups(self):
        v = self.A.cols
        return [("x", v, 1), ("y", v, 1)]

    def realize(self, vectors):
        A = self.A
        return set(mat_vec_mul(A, vectors["x"])) | set(mat_pow_image(vectors["y"], A)), True


@dataclass(frozen=True)
class SameVectorBoth(_OneMatrix):
    """A single x with A x and x^A in one colour."""
    name = "same-vector-both"

    def __post_init__(self):
        super().__post_init__()
        _integral(self.A, self.name)

    def groups(self):
        return [("x", self.A.cols, 1)]

    def realize(self, vectors):
        A, x = self.A, vectors["x"]
        return set(mat_vec_mul(A, x)) | set(mat_pow_image(x, A)), True


@dataclass(frozen=True)
class KernelBoth(_OneMatrix):
    """One colour holds x with A x = 0 and y in [2..N] with y^A = 1."""
    name = "kernel-both"

    def __post_init__(self):
        super().__post_init__()
        _integral(self.A, self.name)

    def groups(self):
        v = self.A.cols
        return [("x", v, 1), ("y", v, 2)]

    def realize(self, vectors):
        A, x, y = self.A, vectors["x"], vectors["y"]
        ok = all(v == 0 for v in mat_vec_mul(A, x)) and all(v == 1 for v in mat_pow_image(y, A))
        return set(x) | set(y), ok


@dataclass(frozen=True)
class FSFP(StructureSpec):
    """FS(x_1..x_l) and FP(y_1..y_l) in one colour."""
    length: int
    name = "fsfp"

    def __post_init__(self):
        if not 1 <= self.length <= FSFP_CAP:
            raise ValueError(f"FSFP length must be in 1..{FSFP_CAP}")

    def to_dict(self):
        return {"variant": self.name, "length": self.length}

    def groups(self):
        return [("x", self.length, 1), ("y", self.length, 1)]

    def realize(self, vectors):
        return set(finite_sums(vectors["x"])) | set(finite_products(vectors["y"])), True


@dataclass(frozen=True)
class _ManyMatrices(StructureSpec):
    matrices: tuple

    def __post_init__(self):
        ms = tuple(_as_spec(m) for m in self.matrices)
        if not ms:
            raise ValueError(f"{self.name} needs at least one matrix")
        object.__setattr__(self, "matrices", ms)

    @cached_property
    def As(self) -> list[RatMatrix]:
        return [m.materialize() for m in self.matrices]

    def to_dict(self):
        return {"variant": self.name, "matrices": [m.to_dict() for m in self.matrices]}

    def truncation(self):
        ts = [m.truncation() for m in self.matrices]
        return ts if any(t is not None for t in ts) else None


@dataclass(frozen=True)
class ProductOfImages(_ManyMatrices):
    """P(A_1 x1, ..., A_m xm) monochromatic; every image entry must be natural."""
    name = "product-of-images"

    def groups(self):
        return [(f"x{i + 1}", A.cols, 1) for i, A in enumerate(self.As)]

    def realize(self, vectors):
        images = []
        for i, A in enumerate(self.As):
            img = _naturals(mat_vec_mul(A, vectors[f"x{i + 1}"]))
            if img is None:
                return None
            images.append(img)
        return set(products_across(*images)), True


@dataclass(frozen=True)
class SameVectorProduct(_ManyMatrices):
    """P(A_1 x, ..., A_m x) for one shared x."""
    name = "same-vector-product"

    def __post_init__(self):
        super().__post_init__()
        if len({A.cols for A in self.As}) != 1:
            raise ValueError("same-vector-product needs matrices with equal column counts")

    def groups(self):
        return [("x", self.As[0].cols, 1)]

    def realize(self, vectors):
        images = []
        for A in self.As:
            img = _naturals(mat_vec_mul(A, vectors["x"]))
            if img is None:
                return None
            images.append(img)
        return set(products_across(*images)), True


@dataclass(frozen=True)
class SumOfPowerImages(_ManyMatrices):
    """S(x1^A_1, ..., xm^A_m) monochromatic; every power image entry must be natural."""
    name = "sum-of-power-images"

    def __post_init__(self):
        super().__post_init__()
        for A in self.As:
            _integral(A, self.name)

    def groups(self):
        return [(f"x{i + 1}", A.cols, 1) for i, A in enumerate(self.As)]

    def realize(self, vectors):
        images = []
        for i, A in enumerate(self.As):
            img = _naturals(mat_pow_image(vectors[f"x{i + 1}"], A))
            if img is None:
                return None
            images.append(img)
        return set(sums_across(*images)), True


@dataclass(frozen=True)
class PSm(StructureSpec):
    """PS_m(z_1..z_l) monochromatic. ``distinct`` asks for a one-to-one sequence."""
    m: int
    length: int
    distinct: bool = False
    name = "psm"

    def __post_init__(self):
        if not 1 <= self.m <= self.length <= PSM_CAP:
            raise ValueError(f"PSm needs 1 <= m <= length <= {PSM_CAP}")

    def to_dict(self):
        return {"variant": self.name, "m": self.m, "length": self.length, "distinct": self.distinct}

    def groups(self):
        return [("z", self.length, 1)]

    def realize(self, vectors):
        z = list(vectors["z"])
        ok = not self.distinct or len(set(z)) == len(z)
        return set(ps_m(z, self.m)), ok


@dataclass(frozen=True)
class Composite(StructureSpec):
    """Every part monochromatic in one shared colour, with separate variables."""
    parts: tuple
    name = "composite"

    def __post_init__(self):
        parts = tuple(p if isinstance(p, StructureSpec) else structure_from_dict(p) for p in self.parts)
        if not parts:
            raise ValueError("composite needs at least one part")
        if any(isinstance(p, Composite) for p in parts):
            raise ValueError("composite specs nest at most one level")
        object.__setattr__(self, "parts", parts)

    def to_dict(self):
        return {"variant": self.name, "parts": [p.to_dict() for p in self.parts]}

    def groups(self):
        return [(f"p{i + 1}.{name}", n, lo) for i, p in enumerate(self.parts)
                for name, n, lo in p.groups()]

    def realize(self, vectors):
        values: set = set()
        ok = True
        for i, p in enumerate(self.parts):
            sub = {name: vectors[f"p{i + 1}.{name}"] for name, _, _ in p.groups()}
            res = p.realize(sub)
            if res is None:
                return None
            values |= res[0]
            ok = ok and res[1]
        return values, ok

    def truncation(self):
        ts = [p.truncation() for p in self.parts]
        return ts if any(t is not None for t in ts) else None


_ONE = {c.name: c for c in (AdditiveImage, MultImage, Kernel, MultKernel, BothImages,
                             SameVectorBoth, KernelBoth)}
_MANY = {c.name: c for c in (ProductOfImages, SameVectorProduct, SumOfPowerImages)}
VARIANTS = sorted(list(_ONE) + list(_MANY) + ["fsfp", "psm", "composite"])


def structure_from_dict(d: dict) -> StructureSpec:
    v = d.get("variant")
    if v in _ONE:
        return _ONE[v](spec_from_dict(d["matrix"]))
    if v in _MANY:
        return _MANY[v](tuple(spec_from_dict(m) for m in d["matrices"]))
    if v == "fsfp":
        return FSFP(int(d["length"]))
    if v == "psm":
        return PSm(int(d["m"]), int(d["length"]), bool(d.get("distinct", False)))
    if v == "composite":
        return Composite(tuple(structure_from_dict(p) for p in d["parts"]))
    raise ValueError(f"unknown structure variant {v!r}")
