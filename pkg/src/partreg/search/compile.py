"""Lower a StructureSpec to a flat backtracking problem.

Variables are laid out group by group. Each coloured value is an expression
over the variables (linear form, monomial, or a product/sum of those),
compiled to a Python lambda so the inner loop stays cheap. Arithmetic is
exact: integer where the expression allows it, Fraction otherwise.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from ..rational import RatMatrix
from . import structures as st


class Expr:
    vars: frozenset
    monotone: bool
    integral: bool

    def src(self) -> str:
        raise NotImplementedError


class Lin(Expr):
    def __init__(self, coefs):
        self.coefs = tuple((v, Fraction(c)) for v, c in coefs if c != 0)
        self.vars = frozenset(v for v, _ in self.coefs)
        self.monotone = all(c > 0 for _, c in self.coefs)
        self.integral = all(c.denominator == 1 for _, c in self.coefs)

    def src(self):
        parts = []
        for v, c in self.coefs:
            if c == 1:
                parts.append(f"x[{v}]")
            elif c.denominator == 1:
                parts.append(f"{c.numerator}*x[{v}]")
            else:
                parts.append(f"_F({c.numerator},{c.denominator})*x[{v}]")
        return "+".join(parts) if parts else "0"


class Mono(Expr):
    def __init__(self, exps):
        self.exps = tuple((v, int(e)) for v, e in exps if e != 0)
        self.vars = frozenset(v for v, _ in self.exps)
        self.monotone = all(e > 0 for _, e in self.exps)
        self.integral = self.monotone

    def src(self):
        def power(v, e):
            return f"x[{v}]" if e == 1 else f"x[{v}]**{e}"
        num = "*".join(power(v, e) for v, e in self.exps if e > 0) or "1"
        den = "*".join(power(v, -e) for v, e in self.exps if e < 0)
        return f"_F({num},{den})" if den else num


class _Combine(Expr):
    op = ""

    def __init__(self, children):
        self.children = tuple(children)
        self.vars = frozenset().union(*(c.vars for c in self.children))
        self.monotone = all(c.monotone for c in self.children)
        self.integral = all(c.integral for c in self.children)

    def src(self):
        return self.op.join(f"({c.src()})" for c in self.children)


class Prod(_Combine):
    op = "*"


class Sum(_Combine):
    op = "+"


def compile_expr(e: Expr) -> Callable:
    return eval(f"lambda x: {e.src()}", {"_F": Fraction})  # noqa: S307 - generated from numbers only


@dataclass
class Compiled:
    """An expression plus what the search needs to know about it."""
    expr: Expr
    fn: Callable
    last: int           # highest variable index it reads, -1 for a constant

    @classmethod
    def of(cls, e: Expr):
        return cls(e, compile_expr(e), max(e.vars) if e.vars else -1)


@dataclass
class Constraint:
    kind: str            # "linear": sum c_v x_v == target; "mult": prod x_v**e_v == target
    coefs: tuple         # ((var, coefficient), ...), zero coefficients dropped
    target: Fraction

    @property
    def last(self) -> int:
        return max(v for v, _ in self.coefs) if self.coefs else -1


@dataclass
class Problem:
    groups: list                        # (name, start, length)
    lo: list                            # least value per variable
    colored: list                       # variable is itself a coloured value
    values: list = field(default_factory=list)      # Compiled, must be coloured in [1..N]
    aux: list = field(default_factory=list)         # Compiled, must be natural numbers
    constraints: list = field(default_factory=list)
    distinct: list = field(default_factory=list)    # tuples of variable indices

    @property
    def nvars(self) -> int:
        return len(self.lo)

    def split(self, x) -> list:
        return [(name, list(x[s:s + n])) for name, s, n in self.groups]


def _lin_row(row, offset):
    return Lin((offset + j, a) for j, a in enumerate(row))


def _mono_row(row, offset):
    return Mono((offset + j, a.numerator) for j, a in enumerate(row))


class _Builder:
    def __init__(self):
        self.groups = []
        self.lo = []
        self.colored = []
        self.values: list[Expr] = []
        self.aux: list[Expr] = []
        self.constraints: list[Constraint] = []
        self.distinct = []

    def add_group(self, name, length, lo, colored=False):
        start = len(self.lo)
        self.groups.append((name, start, length))
        self.lo.extend([lo] * length)
        self.colored.extend([colored] * length)
        if colored:
            self.values.extend(Lin([(start + j, 1)]) for j in range(length))
        return start

    def problem(self) -> Problem:
        return Problem(self.groups, self.lo, self.colored,
                       [Compiled.of(e) for e in self.values],
                       [Compiled.of(e) for e in self.aux],
                       self.constraints, self.distinct)


def _emit(spec: st.StructureSpec, b: _Builder, prefix: str = ""):
    name = lambda n: prefix + n  # noqa: E731
    if isinstance(spec, st.AdditiveImage):
        o = b.add_group(name("x"), spec.A.cols, 1)
        b.values += [_lin_row(r, o) for r in spec.A]
    elif isinstance(spec, st.MultImage):
        o = b.add_group(name("y"), spec.A.cols, 1)
        b.values += [_mono_row(r, o) for r in spec.A]
    elif isinstance(spec, st.Kernel):
        o = b.add_group(name("x"), spec.A.cols, 1, colored=True)
        b.constraints += [Constraint("linear", _lin_row(r, o).coefs, Fraction(0)) for r in spec.A]
    elif isinstance(spec, st.MultKernel):
        o = b.add_group(name("x"), spec.A.cols, 2, colored=True)
        b.constraints += [Constraint("mult", _mono_row(r, o).exps, Fraction(1)) for r in spec.A]
    elif isinstance(spec, st.BothImages):
        ox = b.add_group(name("x"), spec.A.cols, 1)
        oy = b.add_group(name("y"), spec.A.cols, 1)
        b.values += [_lin_row(r, ox) for r in spec.A]
        b.values += [_mono_row(r, oy) for r in spec.A]
    elif isinstance(spec, st.SameVectorBoth):
        o = b.add_group(name("x"), spec.A.cols, 1)
        b.values += [_lin_row(r, o) for r in spec.A]
        b.values += [_mono_row(r, o) for r in spec.A]
    elif isinstance(spec, st.KernelBoth):
        ox = b.add_group(name("x"), spec.A.cols, 1, colored=True)
        oy = b.add_group(name("y"), spec.A.cols, 2, colored=True)
        b.constraints += [Constraint("linear", _lin_row(r, ox).coefs, Fraction(0)) for r in spec.A]
        b.constraints += [Constraint("mult", _mono_row(r, oy).exps, Fraction(1)) for r in spec.A]
    elif isinstance(spec, st.FSFP):
        n = spec.length
        ox = b.add_group(name("x"), n, 1)
        oy = b.add_group(name("y"), n, 1)
        subsets = [s for k in range(1, n + 1) for s in itertools.combinations(range(n), k)]
        b.values += [Lin((ox + t, 1) for t in s) for s in subsets]
        b.values += [Mono((oy + t, 1) for t in s) for s in subsets]
    elif isinstance(spec, st.ProductOfImages):
        offsets = [b.add_group(name(f"x{i + 1}"), A.cols, 1) for i, A in enumerate(spec.As)]
        rows = [[_lin_row(r, o) for r in A] for A, o in zip(spec.As, offsets)]
        b.aux += [e for rs in rows for e in rs]
        b.values += [Prod(choice) for choice in itertools.product(*rows)]
    elif isinstance(spec, st.SameVectorProduct):
        o = b.add_group(name("x"), spec.As[0].cols, 1)
        rows = [[_lin_row(r, o) for r in A] for A in spec.As]
        b.aux += [e for rs in rows for e in rs]
        b.values += [Prod(choice) for choice in itertools.product(*rows)]
    elif isinstance(spec, st.SumOfPowerImages):
        offsets = [b.add_group(name(f"x{i + 1}"), A.cols, 1) for i, A in enumerate(spec.As)]
        rows = [[_mono_row(r, o) for r in A] for A, o in zip(spec.As, offsets)]
        b.aux += [e for rs in rows for e in rs]
        b.values += [Sum(choice) for choice in itertools.product(*rows)]
    elif isinstance(spec, st.PSm):
        from ..sequences import block_systems
        o = b.add_group(name("z"), spec.length, 1)
        for F in block_systems(spec.length, spec.m):
            b.values.append(Prod(Lin((o + t, 1) for t in Fi) for Fi in F))
        if spec.distinct:
            b.distinct.append(tuple(range(o, o + spec.length)))
    elif isinstance(spec, st.Composite):
        if prefix:
            raise ValueError("composite specs nest at most one level")
        for i, part in enumerate(spec.parts):
            _emit(part, b, prefix=f"p{i + 1}.")
    else:
        raise ValueError(f"cannot compile structure {spec!r}")


def compile_structure(spec: st.StructureSpec) -> Problem:
    b = _Builder()
    _emit(spec, b)
    return b.problem()
