"""Symbolic closed-form expressions evaluated to certified enclosures.

The node set is deliberately small: rationals, pi, field operations, integer
powers, square roots, sin, cos, exp and zeta at integer arguments >= 2.  That
is enough to state every closed form the rest of the package compares against.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from mpmath import iv

from habiro.exact.intervals import (
    DEFAULT_PRECISION,
    PRECISION_CAP,
    IntervalReal,
    PrecisionCapError,
    _at_precision,
)
from habiro.exact.zeta import zeta_interval


class Expr:
    """Base class; concrete nodes are frozen dataclasses."""

    __slots__ = ()


@dataclass(frozen=True)
class Rat(Expr):
    value: Fraction

    def __post_init__(self):
        object.__setattr__(self, "value", Fraction(self.value))


@dataclass(frozen=True)
class Pi(Expr):
    pass


@dataclass(frozen=True)
class Add(Expr):
    terms: tuple[Expr, ...]


@dataclass(frozen=True)
class Mul(Expr):
    factors: tuple[Expr, ...]


@dataclass(frozen=True)
class Neg(Expr):
    arg: Expr


@dataclass(frozen=True)
class Div(Expr):
    num: Expr
    den: Expr


@dataclass(frozen=True)
class Pow(Expr):
    base: Expr
    exponent: int


@dataclass(frozen=True)
class Sqrt(Expr):
    arg: Expr


@dataclass(frozen=True)
class Sin(Expr):
    arg: Expr


@dataclass(frozen=True)
class Cos(Expr):
    arg: Expr


@dataclass(frozen=True)
class Exp(Expr):
    arg: Expr


@dataclass(frozen=True)
class Zeta(Expr):
    s: int

    def __post_init__(self):
        if self.s < 2:
            raise ValueError("zeta node requires an integer argument >= 2")


def rat(x: Fraction | int) -> Rat:
    return Rat(Fraction(x))


def add(*terms: Expr) -> Add:
    return Add(tuple(terms))


def mul(*factors: Expr) -> Mul:
    return Mul(tuple(factors))


def _raw(e: Expr, prec: int):
    """Evaluate under an already-active iv precision context."""
    if isinstance(e, Rat):
        return iv.mpf(e.value.numerator) / iv.mpf(e.value.denominator)
    if isinstance(e, Pi):
        return +iv.pi
    if isinstance(e, Add):
        acc = iv.mpf(0)
        for t in e.terms:
            acc += _raw(t, prec)
        return acc
    if isinstance(e, Mul):
        acc = iv.mpf(1)
        for f in e.factors:
            acc *= _raw(f, prec)
        return acc
    if isinstance(e, Neg):
        return -_raw(e.arg, prec)
    if isinstance(e, Div):
        return _raw(e.num, prec) / _raw(e.den, prec)
    if isinstance(e, Pow):
        return _raw(e.base, prec) ** e.exponent
    if isinstance(e, Sqrt):
        return iv.sqrt(_raw(e.arg, prec))
    if isinstance(e, Sin):
        return iv.sin(_raw(e.arg, prec))
    if isinstance(e, Cos):
        return iv.cos(_raw(e.arg, prec))
    if isinstance(e, Exp):
        return iv.exp(_raw(e.arg, prec))
    if isinstance(e, Zeta):
        return zeta_interval(e.s, prec).ival
    raise TypeError(f"unknown expression node {type(e).__name__}")


def interval_eval(expr: Expr, precision: int = DEFAULT_PRECISION) -> IntervalReal:
    """Evaluate expr to an enclosure of width <= 2**(1-precision) * max(1, |value|).

    Internally escalates the working precision until the width contract holds;
    raises PrecisionCapError if the cap is reached first.
    """
    internal = precision + 16
    while True:
        with _at_precision(internal):
            out = IntervalReal(_raw(expr, internal), internal)
        try:
            lo = out.lo_fraction()
            hi = out.hi_fraction()
        except OverflowError:
            lo = hi = None
        if lo is not None:
            scale = Fraction(0) if lo <= 0 <= hi else min(abs(lo), abs(hi))
            bound = Fraction(2) ** (1 - precision) * max(Fraction(1), scale)
            if hi - lo <= bound:
                return out
        if internal >= PRECISION_CAP:
            raise PrecisionCapError(
                f"enclosure width not met at {PRECISION_CAP} bits", PRECISION_CAP
            )
        internal = min(2 * internal, PRECISION_CAP)
