"""Riemann zeta at integer arguments: exact even values, enclosures otherwise."""

from __future__ import annotations

from fractions import Fraction
from math import factorial

from mpmath import iv

from habiro.exact.bernoulli import bernoulli_number
from habiro.exact.intervals import DEFAULT_PRECISION, IntervalReal, _at_precision


def zeta_even(k: int) -> tuple[Fraction, int]:
    """Return (r, k) with zeta(k) = r * pi**k for positive even k."""
    if k < 2 or k % 2 != 0:
        raise ValueError("argument must be a positive even integer; use interval evaluation otherwise")
    b = bernoulli_number(k)
    sign = 1 if (k // 2) % 2 == 1 else -1
    r = sign * b * (1 << (k - 1)) / factorial(k)
    return Fraction(r), k


def zeta_interval(s: int, prec: int = DEFAULT_PRECISION) -> IntervalReal:
    """Enclosure of zeta(s) for an integer s >= 2."""
    if s < 2:
        raise ValueError("argument must be an integer >= 2")
    if s % 2 == 0:
        r, k = zeta_even(s)
        return IntervalReal.from_rational(r, prec) * IntervalReal.pi(prec).pow_int(k)
    return _zeta_euler_maclaurin(s, prec)


def _zeta_euler_maclaurin(s: int, prec: int) -> IntervalReal:
    """Tail-corrected partial sum with the remainder absorbed into the enclosure.

    For the completely monotone integrand x**(-s) the remainder after J
    correction terms has the sign of, and is no larger than, the first omitted
    term, so hulling that term with 0 yields a rigorous enclosure.
    """
    work = prec + 24
    cutoff = max(8, (35 * work) // 100)
    with _at_precision(work):
        while True:
            val = _em_attempt(s, cutoff, -work)
            if val is not None:
                return IntervalReal(val, work)
            cutoff *= 2


def _mag_exp(x) -> int:
    """Upper bound on log2 of the magnitude of an interval value."""
    out = -(10**9)
    for sign, man, exp, bc in x._mpi_:
        if man:
            out = max(out, exp + bc)
    return out


def _em_attempt(s: int, cutoff: int, target_exp: int):
    """One Euler-Maclaurin evaluation; None if the series bottoms out too early.

    The integrand x**(-s) is completely monotone, so the remainder after J
    correction terms is bounded by the first omitted term and shares its sign;
    hulling that term with 0 (multiplication by [0, 1]) closes the enclosure.
    """
    partial = iv.mpf(0)
    for n in range(1, cutoff):
        partial += iv.mpf(n) ** (-s)
    kk = iv.mpf(cutoff)
    acc = partial + kk ** (1 - s) / (s - 1) + kk ** (-s) / 2
    unit = iv.mpf([0, 1])
    prev_mag = None
    j = 1
    rising = s  # s * (s+1) * ... * (s + 2j - 2), updated incrementally
    while True:
        b = bernoulli_number(2 * j)
        coeff = Fraction(b * rising, factorial(2 * j))
        term = (iv.mpf(coeff.numerator) / iv.mpf(coeff.denominator)) * kk ** (-s - 2 * j + 1)
        mag = _mag_exp(term)
        if mag < target_exp:
            return acc + term * unit
        if prev_mag is not None and mag > prev_mag:
            return None
        acc += term
        prev_mag = mag
        rising *= (s + 2 * j - 1) * (s + 2 * j)
        j += 1
