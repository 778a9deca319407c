"""Log-domain evaluation of leading-order growth for the 1-q coefficients.

The n-th coefficient of a family grows like n! times an exponential in n; all
evaluation therefore happens on logarithms, with interval enclosures, and
exact big integers enter through their bit length and top limb.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from habiro.exact import (
    DEFAULT_PRECISION,
    PRECISION_CAP,
    IntervalReal,
    PrecisionCapError,
)
from habiro.families import FamilySpec, identity_for
from habiro.qseries import TruncatedSeries
from habiro.thetaside import StrangeIdentity, find_k_nu, g_value


def log_positive_int(x: int, precision: int = DEFAULT_PRECISION) -> IntervalReal:
    """Enclosure of log(x) for a positive integer of any size."""
    if x <= 0:
        raise ValueError("logarithm needs a positive integer")
    shift = x.bit_length() - (precision + 16)
    if shift <= 0:
        return IntervalReal.from_int(x, precision).log()
    top = x >> shift
    window = IntervalReal.from_endpoints(top, top + 1, precision).log()
    return window + IntervalReal.from_int(2, precision).log() * shift


def _log_abs_coeff(c, precision: int) -> IntervalReal:
    if isinstance(c, Fraction):
        return log_positive_int(abs(c.numerator), precision) - log_positive_int(
            c.denominator, precision
        )
    return log_positive_int(abs(c), precision)


@dataclass(frozen=True)
class AsymptoticProfile:
    """Identity data with the Fourier coefficient and first correction enclosed."""

    period: int
    a: int
    b: int
    nu: int
    k_nu: int
    g: IntervalReal
    alpha1: IntervalReal

    def __post_init__(self):
        if self.k_nu < 1:
            raise ValueError("k_nu must be at least 1")
        if self.g.contains_zero():
            raise ValueError("Fourier coefficient enclosure must exclude zero")

    def sign(self) -> int:
        """Sign of the main term: the sign of (-1)**nu times the Fourier value."""
        positive = self.g.is_positive()
        return (1 if positive else -1) * (-1 if self.nu % 2 else 1)


def _alpha1(ident: StrangeIdentity, k: int, precision: int) -> IntervalReal:
    pi = IntervalReal.pi(precision)
    quad = pi * pi * IntervalReal.from_rational(
        Fraction(ident.a * k * k, ident.f.period**2), precision
    )
    shift = Fraction(2 * ident.nu + 1, 8)
    if ident.nu % 2 == 0:
        shift = -shift
    return quad + IntervalReal.from_rational(shift, precision)


def make_profile(
    ident: StrangeIdentity,
    precision: int = DEFAULT_PRECISION,
    cap: int = PRECISION_CAP,
) -> AsymptoticProfile:
    """Build the asymptotic profile of an identity, refining until G is signed."""
    k = find_k_nu(ident.f, ident.nu)
    prec = min(precision, cap)
    while True:
        _, numeric = g_value(ident.f, ident.nu, k, prec)
        if not numeric.contains_zero():
            break
        if prec >= cap:
            raise PrecisionCapError("Fourier coefficient enclosure kept straddling zero", prec)
        prec = min(2 * prec, cap)
    return AsymptoticProfile(
        ident.f.period, ident.a, ident.b, ident.nu, k, numeric, _alpha1(ident, k, precision)
    )


def profile_for_family(
    spec: FamilySpec, precision: int = DEFAULT_PRECISION, cap: int = PRECISION_CAP
) -> AsymptoticProfile:
    return make_profile(identity_for(spec), precision, cap)


def _assemble_log(
    p: AsymptoticProfile, n: int, two_exponent: int, x_weight: int, precision: int
) -> IntervalReal:
    pi = IntervalReal.pi(precision)
    M = IntervalReal.from_int(p.period, precision)
    total = (M / (pi * (2 * p.k_nu))).log() * (2 * n + p.nu + 1)
    total = total + abs(p.g).log()
    total = total + IntervalReal.from_int(2, precision).log() * two_exponent
    total = total + log_positive_int(factorial(n), precision)
    total = total + IntervalReal.from_int(n, precision).log() * Fraction(2 * p.nu - 1, 2)
    if x_weight:
        x = pi * pi * IntervalReal.from_rational(
            Fraction(p.b * p.k_nu**2, 2 * p.period**2), precision
        )
        total = total + x * x_weight
    total = total - IntervalReal.from_int(p.b, precision).log() * n
    total = total - (pi * M).log() * Fraction(1, 2)
    return total


def main_term_log(
    p: AsymptoticProfile, n: int, precision: int = DEFAULT_PRECISION
) -> tuple[int, IntervalReal]:
    """Sign and log magnitude of the leading asymptotic term for coefficient n."""
    if n < 1:
        raise ValueError("n must be at least 1")
    return p.sign(), _assemble_log(p, n, 2 * n + p.nu, 1, precision)


def transform_main_term_log(
    p: AsymptoticProfile, which: str, n: int, precision: int = DEFAULT_PRECISION
) -> tuple[int, IntervalReal]:
    """Leading term for the transformed coefficient rows.

    The one-over-one-plus-q row inverts the exponential correction factor;
    the two-q-over-one-plus-q row carries 2**(3n+nu) and no such factor.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if which == "g":
        return p.sign(), _assemble_log(p, n, 2 * n + p.nu, -1, precision)
    if which == "h":
        return p.sign(), _assemble_log(p, n, 3 * n + p.nu, 0, precision)
    raise ValueError("which must be 'g' or 'h'")


@dataclass(frozen=True)
class RatioSample:
    """One sampled exact-to-asymptotic ratio; ratio is None on a zero coefficient."""

    n: int
    ratio: IntervalReal | None
    zero_coefficient: bool = False


def ratio_diagnostics(
    exact: TruncatedSeries,
    p: AsymptoticProfile,
    ns: list[int],
    correction: bool = False,
    which: str = "xi",
    precision: int = DEFAULT_PRECISION,
) -> list[RatioSample]:
    """Ratios of exact coefficients to the asymptotic main term at sampled n.

    With correction enabled the main term is multiplied by (1 - alpha1/n),
    removing the first-order error term.
    """
    if which not in ("xi", "g", "h"):
        raise ValueError("which must be 'xi', 'g' or 'h'")
    out = []
    for n in ns:
        c = exact.coefficient(n)
        if c == 0:
            out.append(RatioSample(n, None, True))
            continue
        if which == "xi":
            sign, log_main = main_term_log(p, n, precision)
        else:
            sign, log_main = transform_main_term_log(p, which, n, precision)
        ratio = (_log_abs_coeff(c, precision) - log_main).exp()
        if correction:
            factor = IntervalReal.from_int(1, precision) - p.alpha1 / IntervalReal.from_int(
                n, precision
            )
            if factor.contains_zero():
                raise ValueError(f"correction factor straddles zero at n={n}")
            ratio = ratio / factor
        if (1 if c > 0 else -1) * sign < 0:
            ratio = -ratio
        out.append(RatioSample(n, ratio))
    return out
