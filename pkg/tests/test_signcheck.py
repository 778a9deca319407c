"""Tail-bound constants, check counts, sign tests, and positivity verdicts."""

import json
from fractions import Fraction

import pytest

from habiro.exact import IntervalReal, PrecisionCapError, bernoulli_poly
from habiro.families import FamilySpec, expand_family, identity_for
from habiro.signcheck import (
    FamilyCertificate,
    PositivityVerdict,
    bernoulli_sign_test,
    family_n_bound,
    infinite_family_check,
    m_bound,
    n_max,
    verdict_for_identity,
    verify_positivity,
)
from habiro.thetaside import (
    PeriodicFunction,
    StrangeIdentity,
    c_sequence,
    make_chi_k,
    make_chi_m_ell,
    make_chi_t,
)
from tests.test_families import TABLES

PREC = 96


def overlaps(a: IntervalReal, b: IntervalReal) -> bool:
    return not (a.hi_fraction() < b.lo_fraction() or b.hi_fraction() < a.lo_fraction())


def tight(x: IntervalReal, bits: int = 40) -> bool:
    return x.width_fraction() < Fraction(1, 2**bits)


# -- dominating constant -----------------------------------------------------


@pytest.mark.parametrize("t", [1, 2, 3, 4])
def test_m_bound_doubled_torus_closed_form(t):
    # 4 / (sqrt(3) sin(pi/2**t))
    pi = IntervalReal.pi(PREC)
    want = IntervalReal.from_int(4, PREC) / (
        IntervalReal.from_int(3, PREC).sqrt() * (pi * Fraction(1, 2**t)).sin()
    )
    got = m_bound(make_chi_t(t), 1, PREC)
    assert overlaps(got, want)
    assert tight(got)


@pytest.mark.parametrize("m,ell", [(1, 0), (2, 0), (2, 1), (5, 2)])
def test_m_bound_nested_torus_closed_form(m, ell):
    # 2 / sin(pi (ell+1) / (2m+1))
    pi = IntervalReal.pi(PREC)
    want = IntervalReal.from_int(2, PREC) / (pi * Fraction(ell + 1, 2 * m + 1)).sin()
    got = m_bound(make_chi_m_ell(m, ell), 1, PREC)
    assert overlaps(got, want)
    assert tight(got)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_m_bound_odd_weight_closed_form(k):
    # 1 / cos(pi / (2(2k+1)))
    pi = IntervalReal.pi(PREC)
    want = IntervalReal.from_int(1, PREC) / (pi * Fraction(1, 2 * (2 * k + 1))).cos()
    got = m_bound(make_chi_k(k), 0, PREC)
    assert overlaps(got, want)
    assert tight(got)


def test_m_bound_never_below_one():
    for f, nu in [(make_chi_t(5), 1), (make_chi_m_ell(4, 2), 1), (make_chi_k(4), 0)]:
        assert m_bound(f, nu).lo_fraction() > Fraction(99, 100)


# -- check-count bounds ------------------------------------------------------


def test_n_max_smallest_even_weight():
    f = make_chi_t(1)
    assert n_max(f, 1) == 1
    # defining property: the tail bound holds at N and fails below it
    bound = m_bound(f, 1, PREC)
    z2 = IntervalReal.pi(PREC).pow_int(2) * Fraction(1, 6)
    z4 = IntervalReal.pi(PREC).pow_int(4) * Fraction(1, 90)
    assert (bound * (z2 - 1)).lo_fraction() >= 1
    assert (bound * (z4 - 1)).hi_fraction() < 1


@pytest.mark.parametrize("k", [1, 2, 3, 4, 5])
def test_n_max_odd_weight_is_one(k):
    # the s = 1 zeta value diverges, so n = 0 can never qualify
    assert n_max(make_chi_k(k), 0) == 1


def test_n_max_zero_for_tame_weight():
    assert n_max(PeriodicFunction.from_values((1, -1)), 1) == 0


def test_family_bound_never_exceeds_generic_bound():
    cases = [
        (FamilySpec.torus32t(2), make_chi_t(2), 1),
        (FamilySpec.torus32t(5), make_chi_t(5), 1),
        (FamilySpec.torus2(3, 1), make_chi_m_ell(3, 1), 1),
        (FamilySpec.habiro_g(2), make_chi_k(2), 0),
    ]
    for spec, f, nu in cases:
        assert family_n_bound(spec) <= n_max(f, nu)


def test_family_n_bound_matches_reference_tables():
    table = TABLES["n_bound_torus32t"]
    lo, hi = table["t_range"]
    for t, want in zip(range(lo, hi + 1), table["values"]):
        assert family_n_bound(FamilySpec.torus32t(t)) == want
    for m_key, row in TABLES["n_bound_torus2"].items():
        m = int(m_key)
        for ell, want in enumerate(row):
            assert family_n_bound(FamilySpec.torus2(m, ell)) == want


def test_family_n_bound_fixed_cases():
    assert family_n_bound(FamilySpec.fishburn()) == 0
    for k in (1, 7, 50):
        assert family_n_bound(FamilySpec.habiro_g(k)) == 1


# -- exact sign tests --------------------------------------------------------


def test_sign_test_doubled_torus_t3():
    # B_2(13/48) > B_2(19/48), so the n = 0 quantity is positive
    ident = identity_for(FamilySpec.torus32t(3))
    assert bernoulli_sign_test(ident, 0) == 1
    gap = bernoulli_poly(2, Fraction(13, 48)) - bernoulli_poly(2, Fraction(19, 48))
    assert gap > 0


@pytest.mark.parametrize("k", [1, 2, 3, 4, 5])
def test_sign_test_odd_weight_first_moment(k):
    ident = identity_for(FamilySpec.habiro_g(k))
    inner = sum(
        v * bernoulli_poly(1, Fraction(m, ident.f.period)) for m, v in ident.f.entries
    )
    assert inner == -1
    assert bernoulli_sign_test(ident, 0) == 1


def test_sign_test_rejects_negative_index():
    with pytest.raises(ValueError, match="nonnegative"):
        bernoulli_sign_test(identity_for(FamilySpec.fishburn()), -1)


@pytest.mark.parametrize(
    "spec",
    [
        FamilySpec.fishburn(),
        FamilySpec.torus32t(2),
        FamilySpec.torus2(2, 1),
        FamilySpec.habiro_g(2),
    ],
    ids=lambda s: s.label(),
)
def test_sign_test_agrees_with_l_value_signs(spec):
    # same quantity up to the positive factor M**(2n+nu) / (2n+nu+1)
    ident = identity_for(spec)
    c = c_sequence(ident, 20)
    for n in range(21):
        want = 1 if c[n] > 0 else -1 if c[n] < 0 else 0
        assert bernoulli_sign_test(ident, n) == want


# -- verdicts ----------------------------------------------------------------


def test_verdict_shapes():
    v = verify_positivity(FamilySpec.torus32t(3))
    assert isinstance(v, PositivityVerdict)
    assert v.n_used == 1
    assert v.checks == ((0, 1, True),)
    assert v.verdict == "proved-positive"
    data = json.loads(v.to_json())
    assert data == {
        "family": "torus32t",
        "params": {"t": 3},
        "N_used": 1,
        "checks": [[0, 1, True]],
        "verdict": "proved-positive",
    }


def test_verdict_with_no_checks_needed():
    v = verify_positivity(FamilySpec.fishburn())
    assert v.n_used == 0 and v.checks == () and v.verdict == "proved-positive"


def test_verdict_sweeps():
    for t in range(1, 13):
        assert verify_positivity(FamilySpec.torus32t(t)).verdict == "proved-positive"
    for m in range(1, 7):
        for ell in range(m):
            assert verify_positivity(FamilySpec.torus2(m, ell)).verdict == "proved-positive"
    for k in range(1, 7):
        assert verify_positivity(FamilySpec.habiro_g(k)).verdict == "proved-positive"


def test_verdict_soundness_against_expansions():
    for spec in (FamilySpec.torus32t(2), FamilySpec.torus2(2, 0), FamilySpec.habiro_g(2)):
        assert verify_positivity(spec).verdict == "proved-positive"
        assert all(c > 0 for c in expand_family(spec, 40).integer_coeffs())


def test_condition_failed_for_flipped_weight():
    base = identity_for(FamilySpec.habiro_g(1))
    flipped = StrangeIdentity(
        base.a, base.b, base.nu,
        PeriodicFunction(base.f.period, tuple((r, -v) for r, v in base.f.entries)),
    )
    v = verdict_for_identity("custom", {}, flipped, 1)
    assert v.verdict == "condition-failed"
    assert v.checks == ((0, -1, False),)


def test_strict_zero_downgrades_custom_verdict():
    # mean zero and vanishing first moment make the n = 0 quantity exactly zero
    zero_ident = StrangeIdentity(0, 1, 0, PeriodicFunction.from_values((0, 1, -2, 1)))
    assert bernoulli_sign_test(zero_ident, 0) == 0
    lax = verdict_for_identity("custom", {}, zero_ident, 1)
    strict = verdict_for_identity("custom", {}, zero_ident, 1, strict_sign=True)
    assert lax.checks[0][1] == 0 and lax.verdict == "proved-positive"
    assert "zero" in lax.note
    assert strict.verdict == "condition-failed"
    assert "zero" in strict.note


def test_precision_cap_becomes_undecided_verdict(monkeypatch):
    import habiro.signcheck as sc

    def boom(spec, precision, cap):
        raise PrecisionCapError("sign of check-count bound undecided", cap)

    monkeypatch.setattr(sc, "family_n_bound", boom)
    v = sc.verify_positivity(FamilySpec.torus32t(2))
    assert v.verdict == "undecided-at-precision-cap"
    assert v.checks == ()


def test_verdict_construction_guards():
    with pytest.raises(ValueError, match="unknown verdict"):
        PositivityVerdict("x", {}, 0, (), "maybe")
    with pytest.raises(ValueError, match="every check to pass"):
        PositivityVerdict("x", {}, 1, ((0, -1, False),), "proved-positive")


# -- residue-class certificates ----------------------------------------------


def test_certificate_full_slope():
    r = infinite_family_check(1, -1, 1)
    assert isinstance(r, FamilyCertificate)
    assert r.certified and r.m0 == 1 and r.modulus == 1
    assert r.members(4) == [(1, 0), (2, 1), (3, 2), (4, 3)]


def test_certificate_half_slope():
    r = infinite_family_check(1, -1, 2)
    assert r.certified and r.m0 == 1 and r.modulus == 2
    assert r.members(4) == [(1, 0), (3, 1), (5, 2), (7, 3)]


def test_certificate_rejects_small_slope():
    r = infinite_family_check(1, 0, 4)
    assert not r.certified
    assert "not certified by this remark" in r.reason
    with pytest.raises(ValueError, match="not certified"):
        r.members(1)


def test_certificate_rejects_unsolvable_congruence():
    r = infinite_family_check(2, 1, 4)
    assert not r.certified
    assert "congruence" in r.reason


def test_certificate_input_guards():
    with pytest.raises(ValueError, match="q1 must be positive"):
        infinite_family_check(1, -1, 0)
    with pytest.raises(ValueError, match="common factor"):
        infinite_family_check(2, -2, 4)


def test_certified_members_are_valid_parameters():
    for m, ell in infinite_family_check(1, -1, 2).members(5):
        spec = FamilySpec.torus2(m, ell)
        assert verify_positivity(spec).verdict == "proved-positive"
