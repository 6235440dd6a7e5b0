from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tiltcalc import (
    ChargeRegion,
    StabilityParams,
    bmt_defect,
    ch_skyscraper,
    ch_structure_sheaf,
    ch_structure_sheaf_divisor,
    check_divisor_counterexample,
    contraction_margin,
    contraction_scenario,
    make_blowup_geometry,
    make_rank_one_ring,
    minimal_m,
    positivity_check,
    weierstrass_margin,
    weierstrass_scenario,
    weierstrass_threshold_ok,
)


def test_contraction_report():
    R, D, H = contraction_scenario(1, 1, 2)
    rep = check_divisor_counterexample(D, H)
    assert rep.satisfied
    assert rep.beta0 == Fraction(1, 2)
    assert (rep.alpha_sq_lower, rep.alpha_sq_upper) == (Fraction(1, 196), Fraction(1, 4))
    assert rep.witness_alpha_sq == Fraction(25, 196)
    assert rep.margin == Fraction(12, 49)
    params = StabilityParams(H, R.zero_divisor(), rep.witness_alpha_sq, rep.beta0)
    assert bmt_defect(params, ch_structure_sheaf_divisor(D)) == Fraction(1, 49)


@given(st.integers(1, 6), st.integers(1, 6), st.integers(1, 6))
def test_contraction_closed_form(L3, D3, m):
    if m ** 3 * L3 <= D3:
        with pytest.raises(ValueError):
            contraction_scenario(L3, D3, m)
        return
    R, D, H = contraction_scenario(L3, D3, m)
    rep = check_divisor_counterexample(D, H)
    assert rep.margin == contraction_margin(L3, D3, m)
    assert rep.satisfied == (rep.margin > 0)


def test_minimal_m():
    assert minimal_m(1, 1) == 2
    for L3, D3 in ((1, 30), (2, 5), (3, 1)):
        m = minimal_m(L3, D3)
        assert contraction_margin(L3, D3, m) > 0
        for k in range(1, m):
            assert k ** 3 * L3 <= D3 or contraction_margin(L3, D3, k) <= 0


@given(st.integers(1, 9), st.fractions(min_value=Fraction(1, 20), max_value=5, max_denominator=20))
def test_weierstrass_closed_form(KS2, t):
    R, Theta, H = weierstrass_scenario(KS2, t)
    rep = check_divisor_counterexample(Theta, H)
    assert rep.margin == weierstrass_margin(KS2, t)
    assert rep.satisfied == weierstrass_threshold_ok(t)


def test_gamma_shrinks_the_interval():
    R, D, H = contraction_scenario(1, 1, 2)
    plain = check_divisor_counterexample(D, H)
    Gamma = Fraction(1, 24) * (H * H)
    shifted = check_divisor_counterexample(D, H, Gamma)
    assert shifted.alpha_sq_upper == plain.alpha_sq_upper - 6 * Fraction(1, 24)
    assert not shifted.satisfied and shifted.witness_alpha_sq is None


def test_check_requires_positive_degrees():
    R, D, H = contraction_scenario(1, 1, 2)
    with pytest.raises(ValueError):
        check_divisor_counterexample(-D, H)


def test_positivity_regions():
    geom = make_blowup_geometry(make_rank_one_ring(1, "H").basis_divisor("H"))
    R = geom.ring
    params = geom.lifted_params(1, 0, Fraction(1, 2))
    assert positivity_check(params, ch_skyscraper(R)) is ChargeRegion.STRICTLY_NEGATIVE_REAL
    assert positivity_check(params, -1 * ch_skyscraper(R)) is ChargeRegion.VIOLATION
    assert positivity_check(params, 0 * ch_skyscraper(R)) is ChargeRegion.ZERO_CLASS
    base = geom.base_params(1, 0, Fraction(1, 2))
    # O has Im Z = -1/2 at alpha^2 = 1, beta = 0, so its shift lies in the upper half plane
    assert positivity_check(base, -1 * ch_structure_sheaf(geom.base)) is ChargeRegion.UPPER_HALF_PLANE
