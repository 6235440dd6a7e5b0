from fractions import Fraction

import pytest

from tiltcalc import (
    IntersectionRing,
    as_rational,
    blowup_of,
    div_mul,
    make_blowup_ring,
    make_contraction_ring,
    make_rank_one_ring,
    make_weierstrass_ring,
    pair,
    triple,
    validate,
)


def test_as_rational_accepts_exact_inputs():
    assert as_rational(3) == 3
    assert as_rational("-1/2") == Fraction(-1, 2)
    assert as_rational(Fraction(2, 4)) == Fraction(1, 2)


@pytest.mark.parametrize("bad", [0.5, True, "x", "1/0"])
def test_as_rational_rejects(bad):
    with pytest.raises((TypeError, ValueError, ZeroDivisionError)):
        as_rational(bad)


def test_contraction_numbers():
    R = make_contraction_ring(1, 1)
    assert validate(R) == []
    L, D = R.divisor_basis()
    H = 2 * L - D
    assert triple(H, H, H) == 7
    assert (triple(D, H, H), triple(D, D, H), triple(D, D, D)) == (1, -1, 1)


def test_contraction_rejects_bad_input():
    with pytest.raises(ValueError):
        make_contraction_ring(0, 1)
    with pytest.raises(ValueError):
        make_contraction_ring(1, 0)


def test_weierstrass_ring():
    R = make_weierstrass_ring(9)
    Theta, F = R.divisor_basis()
    assert triple(F, F, F) == 0
    assert triple(Theta, Theta, F) == 9
    assert validate(R) == []


def test_weierstrass_warns_outside_del_pezzo_range():
    with pytest.warns(UserWarning):
        make_weierstrass_ring(10)
    with pytest.raises(ValueError):
        make_weierstrass_ring(0)


def test_expression_parsing():
    R = make_contraction_ring(1, 1)
    assert R.divisor("2L - 1/2 D").coeffs == (2, Fraction(-1, 2))
    assert R.divisor([1, 1]) == R.divisor("L + D")
    assert R.divisor({"D": 3}) == 3 * R.basis_divisor("D")
    with pytest.raises(ValueError):
        R.divisor("2L + Q")


def test_curve_equality_is_numerical():
    R = make_contraction_ring(1, 1)
    L, D = R.divisor_basis()
    # L.D = 0 numerically, so it equals the zero curve
    assert div_mul(L, D) == R.zero_curve()
    assert div_mul(L, D).is_zero()
    assert hash(div_mul(L, D)) == hash(R.zero_curve())


def test_validate_reports_asymmetry():
    R = IntersectionRing(("A", "B"), ("c",), [[[1], [1]], [[2], [1]]], [[1], [1]])
    problems = validate(R)
    assert problems
    assert all(isinstance(p, str) for p in problems)


def test_ring_mismatch_raises():
    a, b = make_rank_one_ring(1), make_rank_one_ring(2)
    with pytest.raises(ValueError):
        a.basis_divisor(0) + b.basis_divisor(0)


def test_blowup_ring_structure():
    R, f = make_blowup_ring(1)
    assert validate(R) == []
    H, E = R.basis_divisor("H"), R.basis_divisor("E")
    assert triple(E, E, E) == 1
    assert triple(H, H, E) == triple(H, E, E) == 0
    assert triple(H, H, H) == 1
    assert f.push_divisor(E).is_zero()
    assert f.push_curve(div_mul(E, E)).is_zero()
    assert f.pull_divisor(f.target.basis_divisor(0)) == H


def test_blowup_of_general_base():
    base = make_contraction_ring(1, 1)
    R, f = blowup_of(base)
    assert validate(R) == []
    L, D = base.divisor_basis()
    pL, pD = f.pull_divisor(L), f.pull_divisor(D)
    assert triple(pL, pD, pD) == triple(L, D, D)
    # projection formula: f_*(f^*a . f^*b) = a.b
    assert f.push_curve(div_mul(pL, pD)) == div_mul(L, D)
    assert pair(f.pull_divisor(L), f.pull_curve(div_mul(D, D))) == triple(L, D, D)


def test_blowup_pushforward_golden_value():
    from tiltcalc import ChernCharacter, make_blowup_geometry, pushforward

    base = make_rank_one_ring(1, "H")
    geom = make_blowup_geometry(base.basis_divisor("H"))
    c = ChernCharacter.make(geom.ring, 1, "-2 E", "13/6 E^2", Fraction(-5, 3))
    assert pushforward(geom, c).as_tuple() == (1, (0,), (0,), Fraction(-5, 3))


def test_blowup_rejects_bad_base():
    with pytest.raises(ValueError):
        make_blowup_ring(0)
