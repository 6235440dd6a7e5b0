"""
The generalized Bogomolov-Gieseker inequality and divisor counterexamples.

``bmt_defect`` is ``ch3^B - Gamma.ch1^B - (alpha^2/6) H^2.ch1^B``; the
inequality holds at a class when the defect is ``<= 0``.
:func:`check_divisor_counterexample` decides whether the structure sheaf of
a divisor violates it (with ``B0 = 0``), returning the exact interval of
``alpha^2`` where the violation is guaranteed.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .blowup import central_charge
from .chern import ChernCharacter, twist
from .ring import (
    CurveClass,
    DivisorClass,
    IntersectionRing,
    as_rational,
    div_mul,
    make_contraction_ring,
    make_weierstrass_ring,
    pair,
    triple,
)
from .tilt import StabilityParams

__all__ = [
    "bmt_defect",
    "CounterexampleReport",
    "check_divisor_counterexample",
    "contraction_scenario",
    "weierstrass_scenario",
    "contraction_margin",
    "minimal_m",
    "weierstrass_margin",
    "weierstrass_threshold_ok",
    "ChargeRegion",
    "positivity_check",
]

def bmt_defect(params: StabilityParams, ch: ChernCharacter) -> Fraction:
    """Positive exactly when the (Gamma-modified) inequality fails for ``ch`` at ``params``."""
    c = twist(ch, params.B)
    H = params.H
    return c.ch3 - pair(c.ch1, params.Gamma) - params.alpha_sq / 6 * pair(c.ch1, div_mul(H, H))


@dataclass(frozen=True)
class CounterexampleReport:
    """
    ``satisfied`` iff ``alpha_sq_lower < alpha_sq_upper``.  ``margin`` is
    ``D.H^2 * (upper - lower)``, the slack of the divisor criterion.  The
    lower end only guarantees semistability of O_D; it is not claimed sharp.
    """

    satisfied: bool
    margin: Fraction
    beta0: Fraction
    alpha_sq_lower: Fraction
    alpha_sq_upper: Fraction
    witness_alpha_sq: Fraction | None


def check_divisor_counterexample(D: DivisorClass, H: DivisorClass,
                                 Gamma: CurveClass | None = None) -> CounterexampleReport:
    DH2 = triple(D, H, H)
    if DH2 <= 0:
        raise ValueError("need D.H^2 > 0")
    H3 = triple(H, H, H)
    if H3 <= 0:
        raise ValueError("need H^3 > 0")
    D2H = triple(D, D, H)
    D3 = triple(D, D, D)
    gamma_D = pair(D, Gamma) if Gamma is not None else Fraction(0)

    beta0 = -D2H / (2 * DH2)
    # semistability of O_D along beta0 above the largest possible wall
    lower = DH2 * DH2 / (4 * H3 * H3)
    # ch3 - Gamma.ch1 - (alpha^2/6) H^2.ch1 > 0 at beta0
    upper = (D3 - Fraction(3, 4) * D2H * D2H / DH2 - 6 * gamma_D) / DH2
    margin = DH2 * (upper - lower)
    ok = lower < upper
    return CounterexampleReport(
        satisfied=ok,
        margin=margin,
        beta0=beta0,
        alpha_sq_lower=lower,
        alpha_sq_upper=upper,
        witness_alpha_sq=(lower + upper) / 2 if ok else None,
    )


def contraction_scenario(L3, D3, m) -> tuple[IntersectionRing, DivisorClass, DivisorClass]:
    """Ring, contracted divisor ``D`` and polarization ``H = mL - D``."""
    L3, D3, m = as_rational(L3), as_rational(D3), as_rational(m)
    if m ** 3 * L3 <= D3:
        raise ValueError(f"H = {m}L - D has H^3 = m^3 L^3 - D^3 <= 0")
    R = make_contraction_ring(L3, D3)
    return R, R.basis_divisor("D"), m * R.basis_divisor("L") - R.basis_divisor("D")


def weierstrass_scenario(KS2, t) -> tuple[IntersectionRing, DivisorClass, DivisorClass]:
    """Ring, section ``Theta`` and polarization ``H = t Theta - (1+t) F``."""
    t = as_rational(t)
    if t <= 0:
        raise ValueError("t must be positive")
    R = make_weierstrass_ring(KS2)
    Theta, F = R.divisor_basis()
    return R, Theta, t * Theta - (1 + t) * F


def contraction_margin(L3, D3, m) -> Fraction:
    """``D^3/4 - (D^3)^3 / (4 (m^3 L^3 - D^3)^2)``."""
    L3, D3, m = as_rational(L3), as_rational(D3), as_rational(m)
    if D3 <= 0:
        raise ValueError("D^3 must be positive")
    h3 = m ** 3 * L3 - D3
    if h3 <= 0:
        raise ValueError("need m^3 L^3 > D^3")
    return D3 / 4 - D3 ** 3 / (4 * h3 * h3)


def minimal_m(L3, D3) -> int:
    """Least positive integer m with ``m^3 L^3 > D^3`` and a positive margin."""
    L3, D3 = as_rational(L3), as_rational(D3)
    if L3 <= 0 or D3 <= 0:
        raise ValueError("L^3 and D^3 must be positive")
    m = 1
    # margin > 0  <=>  m^3 L^3 - D^3 > D^3
    while m ** 3 * L3 <= 2 * D3:
        m += 1
    return m


def weierstrass_margin(KS2, t) -> Fraction:
    """``(K_S^2/4) (1 - 1/(t^3 + 3t^2 + 3t)^2)``."""
    KS2, t = as_rational(KS2), as_rational(t)
    if KS2 <= 0 or t <= 0:
        raise ValueError("K_S^2 and t must be positive")
    p = t ** 3 + 3 * t ** 2 + 3 * t
    return KS2 / 4 * (1 - 1 / (p * p))


def weierstrass_threshold_ok(t) -> bool:
    """``t > 2^(1/3) - 1``, decided exactly as ``(1 + t)^3 > 2``."""
    t = as_rational(t)
    return (1 + t) ** 3 > 2


class ChargeRegion(enum.Enum):
    UPPER_HALF_PLANE = "UpperHalfPlane"
    STRICTLY_NEGATIVE_REAL = "StrictlyNegativeReal"
    VIOLATION = "Violation"
    ZERO_CLASS = "ZeroClass"


def positivity_check(params: StabilityParams, ch: ChernCharacter) -> ChargeRegion:
    """
    Where ``Z(ch)`` lands.  Anything off the semi-closed upper half plane
    (including ``Im Z < 0``) is a violation.
    """
    if ch.is_zero():
        return ChargeRegion.ZERO_CLASS
    z = central_charge(params, ch)
    if z.im > 0:
        return ChargeRegion.UPPER_HALF_PLANE
    if z.im == 0 and z.re < 0:
        return ChargeRegion.STRICTLY_NEGATIVE_REAL
    return ChargeRegion.VIOLATION
