"""
Central charges and the blow-up of a threefold at a point.

On the blow-up ``f: X~ -> X`` the data ``(H, B0, Gamma)`` lifts to
``H~ = f*H``, ``B0~ = f*B0 + 2E`` and ``Gamma~ = f*Gamma - E^2/6``.  The
derived equivalence with modules over ``f_* End(O + O(E) + O(2E))`` acts on
Chern characters by :func:`transport_ch`, and scales the charge by three.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .chern import ChernCharacter, ch_structure_sheaf, exp_divisor, twist
from .ring import (
    CurveClass,
    DivisorClass,
    IntersectionRing,
    RingMorphism,
    as_rational,
    blowup_of,
    div_mul,
    pair,
    triple,
    validate,
    _same_ring,
)
from .tilt import INF, StabilityParams

__all__ = [
    "ComplexRational",
    "central_charge",
    "bridgeland_slope",
    "BlowupGeometry",
    "make_blowup_geometry",
    "pushforward",
    "grr_pushforward",
    "transport_ch",
    "transport_ch_via_grr",
    "verify_factor_three",
]

SIXTH = Fraction(1, 6)


@dataclass(frozen=True)
class ComplexRational:
    re: Fraction
    im: Fraction

    def __add__(self, other):
        return ComplexRational(self.re + other.re, self.im + other.im)

    def __sub__(self, other):
        return ComplexRational(self.re - other.re, self.im - other.im)

    def __rmul__(self, scalar):
        c = as_rational(scalar)
        return ComplexRational(c * self.re, c * self.im)

    __mul__ = __rmul__

    def __str__(self):
        sign = "-" if self.im < 0 else "+"
        return f"{self.re} {sign} {abs(self.im)}i"


def _check_s(params: StabilityParams) -> Fraction:
    if params.s is None or not params.s > SIXTH:
        raise ValueError("the central charge needs s > 1/6")
    return params.s


def central_charge(params: StabilityParams, ch: ChernCharacter) -> ComplexRational:
    """
    ``Z = -ch3^B + s a^2 H^2.ch1^B + Gamma.ch1^B + i (H.ch2^B - a^2/2 H^3 ch0^B)``.
    """
    s = _check_s(params)
    _same_ring(params.ring, ch.ring)
    c = twist(ch, params.B)
    H = params.H
    h2_ch1 = pair(c.ch1, div_mul(H, H))
    re = -c.ch3 + s * params.alpha_sq * h2_ch1 + pair(c.ch1, params.Gamma)
    im = pair(H, c.ch2) - params.alpha_sq / 2 * params.H3 * c.ch0
    return ComplexRational(re, im)


def bridgeland_slope(params: StabilityParams, ch: ChernCharacter):
    """``-Re Z / Im Z``; INF when ``Im Z = 0``."""
    z = central_charge(params, ch)
    if z.im == 0:
        return INF
    return -z.re / z.im


@dataclass(frozen=True)
class BlowupGeometry:
    base: IntersectionRing
    ring: IntersectionRing
    f: RingMorphism
    H: DivisorClass
    B0: DivisorClass
    Gamma: CurveClass
    H_tilde: DivisorClass
    B0_tilde: DivisorClass
    Gamma_tilde: CurveClass
    E: DivisorClass

    def base_params(self, alpha_sq, beta, s=None) -> StabilityParams:
        return StabilityParams(self.H, self.B0, alpha_sq, beta, s, self.Gamma)

    def lifted_params(self, alpha_sq, beta, s=None) -> StabilityParams:
        return StabilityParams(self.H_tilde, self.B0_tilde, alpha_sq, beta, s, self.Gamma_tilde)

    def lift(self, params: StabilityParams) -> StabilityParams:
        """The same ``(alpha_sq, beta, s)`` with the lifted classes."""
        _same_ring(params.ring, self.base)
        return self.lifted_params(params.alpha_sq, params.beta, params.s)


def make_blowup_geometry(H: DivisorClass, B0: DivisorClass | None = None,
                         Gamma: CurveClass | None = None) -> BlowupGeometry:
    base = H.ring
    problems = validate(base)
    if problems:
        raise ValueError("invalid base ring: " + "; ".join(problems))
    if triple(H, H, H) <= 0:
        raise ValueError("H^3 must be positive")
    B0 = base.zero_divisor() if B0 is None else B0
    Gamma = base.zero_curve() if Gamma is None else Gamma
    _same_ring(base, B0.ring)
    _same_ring(base, Gamma.ring)
    ring, f = blowup_of(base)
    E = ring.basis_divisor("E")
    E2 = div_mul(E, E)
    return BlowupGeometry(
        base=base,
        ring=ring,
        f=f,
        H=H,
        B0=B0,
        Gamma=Gamma,
        H_tilde=f.pull_divisor(H),
        B0_tilde=f.pull_divisor(B0) + 2 * E,
        Gamma_tilde=f.pull_curve(Gamma) - E2 / 6,
        E=E,
    )


def pushforward(geom: BlowupGeometry, ch: ChernCharacter) -> ChernCharacter:
    """Degree-wise ``f_*`` of a class on the blow-up."""
    _same_ring(ch.ring, geom.ring)
    f = geom.f
    return ChernCharacter(ch.ch0, f.push_divisor(ch.ch1), f.push_curve(ch.ch2), f.push_point(ch.ch3))


def _one(ring):
    return ch_structure_sheaf(ring)


def grr_pushforward(geom: BlowupGeometry, ch: ChernCharacter) -> ChernCharacter:
    """
    ``ch(Rf_* F) = f_*(ch(F) . (1 - E + E^2/3))``: Grothendieck-Riemann-Roch
    for the blow-down, with the relative Todd class written out.
    """
    E = geom.E
    td_rel = ChernCharacter(Fraction(1), -E, div_mul(E, E) / 3, Fraction(0))
    return pushforward(geom, ch * td_rel)


def transport_ch(geom: BlowupGeometry, ch: ChernCharacter) -> ChernCharacter:
    """
    Untwisted Chern character of the image of ``F`` under the equivalence:
    ``3 f_*(e^{-2E} ch(F) (1 + E^2/6))``.  Twisting the result by ``B`` agrees
    with ``3 f_*(ch^{B~}(F) (1 + E^2/6))``.
    """
    R = geom.ring
    correction = ChernCharacter(Fraction(1), R.zero_divisor(), div_mul(geom.E, geom.E) / 6, Fraction(0))
    return 3 * pushforward(geom, exp_divisor(-2 * geom.E) * ch * correction)


def transport_ch_via_grr(geom: BlowupGeometry, ch: ChernCharacter) -> ChernCharacter:
    """Same value computed as ``ch(Rf_* RHom(O + O(E) + O(2E), F))`` by GRR."""
    R = geom.ring
    E = geom.E
    dual = _one(R) + exp_divisor(-E) + exp_divisor(-2 * E)
    return grr_pushforward(geom, ch * dual)


def verify_factor_three(geom: BlowupGeometry, params: StabilityParams, ch_tilde: ChernCharacter) -> bool:
    """
    ``3 Z~(F) == Z(transport(F))``.  ``params`` may live on either ring; the
    same ``(alpha_sq, beta, s)`` is used on both sides.
    """
    down = geom.base_params(params.alpha_sq, params.beta, params.s)
    up = geom.lifted_params(params.alpha_sq, params.beta, params.s)
    lhs = 3 * central_charge(up, ch_tilde)
    rhs = central_charge(down, transport_ch(geom, ch_tilde))
    return lhs == rhs
