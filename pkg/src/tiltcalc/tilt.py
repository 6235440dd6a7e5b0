"""
Tilt slopes, the discriminant and numerical walls in the (alpha, beta) plane.

alpha only ever enters squared, so every parameter is an exact rational and
``alpha_sq`` stands in for alpha^2.  Points of the upper half plane are pairs
``(beta, alpha_sq)`` with ``alpha_sq > 0``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .chern import ChernCharacter, twist
from .ring import CurveClass, DivisorClass, as_rational, div_mul, pair, triple, _same_ring

__all__ = [
    "INF",
    "EVERY_ALPHA",
    "StabilityParams",
    "LambdaVector",
    "Wall",
    "Region",
    "Caps",
    "slope_mu",
    "slope_nu",
    "slope_nu_lambda",
    "discriminant",
    "discriminant_lambda",
    "to_lambda",
    "wall",
    "vertical_wall",
    "radius_bound_higher_rank",
    "lattice_steps",
    "enumerate_candidate_walls",
    "nu_zero_alpha_sq",
    "wall_meets_region",
    "in_heart_along",
]


class _PositiveInfinity:
    """The value of a slope whose denominator vanishes.  Compares above every rational."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __str__(self):
        return "+inf"

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("tiltcalc.INF")

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True


INF = _PositiveInfinity()


class _EveryAlpha:
    def __repr__(self):
        return "EVERY_ALPHA"


#: returned by :func:`nu_zero_alpha_sq` when the slope vanishes for every alpha.
EVERY_ALPHA = _EveryAlpha()


@dataclass(frozen=True)
class StabilityParams:
    """
    Polarization ``H``, base twist ``B0``, ``alpha_sq``, ``beta``, the
    central-charge parameter ``s`` and the curve class ``Gamma``.

    ``s`` may be left unset for pure tilt computations; ``Gamma`` defaults
    to zero.
    """

    H: DivisorClass
    B0: DivisorClass
    alpha_sq: Fraction
    beta: Fraction
    s: Fraction | None = None
    Gamma: CurveClass | None = None

    def __post_init__(self):
        _same_ring(self.H.ring, self.B0.ring)
        object.__setattr__(self, "alpha_sq", as_rational(self.alpha_sq))
        object.__setattr__(self, "beta", as_rational(self.beta))
        if self.s is not None:
            object.__setattr__(self, "s", as_rational(self.s))
        if self.Gamma is None:
            object.__setattr__(self, "Gamma", self.H.ring.zero_curve())
        else:
            _same_ring(self.H.ring, self.Gamma.ring)
        if self.alpha_sq <= 0:
            raise ValueError("alpha_sq must be positive")

    @property
    def ring(self):
        return self.H.ring

    @property
    def B(self) -> DivisorClass:
        return self.B0 + self.beta * self.H

    @property
    def H3(self) -> Fraction:
        return triple(self.H, self.H, self.H)

    def replace(self, **changes) -> "StabilityParams":
        fields = dict(H=self.H, B0=self.B0, alpha_sq=self.alpha_sq, beta=self.beta,
                      s=self.s, Gamma=self.Gamma)
        fields.update(changes)
        return StabilityParams(**fields)


class LambdaVector(NamedTuple):
    """``(H^3 ch0, H^2 ch1, H ch2, ch3)`` of the ``B0``-twisted character."""

    v0: Fraction
    v1: Fraction
    v2: Fraction
    v3: Fraction = Fraction(0)

    @classmethod
    def of(cls, *values) -> "LambdaVector":
        vals = [as_rational(v) for v in values]
        if len(vals) == 3:
            vals.append(Fraction(0))
        return cls(*vals)

    def __add__(self, other):
        return LambdaVector(*(a + b for a, b in zip(self, other)))

    def __sub__(self, other):
        return LambdaVector(*(a - b for a, b in zip(self, other)))

    def scale(self, c) -> "LambdaVector":
        c = as_rational(c)
        return LambdaVector(*(c * a for a in self))

    def head(self) -> tuple[Fraction, Fraction, Fraction]:
        return (self.v0, self.v1, self.v2)

    def is_zero(self) -> bool:
        return not (self.v0 or self.v1 or self.v2 or self.v3)


@dataclass(frozen=True)
class Wall:
    """
    A numerical wall: ``semicircle`` (``center``, ``radius_sq``), ``vertical``
    (at ``beta``), ``everywhere`` (proportional classes) or ``empty``.
    """

    kind: str
    center: Fraction | None = None
    radius_sq: Fraction | None = None
    beta: Fraction | None = None

    def key(self) -> tuple:
        return (self.kind, self.center, self.radius_sq, self.beta)


@dataclass(frozen=True)
class Region:
    beta_min: Fraction
    beta_max: Fraction
    alpha_sq_max: Fraction

    def __post_init__(self):
        for name in ("beta_min", "beta_max", "alpha_sq_max"):
            object.__setattr__(self, name, as_rational(getattr(self, name)))
        if self.beta_min > self.beta_max or self.alpha_sq_max <= 0:
            raise ValueError("empty region")


@dataclass(frozen=True)
class Caps:
    """Search bounds in lattice steps: ``|w0| <= max_rank``, ``|w1| <= max_ch1``, ``|w2| <= max_ch2``."""

    max_rank: int
    max_ch1: int
    max_ch2: int | None = None


def _reject_zero(v):
    if v.is_zero():
        raise ValueError("slopes and walls are undefined for the zero class")


def _reject_zero_head(v):
    if not (v[0] or v[1] or v[2]):
        raise ValueError("walls are undefined for the zero class of the lattice")


def slope_mu(H: DivisorClass, ch: ChernCharacter):
    """Classical slope ``H^2 ch1 / (H^3 ch0)``; INF when ch0 = 0."""
    _reject_zero(ch)
    H3 = triple(H, H, H)
    if H3 <= 0:
        raise ValueError("H^3 must be positive")
    if ch.ch0 == 0:
        return INF
    return pair(ch.ch1, div_mul(H, H)) / (H3 * ch.ch0)


def slope_nu(params: StabilityParams, ch: ChernCharacter):
    """Tilt slope computed from the ``B``-twisted character."""
    _reject_zero(ch)
    H = params.H
    c = twist(ch, params.B)
    den = pair(c.ch1, div_mul(H, H))
    if den == 0:
        return INF
    num = pair(H, c.ch2) - params.alpha_sq / 2 * params.H3 * c.ch0
    return num / den


def slope_nu_lambda(v: LambdaVector, alpha_sq, beta):
    """Tilt slope of a Lambda class at ``(beta, alpha_sq)``."""
    v = LambdaVector.of(*v)
    _reject_zero(v)
    alpha_sq, beta = as_rational(alpha_sq), as_rational(beta)
    den = v.v1 - beta * v.v0
    if den == 0:
        return INF
    return (v.v2 - beta * v.v1 + (beta * beta - alpha_sq) / 2 * v.v0) / den


def to_lambda(H: DivisorClass, B0: DivisorClass, ch: ChernCharacter) -> LambdaVector:
    c = twist(ch, B0)
    HH = div_mul(H, H)
    return LambdaVector(triple(H, H, H) * c.ch0, pair(c.ch1, HH), pair(H, c.ch2), c.ch3)


def discriminant_lambda(v) -> Fraction:
    return v[1] * v[1] - 2 * v[0] * v[2]


def discriminant(H: DivisorClass, B0: DivisorClass, ch: ChernCharacter) -> Fraction:
    """``(H^2 ch1^B0)^2 - 2 (H^3 ch0^B0)(H ch2^B0)``; unchanged by twisting with multiples of H."""
    return discriminant_lambda(to_lambda(H, B0, ch))


def _minors(v, w):
    c01 = v[0] * w[1] - v[1] * w[0]
    c02 = v[0] * w[2] - v[2] * w[0]
    c12 = v[1] * w[2] - v[2] * w[1]
    return c01, c02, c12


def wall(v, w) -> Wall:
    """
    The locus where ``v`` and ``w`` have equal tilt slope.

    Clearing denominators in nu(v) = nu(w) leaves
    ``c01 (beta^2 + alpha^2) - 2 c02 beta + 2 c12 = 0`` with ``cij`` the 2x2
    minors of ``(v, w)``.
    """
    _reject_zero_head(v)
    c01, c02, c12 = _minors(v, w)
    if c01 == 0:
        if c02 == 0:
            return Wall("everywhere") if c12 == 0 else Wall("empty")
        return Wall("vertical", beta=c12 / c02)
    center = c02 / c01
    radius_sq = center * center - 2 * c12 / c01
    if radius_sq <= 0:
        return Wall("empty")
    return Wall("semicircle", center=center, radius_sq=radius_sq)


def vertical_wall(v):
    """The unique numerical vertical wall ``beta = v1/v0``, or None when ``v0 = 0``."""
    _reject_zero_head(v)
    if v[0] == 0:
        return None
    return Fraction(v[1]) / v[0]


def radius_bound_higher_rank(v, H3, rF) -> Fraction:
    """
    Upper bound for radius^2 of a semicircular wall for ``v`` induced by a
    subobject whose ``H^3 ch0`` is ``rF`` (requires ``rF > v0 >= 0``).
    """
    H3, rF = as_rational(H3), as_rational(rF)
    if H3 <= 0:
        raise ValueError("H^3 must be positive")
    if not rF > v[0] >= 0:
        raise ValueError("need rF > v0 >= 0")
    return discriminant_lambda(v) / (4 * rF * (rF - v[0]))


def nu_zero_alpha_sq(v, beta):
    """
    The ``alpha_sq > 0`` with ``nu_{alpha,beta}(v) = 0``.

    Returns None when there is none and :data:`EVERY_ALPHA` when ``v0 = 0`` and
    the slope vanishes identically along the vertical line through ``beta``.
    """
    _reject_zero_head(v)
    beta = as_rational(beta)
    v0, v1, v2 = v[0], v[1], v[2]
    if v1 - beta * v0 == 0:
        return None
    rest = v2 - beta * v1
    if v0 == 0:
        return EVERY_ALPHA if rest == 0 else None
    alpha_sq = beta * beta + 2 * rest / v0
    return alpha_sq if alpha_sq > 0 else None


def wall_meets_region(w: Wall, region: Region) -> bool:
    """Whether a semicircular wall has a point with beta in range and ``0 < alpha_sq <= max``."""
    if w.kind != "semicircle":
        return False
    c, r2 = w.center, w.radius_sq
    lo, hi = region.beta_min, region.beta_max
    nearest = min(max(c, lo), hi)
    farthest = lo if abs(lo - c) >= abs(hi - c) else hi
    top = r2 - (nearest - c) ** 2
    bottom = r2 - (farthest - c) ** 2
    return top > 0 and bottom <= region.alpha_sq_max


def _nonnegative_along(a, b, w: Wall) -> bool:
    """Whether ``a - b*beta >= 0`` for every beta under the semicircle ``w``."""
    mid = a - b * w.center
    return mid >= 0 and mid * mid >= b * b * w.radius_sq


def in_heart_along(v, w, wl: Wall) -> bool:
    """
    Whether ``H^2 ch1^beta`` of both ``w`` and ``v - w`` stays non-negative
    along the semicircle ``wl``, as it must for a subobject and quotient in
    the tilted heart at every point of the wall.
    """
    return (_nonnegative_along(w[1], w[0], wl)
            and _nonnegative_along(v[1] - w[1], v[0] - w[0], wl))


def _rational_gcd(values) -> Fraction:
    num, den = 0, 1
    for x in values:
        x = Fraction(x)
        if x == 0:
            continue
        den_new = den * x.denominator // math.gcd(den, x.denominator)
        num = math.gcd(num * (den_new // den), abs(x.numerator) * (den_new // x.denominator))
        den = den_new
    return Fraction(num, den)


def lattice_steps(H: DivisorClass, B0: DivisorClass, *classes) -> tuple[Fraction, Fraction, Fraction]:
    """
    Generators ``(d0, d1, d2)`` of a rank-three lattice in which the search
    for destabilizing classes runs: ``w = (a d0, b d1, c d2)`` with integers
    a, b, c.  The lattice contains the Lambda image of integral line bundles,
    points and the given ``classes``.
    """
    R = H.ring
    HH = div_mul(H, H)
    basis = R.divisor_basis()
    d0 = triple(H, H, H)
    gens1 = [pair(D, HH) for D in basis] + [pair(B0, HH)]
    gens2 = [triple(H, Di, Dj) / 2 for Di in basis for Dj in basis]
    gens2 += [triple(H, B0, D) for D in basis] + [triple(H, B0, B0) / 2]
    for v in classes:
        gens1.append(v[1])
        gens2.append(v[2])
    d1 = _rational_gcd(gens1) or Fraction(1)
    d2 = _rational_gcd(gens2) or Fraction(1)
    return d0, d1, d2


def _floor(x: Fraction) -> int:
    return math.floor(x)


def _ceil(x: Fraction) -> int:
    return math.ceil(x)


def _w2_interval(v, w0, w1, region: Region):
    """
    Interval of ``w2`` for which ``wall(v, w)`` can reach ``region`` and both
    ``w`` and ``v - w`` satisfy the Bogomolov inequality.  Either end may be
    None when unbounded.
    """
    lo = hi = None

    def lower(x):
        nonlocal lo
        lo = x if lo is None else max(lo, x)

    def upper(x):
        nonlocal hi
        hi = x if hi is None else min(hi, x)

    # Delta(w) >= 0
    if w0 > 0:
        upper(w1 * w1 / (2 * w0))
    elif w0 < 0:
        lower(w1 * w1 / (2 * w0))
    # Delta(v - w) >= 0
    u0, u1 = v[0] - w0, v[1] - w1
    if u0 > 0:
        lower(v[2] - u1 * u1 / (2 * u0))
    elif u0 < 0:
        upper(v[2] - u1 * u1 / (2 * u0))

    # Heart condition: for x in {w, v - w}, x1 - x0*center >= 0 and
    # (x1 - x0*center)^2 >= x0^2 radius^2.  Both are affine in w2.
    c01 = v[0] * w1 - v[1] * w0

    def center(w2):
        return (v[0] * w2 - v[2] * w0) / c01

    def c12_over_c01(w2):
        return (v[1] * w2 - v[2] * w1) / c01

    for x0, x1, sign in ((w0, w1, 1), (v[0] - w0, v[1] - w1, -1)):
        for g in (
            lambda w2, x0=x0, x1=x1: x1 - x0 * center(w2),
            lambda w2, x0=x0, x1=x1: x1 * x1 - 2 * x0 * x1 * center(w2) + 2 * x0 * x0 * c12_over_c01(w2),
        ):
            g0 = g(Fraction(0))
            slope = g(Fraction(1)) - g0
            if slope > 0:
                lower(-g0 / slope)
            elif slope < 0:
                upper(-g0 / slope)
            elif g0 < 0:
                return Fraction(1), Fraction(0)

    if v[0] == 0:
        # fixed center, so radius^2 > 0 is affine in w2 as well
        r0 = center(Fraction(0)) ** 2 - 2 * c12_over_c01(Fraction(0))
        slope = -2 * c12_over_c01(Fraction(1)) + 2 * c12_over_c01(Fraction(0))
        if slope > 0:
            lower(-r0 / slope)
        elif slope < 0:
            upper(-r0 / slope)
        elif r0 <= 0:
            return Fraction(1), Fraction(0)

    # Along any wall through the region, w2 = nu_v * (w1 - beta w0) + beta w1 - (beta^2 - alpha^2) w0 / 2.
    v0, v1, v2 = v[0], v[1], v[2]
    b_lo, b_hi, A = region.beta_min, region.beta_max, region.alpha_sq_max
    den_lo, den_hi = v1 - b_lo * v0, v1 - b_hi * v0
    if den_lo * den_hi > 0:
        B = max(abs(b_lo), abs(b_hi))
        nu_max = (abs(v2) + B * abs(v1) + (B * B + A) / 2 * abs(v0)) / min(abs(den_lo), abs(den_hi))
        G = nu_max * (abs(w1) + B * abs(w0)) + B * abs(w1) + (B * B + A) / 2 * abs(w0)
        lower(-G)
        upper(G)
    return lo, hi


def enumerate_candidate_walls(v, region: Region, caps: Caps, steps=(1, 1, Fraction(1, 2))):
    """
    Numerical semicircular walls for ``v`` that meet ``region``.

    Candidates are ``w = (a*d0, b*d1, c*d2)`` with ``|a| <= max_rank``,
    ``|b| <= max_ch1`` (and ``|c| <= max_ch2`` if given), kept when
    ``Delta(w) >= 0``, ``Delta(v - w) >= 0`` and both have non-negative
    ``H^2 ch1^beta`` all along the wall.  Identical walls are merged,
    keeping the lexicographically smallest ``w``.  Returns ``(w, Wall)``
    pairs sorted by decreasing radius.  These are numerical walls only.
    """
    _reject_zero_head(v)
    if caps.max_rank < 0 or caps.max_ch1 < 0 or (caps.max_ch2 is not None and caps.max_ch2 < 0):
        raise ValueError("caps must be non-negative")
    d0, d1, d2 = (as_rational(s) for s in steps)
    if d0 <= 0 or d1 <= 0 or d2 <= 0:
        raise ValueError("lattice steps must be positive")
    v = LambdaVector.of(*v[:3])
    found: dict[tuple, tuple] = {}
    for a in range(-caps.max_rank, caps.max_rank + 1):
        w0 = a * d0
        for b in range(-caps.max_ch1, caps.max_ch1 + 1):
            w1 = b * d1
            if v.v0 * w1 - v.v1 * w0 == 0:
                continue
            lo, hi = _w2_interval(v, w0, w1, region)
            c_lo = -caps.max_ch2 if caps.max_ch2 is not None else None
            c_hi = caps.max_ch2
            if lo is not None:
                c_lo = _ceil(lo / d2) if c_lo is None else max(c_lo, _ceil(lo / d2))
            if hi is not None:
                c_hi = _floor(hi / d2) if c_hi is None else min(c_hi, _floor(hi / d2))
            if c_lo is None or c_hi is None:
                raise ValueError(
                    "region reaches the vertical wall; the search for w2 is unbounded "
                    "(narrow the beta range or set max_ch2)"
                )
            for c in range(c_lo, c_hi + 1):
                w = LambdaVector(w0, w1, c * d2)
                if discriminant_lambda(w) < 0 or discriminant_lambda(v - w) < 0:
                    continue
                wl = wall(v, w)
                if not wall_meets_region(wl, region) or not in_heart_along(v, w, wl):
                    continue
                key = wl.key()
                if key not in found or w.head() < found[key][0].head():
                    found[key] = (w, wl)
    return sorted(found.values(), key=lambda p: (-p[1].radius_sq, p[1].center, p[0].head()))
