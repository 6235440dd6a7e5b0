"""Chern characters as graded elements of a numerical intersection ring."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .ring import CurveClass, DivisorClass, IntersectionRing, as_rational, div_mul, pair, _same_ring

__all__ = [
    "ChernCharacter",
    "exp_divisor",
    "twist",
    "ch_structure_sheaf",
    "ch_line_bundle",
    "ch_structure_sheaf_divisor",
    "ch_skyscraper",
    "ch_ideal_point",
    "ch_exceptional_twist",
    "ch_algebra_B",
]


@dataclass(frozen=True)
class ChernCharacter:
    """
    A graded class ``(ch0, ch1, ch2, ch3)``: a scalar, a divisor, a curve and
    a point degree.  Products are taken in the truncated Chow ring, so the
    same type also serves for Todd-type correction factors like ``1 + E^2/6``.
    """

    ch0: Fraction
    ch1: DivisorClass
    ch2: CurveClass
    ch3: Fraction

    def __post_init__(self):
        object.__setattr__(self, "ch0", as_rational(self.ch0))
        object.__setattr__(self, "ch3", as_rational(self.ch3))
        _same_ring(self.ch1.ring, self.ch2.ring)

    @property
    def ring(self) -> IntersectionRing:
        return self.ch1.ring

    @classmethod
    def make(cls, ring: IntersectionRing, ch0=0, ch1="0", ch2="0", ch3=0) -> "ChernCharacter":
        """Build from loose inputs: expressions, vectors or mappings per degree."""
        return cls(as_rational(ch0), ring.divisor(ch1), ring.curve(ch2), as_rational(ch3))

    @classmethod
    def zero(cls, ring: IntersectionRing) -> "ChernCharacter":
        return cls(Fraction(0), ring.zero_divisor(), ring.zero_curve(), Fraction(0))

    def __add__(self, other):
        if not isinstance(other, ChernCharacter):
            return NotImplemented
        return ChernCharacter(
            self.ch0 + other.ch0, self.ch1 + other.ch1, self.ch2 + other.ch2, self.ch3 + other.ch3
        )

    def __neg__(self):
        return ChernCharacter(-self.ch0, -self.ch1, -self.ch2, -self.ch3)

    def __sub__(self, other):
        if not isinstance(other, ChernCharacter):
            return NotImplemented
        return self + (-other)

    def __rmul__(self, scalar):
        c = as_rational(scalar)
        return ChernCharacter(c * self.ch0, c * self.ch1, c * self.ch2, c * self.ch3)

    def __mul__(self, other):
        if not isinstance(other, ChernCharacter):
            return self.__rmul__(other)
        _same_ring(self.ring, other.ring)
        a, b = self, other
        return ChernCharacter(
            a.ch0 * b.ch0,
            a.ch0 * b.ch1 + b.ch0 * a.ch1,
            a.ch0 * b.ch2 + b.ch0 * a.ch2 + div_mul(a.ch1, b.ch1),
            a.ch0 * b.ch3 + b.ch0 * a.ch3 + pair(a.ch1, b.ch2) + pair(b.ch1, a.ch2),
        )

    def is_zero(self) -> bool:
        return not self.ch0 and self.ch1.is_zero() and self.ch2.is_zero() and not self.ch3

    def as_tuple(self) -> tuple:
        """``(ch0, ch1 coefficients, ch2 degrees, ch3)`` for comparisons and output."""
        return (self.ch0, self.ch1.coeffs, self.ch2.degrees(), self.ch3)

    def __str__(self):
        return f"({self.ch0}, {self.ch1}, {self.ch2}, {self.ch3})"


def exp_divisor(d: DivisorClass) -> ChernCharacter:
    """``e^d = 1 + d + d^2/2 + d^3/6``, i.e. ch of the line bundle O(d)."""
    dd = div_mul(d, d)
    return ChernCharacter(Fraction(1), d, dd / 2, pair(d, dd) / 6)


def twist(ch: ChernCharacter, B: DivisorClass) -> ChernCharacter:
    """The twisted character ``ch^B = e^{-B} ch``, expanded degree by degree."""
    _same_ring(ch.ring, B.ring)
    BB = div_mul(B, B)
    return ChernCharacter(
        ch.ch0,
        ch.ch1 - ch.ch0 * B,
        ch.ch2 - div_mul(B, ch.ch1) + (ch.ch0 / 2) * BB,
        ch.ch3 - pair(B, ch.ch2) + pair(ch.ch1, BB) / 2 - ch.ch0 * pair(B, BB) / 6,
    )


def ch_structure_sheaf(ring: IntersectionRing) -> ChernCharacter:
    return ChernCharacter(Fraction(1), ring.zero_divisor(), ring.zero_curve(), Fraction(0))


def ch_line_bundle(d: DivisorClass) -> ChernCharacter:
    return exp_divisor(d)


def ch_structure_sheaf_divisor(d: DivisorClass) -> ChernCharacter:
    """ch(O_D) = (0, D, -D^2/2, D^3/6) for an effective divisor D (trusted)."""
    dd = div_mul(d, d)
    return ChernCharacter(Fraction(0), d, -dd / 2, pair(d, dd) / 6)


def ch_skyscraper(ring: IntersectionRing) -> ChernCharacter:
    return ChernCharacter(Fraction(0), ring.zero_divisor(), ring.zero_curve(), Fraction(1))


def ch_ideal_point(ring: IntersectionRing) -> ChernCharacter:
    return ChernCharacter(Fraction(1), ring.zero_divisor(), ring.zero_curve(), Fraction(-1))


def _exceptional(ring: IntersectionRing, name: str) -> DivisorClass:
    if name not in ring.divisor_names:
        raise ValueError(f"ring has no exceptional generator {name!r}")
    return ring.basis_divisor(name)


def ch_exceptional_twist(ring: IntersectionRing, k: int, exceptional: str = "E") -> ChernCharacter:
    """ch(i_* O_E(kE)) = e^{kE} (1 - e^{-E}) on a blow-up ring."""
    if isinstance(k, bool) or not isinstance(k, int):
        raise TypeError("k must be an integer")
    E = _exceptional(ring, exceptional)
    return exp_divisor(k * E) * (ch_structure_sheaf(ring) - exp_divisor(-E))


def ch_algebra_B(base: IntersectionRing) -> ChernCharacter:
    """
    ch of the algebra ``f_* End(O + O(E) + O(2E))`` on the base, from its
    decomposition ``I_Z + I_P^2 + O^6`` with ``Z`` of length 4.
    """
    one = ch_structure_sheaf(base)
    ideal_Z = one - 4 * ch_skyscraper(base)
    return ideal_Z + 2 * ch_ideal_point(base) + 6 * one
