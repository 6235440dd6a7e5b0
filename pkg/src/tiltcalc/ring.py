"""
Numerical intersection rings of smooth projective threefolds.

A ring is presented by a basis of divisor classes, a basis of curve classes,
the products of pairs of basis divisors written in the curve basis, and the
degree pairing between divisors and curves.  Triple intersections are
``pair(A, div_mul(B, C))``; the ring is consistent when that is symmetric.

Everything is exact: coefficients are :class:`fractions.Fraction`.

>>> R = make_contraction_ring(1, 1)
>>> H = R.divisor("2L - D")
>>> triple(H, H, H)
Fraction(7, 1)
"""

from __future__ import annotations

import itertools
import re
import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

__all__ = [
    "as_rational",
    "IntersectionRing",
    "DivisorClass",
    "CurveClass",
    "RingMorphism",
    "validate",
    "div_mul",
    "triple",
    "pair",
    "make_rank_one_ring",
    "make_contraction_ring",
    "make_weierstrass_ring",
    "blowup_of",
    "make_blowup_ring",
]


def as_rational(x) -> Fraction:
    """Coerce ints, strings like ``"-3/4"`` and Fractions; floats are refused."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool) or isinstance(x, float):
        raise TypeError(f"refusing inexact or boolean value {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        s = x.strip()
        if not re.fullmatch(r"[+-]?\d+(/\d+)?", s):
            raise ValueError(f"not a rational literal: {x!r}")
        return Fraction(s)
    raise TypeError(f"cannot interpret {x!r} as a rational")


_NAME = r"[A-Za-z_][A-Za-z0-9_^.']*"
_TERM = re.compile(
    r"\s*(?:(?P<coef>\d+(?:/\d+)?)\s*\*?\s*)?(?P<name>" + _NAME + r")?\s*$"
)


def _parse_linear(text: str, names: Sequence[str]) -> list[Fraction]:
    """Parse ``"2L - 1/2 D"`` into a coefficient vector over ``names``."""
    coeffs = [Fraction(0)] * len(names)
    index = {n: i for i, n in enumerate(names)}
    s = text.strip()
    if not s:
        raise ValueError("empty expression")
    pieces = re.findall(r"([+-]?)([^+-]*)", s)
    seen_term = False
    for sign, body in pieces:
        if not sign and not body:
            continue
        if not body.strip():
            raise ValueError(f"dangling sign in {text!r}")
        m = _TERM.fullmatch(body)
        if m is None or (m.group("coef") is None and m.group("name") is None):
            raise ValueError(f"cannot parse term {body.strip()!r} in {text!r}")
        c = Fraction(m.group("coef")) if m.group("coef") else Fraction(1)
        if sign == "-":
            c = -c
        name = m.group("name")
        if name is None:
            if c != 0:
                raise ValueError(f"bare constant {body.strip()!r} in {text!r}")
        else:
            if name not in index:
                raise ValueError(f"unknown generator {name!r}; expected one of {list(names)}")
            coeffs[index[name]] += c
        seen_term = True
    if not seen_term:
        raise ValueError(f"cannot parse {text!r}")
    return coeffs


def _vec(values: Iterable, n: int, what: str) -> tuple[Fraction, ...]:
    out = tuple(as_rational(v) for v in values)
    if len(out) != n:
        raise ValueError(f"{what}: expected {n} entries, got {len(out)}")
    return out


@dataclass(frozen=True)
class IntersectionRing:
    """
    Numerical Chow ring of a threefold.

    ``mult[i][j]`` is the curve-basis vector of ``D_i . D_j`` and
    ``pairing[i][k]`` is the degree ``D_i . C_k``.
    """

    divisor_names: tuple[str, ...]
    curve_names: tuple[str, ...]
    mult: tuple[tuple[tuple[Fraction, ...], ...], ...]
    pairing: tuple[tuple[Fraction, ...], ...]
    name: str = ""

    def __post_init__(self):
        n, c = len(self.divisor_names), len(self.curve_names)
        if len(set(self.divisor_names)) != n or len(set(self.curve_names)) != c:
            raise ValueError("basis names must be distinct")
        mult = tuple(
            tuple(_vec(self.mult[i][j], c, f"mult[{i}][{j}]") for j in range(n))
            for i in range(n)
        ) if len(self.mult) == n and all(len(row) == n for row in self.mult) else None
        if mult is None:
            raise ValueError(f"mult must be a {n}x{n} table of curve vectors")
        if len(self.pairing) != n:
            raise ValueError(f"pairing must have {n} rows")
        pairing = tuple(_vec(row, c, f"pairing[{i}]") for i, row in enumerate(self.pairing))
        object.__setattr__(self, "divisor_names", tuple(self.divisor_names))
        object.__setattr__(self, "curve_names", tuple(self.curve_names))
        object.__setattr__(self, "mult", mult)
        object.__setattr__(self, "pairing", pairing)

    @property
    def rank(self) -> int:
        return len(self.divisor_names)

    def divisor(self, spec) -> "DivisorClass":
        """A divisor class from an expression string, a coefficient list, or a mapping."""
        if isinstance(spec, DivisorClass):
            _same_ring(self, spec.ring)
            return spec
        if isinstance(spec, str):
            return DivisorClass(self, tuple(_parse_linear(spec, self.divisor_names)))
        if isinstance(spec, dict):
            return DivisorClass(self, tuple(_from_mapping(spec, self.divisor_names)))
        return DivisorClass(self, _vec(spec, self.rank, "divisor"))

    def curve(self, spec) -> "CurveClass":
        if isinstance(spec, CurveClass):
            _same_ring(self, spec.ring)
            return spec
        if isinstance(spec, str):
            return CurveClass(self, tuple(_parse_linear(spec, self.curve_names)))
        if isinstance(spec, dict):
            return CurveClass(self, tuple(_from_mapping(spec, self.curve_names)))
        return CurveClass(self, _vec(spec, len(self.curve_names), "curve"))

    def divisor_basis(self) -> list["DivisorClass"]:
        return [self.basis_divisor(i) for i in range(self.rank)]

    def basis_divisor(self, i) -> "DivisorClass":
        if isinstance(i, str):
            i = self.divisor_names.index(i)
        v = [Fraction(0)] * self.rank
        v[i] = Fraction(1)
        return DivisorClass(self, tuple(v))

    def zero_divisor(self) -> "DivisorClass":
        return DivisorClass(self, (Fraction(0),) * self.rank)

    def zero_curve(self) -> "CurveClass":
        return CurveClass(self, (Fraction(0),) * len(self.curve_names))


def _from_mapping(mapping: dict, names: Sequence[str]) -> list[Fraction]:
    out = [Fraction(0)] * len(names)
    for key, value in mapping.items():
        if key not in names:
            raise ValueError(f"unknown generator {key!r}")
        out[names.index(key)] = as_rational(value)
    return out


def _same_ring(a: IntersectionRing, b: IntersectionRing) -> None:
    if a is not b and a != b:
        raise ValueError("classes belong to different intersection rings")


@dataclass(frozen=True)
class DivisorClass:
    ring: IntersectionRing
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.ring.rank:
            raise ValueError("divisor vector length does not match the divisor basis")

    def __add__(self, other):
        if not isinstance(other, DivisorClass):
            return NotImplemented
        _same_ring(self.ring, other.ring)
        return DivisorClass(self.ring, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        if not isinstance(other, DivisorClass):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return DivisorClass(self.ring, tuple(-a for a in self.coeffs))

    def __rmul__(self, scalar):
        if isinstance(scalar, (DivisorClass, CurveClass)):
            return NotImplemented
        c = as_rational(scalar)
        return DivisorClass(self.ring, tuple(c * a for a in self.coeffs))

    def __mul__(self, other):
        # D * D' is a curve class, D * C a degree; D * scalar scales.
        if isinstance(other, DivisorClass):
            return div_mul(self, other)
        if isinstance(other, CurveClass):
            return pair(self, other)
        return self.__rmul__(other)

    def __truediv__(self, scalar):
        return Fraction(1) / as_rational(scalar) * self

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __str__(self):
        return _format_linear(self.coeffs, self.ring.divisor_names)


@dataclass(frozen=True, eq=False)
class CurveClass:
    """
    A curve class given by coordinates over the ring's curve basis.

    Equality is numerical: two curve classes are equal when they have the
    same degree against every basis divisor.
    """

    ring: IntersectionRing
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.coeffs) != len(self.ring.curve_names):
            raise ValueError("curve vector length does not match the curve basis")

    def degrees(self) -> tuple[Fraction, ...]:
        return tuple(
            sum((p * c for p, c in zip(row, self.coeffs)), Fraction(0))
            for row in self.ring.pairing
        )

    def __eq__(self, other):
        if not isinstance(other, CurveClass):
            return NotImplemented
        if self.ring is not other.ring and self.ring != other.ring:
            return False
        return self.degrees() == other.degrees()

    def __hash__(self):
        return hash(self.degrees())

    def __add__(self, other):
        if not isinstance(other, CurveClass):
            return NotImplemented
        _same_ring(self.ring, other.ring)
        return CurveClass(self.ring, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        if not isinstance(other, CurveClass):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return CurveClass(self.ring, tuple(-a for a in self.coeffs))

    def __rmul__(self, other):
        if isinstance(other, DivisorClass):
            return pair(other, self)
        c = as_rational(other)
        return CurveClass(self.ring, tuple(c * a for a in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, DivisorClass):
            return pair(other, self)
        return self.__rmul__(other)

    def __truediv__(self, scalar):
        return Fraction(1) / as_rational(scalar) * self

    def is_zero(self) -> bool:
        """Numerically zero."""
        return not any(self.degrees())

    def __str__(self):
        return _format_linear(self.coeffs, self.ring.curve_names)


def _format_linear(coeffs, names) -> str:
    terms = []
    for c, n in zip(coeffs, names):
        if c == 0:
            continue
        mag = abs(c)
        body = n if mag == 1 else f"{mag}*{n}"
        terms.append(("- " if c < 0 else "+ ") + body)
    if not terms:
        return "0"
    s = " ".join(terms)
    return s[2:] if s.startswith("+ ") else "-" + s[2:]


def div_mul(a: DivisorClass, b: DivisorClass) -> CurveClass:
    """The curve class ``a . b``."""
    _same_ring(a.ring, b.ring)
    R = a.ring
    out = [Fraction(0)] * len(R.curve_names)
    for i, x in enumerate(a.coeffs):
        if not x:
            continue
        for j, y in enumerate(b.coeffs):
            if not y:
                continue
            for k, m in enumerate(R.mult[i][j]):
                out[k] += x * y * m
    return CurveClass(R, tuple(out))


def pair(d: DivisorClass, c: CurveClass) -> Fraction:
    """Degree of the intersection of a divisor with a curve."""
    _same_ring(d.ring, c.ring)
    return sum(
        (x * p * y for x, row in zip(d.coeffs, d.ring.pairing) if x
         for p, y in zip(row, c.coeffs) if y),
        Fraction(0),
    )


def triple(a: DivisorClass, b: DivisorClass, c: DivisorClass) -> Fraction:
    return pair(a, div_mul(b, c))


def validate(ring: IntersectionRing) -> list[str]:
    """
    List every violated symmetry or consistency constraint of ``ring``.

    An empty list means the ring is well formed.  Never raises.
    """
    problems = []
    n = ring.rank
    for i, j in itertools.combinations(range(n), 2):
        for k in range(n):
            a = _pair_vec(ring, k, ring.mult[i][j])
            b = _pair_vec(ring, k, ring.mult[j][i])
            if a != b:
                problems.append(
                    f"mult not symmetric: {ring.divisor_names[k]}.({ring.divisor_names[i]}"
                    f".{ring.divisor_names[j]}) = {a} but {ring.divisor_names[k]}."
                    f"({ring.divisor_names[j]}.{ring.divisor_names[i]}) = {b}"
                )
    for idx in itertools.combinations_with_replacement(range(n), 3):
        values = {
            perm: _pair_vec(ring, perm[0], ring.mult[perm[1]][perm[2]])
            for perm in set(itertools.permutations(idx))
        }
        if len(set(values.values())) > 1:
            label = ".".join(ring.divisor_names[i] for i in idx)
            detail = ", ".join(
                f"{ring.divisor_names[p[0]]}.({ring.divisor_names[p[1]]}.{ring.divisor_names[p[2]]})={v}"
                for p, v in sorted(values.items())
            )
            problems.append(f"triple product {label} not symmetric: {detail}")
    return problems


def _pair_vec(ring: IntersectionRing, i: int, curve: Sequence[Fraction]) -> Fraction:
    return sum((p * c for p, c in zip(ring.pairing[i], curve)), Fraction(0))


def _product_ring(names: Sequence[str], triples: dict, name: str) -> IntersectionRing:
    """
    Ring whose curve basis is the pairwise products ``D_i.D_j`` (i <= j), with
    pairings read off a table of triple products keyed by sorted index triples.
    """
    n = len(names)
    pairs = list(itertools.combinations_with_replacement(range(n), 2))
    curve_names = tuple(
        f"{names[i]}^2" if i == j else f"{names[i]}.{names[j]}" for i, j in pairs
    )
    mult = []
    for i in range(n):
        row = []
        for j in range(n):
            v = [0] * len(pairs)
            v[pairs.index((min(i, j), max(i, j)))] = 1
            row.append(v)
        mult.append(row)
    pairing = [
        [triples.get(tuple(sorted((k, i, j))), 0) for i, j in pairs] for k in range(n)
    ]
    return IntersectionRing(tuple(names), curve_names, mult, pairing, name=name)


def make_rank_one_ring(H3, name: str = "H") -> IntersectionRing:
    """Picard rank one: a single divisor ``name`` with ``name^3 = H3``."""
    H3 = as_rational(H3)
    if H3 <= 0:
        raise ValueError("H^3 must be positive")
    return _product_ring([name], {(0, 0, 0): H3}, name=f"rank-one(H^3={H3})")


def make_contraction_ring(L3, D3) -> IntersectionRing:
    """
    Divisors ``L`` (pulled back from the contracted variety) and ``D`` (the
    contracted divisor): ``L^3 = L3``, ``D^3 = D3``, all mixed products zero.
    """
    L3, D3 = as_rational(L3), as_rational(D3)
    if L3 <= 0:
        raise ValueError("L^3 must be positive")
    if D3 == 0:
        raise ValueError("D^3 must be non-zero")
    return _product_ring(
        ["L", "D"], {(0, 0, 0): L3, (1, 1, 1): D3}, name=f"contraction(L^3={L3}, D^3={D3})"
    )


def make_weierstrass_ring(KS2) -> IntersectionRing:
    """
    Weierstrass elliptic threefold over a del Pezzo surface of degree ``KS2``.

    Divisors ``Theta`` (the section) and ``F`` (pullback of K_S), with
    ``Theta^2 = Theta.F`` giving ``Theta^3 = Theta^2.F = Theta.F^2 = KS2``
    and ``F^3 = 0``.
    """
    KS2 = as_rational(KS2)
    if KS2 <= 0:
        raise ValueError("K_S^2 must be positive")
    if KS2.denominator != 1 or not 1 <= KS2 <= 9:
        warnings.warn(f"K_S^2 = {KS2} is not the degree of a del Pezzo surface", stacklevel=2)
    return _product_ring(
        ["Theta", "F"],
        {(0, 0, 0): KS2, (0, 0, 1): KS2, (0, 1, 1): KS2},
        name=f"weierstrass(K_S^2={KS2})",
    )


@dataclass(frozen=True)
class RingMorphism:
    """
    Linear pushforward between numerical rings, with optional pullback.

    ``div_push[a][b]`` is the coefficient of target divisor ``a`` in the image
    of source divisor ``b`` (columns are images); likewise for curves.  Point
    classes are multiplied by ``point_push``.
    """

    source: IntersectionRing
    target: IntersectionRing
    div_push: tuple[tuple[Fraction, ...], ...]
    curve_push: tuple[tuple[Fraction, ...], ...]
    point_push: Fraction = Fraction(1)
    div_pull: tuple[tuple[Fraction, ...], ...] | None = None
    curve_pull: tuple[tuple[Fraction, ...], ...] | None = None

    def push_divisor(self, d: DivisorClass) -> DivisorClass:
        _same_ring(d.ring, self.source)
        return DivisorClass(self.target, _apply(self.div_push, d.coeffs))

    def push_curve(self, c: CurveClass) -> CurveClass:
        _same_ring(c.ring, self.source)
        return CurveClass(self.target, _apply(self.curve_push, c.coeffs))

    def push_point(self, x) -> Fraction:
        return self.point_push * as_rational(x)

    def pull_divisor(self, d: DivisorClass) -> DivisorClass:
        if self.div_pull is None:
            raise ValueError("this morphism carries no pullback")
        _same_ring(d.ring, self.target)
        return DivisorClass(self.source, _apply(self.div_pull, d.coeffs))

    def pull_curve(self, c: CurveClass) -> CurveClass:
        if self.curve_pull is None:
            raise ValueError("this morphism carries no pullback")
        _same_ring(c.ring, self.target)
        return CurveClass(self.source, _apply(self.curve_pull, c.coeffs))


def _apply(matrix, vec) -> tuple[Fraction, ...]:
    return tuple(sum((m * x for m, x in zip(row, vec)), Fraction(0)) for row in matrix)


def _identity_block(rows: int, cols: int) -> tuple[tuple[Fraction, ...], ...]:
    return tuple(
        tuple(Fraction(1) if r == c else Fraction(0) for c in range(cols)) for r in range(rows)
    )


def blowup_of(base: IntersectionRing, exceptional: str = "E") -> tuple[IntersectionRing, RingMorphism]:
    """
    Blow up ``base`` at a point.

    The new ring has divisor basis ``f*D_i`` (keeping the base names) plus
    ``E``, and curve basis ``f*C_k`` plus ``E^2``.  Pulled-back classes
    intersect as on the base, every mixed product with ``E`` vanishes, and
    ``E^3 = 1``.  The returned morphism is ``f_*`` (with ``f^*`` attached):
    it kills ``E`` and ``E^2`` and is the identity on points.
    """
    if exceptional in base.divisor_names:
        raise ValueError(f"base ring already has a divisor named {exceptional!r}")
    e2 = f"{exceptional}^2"
    if e2 in base.curve_names:
        raise ValueError(f"base ring already has a curve named {e2!r}")
    n, c = base.rank, len(base.curve_names)
    zero_c = (Fraction(0),) * (c + 1)
    e2_vec = (Fraction(0),) * c + (Fraction(1),)
    mult = [[tuple(base.mult[i][j]) + (Fraction(0),) for j in range(n)] + [zero_c] for i in range(n)]
    mult.append([zero_c] * n + [e2_vec])
    pairing = [tuple(base.pairing[i]) + (Fraction(0),) for i in range(n)]
    pairing.append((Fraction(0),) * c + (Fraction(1),))
    ring = IntersectionRing(
        base.divisor_names + (exceptional,),
        base.curve_names + (e2,),
        mult,
        pairing,
        name=f"blowup({base.name or 'X'})",
    )
    div_push = tuple(row + (Fraction(0),) for row in _identity_block(n, n))
    curve_push = tuple(row + (Fraction(0),) for row in _identity_block(c, c))
    div_pull = _identity_block(n, n) + ((Fraction(0),) * n,)
    curve_pull = _identity_block(c, c) + ((Fraction(0),) * c,)
    f = RingMorphism(ring, base, div_push, curve_push, Fraction(1), div_pull, curve_pull)
    return ring, f


def make_blowup_ring(H3_base) -> tuple[IntersectionRing, RingMorphism]:
    """Blow-up of a Picard-rank-one threefold with ``H^3 = H3_base`` at a point."""
    return blowup_of(make_rank_one_ring(H3_base, "H"))
