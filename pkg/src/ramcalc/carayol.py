"""Level calculus for a datum (tower, m, level).

The datum's Herbrand function is the bi-Herbrand function when the level is
the minimal one, and otherwise the bi-Herbrand function raised to meet the
line x - (m - l)/p^r.
"""
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import floor
from typing import Optional

from .biherbrand import BiSpec, bi_herbrand, crossing_point
from .errors import ConstraintViolation, DomainError, UncoveredCase
from .herbrand import RamTower, wild_exponent
from .pl import line, pointwise_max, preimage
from .report import Report


class StandardCase(Enum):
    A = "A"
    B = "B"
    C = "C"
    NOT_STANDARD = "NotStandard"


class Star(Enum):
    ORDINARY = "Ordinary"
    EXCEPTIONAL = "Exceptional"


class Direction(Enum):
    A_TO_DELTA = "AtoDelta"
    DELTA_TO_A = "DeltaToA"


@dataclass(frozen=True)
class Forced:
    value: Fraction


@dataclass(frozen=True)
class LevelRange:
    lo: int
    hi: int

    def __contains__(self, l):
        return self.lo <= l <= self.hi


def level_range(p, m, w):
    if m % p == 0:
        raise DomainError("p divides m")
    w = Fraction(w)
    if m > 2 * w:
        return Forced(m - w)
    return LevelRange(0, m // 2)


def _divides(p, x):
    x = Fraction(x)
    return x.denominator == 1 and x.numerator % p == 0


def _even(x):
    return x.denominator == 1 and x.numerator % 2 == 0


def classify_standard(p, m, w):
    w = Fraction(w)
    if m > 2 * w:
        return StandardCase.A
    if m <= w:
        return StandardCase.B
    if _divides(p, w):
        return StandardCase.C
    return StandardCase.NOT_STANDARD


@dataclass(frozen=True)
class CarayolDatum:
    tower: RamTower
    m: int
    level: int

    def __post_init__(self):
        BiSpec(self.tower, self.m)
        if not isinstance(self.level, int) or self.level < 0:
            raise DomainError("level must be a non-negative integer")
        rng = level_range(self.p, self.m, self.w)
        if isinstance(rng, Forced):
            if self.level != rng.value:
                raise DomainError(f"m > 2w forces level = {rng.value}, got {self.level}")
        elif self.level not in rng:
            raise DomainError(f"level must lie in 0..{rng.hi}, got {self.level}")

    @property
    def p(self):
        return self.tower.p

    @property
    def r(self):
        return self.tower.r

    @property
    def q(self):
        return self.p ** self.r

    @property
    def sigma(self):
        return Fraction(self.m, self.q)

    @property
    def spec(self):
        return BiSpec(self.tower, self.m)

    @property
    def w(self):
        return wild_exponent(self.tower)


@dataclass(frozen=True)
class DatumInvariants:
    w: Fraction
    l_alpha: Fraction
    lambda_alpha: int
    lambda_prime_alpha: int
    c_alpha: Fraction
    epsilon_alpha: Fraction
    j_inf: Fraction
    standard_case: StandardCase
    star: Star


def datum_invariants(d):
    w = d.w
    l = max(Fraction(0), d.m - w)
    lam = floor(l / 2)
    lam_prime = max(floor((1 + l) / 2) - 1, 0)
    c = crossing_point(d.spec)
    eps = preimage(bi_herbrand(d.spec), Fraction(lam, d.q))
    j = d.tower.jumps[-1]
    star = Star.EXCEPTIONAL if (j == c and l > 0 and _even(l)) else Star.ORDINARY
    return DatumInvariants(w, l, lam, lam_prime, c, eps, j,
                           classify_standard(d.p, d.m, w), star)


def herbrand_of_datum(d, strict=False):
    """The datum's Herbrand function on [0, sigma].

    With strict=True, levels above the minimum also require a standard datum.
    """
    w = d.w
    base = max(Fraction(0), d.m - w)
    bi = bi_herbrand(d.spec)
    if d.level <= base:
        return bi
    if (d.level - d.m) % d.p == 0:
        raise UncoveredCase(f"level {d.level} is congruent to m = {d.m} mod {d.p}")
    if strict and classify_standard(d.p, d.m, w) is StandardCase.NOT_STANDARD:
        raise UncoveredCase("datum is not standard; re-present it first")
    return pointwise_max(bi, line(1, -Fraction(d.m - d.level, d.q), d.sigma))


@dataclass(frozen=True)
class Exactly:
    value: Fraction


@dataclass(frozen=True)
class StrictlyBelow:
    bound: Fraction


@dataclass(frozen=True)
class AtMost:
    bound: Fraction


def vary_parameter(p, m, w, l, d):
    """Lower the wild exponent to m - d and predict the new level."""
    w = Fraction(w)
    if not m < 2 * w:
        raise ConstraintViolation(f"needs m < 2w (m = {m}, w = {w})")
    if not (isinstance(d, int) and 1 <= d and 2 * d <= m):
        raise ConstraintViolation(f"needs 1 <= d <= m/2, got d = {d}")
    if not d > max(0, m - w):
        raise ConstraintViolation(f"needs d > max(0, m - w) = {max(0, m - w)}, got d = {d}")
    if (d - m) % p == 0:
        raise ConstraintViolation(f"needs d not congruent to m mod p (d = {d}, m = {m})")
    if not (0 <= l and 2 * l <= m):
        raise ConstraintViolation(f"level {l} outside 0..m/2")
    w_new = Fraction(m - d)
    if l < d:
        outcome = StrictlyBelow(Fraction(d)) if d % p == 0 else Exactly(Fraction(d))
    elif l > d:
        outcome = Exactly(Fraction(l))
    else:
        outcome = Exactly(Fraction(d)) if d % p == 0 else AtMost(Fraction(d))
    return w_new, outcome


@dataclass(frozen=True)
class AlreadyStandard:
    case: StandardCase


@dataclass(frozen=True)
class RaisableTo:
    cases: tuple = (StandardCase.B, StandardCase.C)


def standardize_target(p, m, w):
    case = classify_standard(p, m, w)
    if case is StandardCase.NOT_STANDARD:
        return RaisableTo()
    return AlreadyStandard(case)


def ultrametric_convert(d, a_value, direction):
    """Swap between the two ultrametrics through the bi-Herbrand function."""
    x = Fraction(a_value)
    if not 0 <= x <= d.sigma:
        raise DomainError(f"{x} outside [0, {d.sigma}]")
    psi = bi_herbrand(d.spec)
    if Direction(direction) is Direction.A_TO_DELTA:
        return preimage(psi, x)
    return psi(x)


@dataclass(frozen=True)
class BallRadii:
    max_a: Fraction
    max_delta: Fraction
    eps_equals_c: bool
    condition: Optional[str]


def ball_radii(d):
    inv = datum_invariants(d)
    cond = None
    if inv.j_inf < inv.c_alpha and _even(inv.l_alpha):
        cond = "a"
    elif inv.star is Star.EXCEPTIONAL:
        cond = "b"
    return BallRadii(Fraction(inv.lambda_alpha, d.q), inv.epsilon_alpha,
                     inv.epsilon_alpha == inv.c_alpha, cond)


def crossing_identities(d):
    """Position of c relative to the largest jump, and the matching identities."""
    inv = datum_invariants(d)
    q = d.q
    psi = bi_herbrand(d.spec)
    mid = (d.m + inv.w) / (2 * q)
    half = inv.l_alpha / (2 * q)
    rep = Report("crossing identities")
    rep.facts.update(c=inv.c_alpha, j_inf=inv.j_inf, w=inv.w)
    if inv.j_inf <= inv.c_alpha:
        rep.add("c = (m + w)/2p^r", inv.c_alpha == mid, f"{inv.c_alpha} vs {mid}")
        rep.add("Psi(c) = l/2p^r", psi(inv.c_alpha) == half, f"{psi(inv.c_alpha)} vs {half}")
    else:
        rep.add("c < (m + w)/2p^r", inv.c_alpha < mid, f"{inv.c_alpha} vs {mid}")
        rep.add("Psi(c) > l/2p^r", psi(inv.c_alpha) > half, f"{psi(inv.c_alpha)} vs {half}")
        rep.add("l/2p^r >= lambda/p^r", half >= Fraction(inv.lambda_alpha, q))
    return rep


def conformal_family_size(q, lam):
    return q ** lam
