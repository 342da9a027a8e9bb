"""Herbrand functions of totally ramified towers.

Layer jumps are stored in base-field coordinates, i.e. as the abscissae of
the breaks of psi. A layer (j, s) multiplies the slope by p**s after j.
"""
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import NamedTuple

from ._util import is_prime, log_p
from .errors import (DomainError, EmptyTower, InfiniteWildExponent,
                     NotHerbrandShaped, TameConflict)
from .pl import PLFun, invert

INFINITE = float("inf")


class Layer(NamedTuple):
    jump: Fraction
    s: int


@dataclass(frozen=True)
class RamTower:
    p: int
    layers: tuple = ()
    insep_s: int = 0

    def __post_init__(self):
        if not is_prime(self.p):
            raise DomainError(f"p = {self.p} is not prime")
        if not isinstance(self.insep_s, int) or self.insep_s < 0:
            raise DomainError("insep_s must be a non-negative integer")
        layers = []
        prev = Fraction(0)
        for j, s in self.layers:
            j = Fraction(j)
            if j <= prev:
                raise DomainError(f"jumps must be positive and increasing (at {j})")
            if not isinstance(s, int) or s < 1:
                raise DomainError(f"layer exponent must be a positive integer, got {s}")
            layers.append(Layer(j, s))
            prev = j
        object.__setattr__(self, "layers", tuple(layers))

    @property
    def r(self):
        return sum(l.s for l in self.layers) + self.insep_s

    @property
    def degree(self):
        return self.p ** self.r

    @property
    def separable(self):
        return self.insep_s == 0

    @property
    def jumps(self):
        return [l.jump for l in self.layers]

    def absolutely_wild(self):
        """Least jump integral (vacuous for an empty tower)."""
        return not self.layers or self.layers[0].jump.denominator == 1


def build_psi(t):
    breaks, total = [], 0
    for j, s in t.layers:
        total += s
        breaks.append((j, Fraction(t.p) ** total))
    return PLFun(0, 1, tuple(breaks))


def build_phi(t):
    return invert(build_psi(t))


def j_infinity(t):
    if t.degree == 1:
        raise EmptyTower("degree-1 tower has no largest jump")
    if t.insep_s > 0:
        return INFINITE
    return t.layers[-1].jump


def wild_exponent(t):
    if t.insep_s > 0:
        return INFINITE
    if not t.layers:
        return Fraction(0)
    j = t.layers[-1].jump
    return t.degree * j - build_psi(t)(j)


def elementary_resolution(f, p):
    if f.value_at_zero != 0:
        raise NotHerbrandShaped("f(0) must be 0")
    if f.initial_slope != 1:
        raise NotHerbrandShaped("initial slope must be 1")
    layers, prev = [], Fraction(1)
    for x, s in f.breaks:
        k = log_p(s / prev, p)
        if k is None or k < 1:
            raise NotHerbrandShaped(f"slope ratio {s / prev} at {x} is not a positive power of {p}")
        layers.append((x, k))
        prev = s
    return RamTower(p, tuple(layers))


def tame_lift_tower(t, e):
    if not isinstance(e, int) or e < 1:
        raise DomainError("ramification index must be a positive integer")
    if gcd(e, t.p) != 1:
        raise TameConflict(f"p = {t.p} divides e = {e}")
    return RamTower(t.p, tuple((e * j, s) for j, s in t.layers), t.insep_s)


def norm_swan(t, k):
    """psi(k), flagged exact unless k is a jump (then only an upper bound)."""
    k = Fraction(k)
    if k < 1:
        raise DomainError("k must be >= 1")
    return build_psi(t)(k), k not in t.jumps


def swan_induced(t, sw_tau, dim_tau, f_res=1):
    w = wild_exponent(t)
    if w == INFINITE:
        raise InfiniteWildExponent("tower has an inseparable part")
    return (Fraction(sw_tau) + w * dim_tau) * f_res


def split_tower(t, k):
    """Split after k layers: (low, high') with high' in low's upper coordinates."""
    low = RamTower(t.p, t.layers[:k])
    psi_low = build_psi(low)
    high = RamTower(t.p, tuple((psi_low(j), s) for j, s in t.layers[k:]), t.insep_s)
    return low, high



def char_p_congruence_ok(t):
    """Equal-characteristic test: the wild exponent must not be divisible by p."""
    w = wild_exponent(t)
    if w == INFINITE or w.denominator != 1:
        return True
    return w == 0 or w.numerator % t.p != 0
