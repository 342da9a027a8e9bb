"""Representation-side profiles: a Swan exponent plus a Herbrand function.

Covers the inducing tower below the crossing point, restriction tables built
from the decomposition function, and one-step descent/ascent along the
first jump.
"""
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Optional

from ._util import is_prime, log_p
from .biherbrand import carayol_jump_checks, decomposition_function, verify_symmetry
from .errors import (DomainError, InconsistentLayer, MalformedProfile,
                     NotIntegralFirstJump, NotSingleJump, TameConflict,
                     TooFewJumps)
from .herbrand import RamTower, build_psi, elementary_resolution, wild_exponent
from .pl import (PLFun, compose, identity, jump_table, reflect, rescale,
                 solve_sum, splice)
from .report import Report


@dataclass(frozen=True)
class GaloisProfile:
    p: int
    r: int
    sw: int
    psi: PLFun

    def __post_init__(self):
        problems = profile_problems(self.p, self.r, self.sw, self.psi)
        if problems:
            raise MalformedProfile("; ".join(problems))
        object.__setattr__(self, "psi", self.psi.restrict(self.sigma))

    @property
    def q(self):
        return self.p ** self.r

    @property
    def sigma(self):
        return Fraction(self.sw, self.q)

    def jumps(self):
        return jump_table(self.psi)


@dataclass(frozen=True)
class Character:
    sw: Fraction


def profile_problems(p, r, sw, psi):
    """Human-readable list of violated profile invariants (empty if valid)."""
    if not is_prime(p):
        return [f"p = {p} is not prime"]
    if not isinstance(r, int) or r < 1:
        return ["r must be a positive integer"]
    if not isinstance(sw, int) or sw < 1:
        return ["sw must be a positive integer"]
    if sw % p == 0:
        return ["p divides sw"]
    s = Fraction(sw, p ** r)
    sym = verify_symmetry(psi, s)
    out = [f"functional equation: {c.detail or c.name}" for c in sym.failures()]
    if out:
        return out
    jc = carayol_jump_checks(psi, p, r, sw)
    return [f"{c.name}: {c.detail}" for c in jc.failures()]


def profile_from_jumps(p, r, sw, jumps):
    """Build the profile with initial slope p^-r and the given (x, height) jumps."""
    slope = Fraction(1, p ** r)
    breaks = []
    for x, h in jumps:
        slope *= Fraction(h)
        breaks.append((Fraction(x), slope))
    return GaloisProfile(p, r, sw, PLFun(0, Fraction(1, p ** r), tuple(breaks),
                                         Fraction(sw, p ** r)))


@dataclass(frozen=True)
class DecompositionReport:
    jumps: object
    c_sigma: Fraction
    c_is_jump: bool
    w_c: Fraction
    dim_core: int
    L_tower: RamTower
    sw_core: Fraction
    core_jump: Optional[Fraction]
    centric_degree: int


def analyze_profile(g):
    jt = g.jumps()
    c = solve_sum(g.psi, g.sigma)
    w_c = jt.height_at(c)
    is_jump = c in jt.xs
    if is_jump:
        k = log_p(w_c, g.p)
        if k is None or k % 2:
            raise MalformedProfile(f"height {w_c} at c = {c} is not an even power of {g.p}")
        dim = g.p ** (k // 2)
    else:
        dim = 1
    low = rescale(g.psi, g.q).restrict(c)
    tower = elementary_resolution(low, g.p)
    if tower.degree * dim != g.q:
        raise MalformedProfile(f"inducing degree {tower.degree} times core dimension {dim} is not {g.q}")
    sw_core = g.sw - wild_exponent(tower) * dim
    core_jump = build_psi(tower)(c) if dim > 1 else None
    if core_jump is not None:
        # the core is a single-jump profile of dimension dim
        if core_jump != Fraction(sw_core) / (1 + dim):
            raise MalformedProfile(f"core jump {core_jump} inconsistent with core Swan exponent {sw_core}")
    return DecompositionReport(jt, c, is_jump, w_c, dim, tower, sw_core, core_jump, dim * dim)


def character_group_bound(rep):
    """Upper bound dim_core^2 on the order of the twisting character group.

    Only meaningful when c is a jump; the order itself is not visible in a profile.
    """
    return rep.dim_core ** 2 if rep.c_is_jump else None


@dataclass(frozen=True)
class RestrictionRow:
    x: Fraction
    d: Fraction
    d_plus: Fraction
    w: Fraction
    is_jump: bool
    note: str = ""


def restriction_table(g):
    """Rows at every jump and every midpoint between consecutive jumps."""
    sigma_fn = decomposition_function(g.psi, g.p, g.r, g.sw)
    scale = g.q * g.q
    jt = g.jumps()
    xs = jt.xs
    c = solve_sum(g.psi, g.sigma)
    points = list(xs)
    points += [(a + b) / 2 for a, b in zip(xs, xs[1:])]
    rows = []
    for x in sorted(points):
        d = scale * sigma_fn.slope_left(x)
        dp = scale * sigma_fn.slope_right(x)
        jump = x in xs
        note = ""
        if jump and x < c:
            note = "restriction to R+(x) is a multiplicity-free sum of irreducibles"
        elif jump and x > c:
            note = "restriction to R(x) is a sum of characters"
        elif jump:
            note = "crossing point"
        rows.append(RestrictionRow(x, d, dp, dp / d, jump, note))
    return rows


def _layer_tower(p, a, h):
    s = log_p(h, p)
    return RamTower(p, ((a, s),))


def descend_once(g):
    """Peel off the first jump: returns ((a, h), inner)."""
    jt = g.jumps()
    if len(jt) < 2:
        raise TooFewJumps("single-jump profiles are terminal cores")
    a, h = jt[0].x, jt[0].height
    if a.denominator != 1:
        raise NotIntegralFirstJump(f"first jump {a} is not an integer; tame-lift first")
    k = log_p(h, g.p)
    r1 = g.r - k
    sw1 = g.sw - (h - 1) * a * g.q / h
    z = jt.xs[-1]
    if sw1.denominator != 1:
        raise MalformedProfile(f"inner Swan exponent {sw1} is not an integer")
    sw1 = int(sw1)
    inner = [(e.x, e.height) for e in jt if e.x not in (a, z)]
    if r1 == 0:
        if inner:
            raise MalformedProfile("jumps remain after descending to a character")
        return (int(a), int(h)), Character(Fraction(sw1))
    psi_e1 = build_psi(_layer_tower(g.p, a, h))
    moved = [(psi_e1(x), ht) for x, ht in inner]
    # the inner profile must close up at its own endpoint
    slope = Fraction(1, g.p ** r1)
    breaks = []
    for x, ht in moved:
        slope *= ht
        breaks.append((x, slope))
    s1 = Fraction(sw1, g.p ** r1)
    raw = PLFun(0, Fraction(1, g.p ** r1), tuple(b for b in breaks if b[0] < s1), s1)
    if raw(s1) != s1 or len(raw.breaks) != len(breaks):
        raise MalformedProfile(f"inner function does not close at {s1}")
    try:
        inner_profile = GaloisProfile(g.p, r1, sw1, raw)
    except MalformedProfile as exc:
        raise MalformedProfile(f"inner profile invalid: {exc}") from None
    return (int(a), int(h)), inner_profile


def ascend_once(layer, inner, r):
    """Inverse of descend_once."""
    a, h = Fraction(layer[0]), Fraction(layer[1])
    if isinstance(inner, Character):
        p = None
        inner_psi, sw_in = identity(), Fraction(inner.sw)
    else:
        p = inner.p
        inner_psi, sw_in = inner.psi.extend(1), Fraction(inner.sw)
    if p is None:
        p = _prime_of(h)
    k = log_p(h, p)
    if k is None or k < 1 or k > r:
        raise InconsistentLayer(f"height {h} is not a suitable power of {p}")
    q = Fraction(p) ** r
    sw = sw_in + (h - 1) * a * q / h
    if sw.denominator != 1 or sw.numerator % p == 0:
        raise InconsistentLayer(f"reconstructed Swan exponent {sw} is not an integer prime to {p}")
    sigma = sw / q
    lower = rescale(compose(inner_psi, build_psi(_layer_tower(p, a, h))), 1 / h)
    try:
        c = solve_sum(lower, sigma)
        psi = splice(lower, reflect(lower, sigma), c)
        g = GaloisProfile(p, r, int(sw), psi)
        back = descend_once(g)
    except (DomainError, MalformedProfile, TooFewJumps, NotIntegralFirstJump) as exc:
        raise InconsistentLayer(f"reconstruction failed: {exc}") from None
    if back != ((int(a), int(h)), inner):
        raise InconsistentLayer("reconstruction does not descend back to the given data")
    return g


def _prime_of(h):
    h = int(h)
    for p in range(2, h + 1):
        if h % p == 0:
            return p
    raise InconsistentLayer(f"height {h} is not a prime power")


def h_singular_check(g):
    jt = g.jumps()
    if len(jt) != 1:
        raise NotSingleJump(f"profile has {len(jt)} jumps")
    a = jt[0].x
    rep = Report("single-jump core")
    rep.add("a = sw/(1 + p^r)", a == Fraction(g.sw, 1 + g.q), f"a = {a}")
    pair_sw = (g.q * g.q - 1) * a
    rep.add("sw of the pair = (p^r - 1) sw", pair_sw == (g.q - 1) * g.sw, f"{pair_sw}")
    rep.add("height p^2r", jt[0].height == g.q * g.q)
    rep.facts.update(a=a, pair_swan=pair_sw, centric_degree=g.q * g.q)
    return rep


def tame_integrality(jumps):
    xs = jumps.xs if hasattr(jumps, "xs") else [Fraction(x) for x in jumps]
    return [(x, x.denominator) for x in xs]


def tame_lift_profile(g, e):
    """Profile after base change to a tame extension of ramification index e."""
    if not isinstance(e, int) or e < 1:
        raise DomainError("e must be a positive integer")
    if gcd(e, g.p) != 1:
        raise TameConflict(f"p = {g.p} divides e = {e}")
    return GaloisProfile(g.p, g.r, g.sw * e, rescale(g.psi, e, e))


def descent_chain(g):
    """Descend repeatedly; returns the list of layers and the terminal object."""
    layers = []
    cur = g
    while isinstance(cur, GaloisProfile) and len(cur.jumps()) >= 2:
        layer, cur = descend_once(cur)
        layers.append(layer)
    return layers, cur
