"""Bi-Herbrand functions of a pair (tower, m) and their symmetry checks.

With sigma = m / p^r, the lower branch is p^-r psi, the upper branch is its
mirror image in x + y = sigma, and the bi-Herbrand function is their max.
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import DomainError, NoAdmissibleM
from .herbrand import RamTower, build_psi, wild_exponent
from .pl import (PLFun, compose, jump_table, pointwise_max, reflect, rescale,
                 solve_sum)
from .report import Report


@dataclass(frozen=True)
class BiSpec:
    tower: RamTower
    m: int

    def __post_init__(self):
        if not self.tower.separable:
            raise DomainError("tower must be separable")
        if self.tower.r < 1:
            raise DomainError("tower must have degree > 1")
        if not isinstance(self.m, int) or self.m < 1:
            raise DomainError("m must be a positive integer")
        if self.m % self.tower.p == 0:
            raise DomainError("p divides m")

    @property
    def p(self):
        return self.tower.p

    @property
    def r(self):
        return self.tower.r

    @property
    def sigma(self):
        return Fraction(self.m, self.p ** self.r)


@dataclass(frozen=True)
class BiBundle:
    psi_times: PLFun
    psi_plus: PLFun
    bi: PLFun
    c: Fraction
    jbar_infinity: Optional[Fraction]


def lower_branch(spec):
    """p^-r psi on [0, oo)."""
    return rescale(build_psi(spec.tower), Fraction(1, spec.p ** spec.r))


def bi_components(spec):
    low = lower_branch(spec)
    s = spec.sigma
    plus = reflect(low, s)
    times = low.restrict(s)
    j_inf = spec.tower.jumps[-1]
    jbar = s - low(j_inf) if j_inf < s else None
    return BiBundle(times, plus, pointwise_max(times, plus), solve_sum(low, s), jbar)


def bi_herbrand(spec):
    return bi_components(spec).bi


def crossing_point(spec):
    return solve_sum(lower_branch(spec), spec.sigma)


def structure_function(p, r, m):
    q = Fraction(p) ** r
    s = m / q
    return PLFun(m * (q - 1) / q ** 2, 1 / q, ((s, 1),))


def decomposition_function(psi, p, r, m):
    """Phi o Psi, with Psi continued by the identity beyond sigma."""
    if r < 1:
        raise DomainError("r must be at least 1")
    s = Fraction(m, p ** r)
    if psi.domain_end is not None and psi.domain_end < s:
        raise DomainError(f"psi is not defined up to {s}")
    if psi(s) != s:
        raise DomainError(f"psi({s}) = {psi(s)}, expected {s}")
    ext = psi.restrict(s).extend(1)
    return compose(structure_function(p, r, m), ext)


def _first_difference(f, g):
    for x in sorted({x for x, _ in f.vertices()} | {x for x, _ in g.vertices()}):
        if f(x) != g(x):
            return x
    return None


def verify_symmetry(f, sigma):
    """Is the graph of f on [0, sigma] symmetric in the line x + y = sigma?"""
    sigma = Fraction(sigma)
    rep = Report("symmetry")
    rep.facts["sigma"] = sigma
    if f.domain_end is not None and f.domain_end < sigma:
        rep.add("defined on [0, sigma]", False, f"domain ends at {f.domain_end}", f.domain_end)
        return rep
    if f.value_at_zero != 0:
        rep.add("f(0) = 0", False, f"f(0) = {f.value_at_zero}", Fraction(0))
        return rep
    if f(sigma) != sigma:
        rep.add("f(sigma) = sigma", False, f"f({sigma}) = {f(sigma)}", sigma)
        return rep
    fr = f.restrict(sigma)
    mirror = reflect(fr, sigma)
    x = _first_difference(fr, mirror)
    if x is None:
        rep.add("graph invariant under reflection", True)
    else:
        rep.add("graph invariant under reflection", False,
                f"at x = {x}: f = {fr(x)}, mirror = {mirror(x)}", x)
    return rep


def carayol_jump_checks(f, p, r, m):
    q = Fraction(p) ** r
    s = m / q
    rep = Report("jump relations")
    rep.facts["sigma"] = s
    if f.domain_end is None or f.domain_end < s:
        rep.add("defined on [0, sigma]", False)
        return rep
    f = f.restrict(s)
    jt = jump_table(f)
    rep.facts["jumps"] = [str(x) for x in jt.xs]
    rep.add("initial slope p^-r", f.initial_slope == 1 / q, f"{f.initial_slope}")
    rep.add("final slope p^r", f.final_slope == q, f"{f.final_slope}")
    if not len(jt):
        rep.add("has jumps", False)
        return rep
    a, z = jt.xs[0], jt.xs[-1]
    rep.add("last jump z = sigma - a/p^r", z == s - a / q, f"a = {a}, z = {z}, sigma - a/p^r = {s - a / q}")
    rep.add("Psi(a) = a/p^r", f(a) == a / q, f"Psi(a) = {f(a)}")
    try:
        c = solve_sum(f, s)
    except DomainError:
        rep.add("crossing point exists", False)
        return rep
    rep.facts["c"] = c
    odd = len(jt) % 2 == 1
    rep.add("c is a jump iff the jump count is odd", (c in jt.xs) == odd,
            f"{len(jt)} jumps, c = {c}")
    if odd:
        rep.add("c is the middle jump", jt.xs[len(jt) // 2] == c)
    prod = Fraction(1)
    for h in jt.heights:
        prod *= h
    rep.add("height product p^2r", prod == q * q, f"{prod}")
    return rep


@dataclass(frozen=True)
class Branch:
    reading: str
    a: int
    m: int
    c: Fraction
    z: Fraction
    three_c: Fraction
    z_half_integral: bool
    three_c_half_integral: bool
    true_jumps: tuple

    @property
    def consistent(self):
        return self.z_half_integral and self.three_c_half_integral

    @property
    def jumps(self):
        return self.a, self.c, self.z


def _half_not_whole(x):
    return x.denominator == 2


def _c_equation(m, a):
    return Fraction(m + a, 6)


def _c_printed(m, a):
    return Fraction(m - 2 * a, 6)


def _admissible(m, a, b, cfun):
    c = cfun(m, a)
    return m % 2 == 1 and m % 3 != (2 * a) % 3 and m % 4 == (a + 2) % 4 and a < c < b


def _branch(reading, m, a, b, cfun):
    c = cfun(m, a)
    z = Fraction(m - a, 4)
    spec = BiSpec(RamTower(2, ((a, 1), (b, 1))), m)
    true = tuple(jump_table(bi_herbrand(spec)).xs)
    return Branch(reading, a, m, c, z, 3 * c, _half_not_whole(z), _half_not_whole(3 * c), true)


@dataclass(frozen=True)
class Scenario97:
    a: int
    b: Fraction
    equation: Branch
    printed: Branch
    equation_at_printed_m: Branch


def scenario_97(a, b):
    """Least odd m for the two-layer dyadic tower [(a,1), (b,1)] under two readings of c.

    The 'equation' reading solves 4c + psi(c) = m on (a, b), giving
    c = (m + a)/6. The 'printed' reading uses c = (m - 2a)/6.
    """
    b = Fraction(b)
    if not isinstance(a, int) or a < 1 or a % 2 == 0:
        raise DomainError("a must be an odd positive integer")
    if b <= a:
        raise DomainError("need b > a")
    found = {}
    for name, cfun, bound in (("equation", _c_equation, 6 * b - a),
                              ("printed", _c_printed, 6 * b + 2 * a)):
        ms = [m for m in range(1, int(bound) + 1) if _admissible(m, a, b, cfun)]
        if not ms:
            raise NoAdmissibleM(f"no m with {a} < c < {b} under the {name} reading")
        found[name] = (ms[0], cfun)
    eq = _branch("equation", found["equation"][0], a, b, _c_equation)
    pr = _branch("printed", found["printed"][0], a, b, _c_printed)
    cross = _branch("equation", pr.m, a, b, _c_equation)
    return Scenario97(a, b, eq, pr, cross)


def parity_case(spec):
    """'even' when the largest jump lies below c, else 'odd'."""
    return "even" if spec.tower.jumps[-1] < crossing_point(spec) else "odd"


def odd_case_threshold(spec):
    q = spec.p ** spec.r
    return Fraction(spec.m * (q - 1), q + 1)


def middle_piece_offset(spec):
    """w / p^r, the offset of the slope-1 middle piece in the even case."""
    return wild_exponent(spec.tower) / spec.p ** spec.r
