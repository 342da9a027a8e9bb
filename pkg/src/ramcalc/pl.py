"""Exact piecewise-linear, strictly increasing functions on [0, end] or [0, oo).

A function is stored as its value at 0, its initial slope and a list of
(x, slope_after) breaks. Construction canonicalizes (merges equal adjacent
slopes), so structural equality is functional equality.
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Optional

from .errors import DomainError

Rat = Fraction


def _q(x):
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class PLFun:
    value_at_zero: Fraction
    initial_slope: Fraction
    breaks: tuple = ()
    domain_end: Optional[Fraction] = None

    def __post_init__(self):
        v0 = _q(self.value_at_zero)
        s0 = _q(self.initial_slope)
        end = None if self.domain_end is None else _q(self.domain_end)
        if s0 <= 0:
            raise DomainError(f"slope must be positive, got {s0}")
        if end is not None and end <= 0:
            raise DomainError(f"domain end must be positive, got {end}")
        merged = []
        prev_x, prev_s = Fraction(0), s0
        for x, s in self.breaks:
            x, s = _q(x), _q(s)
            if x <= prev_x:
                raise DomainError(f"break abscissae must increase and be > 0 (at {x})")
            if end is not None and x >= end:
                raise DomainError(f"break {x} not inside domain [0, {end}]")
            if s <= 0:
                raise DomainError(f"slope must be positive, got {s} at {x}")
            prev_x = x
            if s != prev_s:
                merged.append((x, s))
                prev_s = s
        object.__setattr__(self, "value_at_zero", v0)
        object.__setattr__(self, "initial_slope", s0)
        object.__setattr__(self, "breaks", tuple(merged))
        object.__setattr__(self, "domain_end", end)

    # -- evaluation ------------------------------------------------------
    def __call__(self, x):
        return evaluate(self, x)

    @property
    def bounded(self):
        return self.domain_end is not None

    @property
    def final_slope(self):
        return self.breaks[-1][1] if self.breaks else self.initial_slope

    def slopes(self):
        return [self.initial_slope] + [s for _, s in self.breaks]

    def break_xs(self):
        return [x for x, _ in self.breaks]

    def vertices(self):
        """(x, f(x)) at 0, every break, and the domain end if bounded."""
        pts = [(Fraction(0), self.value_at_zero)]
        y, px, s = self.value_at_zero, Fraction(0), self.initial_slope
        for x, s_next in self.breaks:
            y += s * (x - px)
            pts.append((x, y))
            px, s = x, s_next
        if self.domain_end is not None:
            pts.append((self.domain_end, y + s * (self.domain_end - px)))
        return pts

    def end_value(self):
        return None if self.domain_end is None else self(self.domain_end)

    def slope_left(self, x):
        x = _q(x)
        if x <= 0:
            raise DomainError("no left slope at 0")
        s = self.initial_slope
        for bx, bs in self.breaks:
            if bx >= x:
                break
            s = bs
        return s

    def slope_right(self, x):
        x = _q(x)
        if self.domain_end is not None and x >= self.domain_end:
            raise DomainError("no right slope at the domain end")
        s = self.initial_slope
        for bx, bs in self.breaks:
            if bx > x:
                break
            s = bs
        return s

    def restrict(self, end):
        end = _q(end)
        if self.domain_end is not None and end > self.domain_end:
            raise DomainError(f"cannot restrict to {end} beyond {self.domain_end}")
        return PLFun(self.value_at_zero, self.initial_slope,
                     tuple(b for b in self.breaks if b[0] < end), end)

    def extend(self, slope):
        """Unbounded extension continuing with `slope` past the domain end."""
        if self.domain_end is None:
            return self
        return PLFun(self.value_at_zero, self.initial_slope,
                     self.breaks + ((self.domain_end, _q(slope)),))

    def __repr__(self):
        br = ", ".join(f"({x}, {s})" for x, s in self.breaks)
        end = "" if self.domain_end is None else f", end={self.domain_end}"
        return f"PLFun(f(0)={self.value_at_zero}, slope={self.initial_slope}, breaks=[{br}]{end})"


class Jump(NamedTuple):
    x: Fraction
    left: Fraction
    right: Fraction
    height: Fraction


@dataclass(frozen=True)
class JumpTable:
    entries: tuple = ()

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    @property
    def xs(self):
        return [e.x for e in self.entries]

    @property
    def heights(self):
        return [e.height for e in self.entries]

    def height_at(self, x):
        for e in self.entries:
            if e.x == x:
                return e.height
        return Fraction(1)


def identity(end=None):
    return PLFun(0, 1, (), end)


def line(slope, intercept=0, end=None):
    return PLFun(intercept, slope, (), end)


def from_points(points, tail_slope=None, bounded=True):
    """Build from sorted vertices. If not bounded, continue with tail_slope."""
    pts = sorted(set((_q(x), _q(y)) for x, y in points))
    if pts[0][0] != 0:
        raise DomainError("points must start at x = 0")
    slopes = []
    for (x0, y0), (x1, y1) in zip(pts, pts[1:]):
        slopes.append((y1 - y0) / (x1 - x0))
    if not bounded:
        if tail_slope is None:
            raise DomainError("unbounded function needs a tail slope")
        slopes.append(_q(tail_slope))
        end = None
    else:
        if len(pts) < 2:
            raise DomainError("bounded function needs at least two points")
        end = pts[-1][0]
    breaks = tuple((pts[i][0], slopes[i]) for i in range(1, len(slopes)))
    return PLFun(pts[0][1], slopes[0], breaks, end)


def evaluate(f, x):
    x = _q(x)
    if x < 0 or (f.domain_end is not None and x > f.domain_end):
        raise DomainError(f"{x} outside the domain of {f!r}")
    y, px, s = f.value_at_zero, Fraction(0), f.initial_slope
    for bx, bs in f.breaks:
        if x <= bx:
            break
        y += s * (bx - px)
        px, s = bx, bs
    return y + s * (x - px)


def preimage(f, y):
    """The unique x with f(x) = y."""
    y = _q(y)
    pts = f.vertices()
    if y < pts[0][1]:
        raise DomainError(f"{y} below the range of {f!r}")
    for (x0, y0), (x1, y1) in zip(pts, pts[1:]):
        if y <= y1:
            return x0 + (y - y0) * (x1 - x0) / (y1 - y0)
    if f.domain_end is not None:
        raise DomainError(f"{y} above the range of {f!r}")
    x0, y0 = pts[-1]
    return x0 + (y - y0) / f.final_slope


def compose(g, f):
    """g o f."""
    v0 = f.value_at_zero
    if v0 < 0:
        raise DomainError("range of f leaves [0, oo)")
    if g.domain_end is not None:
        if f.domain_end is None or f.end_value() > g.domain_end:
            raise DomainError("range of f exceeds the domain of g")
    xs = {Fraction(0)} | set(f.break_xs())
    top = f.end_value()
    for bx in g.break_xs():
        if bx > v0 and (top is None or bx < top):
            xs.add(preimage(f, bx))
    if f.domain_end is not None:
        xs.add(f.domain_end)
    xs = sorted(xs)
    pts = [(x, g(f(x))) for x in xs]
    if f.domain_end is not None:
        return from_points(pts)
    return from_points(pts, g.final_slope * f.final_slope, bounded=False)


def invert(f):
    if f.value_at_zero != 0:
        raise DomainError("inverse only representable when f(0) = 0")
    pts = [(y, x) for x, y in f.vertices()]
    if f.domain_end is not None:
        return from_points(pts)
    return from_points(pts, 1 / f.final_slope, bounded=False)


def values_sorted(f, xs):
    """f at each point of the increasing sequence xs, in one sweep."""
    out = []
    y, px, sl = f.value_at_zero, Fraction(0), f.initial_slope
    it = iter(f.breaks)
    nxt = next(it, None)
    for x in xs:
        while nxt is not None and nxt[0] < x:
            y += sl * (nxt[0] - px)
            px, sl = nxt
            nxt = next(it, None)
        out.append(y + sl * (x - px))
    return out


def pointwise_max(f, g):
    if f.domain_end != g.domain_end:
        raise DomainError("pointwise max needs equal domains")
    xs = sorted({Fraction(0)} | set(f.break_xs()) | set(g.break_xs())
                | ({f.domain_end} if f.bounded else set()))
    fv, gv = values_sorted(f, xs), values_sorted(g, xs)
    pts = []
    for i, x in enumerate(xs):
        if i:
            d0, d1 = fv[i - 1] - gv[i - 1], fv[i] - gv[i]
            if d0 * d1 < 0:
                x0 = xs[i - 1]
                c = x0 + d0 * (x - x0) / (d0 - d1)
                pts.append((c, fv[i - 1] + (fv[i] - fv[i - 1]) * (c - x0) / (x - x0)))
        pts.append((x, max(fv[i], gv[i])))
    if f.bounded:
        return from_points(pts)
    xl = xs[-1]
    d = fv[-1] - gv[-1]
    ds = f.final_slope - g.final_slope
    if d * ds < 0:
        c = xl - d / ds
        pts.append((c, f(c)))
    tail = f.final_slope if (ds > 0 or (ds == 0 and d >= 0)) else g.final_slope
    return from_points(pts, tail, bounded=False)


def reflect(f, s):
    """Mirror the graph of f in the line x + y = s; result lives on [0, s]."""
    s = _q(s)
    if s <= 0:
        raise DomainError("reflection line needs s > 0")
    if f.value_at_zero > 0:
        raise DomainError("f(0) > 0: reflection leaves [0, s]")
    top = f.end_value()
    if top is not None and top < s:
        raise DomainError(f"f only reaches {top} < {s}: reflection leaves [0, s]")
    pts = [(Fraction(0), s - preimage(f, s)), (s, s - preimage(f, 0))]
    for v, fv in f.vertices():
        if 0 < fv < s:
            pts.append((s - fv, s - v))
    return from_points(pts)


def jump_table(f, open_upper=None):
    entries = []
    left = f.initial_slope
    for x, right in f.breaks:
        if open_upper is not None and x >= open_upper:
            break
        entries.append(Jump(x, left, right, right / left))
        left = right
    return JumpTable(tuple(entries))


def splice(f, g, at):
    """f on [0, at] followed by g on [at, ...]."""
    at = _q(at)
    if f(at) != g(at):
        raise DomainError(f"pieces disagree at {at}: {f(at)} vs {g(at)}")
    pts = [(x, y) for x, y in f.vertices() if x < at] + [(at, f(at))]
    pts += [(x, y) for x, y in g.vertices() if x > at]
    if g.bounded:
        return from_points(pts)
    return from_points(pts, g.final_slope, bounded=False)


def rescale(f, vertical=1, horizontal=1):
    """x -> vertical * f(x / horizontal)."""
    v, h = _q(vertical), _q(horizontal)
    if v <= 0 or h <= 0:
        raise DomainError("rescaling factors must be positive")
    end = None if f.domain_end is None else f.domain_end * h
    return PLFun(v * f.value_at_zero, f.initial_slope * v / h,
                 tuple((x * h, sl * v / h) for x, sl in f.breaks), end)


def solve_sum(f, s):
    """The unique x with x + f(x) = s."""
    s = _q(s)
    pts = f.vertices()
    if pts[0][1] > s:
        raise DomainError(f"x + f(x) exceeds {s} already at 0")
    for (x0, y0), (x1, y1) in zip(pts, pts[1:]):
        if x1 + y1 >= s:
            return x0 + (s - x0 - y0) * (x1 - x0) / ((x1 + y1) - (x0 + y0))
    if f.bounded:
        raise DomainError(f"x + f(x) never reaches {s}")
    x0, y0 = pts[-1]
    return x0 + (s - x0 - y0) / (1 + f.final_slope)


def is_convex(f):
    sl = f.slopes()
    return all(a < b for a, b in zip(sl, sl[1:]))
