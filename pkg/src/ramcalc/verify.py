"""Full property suites, one per input kind. Each returns a Report."""
from fractions import Fraction

from . import biherbrand as bh
from . import carayol as cy
from . import galois as gl
from . import herbrand as hb
from ._util import is_prime, log_p
from .errors import RamificationError
from .pl import compose, is_convex, jump_table
from .report import Report


def tower_report(t):
    rep = Report("tower laws")
    psi = hb.build_psi(t)
    rep.add("slopes are powers of p", all(log_p(v, t.p) is not None for v in psi.slopes()))
    if not t.separable:
        rep.add("inseparable: wild exponent infinite", hb.wild_exponent(t) == hb.INFINITE)
        return rep
    rep.add("resolution round trip", hb.elementary_resolution(psi, t.p) == t)
    if not t.layers:
        return rep
    w, j, q = hb.wild_exponent(t), t.layers[-1].jump, t.degree
    upper, lower = (q - 1) * j, Fraction(q, t.p) * (t.p - 1) * j
    rep.add("upper bound (p^r - 1) j >= w", upper >= w, f"{upper} >= {w}")
    rep.add("lower bound w >= p^(r-1)(p-1) j", w >= lower, f"{w} >= {lower}")
    rep.add("upper bound sharp iff single layer", (upper == w) == (len(t.layers) == 1))
    for k in range(1, len(t.layers)):
        low, high = hb.split_tower(t, k)
        rep.add(f"composition splits after layer {k}",
                compose(hb.build_psi(high), hb.build_psi(low)) == psi)
        wt = high.degree * hb.wild_exponent(low) + hb.wild_exponent(high)
        rep.add(f"wild exponent splits after layer {k}", wt == w, f"{wt} vs {w}")
    return rep


def _interior_samples(f):
    xs = [x for x, _ in f.vertices()]
    mids = [(a + b) / 2 for a, b in zip(xs, xs[1:])]
    return [x for x in xs + mids if 0 < x < f.domain_end]


def shape_report(f, p, r, m, title="function shape"):
    """Symmetry, jump relations, convexity and 0 < f(x) < x."""
    rep = Report(title)
    rep.extend(bh.verify_symmetry(f, Fraction(m, p ** r)))
    if not rep.passed:
        return rep
    rep.extend(bh.carayol_jump_checks(f, p, r, m))
    rep.add("convex", is_convex(f))
    rep.add("0 < f(x) < x inside", all(0 < f(x) < x for x in _interior_samples(f)))
    return rep


def decomposition_report(f, p, r, m):
    """Inverting the structure function recovers f (it is affine below sigma)."""
    rep = Report("decomposition function")
    q = p ** r
    s = Fraction(m, q)
    sig = bh.decomposition_function(f, p, r, m)
    phi0 = bh.structure_function(p, r, m).value_at_zero
    xs = [x for x, _ in f.vertices()]
    rep.add("structure function inverts the decomposition",
            all(q * (sig(x) - phi0) == f(x) for x in xs))
    rep.add("identity beyond sigma", sig(s + 1) == s + 1 and sig.final_slope == 1)
    return rep


def bispec_report(spec):
    b = bh.bi_components(spec)
    s, q = spec.sigma, spec.p ** spec.r
    rep = shape_report(b.bi, spec.p, spec.r, spec.m, "bi-Herbrand laws")
    rep.add("c + lower(c) = sigma", b.c + b.psi_times(b.c) == s)
    rep.add("c + upper(c) = sigma", b.c + b.psi_plus(b.c) == s)
    jt = jump_table(b.bi)
    j = spec.tower.jumps[-1]
    even = len(jt) % 2 == 0
    rep.add("even jump count iff largest jump < c", even == (j < b.c),
            f"{len(jt)} jumps, largest jump {j}, c = {b.c}")
    w = hb.wild_exponent(spec.tower)
    if even and b.jbar_infinity is not None:
        mid = (j + b.jbar_infinity) / 2
        ok = b.bi.slope_right(j) == 1 and b.bi(mid) == mid - w / q
        rep.add("middle piece is x - w/p^r", ok)
    elif not even:
        rep.add("slope never equals 1", 1 not in b.bi.slopes())
    if w >= bh.odd_case_threshold(spec):
        rep.add("large wild exponent forces odd count", not even)
    rep.extend(decomposition_report(b.bi, spec.p, spec.r, spec.m))
    if j < s / 2:
        low = bh.lower_branch(spec)
        rep.add("agrees with p^-r psi up to sigma/2",
                all(b.bi(x) == low(x) for x, _ in b.bi.restrict(s / 2).vertices()))
    return rep


def datum_report(d, strict=False):
    rep = bispec_report(d.spec)
    rep.title = "datum laws"
    inv = cy.datum_invariants(d)
    rep.extend(cy.crossing_identities(d))
    bi = bh.bi_herbrand(d.spec)
    if inv.star is cy.Star.EXCEPTIONAL:
        rep.add("exceptional implies odd jump count", len(jump_table(bi)) % 2 == 1)
    try:
        f = cy.herbrand_of_datum(d, strict)
    except RamificationError as exc:
        rep.add("datum function defined", False, str(exc))
        return rep
    rep.extend(shape_report(f, d.p, d.r, d.m, "datum function"))
    if d.level <= max(0, d.m - inv.w):
        rep.add("minimal level gives the bi-Herbrand function", f == bi)
    return rep


def profile_report(p, r, sw, psi):
    rep = Report("profile laws")
    for check in _basic(p, sw):
        rep.add(*check)
    if not rep.passed:
        return rep
    rep.extend(shape_report(psi, p, r, sw, "profile shape"))
    if not rep.passed:
        return rep
    g = gl.GaloisProfile(p, r, sw, psi)
    rep.extend(decomposition_report(g.psi, p, r, sw))
    try:
        dec = gl.analyze_profile(g)
        rep.add("decomposition consistent", True,
                f"c = {dec.c_sigma}, core dimension {dec.dim_core}, core sw {dec.sw_core}")
    except RamificationError as exc:
        rep.add("decomposition consistent", False, str(exc))
    rows = gl.restriction_table(g)
    prod = Fraction(1)
    for row in rows:
        prod *= row.w
    rep.add("restriction heights multiply to p^2r", prod == g.q ** 2, str(prod))
    rep.add("d <= d+ everywhere", all(row.d <= row.d_plus for row in rows))
    jt = g.jumps()
    if len(jt) == 1:
        rep.extend(gl.h_singular_check(g))
    else:
        lifted = g
        e = jt[0].x.denominator
        if e > 1 and e % p:
            lifted = gl.tame_lift_profile(g, e)
        if lifted.jumps()[0].x.denominator == 1:
            try:
                layer, inner = gl.descend_once(lifted)
                back = gl.ascend_once(layer, inner, r)
                rep.add("descent then ascent is the identity", back == lifted, f"layer {layer}")
            except RamificationError as exc:
                rep.add("descent then ascent is the identity", False, str(exc))
    return rep


def _basic(p, sw):
    yield "p prime", is_prime(p), str(p)
    yield "p does not divide sw", sw % p != 0, str(sw)


def scenario_report(a, b):
    rep = Report("two-layer dyadic tower")
    sc = bh.scenario_97(a, b)
    for br in (sc.equation, sc.printed, sc.equation_at_printed_m):
        rep.facts[f"{br.reading} m={br.m}"] = (
            f"c = {br.c}, z = {br.z}, diagnostics {'PASS' if br.consistent else 'FAIL'}")
    for br in (sc.equation, sc.equation_at_printed_m):
        rep.add(f"equation reading matches actual jumps at m = {br.m}",
                br.c in br.true_jumps and br.z in br.true_jumps)
    rep.add("z half-integral for the printed reading", sc.printed.z_half_integral)
    return rep


def verify_document(doc):
    b = doc.body
    if doc.kind == "tower":
        return tower_report(b)
    if doc.kind == "bispec":
        rep = tower_report(b.tower)
        rep.extend(bispec_report(b))
        rep.title = "bispec laws"
        return rep
    if doc.kind == "datum":
        rep = tower_report(b.tower)
        rep.extend(datum_report(b))
        rep.title = "datum laws"
        return rep
    if doc.kind == "profile":
        return profile_report(b.p, b.r, b.sw, b.psi)
    if doc.kind == "function":
        rep = Report("function laws")
        try:
            t = hb.elementary_resolution(b["psi"], b["p"])
            psi = hb.build_psi(t)
            if b["psi"].bounded:
                psi = psi.restrict(b["psi"].domain_end)
            rep.add("resolves into a tower", psi == b["psi"])
        except RamificationError as exc:
            rep.add("resolves into a tower", False, str(exc))
        return rep
    return scenario_report(b["a"], b["b"])
