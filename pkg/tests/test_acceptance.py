"""End-to-end acceptance checks, one printed verdict line per criterion."""
import io
import itertools
import json
import random
import subprocess
import sys
from fractions import Fraction as F
from functools import lru_cache
from pathlib import Path

import pytest

import oracles
from strategies import random_m, random_tower
from ramcalc import biherbrand as bh
from ramcalc import carayol as cy
from ramcalc import galois as gl
from ramcalc import herbrand as hb
from ramcalc.cli import run_command
from ramcalc.pl import jump_table, rescale

DATA = Path(__file__).parent / "data"


@pytest.fixture
def verdict(capsys):
    def emit(n, title, ok, detail=""):
        with capsys.disabled():
            tail = f" ({detail})" if detail and not ok else ""
            print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {n}: {title}{tail}")
        assert ok, detail
    return emit


@lru_cache(maxsize=None)
def random_bispecs(n=500, seed=20261019):
    rng = random.Random(seed)
    out = []
    while len(out) < n:
        t = random_tower(rng, primes=(2, 3, 5), max_r=4)
        out.append(bh.BiSpec(t, random_m(rng, t.p)))
    return tuple((s, bh.bi_herbrand(s)) for s in out)


def test_functional_equation_on_random_specs(verdict):
    suite = random_bispecs()
    bad = [s for s, f in suite if not bh.verify_symmetry(f, s.sigma).passed]
    primes = {s.p for s, _ in suite}
    rs = {s.r for s, _ in suite}
    verdict(1, f"mirror symmetry exact on {len(suite)} random specs, p in {sorted(primes)}, r in {sorted(rs)}",
            not bad and primes == {2, 3, 5} and max(rs) == 4, f"{len(bad)} failures")


def test_golden_raised_level_datum(verdict):
    d = cy.CarayolDatum(hb.RamTower(2, ((5, 2),)), 25, 12)
    f = cy.herbrand_of_datum(d)
    a, z = F(13, 3), F(31, 6)
    ok = (f.break_xs() == [a, z] and f.slopes() == [F(1, 4), 1, 4]
          and a + f(z) == F(25, 4) and z == (25 - a) / 4
          and bh.verify_symmetry(f, d.sigma).passed)
    verdict(2, "raised-level datum: breaks 13/3, 31/6; slopes 1/4, 1, 4; 13/3 + Psi(31/6) = 25/4",
            ok, repr(f))


def test_golden_descent_and_ascent(verdict):
    g = gl.profile_from_jumps(2, 2, 17, [(1, 2), (3, 4), (4, 2)])
    layer, inner = gl.descend_once(g)
    jt = inner.jumps()
    core = gl.h_singular_check(inner)
    back = gl.ascend_once(layer, inner, 2)
    ok = (layer == (1, 2) and inner.sw == 15 and jt.xs == [5] and jt.heights == [4]
          and core.passed and core.facts["a"] == 5 and back == g and back.psi == g.psi)
    verdict(3, "sw=17 profile descends to layer (1, 2) + core a = 15/3 = 5, ascends back bit-exactly",
            ok, f"layer {layer}, inner {inner}")


def test_height_product(verdict):
    suite = random_bispecs()
    bad = []
    for s, f in suite:
        prod = 1
        for h in jump_table(f).heights:
            prod *= h
        rep = bh.carayol_jump_checks(f, s.p, s.r, s.m)
        if prod != s.p ** (2 * s.r) or not rep.passed:
            bad.append(s)
    verdict(4, f"jump heights multiply to p^2r on all {len(suite)} random specs", not bad,
            f"{len(bad)} failures")


def test_wild_exponent_laws(verdict):
    rng = random.Random(5)
    bad, singles, multis = [], 0, 0
    for _ in range(200):
        t = random_tower(rng, primes=(2, 3, 5), max_r=4)
        w, j, q, p = hb.wild_exponent(t), t.jumps[-1], t.degree, t.p
        ok = w == oracles.wild_exponent(p, t.layers)
        for k in range(1, len(t.layers)):
            low, high = hb.split_tower(t, k)
            ok &= w == high.degree * hb.wild_exponent(low) + hb.wild_exponent(high)
        ok &= F(q, p) * (p - 1) * j <= w <= (q - 1) * j
        single = len(t.layers) == 1
        ok &= (w == (q - 1) * j) == single
        singles += single
        multis += not single
        if not ok:
            bad.append(t)
    verdict(5, f"wild exponent = transitivity oracle, within bounds, sharp iff single layer "
               f"({singles} single, {multis} multi-layer)", not bad and singles and multis,
            f"{len(bad)} failures")


def test_crossing_identities_both_regimes(verdict):
    rng = random.Random(11)
    seen = {"at or below c": 0, "above c": 0}
    bad = []
    while min(seen.values()) < 40:
        t = random_tower(rng, primes=(2, 3, 5), max_r=3)
        m = random_m(rng, t.p, 120)
        w = hb.wild_exponent(t)
        rng_l = cy.level_range(t.p, m, w)
        if isinstance(rng_l, cy.Forced):
            if rng_l.value.denominator != 1:
                continue
            level = int(rng_l.value)
        else:
            level = rng.randint(rng_l.lo, rng_l.hi)
        d = cy.CarayolDatum(t, m, level)
        inv = cy.datum_invariants(d)
        psi = bh.bi_herbrand(d.spec)
        q = d.q
        if inv.j_inf <= inv.c_alpha:
            seen["at or below c"] += 1
            ok = inv.c_alpha == (m + w) / (2 * q) and psi(inv.c_alpha) == inv.l_alpha / (2 * q)
        else:
            seen["above c"] += 1
            ok = inv.c_alpha < (m + w) / (2 * q) and psi(inv.c_alpha) > inv.l_alpha / (2 * q)
        ok &= cy.crossing_identities(d).passed
        if not ok:
            bad.append(d)
    verdict(6, f"crossing identities: equalities when j <= c ({seen['at or below c']} cases), "
               f"strict inequalities when j > c ({seen['above c']} cases)", not bad,
            f"{len(bad)} failures")


def test_datum_function_feeds_profile_analysis(verdict):
    rng = random.Random(17)
    done, bad, dims = 0, [], set()
    while done < 100:
        t = random_tower(rng, primes=(2, 3, 5), max_r=3)
        m = random_m(rng, t.p, 120)
        w = hb.wild_exponent(t)
        l = max(F(0), m - w)
        if l.denominator != 1:
            continue
        d = cy.CarayolDatum(t, m, int(l))
        f = cy.herbrand_of_datum(d)
        rep = gl.analyze_profile(gl.GaloisProfile(t.p, t.r, m, f))
        c = rep.c_sigma
        lower = rescale(f, d.q).restrict(c)
        ok = lower == hb.build_psi(rep.L_tower).restrict(c)
        ok &= rep.sw_core == m - hb.wild_exponent(rep.L_tower) * rep.dim_core
        dims.add(rep.dim_core)
        done += 1
        if not ok:
            bad.append(d)
    verdict(7, f"p^r Psi on [0, c] is psi of the inducing tower and sw_core = m - w_L dim on 100 "
               f"minimal-level datums (core dimensions {sorted(dims)})", not bad, f"{len(bad)} failures")


def all_small_towers(p, max_r=3, max_jump=12):
    for n in range(1, max_r + 1):
        for ss in itertools.product(range(1, max_r + 1), repeat=n):
            if sum(ss) > max_r:
                continue
            for js in itertools.combinations(range(1, max_jump + 1), n):
                yield hb.RamTower(p, tuple(zip(js, ss)))


def test_parity_exhaustive(verdict):
    cases = bad = exceptional = 0
    for p in (2, 3, 5):
        for t in all_small_towers(p):
            j = t.jumps[-1]
            w = hb.wild_exponent(t)
            for m in range(1, 61):
                if m % p == 0:
                    continue
                b = bh.bi_components(bh.BiSpec(t, m))
                odd = len(jump_table(b.bi)) % 2 == 1
                cases += 1
                if odd == (j < b.c):
                    bad += 1
                l = max(F(0), m - w)
                if j != b.c or l.denominator != 1:
                    continue
                inv = cy.datum_invariants(cy.CarayolDatum(t, m, int(l)))
                if inv.star is cy.Star.EXCEPTIONAL:
                    exceptional += 1
                    bad += not odd
    verdict(8, f"even jump count iff largest jump < c, exceptional => odd; exhaustive over "
               f"{cases} cases ({exceptional} exceptional)", bad == 0 and exceptional > 0,
            f"{bad} violations")


def test_two_layer_dyadic_search(verdict):
    sc = bh.scenario_97(1, 6)
    pr, eq = sc.printed, sc.equation_at_printed_m
    ok = (pr.m == 15 and pr.c == F(13, 6) and pr.three_c == F(13, 2)
          and pr.three_c_half_integral and pr.z == F(7, 2) and pr.z_half_integral and pr.consistent)
    ok &= eq.m == 15 and eq.c == F(8, 3) and not eq.consistent
    code, out = cli("scenario97", "--a", "1", "--b", "6")
    ok &= code == 0 and "printed" in out and "equation" in out
    verdict(9, "a=1, b=6: m=15; printed reading c=13/6, 3c=13/2, z=7/2 consistent; "
               "equation reading c=8/3 flagged inconsistent; both branches reported", ok,
            f"printed {pr}, equation {eq}")


def cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    return run_command(list(argv), out, err), out.getvalue()


def perturbed_variants(obj):
    breaks = obj["psi"]["breaks"]
    for i in range(len(breaks)):
        for delta in (F(1, 10 ** 6), -F(1, 10 ** 6)):
            new = json.loads(json.dumps(obj))
            new["psi"]["breaks"][i][0] = str(F(breaks[i][0]) + delta)
            yield new


def subprocess_bytes(*argv):
    res = subprocess.run([sys.executable, "-m", "ramcalc", *argv], capture_output=True, check=False)
    return res.returncode, res.stdout


def test_cli_contract(verdict, tmp_path):
    problems = []
    inputs = ["golden_a_datum.json", "golden_a_profile.json", "golden_b_profile.json"]
    for name in inputs:
        code, _ = cli("verify-all", "--in", str(DATA / name))
        if code != 0:
            problems.append(f"{name} exit {code}")
    perturbed = 0
    for name in inputs[1:]:
        for k, obj in enumerate(perturbed_variants(json.loads((DATA / name).read_text()))):
            path = tmp_path / f"{name}.{k}.json"
            path.write_text(json.dumps(obj))
            code, _ = cli("verify-all", "--in", str(path))
            perturbed += 1
            if code != 1:
                problems.append(f"{name} variant {k} exit {code}")
    code, _ = subprocess_bytes("verify-all", "--in", str(path))
    if code != 1:
        problems.append(f"subprocess perturbed exit {code}")
    runs = [("carayol", "psi", "--in", str(DATA / "golden_a_datum.json"), "--format", fmt)
            for fmt in ("csv", "svg")]
    runs.append(("galois", "table", "--in", str(DATA / "golden_b_profile.json"), "--format", "csv"))
    for argv in runs:
        first, second = subprocess_bytes(*argv), subprocess_bytes(*argv)
        if first[0] != 0 or first != second:
            problems.append(f"unstable output for {' '.join(argv[:2])} {argv[-1]}")
    verdict(10, f"verify-all exits 0 on golden inputs, 1 on all {perturbed} one-in-a-million "
                f"perturbations; csv/svg byte-stable across runs", not problems, "; ".join(problems))
