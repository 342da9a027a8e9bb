"""Command-line front end.

Exit status: 0 on success or PASS, 1 when a verification fails, 2 on usage,
parse or domain errors.
"""
import argparse
import sys
from fractions import Fraction

from . import biherbrand as bh
from . import carayol as cy
from . import galois as gl
from . import herbrand as hb
from .documents import parse_input
from .errors import ParseError, RamificationError, IoError
from .pl import jump_table
from .render import RenderSpec, Section, render, s, sections
from .report import Report
from .verify import verify_document


def _rat(text):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational: {text!r}") from None


def _pair(text):
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError("expected A,H")
    return _rat(parts[0]), _rat(parts[1])


def _read(path, validate=True):
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    except UnicodeDecodeError:
        raise ParseError(f"{path} is not UTF-8") from None
    return parse_input(text, validate)


def _need_in(args):
    if not args.inp:
        raise ParseError("this command needs --in PATH")
    return _read(args.inp)


def _tower_of(doc):
    if doc.kind == "tower":
        return doc.body
    if doc.kind in ("bispec", "datum"):
        return doc.body.tower
    raise ParseError(f"expected a tower-bearing document, got {doc.kind}")


def _spec_of(doc):
    if doc.kind == "bispec":
        return doc.body
    if doc.kind == "datum":
        return doc.body.spec
    raise ParseError(f"expected a bispec or datum document, got {doc.kind}")


def _datum_of(doc):
    if doc.kind != "datum":
        raise ParseError(f"expected a datum document, got {doc.kind}")
    return doc.body


def _profile_of(doc, strict=False):
    if doc.kind == "profile":
        return doc.body
    if doc.kind == "datum":
        d = doc.body
        return gl.GaloisProfile(d.p, d.r, d.m, cy.herbrand_of_datum(d, strict))
    raise ParseError(f"expected a profile or datum document, got {doc.kind}")


def _kv(title, pairs):
    return Section(title, ["field", "value"], [[k, s(v)] for k, v in pairs])


def _tower_sections(t):
    return [Section("tower", ["jump", "s"], [[s(j), s(k)] for j, k in t.layers]),
            _kv("", [("p", t.p), ("insep_s", t.insep_s), ("degree", t.degree)])]


# -- herb ---------------------------------------------------------------

def cmd_herb(args):
    doc = _need_in(args)
    if args.action == "resolve":
        if doc.kind == "function":
            return _tower_sections(hb.elementary_resolution(doc.body["psi"], doc.body["p"])), 0
        t = _tower_of(doc)
        return _tower_sections(hb.elementary_resolution(hb.build_psi(t), t.p)), 0
    t = _tower_of(doc)
    if args.action == "eval":
        if args.x is None:
            raise ParseError("herb eval needs --x")
        val, exact = hb.norm_swan(t, args.x) if args.x >= 1 else (hb.build_psi(t)(args.x), True)
        return [_kv("psi", [("x", args.x), ("psi(x)", val), ("x is a jump", not exact)])], 0
    if args.action == "jumps":
        return jump_table(hb.build_psi(t)), 0
    if args.action == "wild":
        w = hb.wild_exponent(t)
        rows = [("degree", t.degree), ("r", t.r),
                ("wild exponent", "infinite" if w == hb.INFINITE else w)]
        if t.degree > 1:
            j = hb.j_infinity(t)
            rows.append(("largest jump", "infinite" if j == hb.INFINITE else j))
        rows.append(("least jump integral", t.absolutely_wild()))
        return [_kv("wild exponent", rows)], 0
    if args.action == "lift":
        if args.e is None:
            raise ParseError("herb lift needs --e")
        return _tower_sections(hb.tame_lift_tower(t, args.e)), 0
    raise ParseError(f"unknown action {args.action}")


# -- bi -----------------------------------------------------------------

def cmd_bi(args):
    doc = _need_in(args)
    if args.action == "check":
        if doc.kind == "profile":
            g = doc.body
            f, p, r, m = g.psi, g.p, g.r, g.sw
        else:
            spec = _spec_of(doc)
            f, p, r, m = bh.bi_herbrand(spec), spec.p, spec.r, spec.m
        rep = Report("bi-Herbrand checks")
        rep.extend(bh.verify_symmetry(f, Fraction(m, p ** r)))
        rep.extend(bh.carayol_jump_checks(f, p, r, m))
        return rep, 0 if rep.passed else 1
    spec = _spec_of(doc)
    b = bh.bi_components(spec)
    if args.action == "build":
        return b.bi, 0
    if args.action == "c":
        return [_kv("crossing point", [("sigma", spec.sigma), ("c", b.c),
                                        ("largest jump", spec.tower.jumps[-1]),
                                        ("mirror of largest jump", b.jbar_infinity or "absent"),
                                        ("jump count parity", bh.parity_case(spec))])], 0
    raise ParseError(f"unknown action {args.action}")


# -- carayol ------------------------------------------------------------

def _invariant_sections(d, q):
    inv = cy.datum_invariants(d)
    rows = [("w", inv.w), ("l_alpha", inv.l_alpha), ("lambda", inv.lambda_alpha),
            ("lambda'", inv.lambda_prime_alpha), ("c", inv.c_alpha),
            ("epsilon", inv.epsilon_alpha), ("largest jump", inv.j_inf),
            ("standard case", inv.standard_case.value), ("star", inv.star.value)]
    if q is not None:
        rows.append((f"conformal family size q^lambda = {q}^{inv.lambda_alpha}",
                     cy.conformal_family_size(q, inv.lambda_alpha)))
    return [_kv("datum invariants", rows)]


def cmd_carayol(args):
    if args.action == "vary":
        vals = [args.p, args.m, args.w, args.l, args.d]
        if any(v is None for v in vals):
            raise ParseError("carayol vary needs --p --m --w --l --d")
        w_new, out = cy.vary_parameter(args.p, args.m, args.w, args.l, args.d)
        return [_kv("parameter variation", [("w_new", w_new), ("level outcome", _outcome(out))])], 0
    if args.action == "classify" and not args.inp:
        if None in (args.p, args.m, args.w):
            raise ParseError("carayol classify needs --in or --p --m --w")
        return [_kv("classification", _classify_rows(args.p, args.m, args.w))], 0
    d = _datum_of(_need_in(args))
    if args.action == "invariants":
        return _invariant_sections(d, args.q), 0
    if args.action == "psi":
        return cy.herbrand_of_datum(d, args.strict), 0
    if args.action == "classify":
        rows = _classify_rows(d.p, d.m, d.w)
        rows.append(("star", cy.datum_invariants(d).star.value))
        return [_kv("classification", rows)], 0
    if args.action == "distance":
        radii = cy.ball_radii(d)
        rows = [("max A", radii.max_a), ("max Delta", radii.max_delta),
                ("epsilon = c", radii.eps_equals_c),
                ("condition", radii.condition or "none")]
        if args.value is not None:
            rows.insert(0, ("converted", cy.ultrametric_convert(d, args.value, args.direction)))
            rows.insert(0, ("direction", args.direction))
            rows.insert(0, ("value", args.value))
        return [_kv("ultrametric", rows)], 0
    raise ParseError(f"unknown action {args.action}")


def _outcome(out):
    v = out.value if hasattr(out, "value") else out.bound
    return f"{type(out).__name__}({s(v)})"


def _classify_rows(p, m, w):
    target = cy.standardize_target(p, m, w)
    if isinstance(target, cy.AlreadyStandard):
        t = f"AlreadyStandard({target.case.value})"
    else:
        t = "RaisableTo(" + " or ".join(c.value for c in target.cases) + ")"
    rng = cy.level_range(p, m, w)
    r = f"Forced({s(rng.value)})" if isinstance(rng, cy.Forced) else f"Range({rng.lo}..{rng.hi})"
    return [("standard case", cy.classify_standard(p, m, w).value), ("target", t), ("levels", r)]


# -- galois -------------------------------------------------------------

def _profile_sections(title, g):
    return _kv(title, [("p", g.p), ("r", g.r), ("sw", g.sw),
                       ("jumps", " ".join(f"{s(e.x)}(x{s(e.height)})" for e in g.jumps()))])


def cmd_galois(args):
    if args.action == "ascend":
        if args.layer is None or args.r is None:
            raise ParseError("galois ascend needs --layer A,H and --r")
        if args.character is not None:
            inner = gl.Character(args.character)
        else:
            inner = _profile_of(_need_in(args))
        return gl.ascend_once(args.layer, inner, args.r).psi, 0
    g = _profile_of(_need_in(args))
    if args.action == "analyze":
        rep = gl.analyze_profile(g)
        return [_kv("decomposition", [
            ("c", rep.c_sigma), ("c is a jump", rep.c_is_jump), ("height at c", rep.w_c),
            ("core dimension", rep.dim_core),
            ("inducing tower", " ".join(f"({s(j)},{k})" for j, k in rep.L_tower.layers) or "trivial"),
            ("core Swan exponent", rep.sw_core),
            ("core jump", rep.core_jump if rep.core_jump is not None else "none"),
            ("centric degree", rep.centric_degree),
            ("|D| bound", gl.character_group_bound(rep) or "n/a")]), *_jt_sections(rep.jumps)], 0
    if args.action == "table":
        rows = gl.restriction_table(g)
        return [Section("restriction table", ["x", "d", "d_plus", "w", "jump", "note"],
                        [[s(r.x), s(r.d), s(r.d_plus), s(r.w), s(r.is_jump), r.note] for r in rows])], 0
    if args.action == "descend":
        if args.lift:
            g = gl.tame_lift_profile(g, args.lift)
        if args.chain:
            layers, last = gl.descent_chain(g)
        else:
            layer, last = gl.descend_once(g)
            layers = [layer]
        secs = [Section("layers", ["a", "h"], [[s(a), s(h)] for a, h in layers])]
        if isinstance(last, gl.Character):
            secs.append(_kv("inner", [("character sw", last.sw)]))
        else:
            secs.append(_profile_sections("inner", last))
        return secs, 0
    if args.action == "hsingular":
        rep = gl.h_singular_check(g)
        return rep, 0 if rep.passed else 1
    raise ParseError(f"unknown action {args.action}")


def _jt_sections(jt):
    return sections(jt)


# -- scenario -----------------------------------------------------------

def cmd_scenario(args):
    a, b = args.a, args.b
    if args.inp:
        doc = _need_in(args)
        if doc.kind != "scenario":
            raise ParseError("expected a scenario document")
        a, b = doc.body["a"], doc.body["b"]
    if a is None or b is None:
        raise ParseError("scenario97 needs --a and --b (or --in)")
    rep = bh.scenario_97(int(a), b)
    header = ["reading", "m", "c", "3c", "z", "z half-integral", "3c half-integral",
              "diagnostics", "actual jumps"]
    rows = []
    for label, br in (("equation", rep.equation), ("printed", rep.printed),
                      ("equation at printed m", rep.equation_at_printed_m)):
        rows.append([label, s(br.m), s(br.c), s(br.three_c), s(br.z), s(br.z_half_integral),
                     s(br.three_c_half_integral), "PASS" if br.consistent else "FAIL",
                     " ".join(s(x) for x in br.true_jumps)])
    return [Section(f"two-layer dyadic tower a={a}, b={s(b)}", header, rows)], 0


# -- verify-all ---------------------------------------------------------

def cmd_verify(args):
    if not args.inp:
        raise ParseError("verify-all needs --in PATH")
    doc = _read(args.inp, validate=False)
    rep = verify_document(doc)
    return rep, 0 if rep.passed else 1


def build_parser():
    ap = argparse.ArgumentParser(prog="ramcalc", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--in", dest="inp", metavar="PATH", help="JSON input ('-' for stdin)")
    common.add_argument("--format", choices=["text", "csv", "svg"], default="text")
    common.add_argument("--out", metavar="PATH")
    common.add_argument("--grid-step", type=_rat, default=None)
    sub = ap.add_subparsers(dest="command", required=True)

    herb = sub.add_parser("herb", parents=[common], help="classical Herbrand functions")
    herb.add_argument("action", choices=["eval", "jumps", "wild", "resolve", "lift"])
    herb.add_argument("--x", type=_rat)
    herb.add_argument("--e", type=int)
    herb.set_defaults(func=cmd_herb)

    bi = sub.add_parser("bi", parents=[common], help="bi-Herbrand functions")
    bi.add_argument("action", choices=["build", "c", "check"])
    bi.set_defaults(func=cmd_bi)

    car = sub.add_parser("carayol", parents=[common], help="datum calculus")
    car.add_argument("action", choices=["invariants", "psi", "classify", "vary", "distance"])
    car.add_argument("--q", type=int, help="residue field size, for the counting line")
    car.add_argument("--strict", action="store_true", help="refuse non-standard data above the minimal level")
    for name in ("p", "m", "l", "d"):
        car.add_argument(f"--{name}", type=int)
    car.add_argument("--w", type=_rat)
    car.add_argument("--value", type=_rat)
    car.add_argument("--direction", choices=["AtoDelta", "DeltaToA"], default="AtoDelta")
    car.set_defaults(func=cmd_carayol)

    gal = sub.add_parser("galois", parents=[common], help="profiles, descent and ascent")
    gal.add_argument("action", choices=["analyze", "table", "descend", "ascend", "hsingular"])
    gal.add_argument("--lift", type=int, metavar="E", help="tame lift before descending")
    gal.add_argument("--chain", action="store_true", help="descend all the way")
    gal.add_argument("--layer", type=_pair, metavar="A,H")
    gal.add_argument("--r", type=int)
    gal.add_argument("--character", type=_rat, metavar="SW")
    gal.set_defaults(func=cmd_galois)

    sc = sub.add_parser("scenario97", parents=[common], help="two-layer dyadic tower search")
    sc.add_argument("--a", type=int)
    sc.add_argument("--b", type=_rat)
    sc.set_defaults(func=cmd_scenario)

    va = sub.add_parser("verify-all", parents=[common], help="run every check on one input")
    va.set_defaults(func=cmd_verify)
    return ap


def run_command(argv, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        result, status = args.func(args)
        spec = RenderSpec(args.format, args.grid_step, args.out)
        data = render(result, spec)
    except (RamificationError, IoError) as exc:
        print(f"error: {exc}", file=stderr)
        return 2
    except RecursionError:
        print("error: input too deeply nested", file=stderr)
        return 2
    if not args.out:
        stdout.write(data.decode("utf-8"))
    return status


def main(argv=None):
    sys.exit(run_command(sys.argv[1:] if argv is None else argv))


if __name__ == "__main__":
    main()
