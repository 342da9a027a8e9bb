"""JSON input documents.

Rationals are written as strings ("13/3") or integers; floats are refused.
The kind is taken from an explicit "kind" key when present, otherwise
inferred from which keys appear.
"""
import json
from dataclasses import dataclass
from fractions import Fraction

from .biherbrand import BiSpec
from .carayol import CarayolDatum
from .errors import ParseError, RamificationError, ValidationError
from .galois import GaloisProfile, profile_problems
from .herbrand import RamTower
from .pl import PLFun
from ._util import log_p

KINDS = ("tower", "bispec", "datum", "profile", "scenario", "function")


@dataclass(frozen=True)
class RawProfile:
    """Profile fields before invariant checks (used by verify-all)."""
    p: int
    r: int
    sw: int
    psi: PLFun


@dataclass(frozen=True)
class InputDocument:
    kind: str
    body: object


def _rat(v, where):
    if isinstance(v, bool) or isinstance(v, float):
        raise ParseError(f"{where}: expected an exact rational, got {v!r}")
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str):
        try:
            return Fraction(v.strip())
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"{where}: cannot read {v!r} as a rational") from None
    raise ParseError(f"{where}: expected a rational, got {type(v).__name__}")


def _int(v, where):
    q = _rat(v, where)
    if q.denominator != 1:
        raise ParseError(f"{where}: expected an integer, got {q}")
    return int(q)


def _need(obj, key, kind):
    if key not in obj:
        raise ParseError(f"{kind} document: missing field '{key}'")
    return obj[key]


def _infer_kind(obj):
    if "kind" in obj:
        kind = obj["kind"]
        if kind not in KINDS:
            raise ParseError(f"unknown kind {kind!r}; expected one of {', '.join(KINDS)}")
        return kind
    if "psi" in obj:
        return "profile" if "sw" in obj else "function"
    if "level" in obj:
        return "datum"
    if "m" in obj:
        return "bispec"
    if "layers" in obj or "insep_s" in obj:
        return "tower"
    if "a" in obj and "b" in obj:
        return "scenario"
    raise ParseError("cannot tell the document kind from its fields")


def _tower(obj, kind):
    p = _int(_need(obj, "p", kind), "p")
    layers = _need(obj, "layers", kind)
    if not isinstance(layers, list):
        raise ParseError("layers: expected a list")
    out = []
    for i, layer in enumerate(layers):
        if isinstance(layer, dict):
            j, s = _need(layer, "jump", f"layers[{i}]"), _need(layer, "s", f"layers[{i}]")
        elif isinstance(layer, list) and len(layer) == 2:
            j, s = layer
        else:
            raise ParseError(f"layers[{i}]: expected {{\"jump\": .., \"s\": ..}}")
        out.append((_rat(j, f"layers[{i}].jump"), _int(s, f"layers[{i}].s")))
    insep = _int(obj.get("insep_s", 0), "insep_s")
    return RamTower(p, tuple(out), insep)


def _plfun(obj, where="psi"):
    if not isinstance(obj, dict):
        raise ParseError(f"{where}: expected an object")
    s0 = _rat(_need(obj, "initial_slope", where), f"{where}.initial_slope")
    v0 = _rat(obj.get("value_at_zero", 0), f"{where}.value_at_zero")
    breaks = []
    for i, b in enumerate(obj.get("breaks", [])):
        if not (isinstance(b, list) and len(b) == 2):
            raise ParseError(f"{where}.breaks[{i}]: expected [x, slope_after]")
        breaks.append((_rat(b[0], f"{where}.breaks[{i}][0]"), _rat(b[1], f"{where}.breaks[{i}][1]")))
    end = obj.get("domain_end")
    end = None if end is None else _rat(end, f"{where}.domain_end")
    return PLFun(v0, s0, tuple(breaks), end)


def _profile_r(obj, p, psi):
    if "r" in obj:
        return _int(obj["r"], "r")
    if "layers" in obj:
        return _tower(obj, "profile").r
    k = log_p(psi.initial_slope, p)
    if k is None or k >= 0:
        raise ValidationError(f"initial slope {psi.initial_slope} is not p^-r for r >= 1")
    return -k


def parse_input(text, validate=True):
    """Parse a JSON document. With validate=False, profiles skip invariant checks."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(obj, dict):
        raise ParseError("top level must be a JSON object")
    kind = _infer_kind(obj)
    try:
        return InputDocument(kind, _build(kind, obj, validate))
    except (ParseError, ValidationError):
        raise
    except RamificationError as exc:
        raise ValidationError(str(exc)) from None


def _build(kind, obj, validate):
    if kind == "tower":
        return _tower(obj, kind)
    if kind == "bispec":
        return BiSpec(_tower(obj, kind), _int(_need(obj, "m", kind), "m"))
    if kind == "datum":
        return CarayolDatum(_tower(obj, kind), _int(_need(obj, "m", kind), "m"),
                            _int(_need(obj, "level", kind), "level"))
    if kind == "scenario":
        return {"a": _int(_need(obj, "a", kind), "a"), "b": _rat(_need(obj, "b", kind), "b")}
    if kind == "function":
        return {"p": _int(_need(obj, "p", kind), "p"), "psi": _plfun(_need(obj, "psi", kind))}
    p = _int(_need(obj, "p", kind), "p")
    sw = _int(_need(obj, "sw", kind), "sw")
    psi = _plfun(_need(obj, "psi", kind))
    r = _profile_r(obj, p, psi)
    if psi.domain_end is None:
        s = Fraction(sw, p ** r)
        if psi.breaks and psi.breaks[-1][0] >= s:
            raise ValidationError(f"break at {psi.breaks[-1][0]} lies beyond sigma = {s}")
        psi = psi.restrict(s)
    if not validate:
        return RawProfile(p, r, sw, psi)
    problems = profile_problems(p, r, sw, psi)
    if problems:
        raise ValidationError("; ".join(problems))
    return GaloisProfile(p, r, sw, psi)


def _s(x):
    return str(Fraction(x))


def _tower_json(t):
    return {"p": t.p, "layers": [{"jump": _s(j), "s": s} for j, s in t.layers],
            "insep_s": t.insep_s}


def plfun_json(f):
    out = {"initial_slope": _s(f.initial_slope),
           "breaks": [[_s(x), _s(s)] for x, s in f.breaks]}
    if f.value_at_zero != 0:
        out["value_at_zero"] = _s(f.value_at_zero)
    if f.domain_end is not None:
        out["domain_end"] = _s(f.domain_end)
    return out


def document_json(doc):
    b = doc.body
    if doc.kind == "tower":
        obj = _tower_json(b)
    elif doc.kind == "bispec":
        obj = dict(_tower_json(b.tower), m=b.m)
    elif doc.kind == "datum":
        obj = dict(_tower_json(b.tower), m=b.m, level=b.level)
    elif doc.kind == "scenario":
        obj = {"a": b["a"], "b": _s(b["b"])}
    elif doc.kind == "function":
        obj = {"p": b["p"], "psi": plfun_json(b["psi"])}
    else:
        obj = {"p": b.p, "r": b.r, "sw": b.sw, "psi": plfun_json(b.psi)}
    return dict({"kind": doc.kind}, **obj)


def dump_document(doc):
    return json.dumps(document_json(doc), indent=2) + "\n"
