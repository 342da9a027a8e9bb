"""Text, CSV and SVG output. Every number is printed exactly."""
import csv
import io
from dataclasses import dataclass
from fractions import Fraction
from functools import singledispatch
from math import lcm
from typing import Optional

from .errors import DomainError, IoError
from .pl import JumpTable, PLFun, jump_table
from .report import Report

FORMATS = ("text", "csv", "svg")


@dataclass(frozen=True)
class RenderSpec:
    format: str = "text"
    grid_step: Optional[Fraction] = None
    output_path: Optional[str] = None

    def __post_init__(self):
        if self.format not in FORMATS:
            raise DomainError(f"unknown format {self.format!r}")
        if self.grid_step is not None and Fraction(self.grid_step) <= 0:
            raise DomainError("grid step must be positive")


@dataclass
class Section:
    title: str
    header: list
    rows: list


def s(x):
    if isinstance(x, bool):
        return "yes" if x else "no"
    if isinstance(x, (int, Fraction)):
        return str(Fraction(x))
    return str(x)


@singledispatch
def sections(result, spec=None):
    """Break a result into titled tables."""
    if isinstance(result, dict):
        return [Section("", ["field", "value"], [[k, s(v)] for k, v in result.items()])]
    if isinstance(result, list) and result and isinstance(result[0], Section):
        return result
    raise DomainError(f"cannot render {type(result).__name__}")


@sections.register
def _(result: PLFun, spec=None):
    out = [Section("function", ["field", "value"], [
        ["f(0)", s(result.value_at_zero)],
        ["initial slope", s(result.initial_slope)],
        ["domain", f"[0, {s(result.domain_end)}]" if result.bounded else "[0, oo)"],
    ])]
    out.append(Section("vertices", ["x", "y"], [[s(x), s(y)] for x, y in result.vertices()]))
    out.append(Section("breaks", ["x", "slope_after"], [[s(x), s(v)] for x, v in result.breaks]))
    step = None if spec is None else spec.grid_step
    if step is not None:
        step = Fraction(step)
        end = result.domain_end if result.bounded else (result.break_xs() or [Fraction(1)])[-1] * 2
        rows, x = [], Fraction(0)
        while x <= end:
            rows.append([s(x), s(result(x))])
            x += step
        out.append(Section("grid", ["x", "y"], rows))
    return out


@sections.register
def _(result: JumpTable, spec=None):
    return [Section("jumps", ["x", "left", "right", "height"],
                    [[s(e.x), s(e.left), s(e.right), s(e.height)] for e in result])]


@sections.register
def _(result: Report, spec=None):
    out = []
    if result.facts:
        out.append(Section(result.title, ["field", "value"],
                           [[k, s(v)] for k, v in result.facts.items()]))
    out.append(Section(f"{result.title} checks", ["check", "status", "detail"],
                       [[c.name, "PASS" if c.passed else "FAIL", c.detail] for c in result.checks]))
    out.append(Section("", ["verdict"], [["PASS" if result.passed else "FAIL"]]))
    return out


def _text(secs):
    lines = []
    for sec in secs:
        if sec.title:
            lines.append(f"# {sec.title}")
        table = sec.rows if len(sec.header) == 1 else [sec.header] + sec.rows
        widths = [max(len(r[i]) for r in table) for i in range(len(sec.header))] if table else []
        for row in table:
            lines.append("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip())
        lines.append("")
    return "\n".join(lines).rstrip("\n") + "\n"


def _csv(secs):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    for i, sec in enumerate(secs):
        if i:
            buf.write("\n")
        w.writerow(sec.header)
        w.writerows(sec.rows)
    return buf.getvalue()


def csv_sections(result, spec):
    """CSV favours the single most useful table for functions."""
    if isinstance(result, PLFun):
        secs = sections(result, spec)
        return [secs[-1]] if spec.grid_step is not None else [secs[1]]
    return sections(result, spec)


def svg_plot(f, size=480):
    """Plot f through its vertices, with the mirror line x + y = end and jump markers."""
    pts = f.vertices()
    if not f.bounded:
        x_last = pts[-1][0]
        x_tail = x_last * 2 if x_last else Fraction(1)
        pts.append((x_tail, f(x_tail)))
    end = pts[-1][0]
    ys = [y for _, y in pts]
    y_lo, y_hi = min(min(ys), 0), max(max(ys), end if f.bounded else 0)
    vals = [x for x, _ in pts] + ys + [end, y_lo, y_hi]
    scale = lcm(*[Fraction(v).denominator for v in vals])
    extent = max(end, y_hi - y_lo) * scale
    scale *= max(1, -(-400 // int(extent or 1)))  # integer factor keeps vertices exact
    width = int(end * scale)
    height = int((y_hi - y_lo) * scale)
    pad = max(width, height) // 10 or 1

    def X(x):
        return int(x * scale)

    def Y(y):
        return int((y_hi - y) * scale)

    font = max(max(width, height) // 30, 1)
    poly = " ".join(f"{X(x)},{Y(y)}" for x, y in pts)
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{size}" height="{size}" '
        f'viewBox="{-pad} {-pad} {width + 2 * pad} {height + 2 * pad}">',
        f'<line x1="0" y1="{Y(0)}" x2="{width}" y2="{Y(0)}" stroke="#999" '
        'stroke-width="1" vector-effect="non-scaling-stroke"/>',
        f'<line x1="0" y1="{Y(y_lo)}" x2="0" y2="{Y(y_hi)}" stroke="#999" '
        'stroke-width="1" vector-effect="non-scaling-stroke"/>',
    ]
    if f.bounded:
        out.append(f'<line class="mirror" x1="0" y1="{Y(end)}" x2="{X(end)}" y2="{Y(0)}" '
                   'stroke="#c33" stroke-dasharray="4 4" stroke-width="1" '
                   'vector-effect="non-scaling-stroke"/>')
    out.append(f'<polyline class="graph" fill="none" stroke="#036" stroke-width="2" '
               f'vector-effect="non-scaling-stroke" points="{poly}"/>')
    for e in jump_table(f):
        cx, cy = X(e.x), Y(f(e.x))
        out.append(f'<circle class="jump" cx="{cx}" cy="{cy}" r="{font // 3 or 1}" fill="#036"/>')
        out.append(f'<text x="{cx + font // 2}" y="{cy + font}" font-size="{font}" '
                   f'font-family="monospace">{e.x} (x{e.height})</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render(result, spec=RenderSpec()):
    if spec.format == "svg":
        if not isinstance(result, PLFun):
            raise DomainError("svg output is only available for functions")
        text = svg_plot(result)
    elif spec.format == "csv":
        text = _csv(csv_sections(result, spec))
    else:
        text = result if isinstance(result, str) else _text(sections(result, spec))
    data = text.encode("utf-8")
    if spec.output_path:
        try:
            with open(spec.output_path, "wb") as fh:
                fh.write(data)
        except OSError as exc:
            raise IoError(f"cannot write {spec.output_path}: {exc.strerror}") from None
    return data
