"""Serialization: JSON conformations, SVG diagrams, OBJ polylines.

Rationals are stored as two-element ``[numerator, denominator]`` arrays
so round-trips are exact.  All writers emit keys in a fixed order and
fixed rounding, so identical inputs give byte-identical files.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .geometry import (
    GeometricDiagram,
    MultiStickRailArc,
    StickKnot,
    StickLink,
    StickRailArc,
)

F = Fraction


class FormatError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Rationals and points
# ---------------------------------------------------------------------------

def rat(x) -> List[int]:
    f = F(x)
    return [f.numerator, f.denominator]


def unrat(v) -> Fraction:
    if isinstance(v, (int, str)):
        return F(v)
    if isinstance(v, (list, tuple)) and len(v) == 2:
        return F(int(v[0]), int(v[1]))
    raise FormatError("not a rational: %r" % (v,))


def _points_out(pts) -> list:
    return [[rat(c) for c in p] for p in pts]


def _points_in(data) -> list:
    return [tuple(unrat(c) for c in p) for p in data]


# ---------------------------------------------------------------------------
# Conformations <-> JSON
# ---------------------------------------------------------------------------

def conformation_to_json(obj) -> dict:
    if isinstance(obj, StickRailArc):
        return {"type": "rail-arc", "points": _points_out(obj.vertices)}
    if isinstance(obj, StickKnot):
        return {"type": "knot", "points": _points_out(obj.vertices)}
    if isinstance(obj, StickLink):
        return {"type": "link",
                "components": [_points_out(k.vertices) for k in obj.components]}
    if isinstance(obj, MultiStickRailArc):
        return {"type": "multi-rail-arc",
                "arc": _points_out(obj.arc.vertices),
                "knots": [_points_out(k.vertices) for k in obj.knots]}
    raise FormatError("unsupported object %r" % type(obj).__name__)


def conformation_from_json(data: dict):
    kind = data.get("type")
    if kind == "rail-arc":
        return StickRailArc.from_points(_points_in(data["points"]))
    if kind == "knot":
        return StickKnot.from_points(_points_in(data["points"]))
    if kind == "link":
        return StickLink(components=tuple(
            StickKnot.from_points(_points_in(c)) for c in data["components"]))
    if kind == "multi-rail-arc":
        return MultiStickRailArc(
            arc=StickRailArc.from_points(_points_in(data["arc"])),
            knots=tuple(StickKnot.from_points(_points_in(k))
                        for k in data["knots"]))
    raise FormatError("unknown conformation type %r" % kind)


def save_conformation(obj, path: str):
    with open(path, "w") as f:
        json.dump(conformation_to_json(obj), f, indent=1, sort_keys=True)
        f.write("\n")


def load_conformation(path: str):
    with open(path) as f:
        return conformation_from_json(json.load(f))


# ---------------------------------------------------------------------------
# PD text format: "X(a,b,c,d)+ X(e,f,g,h)- ..."
# ---------------------------------------------------------------------------

def pd_to_text(pd) -> str:
    parts = []
    for quad, s in zip(pd.crossings, pd.signs):
        parts.append("X(%d,%d,%d,%d)%s" % (*quad, "+" if s > 0 else "-"))
    if pd.free_loops:
        parts.append("O*%d" % pd.free_loops)
    return " ".join(parts)


def pd_from_text(text: str):
    from .pd import PDCode

    quads, signs, loops = [], [], 0
    for token in text.split():
        if token.startswith("O*"):
            loops = int(token[2:])
            continue
        if not (token.startswith("X(") and token[-1] in "+-"):
            raise FormatError("bad PD token %r" % token)
        quads.append(tuple(int(x) for x in token[2:-2].split(",")))
        signs.append(1 if token[-1] == "+" else -1)
    return PDCode(tuple(quads), tuple(signs), free_loops=loops)


# ---------------------------------------------------------------------------
# SVG diagrams
# ---------------------------------------------------------------------------

_GAP = 0.12  # gap half-length carved out of the under strand, in scene units


def _split_gaps(segs, cuts: Dict[int, List[Fraction]]):
    """Yield sub-segments of each segment minus gaps around cut params."""
    for i, (a, b) in enumerate(segs):
        ts = sorted(cuts.get(i, []))
        lo = F(0)
        length = max(abs(b[0] - a[0]), abs(b[1] - a[1]), F(1, 1000))
        eps = F(_GAP).limit_denominator(64) / length
        pieces = []
        for t in ts:
            pieces.append((lo, max(lo, t - eps)))
            lo = min(F(1), t + eps)
        pieces.append((lo, F(1)))
        for t0, t1 in pieces:
            if t1 <= t0:
                continue
            p = (a[0] + (b[0] - a[0]) * t0, a[1] + (b[1] - a[1]) * t0)
            q = (a[0] + (b[0] - a[0]) * t1, a[1] + (b[1] - a[1]) * t1)
            yield p, q


def diagram_to_svg(g: GeometricDiagram, path: Optional[str] = None) -> str:
    """Render crossings as gaps in the under strand; the tail carries a
    disc glyph and the head an arrowhead."""
    xs = [float(p[0]) for c in g.components for p in c]
    ys = [float(p[1]) for c in g.components for p in c]
    pad = 0.6
    x0, x1 = min(xs) - pad, max(xs) + pad
    y0, y1 = min(ys) - pad, max(ys) + pad
    scale = 420.0 / max(x1 - x0, y1 - y0, 1e-9)

    def sx(p):
        return ((float(p[0]) - x0) * scale, (y1 - float(p[1])) * scale)

    under_cuts: Dict[Tuple[int, int], List[Fraction]] = {}
    for c in g.crossings:
        under = c.second if c.over_first else c.first
        t = c.t_second if c.over_first else c.t_first
        under_cuts.setdefault(under, []).append(t)

    lines = ['<svg xmlns="http://www.w3.org/2000/svg" width="440" height="440" '
             'viewBox="-10 -10 460 460">']
    for ci in range(len(g.components)):
        segs = g.component_segments(ci)
        cuts = {si: under_cuts.get((ci, si), []) for si in range(len(segs))}
        colour = "#1c4f9c" if (g.has_open and ci == 0) else "#777777"
        for p, q in _split_gaps(segs, cuts):
            (px, py), (qx, qy) = sx(p), sx(q)
            lines.append(
                '<line x1="%.2f" y1="%.2f" x2="%.2f" y2="%.2f" '
                'stroke="%s" stroke-width="2.4"/>' % (px, py, qx, qy, colour))
    if g.has_open:
        tx, ty = sx(g.tail)
        lines.append('<circle cx="%.2f" cy="%.2f" r="5" fill="#1c4f9c"/>' % (tx, ty))
        hx, hy = sx(g.head)
        a, b = g.components[0][-2], g.components[0][-1]
        dx, dy = float(b[0] - a[0]), float(b[1] - a[1])
        n = (dx * dx + dy * dy) ** 0.5 or 1.0
        dx, dy = dx / n, dy / n
        wing = 9.0
        lines.append(
            '<path d="M %.2f %.2f L %.2f %.2f L %.2f %.2f Z" fill="#1c4f9c"/>'
            % (hx, hy,
               hx - wing * dx + 0.5 * wing * dy, hy + wing * dy + 0.5 * wing * dx,
               hx - wing * dx - 0.5 * wing * dy, hy + wing * dy - 0.5 * wing * dx))
    lines.append("</svg>")
    text = "\n".join(lines) + "\n"
    if path is not None:
        with open(path, "w") as f:
            f.write(text)
    return text


# ---------------------------------------------------------------------------
# OBJ polylines
# ---------------------------------------------------------------------------

def conformation_to_obj(obj, path: Optional[str] = None) -> str:
    """Wavefront OBJ with one polyline per component."""
    open_path, loops = _paths_of(obj)
    out = ["# railstick polylines"]
    index = 1
    chunks = []
    if open_path is not None:
        chunks.append((open_path, False))
    chunks.extend((lp, True) for lp in loops)
    for pts, closed in chunks:
        ids = []
        for p in pts:
            out.append("v %.6f %.6f %.6f" % tuple(float(c) for c in p))
            ids.append(index)
            index += 1
        if closed:
            ids.append(ids[0])
        out.append("l " + " ".join(str(i) for i in ids))
    text = "\n".join(out) + "\n"
    if path is not None:
        with open(path, "w") as f:
            f.write(text)
    return text


def _paths_of(obj):
    if isinstance(obj, StickRailArc):
        return obj.vertices, []
    if isinstance(obj, StickKnot):
        return None, [obj.vertices]
    if isinstance(obj, StickLink):
        return None, [k.vertices for k in obj.components]
    if isinstance(obj, MultiStickRailArc):
        return obj.arc.vertices, [k.vertices for k in obj.knots]
    raise FormatError("unsupported object %r" % type(obj).__name__)
