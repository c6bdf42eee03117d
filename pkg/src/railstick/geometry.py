"""Stick rail arcs, stick knots, and their generic planar projections.

The rails are always the canonical pair of vertical lines
``l1 = {(0,0,t)}`` and ``l2 = {(1,0,t)}``; any differently-placed rails
are affinely normalized on ingestion (see :mod:`railstick.io`).
Projection is the orthogonal projection onto the plane z = 0, viewed
from z = +infinity, so the strand with the larger z at a crossing is
the over strand.

All vertex coordinates are exact rationals.  Randomness (generic
perturbation, pass angle search) enters only through explicit seeds.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple, Union

from .exact import (
    Fraction as _F,
    Vec2,
    Vec3,
    cross2,
    cross3,
    dot3,
    frac,
    lerp2,
    lerp3,
    on_segment2,
    orient2,
    point_seg_dist2_3d,
    rational_sqrt_lower,
    seg_intersect2,
    seg_seg_dist2_3d,
    segments_overlap2,
    sub2,
    sub3,
)

RAIL_X = (Fraction(0), Fraction(1))  # tail rail at x=0, head rail at x=1


class GeometryError(ValueError):
    """Invalid geometric input or an exhausted perturbation search."""


def _merge_collinear_open(points: List[Vec3]) -> List[Vec3]:
    """Drop repeated vertices and interior vertices on straight runs."""
    out: List[Vec3] = []
    for p in points:
        if out and p == out[-1]:
            continue
        out.append(p)
    changed = True
    while changed and len(out) > 2:
        changed = False
        for i in range(1, len(out) - 1):
            a, b, c = out[i - 1], out[i], out[i + 1]
            if cross3(sub3(b, a), sub3(c, b)) == (0, 0, 0) and dot3(
                sub3(b, a), sub3(c, b)
            ) > 0:
                del out[i]
                changed = True
                break
    return out


def _merge_collinear_closed(points: List[Vec3]) -> List[Vec3]:
    out: List[Vec3] = []
    for p in points:
        if out and p == out[-1]:
            continue
        out.append(p)
    if len(out) > 1 and out[0] == out[-1]:
        out.pop()
    changed = True
    while changed and len(out) > 3:
        changed = False
        n = len(out)
        for i in range(n):
            a, b, c = out[(i - 1) % n], out[i], out[(i + 1) % n]
            if cross3(sub3(b, a), sub3(c, b)) == (0, 0, 0) and dot3(
                sub3(b, a), sub3(c, b)
            ) > 0:
                del out[i]
                changed = True
                break
    return out


def _as_vec3(p) -> Vec3:
    return (frac(p[0]), frac(p[1]), frac(p[2]))


@dataclass(frozen=True)
class StickRailArc:
    """Open polyline from the tail rail (x=0) to the head rail (x=1)."""

    vertices: Tuple[Vec3, ...]

    @staticmethod
    def from_points(points: Iterable) -> "StickRailArc":
        pts = _merge_collinear_open([_as_vec3(p) for p in points])
        return StickRailArc(tuple(pts))

    @property
    def tail(self) -> Vec3:
        return self.vertices[0]

    @property
    def head(self) -> Vec3:
        return self.vertices[-1]

    def segments(self) -> List[Tuple[Vec3, Vec3]]:
        v = self.vertices
        return [(v[i], v[i + 1]) for i in range(len(v) - 1)]


@dataclass(frozen=True)
class StickKnot:
    """Closed polyline; ``vertices`` lists each cycle vertex once."""

    vertices: Tuple[Vec3, ...]

    @staticmethod
    def from_points(points: Iterable) -> "StickKnot":
        pts = _merge_collinear_closed([_as_vec3(p) for p in points])
        return StickKnot(tuple(pts))

    def segments(self) -> List[Tuple[Vec3, Vec3]]:
        v = self.vertices
        n = len(v)
        return [(v[i], v[(i + 1) % n]) for i in range(n)]


@dataclass(frozen=True)
class StickLink:
    """Disjoint union of closed polylines."""

    components: Tuple[StickKnot, ...]


@dataclass(frozen=True)
class MultiStickRailArc:
    """A stick rail arc together with disjoint closed stick components."""

    arc: StickRailArc
    knots: Tuple[StickKnot, ...]

    @staticmethod
    def make(arc: StickRailArc, knots: Sequence[StickKnot]) -> "MultiStickRailArc":
        return MultiStickRailArc(arc, tuple(knots))


StickObject = Union[StickRailArc, StickKnot, MultiStickRailArc, StickLink]


@dataclass
class ValidationReport:
    ok: bool
    violations: List[str] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok


def _segment_hits_rail(a: Vec3, b: Vec3, rail_x: Fraction) -> Optional[Fraction]:
    """Parameter along ab at which ab meets the vertical line
    (rail_x, 0, *), or None.  A segment contained in the rail returns 0."""
    p = (a[0], a[1])
    q = (b[0], b[1])
    d = sub2(q, p)
    rel = (rail_x - p[0], -p[1])
    if d == (0, 0):
        return Fraction(0) if rel == (0, 0) else None
    if cross2(d, rel) != 0:
        return None
    if d[0] != 0:
        t = rel[0] / d[0]
    else:
        t = rel[1] / d[1]
    if 0 <= t <= 1 and lerp2(p, q, t) == (rail_x, Fraction(0)):
        return t
    return None


def validate_rail_arc(arc: StickRailArc) -> ValidationReport:
    """Check every stick rail arc invariant exactly; report all failures."""
    v = arc.vertices
    bad: List[str] = []
    if len(v) < 2:
        return ValidationReport(False, ["fewer than two vertices"])
    if (v[0][0], v[0][1]) != (RAIL_X[0], Fraction(0)):
        bad.append("tail vertex not on the tail rail x=0,y=0")
    if (v[-1][0], v[-1][1]) != (RAIL_X[1], Fraction(0)):
        bad.append("head vertex not on the head rail x=1,y=0")
    for i in range(len(v) - 1):
        if v[i] == v[i + 1]:
            bad.append(f"repeated vertex at index {i}")
    for i in range(1, len(v) - 1):
        if cross3(sub3(v[i], v[i - 1]), sub3(v[i + 1], v[i])) == (0, 0, 0):
            bad.append(f"three consecutive collinear vertices at index {i}")
    segs = arc.segments()
    for i in range(len(segs)):
        for j in range(i + 1, len(segs)):
            if j == i + 1:
                continue  # share exactly the common vertex (non-collinear)
            if seg_seg_dist2_3d(*segs[i], *segs[j]) == 0:
                bad.append(f"segments {i} and {j} intersect")
    for i, (a, b) in enumerate(segs):
        for rail_idx, rx in enumerate(RAIL_X):
            t = _segment_hits_rail(a, b, rx)
            if t is None:
                continue
            allowed = (i == 0 and rail_idx == 0 and t == 0) or (
                i == len(segs) - 1 and rail_idx == 1 and t == 1
            )
            if not allowed:
                bad.append(f"interior meets rail: segment {i}, rail x={rx}")
    return ValidationReport(not bad, bad)


def validate_knot(knot: StickKnot) -> ValidationReport:
    v = knot.vertices
    bad: List[str] = []
    if len(v) < 3:
        return ValidationReport(False, ["closed polyline needs >= 3 vertices"])
    n = len(v)
    for i in range(n):
        if v[i] == v[(i + 1) % n]:
            bad.append(f"repeated vertex at index {i}")
    for i in range(n):
        a, b, c = v[(i - 1) % n], v[i], v[(i + 1) % n]
        if cross3(sub3(b, a), sub3(c, b)) == (0, 0, 0):
            bad.append(f"three consecutive collinear vertices at index {i}")
    segs = knot.segments()
    for i in range(n):
        for j in range(i + 1, n):
            if j == i + 1 or (i == 0 and j == n - 1):
                continue
            if seg_seg_dist2_3d(*segs[i], *segs[j]) == 0:
                bad.append(f"segments {i} and {j} intersect")
    return ValidationReport(not bad, bad)


def validate_multi(m: MultiStickRailArc) -> ValidationReport:
    rep = validate_rail_arc(m.arc)
    bad = list(rep.violations)
    all_segsets = [m.arc.segments()] + [k.segments() for k in m.knots]
    for ki, k in enumerate(m.knots):
        sub = validate_knot(k)
        bad += [f"component {ki}: {msg}" for msg in sub.violations]
        for a, b in k.segments():
            for rx in RAIL_X:
                if _segment_hits_rail(a, b, rx) is not None:
                    bad.append(f"component {ki} meets rail x={rx}")
    for i in range(len(all_segsets)):
        for j in range(i + 1, len(all_segsets)):
            for s1 in all_segsets[i]:
                for s2 in all_segsets[j]:
                    if seg_seg_dist2_3d(*s1, *s2) == 0:
                        bad.append(f"components {i} and {j} intersect")
    return ValidationReport(not bad, bad)


def validate(obj: StickObject) -> ValidationReport:
    if isinstance(obj, StickRailArc):
        return validate_rail_arc(obj)
    if isinstance(obj, StickKnot):
        return validate_knot(obj)
    if isinstance(obj, MultiStickRailArc):
        return validate_multi(obj)
    if isinstance(obj, StickLink):
        bad: List[str] = []
        for ki, k in enumerate(obj.components):
            bad += [f"component {ki}: {m}" for m in validate_knot(k).violations]
        segsets = [k.segments() for k in obj.components]
        for i in range(len(segsets)):
            for j in range(i + 1, len(segsets)):
                for s1 in segsets[i]:
                    for s2 in segsets[j]:
                        if seg_seg_dist2_3d(*s1, *s2) == 0:
                            bad.append(f"components {i} and {j} intersect")
        return ValidationReport(not bad, bad)
    raise TypeError(f"unsupported object {type(obj)!r}")


def stick_count(obj: StickObject) -> int:
    if isinstance(obj, StickRailArc):
        return len(obj.vertices) - 1
    if isinstance(obj, StickKnot):
        return len(obj.vertices)
    if isinstance(obj, MultiStickRailArc):
        return stick_count(obj.arc) + sum(stick_count(k) for k in obj.knots)
    if isinstance(obj, StickLink):
        return sum(stick_count(k) for k in obj.components)
    raise TypeError(f"unsupported object {type(obj)!r}")


# ---------------------------------------------------------------------------
# Projection
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Crossing:
    """A transverse double point of the projected diagram.

    ``first``/``second`` locate the two strands as (component, segment)
    pairs; parameters are positions along those segments.  ``over_first``
    says whether the first strand has the larger z.  ``sign`` is +1 when
    the over strand crosses the under strand left to right as seen along
    the under strand's orientation.
    """

    first: Tuple[int, int]
    t_first: Fraction
    second: Tuple[int, int]
    t_second: Fraction
    point: Vec2
    over_first: bool
    sign: int


@dataclass(frozen=True)
class GeometricDiagram:
    """A generic polyline immersion in the plane with crossing data.

    Component 0 is the open strand (tail first) when ``has_open`` is
    true; the remaining components are closed loops (closing edge from
    the last vertex back to the first).
    """

    components: Tuple[Tuple[Vec2, ...], ...]
    has_open: bool
    crossings: Tuple[Crossing, ...]

    @property
    def tail(self) -> Vec2:
        if not self.has_open:
            raise GeometryError("closed diagram has no tail")
        return self.components[0][0]

    @property
    def head(self) -> Vec2:
        if not self.has_open:
            raise GeometryError("closed diagram has no head")
        return self.components[0][-1]

    def component_segments(self, ci: int) -> List[Tuple[Vec2, Vec2]]:
        pts = self.components[ci]
        if self.has_open and ci == 0:
            return [(pts[i], pts[i + 1]) for i in range(len(pts) - 1)]
        n = len(pts)
        return [(pts[i], pts[(i + 1) % n]) for i in range(n)]

    def crossing_count(self) -> int:
        return len(self.crossings)


def _components_of(obj: StickObject) -> Tuple[Optional[Tuple[Vec3, ...]], List[Tuple[Vec3, ...]]]:
    if isinstance(obj, StickRailArc):
        return obj.vertices, []
    if isinstance(obj, StickKnot):
        return None, [obj.vertices]
    if isinstance(obj, MultiStickRailArc):
        return obj.arc.vertices, [k.vertices for k in obj.knots]
    if isinstance(obj, StickLink):
        return None, [k.vertices for k in obj.components]
    raise TypeError(f"unsupported object {type(obj)!r}")


def _segments3(open_path, loops):
    """Segments as ((component, index), a, b) triples."""
    out = []
    if open_path is not None:
        for i in range(len(open_path) - 1):
            out.append(((0, i), open_path[i], open_path[i + 1]))
    base = 1 if open_path is not None else 0
    for ci, loop in enumerate(loops):
        n = len(loop)
        for i in range(n):
            out.append(((base + ci, i), loop[i], loop[(i + 1) % n]))
    return out


def _adjacent(key1, key2, open_path, loops, base) -> bool:
    (c1, i1), (c2, i2) = key1, key2
    if c1 != c2:
        return False
    if open_path is not None and c1 == 0:
        return abs(i1 - i2) == 1
    n = len(loops[c1 - base])
    return (i1 - i2) % n in (1, n - 1)


def _try_project(open_path, loops):
    """One exact genericity attempt; returns crossings or a failure str."""
    base = 1 if open_path is not None else 0
    segs = _segments3(open_path, loops)
    proj = [(k, (a[0], a[1]), (b[0], b[1]), a, b) for (k, a, b) in segs]
    for k, p, q, _, _ in proj:
        if p == q:
            return None, "segment projects to a point"
    # vertex-on-segment (including endpoints on other segments)
    vertices2 = []
    if open_path is not None:
        vertices2 += [((0, i), (p[0], p[1])) for i, p in enumerate(open_path)]
    for ci, loop in enumerate(loops):
        vertices2 += [((base + ci, i), (p[0], p[1])) for i, p in enumerate(loop)]
    for vk, vp in vertices2:
        for k, p, q, _, _ in proj:
            vc, vi = vk
            kc, ki = k
            incident = False
            if vc == kc:
                if open_path is not None and vc == 0:
                    incident = vi in (ki, ki + 1)
                else:
                    n = len(loops[vc - base])
                    incident = vi in (ki, (ki + 1) % n)
            if incident:
                continue
            if on_segment2(vp, p, q):
                return None, "vertex lies on a non-incident segment"
    crossings = []
    points_seen = {}
    for i in range(len(proj)):
        k1, p1, q1, a1, b1 = proj[i]
        for j in range(i + 1, len(proj)):
            k2, p2, q2, a2, b2 = proj[j]
            if segments_overlap2(p1, q1, p2, q2):
                return None, "collinear overlapping segments"
            if _adjacent(k1, k2, open_path, loops, base):
                continue
            st = seg_intersect2(p1, q1, p2, q2)
            if st is None:
                continue
            s, t = st
            if not (0 < s < 1 and 0 < t < 1):
                return None, "segment endpoint touches another segment"
            pt = lerp2(p1, q1, s)
            if pt in points_seen:
                return None, "triple point"
            points_seen[pt] = True
            z1 = a1[2] + (b1[2] - a1[2]) * s
            z2 = a2[2] + (b2[2] - a2[2]) * t
            if z1 == z2:
                return None, "strands meet in 3-space"
            over_first = z1 > z2
            if over_first:
                under_dir, over_dir = sub2(q2, p2), sub2(q1, p1)
            else:
                under_dir, over_dir = sub2(q1, p1), sub2(q2, p2)
            sign = 1 if cross2(under_dir, over_dir) < 0 else -1
            crossings.append(
                Crossing(k1, s, k2, t, pt, over_first, sign)
            )
    return crossings, None


def _min_feature_dist2(open_path, loops):
    """Min squared 3D distance among non-adjacent segments, plus the
    distance of interior features to the rails when an open path exists."""
    base = 1 if open_path is not None else 0
    segs = _segments3(open_path, loops)
    best = None
    for i in range(len(segs)):
        k1, a1, b1 = segs[i]
        d2 = dot3(sub3(b1, a1), sub3(b1, a1))
        best = d2 if best is None else min(best, d2)
        for j in range(i + 1, len(segs)):
            k2, a2, b2 = segs[j]
            if _adjacent(k1, k2, open_path, loops, base):
                continue
            d2 = seg_seg_dist2_3d(a1, b1, a2, b2)
            if d2 > 0:
                best = d2 if best is None else min(best, d2)
    if open_path is not None:
        # keep interior vertices clear of both rails
        for ci, pts in enumerate([open_path] + list(loops)):
            for vi, p in enumerate(pts):
                if ci == 0 and vi in (0, len(open_path) - 1):
                    continue
                for rx in RAIL_X:
                    d2 = (p[0] - rx) ** 2 + p[1] ** 2
                    if d2 > 0:
                        best = d2 if best is None else min(best, d2)
    return best if best and best > 0 else Fraction(1)


MAX_PROJECTION_RETRIES = 40


def project(obj: StickObject, seed: int = 0) -> GeometricDiagram:
    """Project onto z=0 with exact crossing data, perturbing by a
    seed-deterministic rational displacement when the projection is not
    generic.  Perturbations are bounded well below half the minimum
    feature separation, preserving the 3D isotopy class."""
    rep = validate(obj)
    if not rep.ok:
        raise GeometryError("invalid input: " + "; ".join(rep.violations))
    open_path, loops = _components_of(obj)
    is_rail = open_path is not None
    crossings, err = _try_project(open_path, loops)
    attempt = 0
    while crossings is None:
        attempt += 1
        if attempt > MAX_PROJECTION_RETRIES:
            raise GeometryError(f"projection stayed non-generic: {err}")
        d2 = _min_feature_dist2(open_path, loops)
        mag = rational_sqrt_lower(d2 / 64) / (2**attempt)
        rng = random.Random((seed, attempt, 0xA5C3))
        N = 257

        def jiggle(p: Vec3, rail_end: bool) -> Vec3:
            dx = Fraction(rng.randrange(-N, N + 1), N) * mag
            dy = Fraction(rng.randrange(-N, N + 1), N) * mag
            dz = Fraction(rng.randrange(-N, N + 1), N) * mag
            if rail_end:
                return (p[0], p[1], p[2] + dz)  # endpoints slide on rails
            return (p[0] + dx, p[1] + dy, p[2] + dz)

        if open_path is not None:
            last = len(open_path) - 1
            open_path = tuple(
                jiggle(p, is_rail and i in (0, last))
                for i, p in enumerate(open_path)
            )
        loops = [tuple(jiggle(p, False) for p in loop) for loop in loops]
        crossings, err = _try_project(open_path, loops)
    comps: List[Tuple[Vec2, ...]] = []
    if open_path is not None:
        comps.append(tuple((p[0], p[1]) for p in open_path))
    for loop in loops:
        comps.append(tuple((p[0], p[1]) for p in loop))
    return GeometricDiagram(tuple(comps), open_path is not None, tuple(crossings))


# ---------------------------------------------------------------------------
# Pass constructions
# ---------------------------------------------------------------------------


MAX_PASS_RETRIES = 64


def two_stick_pass(
    obj: Union[StickRailArc, MultiStickRailArc], side: str
) -> Union[StickKnot, StickLink]:
    """Close the arc with two sticks in the plane y=0 containing the rails.

    The sticks leave the head and tail along the rails at a small angle
    (searched over a decreasing rational sequence and verified exactly)
    so that, in projection, every crossing between the closing sticks
    and the rest of the object lies on the requested side.
    """
    if side not in ("under", "over"):
        raise GeometryError(f"side must be 'under' or 'over', got {side!r}")
    rep = validate(obj)
    if not rep.ok:
        raise GeometryError("invalid input: " + "; ".join(rep.violations))
    if isinstance(obj, MultiStickRailArc):
        arc, knots = obj.arc, obj.knots
    else:
        arc, knots = obj, ()
    zdir = 1 if side == "over" else -1
    z_tail, z_head = arc.tail[2], arc.head[2]
    all_segs = arc.segments() + [s for k in knots for s in k.segments()]
    a = Fraction(1, 4)
    for _ in range(MAX_PASS_RETRIES):
        # tail stick direction (a, 0, zdir); head stick direction (-a, 0, zdir)
        t_par = (Fraction(1, 1) / a - zdir * (z_tail - z_head)) / 2
        s_par = (Fraction(1, 1) / a + zdir * (z_tail - z_head)) / 2
        if t_par > 0 and s_par > 0:
            meet = (a * t_par, Fraction(0), z_tail + zdir * t_par)
            closed = StickKnot.from_points(list(arc.vertices) + [meet])
            if len(closed.vertices) == len(arc.vertices) + 1 and _pass_ok(
                closed, len(arc.vertices), all_segs, side
            ):
                if knots:
                    link = StickLink((closed,) + knots)
                    if validate(link).ok:
                        return link
                else:
                    if validate_knot(closed).ok:
                        return closed
        a /= 2
    raise GeometryError("pass angle search exhausted")


def _side_ok(z_pass, z_arc, side: str) -> bool:
    if z_pass == z_arc:
        return False
    return (z_pass > z_arc) if side == "over" else (z_pass < z_arc)


_JUNCTIONS = ((Fraction(0), Fraction(0)), (Fraction(1), Fraction(0)))


def _pass_ok(closed: StickKnot, m: int, arc_segs, side: str) -> bool:
    """Exact check that both closing sticks stay on the declared side
    wherever their projections meet the rest of the object.  The pass
    lives in the plane y=0, so besides transverse crossings its
    projection can overlap arc segments that also lie in that plane;
    those overlaps are compared z-against-z over the whole interval."""
    verts = closed.vertices
    meet = verts[-1]
    pass_segs = [(verts[-2], meet), (meet, verts[0])]
    for pa, pb in pass_segs:
        p2a, p2b = (pa[0], pa[1]), (pb[0], pb[1])

        def z_pass_at_x(x):
            t = (x - p2a[0]) / (p2b[0] - p2a[0])
            return pa[2] + (pb[2] - pa[2]) * t

        for qa, qb in arc_segs:
            q2a, q2b = (qa[0], qa[1]), (qb[0], qb[1])
            if q2a == q2b:
                # vertical stick; its projection is a single point
                if q2a in _JUNCTIONS or q2a[1] != 0:
                    continue
                if min(p2a[0], p2b[0]) < q2a[0] < max(p2a[0], p2b[0]):
                    if not (_side_ok(z_pass_at_x(q2a[0]), qa[2], side)
                            and _side_ok(z_pass_at_x(q2a[0]), qb[2], side)):
                        return False
                continue
            if segments_overlap2(p2a, p2b, q2a, q2b):
                # both lie along the x-axis; compare z over the overlap
                lo = max(min(p2a[0], p2b[0]), min(q2a[0], q2b[0]))
                hi = min(max(p2a[0], p2b[0]), max(q2a[0], q2b[0]))

                def z_arc_at_x(x):
                    t = (x - q2a[0]) / (q2b[0] - q2a[0])
                    return qa[2] + (qb[2] - qa[2]) * t

                for x in (lo, hi):
                    if (x, Fraction(0)) in _JUNCTIONS and z_pass_at_x(x) == z_arc_at_x(x):
                        continue
                    if not _side_ok(z_pass_at_x(x), z_arc_at_x(x), side):
                        return False
                continue
            st = seg_intersect2(p2a, p2b, q2a, q2b)
            if st is None:
                continue
            s, t = st
            pt = lerp2(p2a, p2b, s)
            if pt in _JUNCTIONS:
                continue  # genuine junction at the tail/head vertex
            z_pass = pa[2] + (pb[2] - pa[2]) * s
            z_arc = qa[2] + (qb[2] - qa[2]) * t
            if not _side_ok(z_pass, z_arc, side):
                return False
    return True


def _perp_basis(d: Vec3) -> Tuple[Vec3, Vec3]:
    """Two rational vectors completing d to a positively oriented basis."""
    axes = [(Fraction(1), Fraction(0), Fraction(0)),
            (Fraction(0), Fraction(1), Fraction(0)),
            (Fraction(0), Fraction(0), Fraction(1))]
    for ax in axes:
        u1 = cross3(d, ax)
        if u1 != (0, 0, 0):
            break
    u2 = cross3(d, u1)
    return u2, u1  # rows (u2, u1, d) have positive determinant


MAX_DROP_RETRIES = 24


def drop_stick(knot: StickKnot, stick_index: int, seed: int = 0) -> StickRailArc:
    """Remove one stick of a knot, turning it into a rail arc.

    The knot is mapped by an orientation-preserving rational linear map
    making the chosen stick vertical (parallel to the rails), perturbed
    so the stick's projection carries no crossings, and the freed
    endpoints are normalized onto the canonical rails.  Both companions
    of the result are the class of ``knot``.
    """
    rep = validate_knot(knot)
    if not rep.ok:
        raise GeometryError("invalid knot: " + "; ".join(rep.violations))
    n = len(knot.vertices)
    if n < 3:
        raise GeometryError("need at least 3 sticks to drop one")
    i = stick_index % n
    a, b = knot.vertices[i], knot.vertices[(i + 1) % n]
    d = sub3(b, a)
    u2, u1 = _perp_basis(d)
    rows = (u2, u1, d)

    def apply(p: Vec3) -> Vec3:
        return (dot3(rows[0], p), dot3(rows[1], p), dot3(rows[2], p))

    verts = [apply(p) for p in knot.vertices]
    # open chain from the far end of the dropped stick around to its start
    chain = [verts[(i + 1 + k) % n] for k in range(n)]  # b ... a
    for attempt in range(MAX_DROP_RETRIES):
        rng = random.Random((seed, attempt, 0xD205))
        if attempt == 0:
            pts = list(chain)
        else:
            d2 = Fraction(1)
            kk = StickKnot(tuple(verts))
            d2 = _min_feature_dist2(None, [kk.vertices])
            mag = rational_sqrt_lower(d2 / 64) / (2 ** attempt)
            N = 257
            pts = [
                (
                    p[0] + Fraction(rng.randrange(-N, N + 1), N) * mag,
                    p[1] + Fraction(rng.randrange(-N, N + 1), N) * mag,
                    p[2] + Fraction(rng.randrange(-N, N + 1), N) * mag,
                )
                for p in chain
            ]
        if not _gap_projection_clear(pts):
            continue
        arc = _normalize_chain_to_rails(pts)
        if arc is None:
            continue
        if not validate_rail_arc(arc).ok:
            continue
        return arc
    raise GeometryError("could not clear the dropped stick's projection")


def _gap_projection_clear(pts: List[Vec3]) -> bool:
    """True iff no chain segment's projection meets the projection of the
    removed stick (the tiny gap between the chain's two ends), so the gap
    can be reconnected on either side without changing the class."""
    g2a = (pts[0][0], pts[0][1])
    g2b = (pts[-1][0], pts[-1][1])
    last = len(pts) - 2
    for k in range(len(pts) - 1):
        q2a = (pts[k][0], pts[k][1])
        q2b = (pts[k + 1][0], pts[k + 1][1])
        if g2a == g2b:
            if k in (0, last):
                continue  # incident at the gap endpoint itself
            if on_segment2(g2a, q2a, q2b):
                return False
            continue
        if segments_overlap2(g2a, g2b, q2a, q2b):
            return False
        st = seg_intersect2(g2a, g2b, q2a, q2b)
        if st is None:
            continue
        s, t = st
        if k == 0 and s == 0 and t == 0:
            continue
        if k == last and s == 1 and t == 1:
            continue
        return False
    return True


def _normalize_chain_to_rails(pts: List[Vec3]) -> Optional[StickRailArc]:
    """Map the chain so its first point lands on x=0,y=0 and its last on
    x=1,y=0, via translation plus a rational rotation-scale of the plane."""
    t0 = pts[0]
    moved = [sub3(p, (t0[0], t0[1], Fraction(0))) for p in pts]
    ex, ey = moved[-1][0], moved[-1][1]
    norm2 = ex * ex + ey * ey
    if norm2 == 0:
        return None
    # complex multiplication by (ex - i ey)/|e|^2 sends (ex, ey) to (1, 0)
    cr, ci = ex / norm2, -ey / norm2

    def rot(p: Vec3) -> Vec3:
        return (cr * p[0] - ci * p[1], ci * p[0] + cr * p[1], p[2])

    return StickRailArc.from_points([rot(p) for p in moved])


