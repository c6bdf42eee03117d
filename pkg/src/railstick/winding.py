"""Winding numbers of closed polygonal curves and the rail winding invariant.

The winding number of a closed curve around a point is accumulated as a
float sum of signed subtended angles and then snapped to the nearest
half-integer; the snap is guarded by a tolerance gate so a degenerate
configuration is rejected instead of silently rounded.  Everything else
(incidence tests, face walks, intersection counts) is exact rational
arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .exact import (
    Vec2,
    cross2,
    dot2,
    on_segment2,
    seg_intersect2,
    segments_overlap2,
    sort_ccw,
    sub2,
)
from .geometry import GeometricDiagram, GeometryError

SNAP_TOL = 1e-6

BASEPOINT = "basepoint"


class WindingError(ValueError):
    pass


@dataclass(frozen=True)
class ClosedPolygonalCurve:
    """A closed polygonal curve with an optional marked basepoint vertex.

    ``points`` is read cyclically; consecutive points must be distinct.
    ``basepoint`` is an index into ``points`` marking a smoothed junction
    (the two incident segments are excluded when winding is evaluated
    there).
    """

    points: Tuple[Vec2, ...]
    basepoint: Optional[int] = None

    def __post_init__(self):
        pts = tuple(self.points)
        object.__setattr__(self, "points", pts)
        if len(pts) < 2:
            raise WindingError("closed curve needs at least 2 points")
        n = len(pts)
        for i in range(n):
            if pts[i] == pts[(i + 1) % n]:
                raise WindingError("consecutive points coincide")
        if self.basepoint is not None and not (0 <= self.basepoint < n):
            raise WindingError("basepoint index out of range")

    def segments(self) -> List[Tuple[Vec2, Vec2]]:
        n = len(self.points)
        return [(self.points[i], self.points[(i + 1) % n]) for i in range(n)]


def _snap_half_integer(total_angle: float) -> Fraction:
    """Snap an angle sum (radians) to the nearest half-integer number of
    turns, rejecting values outside the tolerance gate."""
    turns = total_angle / (2.0 * math.pi)
    nearest = round(turns * 2.0) / 2.0
    if abs(turns - nearest) >= SNAP_TOL:
        raise WindingError(
            "winding %.9f turns is not within %g of a half-integer"
            % (turns, SNAP_TOL)
        )
    return Fraction(round(turns * 2.0), 2)


def winding_at(gamma: ClosedPolygonalCurve, p) -> Fraction:
    """Winding number of ``gamma`` around ``p`` as an exact half-integer.

    ``p`` is either a planar point not on the curve, or the literal
    string ``"basepoint"`` to evaluate at the marked basepoint; there the
    two incident segments are skipped (their subtended angle at the
    basepoint is identically zero, which realises the smoothing of the
    junction).
    """
    if p == BASEPOINT:
        if gamma.basepoint is None:
            raise WindingError("curve has no marked basepoint")
        base = gamma.basepoint
        centre = gamma.points[base]
    else:
        base = None
        centre = p
    n = len(gamma.points)
    segs = gamma.segments()
    cx, cy = float(centre[0]), float(centre[1])
    total = 0.0
    for i, (a, b) in enumerate(segs):
        if base is not None and (i == base or (i + 1) % n == base):
            continue
        if on_segment2(centre, a, b):
            raise WindingError("point lies on the curve")
        ax, ay = float(a[0]) - cx, float(a[1]) - cy
        bx, by = float(b[0]) - cx, float(b[1]) - cy
        total += math.atan2(ax * by - ay * bx, ax * bx + ay * by)
    if base is not None:
        # smoothing term at the junction: the curve's winding at its own
        # regular point is the mean of the two adjacent side windings,
        # which adds the principal corner angle j folded by -pi*sgn(j);
        # for a straight passage (incident segments collinear) the chain
        # sum alone is already exact.
        prev = gamma.points[(base - 1) % n]
        nxt = gamma.points[(base + 1) % n]
        u = sub2(prev, centre)
        w = sub2(nxt, centre)
        if cross2(u, w) != 0:
            j = math.atan2(
                float(cross2(u, w)), float(dot2(u, w))
            )
            total += j - math.pi * (1.0 if j > 0 else -1.0)
        elif dot2(u, w) > 0:
            raise WindingError("cusp at basepoint")
    return _snap_half_integer(total)


# ---------------------------------------------------------------------------
# Algebraic intersection number
# ---------------------------------------------------------------------------


def _diagram_segments(g: GeometricDiagram) -> List[Tuple[Vec2, Vec2]]:
    out: List[Tuple[Vec2, Vec2]] = []
    for ci in range(len(g.components)):
        out.extend(g.component_segments(ci))
    return out


def algebraic_intersection(alpha: Sequence[Vec2], kappa: GeometricDiagram) -> int:
    """Signed transverse intersection count of the arc ``alpha`` with the
    diagram ``kappa``, excluding the endpoints of ``alpha``.

    Each crossing where ``alpha`` passes from the right side of a strand
    to its left side counts +1, the opposite sense counts -1.  Any
    non-transverse contact (touching, overlap, passage through a vertex)
    is rejected.
    """
    pts = list(alpha)
    if len(pts) < 2:
        raise WindingError("alpha needs at least 2 points")
    total = 0
    ksegs = _diagram_segments(kappa)
    first, last = pts[0], pts[-1]
    for i in range(len(pts) - 1):
        a, b = pts[i], pts[i + 1]
        for c, d in ksegs:
            if segments_overlap2(a, b, c, d):
                raise WindingError("alpha overlaps a strand")
            hit = seg_intersect2(a, b, c, d)
            if hit is None:
                continue
            s, t = hit
            x = (a[0] + s * (b[0] - a[0]), a[1] + s * (b[1] - a[1]))
            if x == first or x == last:
                continue  # junction points are excluded by definition
            if s == 0 or s == 1 or t == 0 or t == 1:
                raise WindingError("non-transverse intersection at a vertex")
            adir = sub2(b, a)
            kdir = sub2(d, c)
            # alpha crosses from the strand's right to its left exactly
            # when alpha's direction is counterclockwise from the strand's.
            total += 1 if cross2(adir, kdir) > 0 else -1
    return total


# ---------------------------------------------------------------------------
# Exact planar subdivision of a diagram
# ---------------------------------------------------------------------------


class _Subdivision:
    """Planar subdivision of a generic diagram: polyline vertices plus
    crossing points as nodes, sub-segments as straight edges, and the
    counterclockwise rotation system those induce."""

    def __init__(self, g: GeometricDiagram):
        self.g = g
        self.node_of: Dict[Vec2, int] = {}
        self.coords: List[Vec2] = []
        self.adj: Dict[int, List[int]] = {}
        self.edges: List[Tuple[int, int]] = []  # directed half-edges

        def node(p: Vec2) -> int:
            idx = self.node_of.get(p)
            if idx is None:
                idx = len(self.coords)
                self.node_of[p] = idx
                self.coords.append(p)
                self.adj[idx] = []
            return idx

        # crossing points indexed per (component, segment)
        on_seg: Dict[Tuple[int, int], List[Tuple[Fraction, Vec2]]] = {}
        for cr in g.crossings:
            on_seg.setdefault(cr.first, []).append((cr.t_first, cr.point))
            on_seg.setdefault(cr.second, []).append((cr.t_second, cr.point))

        half: List[Tuple[int, int]] = []
        for ci in range(len(g.components)):
            for si, (a, b) in enumerate(g.component_segments(ci)):
                chain = [a]
                for _, p in sorted(on_seg.get((ci, si), [])):
                    chain.append(p)
                chain.append(b)
                for u, v in zip(chain, chain[1:]):
                    nu, nv = node(u), node(v)
                    half.append((nu, nv))
                    half.append((nv, nu))
        # deduplicate (closed 2-gons from doubled vertices cannot occur in
        # a generic diagram, so a plain set is safe)
        self.edges = sorted(set(half))
        for u, v in self.edges:
            self.adj[u].append(v)
        # ccw rotation at every node
        self.rot: Dict[int, List[int]] = {}
        for u, nbrs in self.adj.items():
            vecs = [sub2(self.coords[v], self.coords[u]) for v in nbrs]
            order = sort_ccw(vecs)
            self.rot[u] = [nbrs[k] for k in order]

    def face_next(self, u: int, v: int) -> Tuple[int, int]:
        """Successor of half-edge (u, v) on the face to its left: the
        clockwise neighbour of the reversed edge at v."""
        ring = self.rot[v]
        i = ring.index(u)
        return (v, ring[(i - 1) % len(ring)])

    def face_orbit(self, u: int, v: int) -> List[Tuple[int, int]]:
        start = (u, v)
        out = [start]
        cur = self.face_next(u, v)
        while cur != start:
            out.append(cur)
            cur = self.face_next(*cur)
        return out


def _boundary_walk_head_to_tail(g: GeometricDiagram) -> Optional[List[Vec2]]:
    """Node coordinates of the face-boundary walk from the head to the
    tail along their common face, or None when no common face exists."""
    sub = _Subdivision(g)
    h = sub.node_of[g.head]
    t = sub.node_of[g.tail]
    if len(sub.rot[h]) != 1 or len(sub.rot[t]) != 1:
        raise WindingError("endpoint is not a free vertex")
    orbit = sub.face_orbit(h, sub.rot[h][0])
    walk = [sub.coords[h]]
    for u, v in orbit:
        walk.append(sub.coords[v])
        if v == t:
            return walk
    return None


def _perp(v: Vec2) -> Vec2:
    return (-v[1], v[0])


def _offset_arc(walk: List[Vec2], eps: Fraction) -> List[Vec2]:
    """Push the interior vertices of a face-boundary walk off the boundary
    into the face, which lies to the left of the walk.

    Convex (left-turn) corners take the miter point where the two offset
    lines meet; reflex (right-turn) corners get a three-point fan over the
    edge normals so the arc rounds the corner without clipping it.
    """
    out = [walk[0]]
    for i in range(1, len(walk) - 1):
        u = sub2(walk[i], walk[i - 1])
        w = sub2(walk[i + 1], walk[i])
        su = abs(u[0]) + abs(u[1])
        sw = abs(w[0]) + abs(w[1])
        nu = (-u[1] * eps / su, u[0] * eps / su)
        nw = (-w[1] * eps / sw, w[0] * eps / sw)
        a = (walk[i][0] + nu[0], walk[i][1] + nu[1])
        b = (walk[i][0] + nw[0], walk[i][1] + nw[1])
        turn = cross2(u, w)
        if turn > 0:
            t = cross2(sub2(b, a), w) / turn
            out.append((a[0] + t * u[0], a[1] + t * u[1]))
        else:
            m = (
                walk[i][0] + (nu[0] + nw[0]) / 2,
                walk[i][1] + (nu[1] + nw[1]) / 2,
            )
            out.extend([a, m, b])
    out.append(walk[-1])
    # drop exact duplicates that a tight corner might produce
    dedup = [out[0]]
    for p in out[1:]:
        if p != dedup[-1]:
            dedup.append(p)
    return dedup


def _arc_is_clear(alpha: List[Vec2], g: GeometricDiagram) -> bool:
    """True iff alpha is embedded and its interior avoids the diagram."""
    asegs = [(alpha[i], alpha[i + 1]) for i in range(len(alpha) - 1)]
    # self-intersection
    for i in range(len(asegs)):
        for j in range(i + 1, len(asegs)):
            a, b = asegs[i]
            c, d = asegs[j]
            if segments_overlap2(a, b, c, d):
                return False
            hit = seg_intersect2(a, b, c, d)
            if hit is None:
                continue
            if j == i + 1 and b == c:
                continue
            if j == len(asegs) - 1 and i == 0 and alpha[0] == alpha[-1]:
                continue
            return False
    # clearance from the diagram: only the two junction points may touch
    ends = {alpha[0], alpha[-1]}
    for a, b in asegs:
        for c, d in _diagram_segments(g):
            if segments_overlap2(a, b, c, d):
                return False
            hit = seg_intersect2(a, b, c, d)
            if hit is None:
                continue
            s, _ = hit
            x = (a[0] + s * (b[0] - a[0]), a[1] + s * (b[1] - a[1]))
            if x in ends:
                continue
            return False
    return True


def closure_arc(g: GeometricDiagram, max_tries: int = 12) -> Optional[List[Vec2]]:
    """An embedded rational polyline from head to tail inside their common
    complementary face, or None when the endpoints share no face.

    The arc follows the face boundary pushed slightly off into the face;
    the push-off shrinks geometrically until the exact clearance checks
    pass.
    """
    walk = _boundary_walk_head_to_tail(g)
    if walk is None:
        return None
    # subdivide edges at midpoints so even a two-node walk (single-segment
    # diagram) gains interior vertices to push off, and chords hug the
    # boundary more closely
    refined = [walk[0]]
    for p, q in zip(walk, walk[1:]):
        refined.append(((p[0] + q[0]) / 2, (p[1] + q[1]) / 2))
        refined.append(q)
    walk = refined
    eps = Fraction(1, 4)
    for _ in range(max_tries):
        alpha = _offset_arc(walk, eps)
        if len(alpha) >= 2 and _arc_is_clear(alpha, g):
            return alpha
        eps /= 4
    raise WindingError("face routing failed: push-off retries exhausted")


def rail_winding(g: GeometricDiagram) -> Optional[int]:
    """The winding invariant of a rail arc's diagram.

    When head and tail lie on a common complementary face, an embedded
    closure arc is routed through that face, junctions are smoothed, and
    the result is sgn(w) * floor(|w|) for the half-integer winding w of
    the closed curve at the head.  Returns None when no common face
    exists.
    """
    if not g.has_open:
        raise GeometryError("rail winding needs an open component")
    alpha = closure_arc(g)
    if alpha is None:
        return None
    # closed cycle: kappa tail->head, then alpha's interior head->tail
    cycle = list(g.components[0]) + alpha[1:-1]
    base = len(g.components[0]) - 1
    gamma = ClosedPolygonalCurve(tuple(cycle), basepoint=base)
    w = winding_at(gamma, BASEPOINT)
    for ci in range(1, len(g.components)):
        loop = ClosedPolygonalCurve(tuple(g.components[ci]))
        w += winding_at(loop, g.head)
    s = 1 if w > 0 else (-1 if w < 0 else 0)
    return s * math.floor(abs(w))


def map_winding(m) -> Optional[int]:
    """The winding invariant computed combinatorially on a plane map.

    Defined when the head and tail corners lie on a common face: the
    closing arc splits that face in two, every face of the closed-up
    curve gets an integer potential (unbounded face 0, stepping by one
    across each strand), and the value at the head is the mean of its two
    incident potentials.  Returns None when no common face exists.
    Closed pieces never contribute: separate pieces carry no recorded
    nesting, so only single-piece diagrams (plus free loops) are
    accepted.
    """
    from .planarmap import MapError

    if not m.has_open():
        raise MapError("map winding needs an open strand")
    if any(not p.is_open() for p in m.pieces):
        raise MapError("map winding of a multi-piece diagram is ambiguous")
    p = m.open_piece()
    if p.crossing_count() == 0:
        return 0
    h, t = p.head_node(), p.tail_node()
    faces = p.faces()
    fid = {d: i for i, orb in enumerate(faces) for d in orb}
    F = fid[(h, 0)]
    if fid[(t, 0)] != F:
        return None
    orbit = faces[F]
    ih, it = orbit.index((h, 0)), orbit.index((t, 0))
    # the two boundary arcs of F between the endpoint corners; the closing
    # arc alpha (head to tail) has side A on its left
    side: Dict[Tuple[int, int], str] = {}
    j = (ih + 1) % len(orbit)
    while j != it:
        side[orbit[j]] = "A"
        j = (j + 1) % len(orbit)
    j = (it + 1) % len(orbit)
    while j != ih:
        side[orbit[j]] = "B"
        j = (j + 1) % len(orbit)

    def node_of(face_index, dart):
        if face_index != F:
            return face_index
        return side.get(dart, "A")  # endpoint corners touch both sides

    # potential graph: darts give signed adjacencies, alpha contributes one
    skip = {(h, 0), p.conn[(h, 0)], (t, 0), p.conn[(t, 0)]}
    adj: Dict[object, List[Tuple[object, int]]] = {}

    def add(a, b, delta):
        adj.setdefault(a, []).append((b, delta))
        adj.setdefault(b, []).append((a, -delta))

    for d in p.conn:
        if d in skip or d > p.conn[d]:
            continue
        e = p.conn[d]
        out_end = d if d in p.out else e
        left = node_of(fid[out_end], out_end)
        right = node_of(fid[p.conn[out_end]], p.conn[out_end])
        add(right, left, 1)
    add("A", "B", 1)  # alpha hugs the A-side boundary, which sits to its right

    # when the common face is unbounded the closure hugs the head-to-tail
    # stretch of its boundary, so the far side stays unbounded
    outer_face = fid[p.outer]
    start = "B" if outer_face == F else outer_face
    pot = {start: 0}
    queue = [start]
    while queue:
        u = queue.pop()
        for v, delta in adj.get(u, ()):
            if v not in pot:
                pot[v] = pot[u] + delta
                queue.append(v)
    w = Fraction(pot["A"] + pot["B"], 2)
    s = 1 if w > 0 else (-1 if w < 0 else 0)
    return s * math.floor(abs(w))
