"""Polynomial invariants of PD codes and companion identification.

Determinants come from the Goeritz matrix of a checkerboard colouring,
Alexander polynomials from Fox calculus on the Wirtinger presentation,
and Jones polynomials from the Kauffman bracket state sum (capped at 16
crossings).  Identification matches the tuple (component count,
determinant, Jones, Alexander, linking profile) against the catalog's
self-computed tuples.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Set, Tuple

import sympy

from .exact import cross2, sub2
from .pd import PDCode, PDError, reduce_pd
from .polynomials import LaurentPolynomial

JONES_CROSSING_CAP = 16

Dart = Tuple[int, int]  # (crossing index, slot)


def pd_faces(pd: PDCode) -> List[List[Dart]]:
    """Faces of the sphere embedding induced by the PD rotation system.

    Dart (c, k) stands for the corner of crossing c between slots k and
    k+1; each face is the orbit of its corners.
    """
    occ: Dict[int, List[Dart]] = {}
    for ci, quad in enumerate(pd.crossings):
        for sl, e in enumerate(quad):
            occ.setdefault(e, []).append((ci, sl))
    conn: Dict[Dart, Dart] = {}
    for e, (d1, d2) in occ.items():
        conn[d1] = d2
        conn[d2] = d1

    def face_next(d: Dart) -> Dart:
        c, s = conn[d]
        return (c, (s - 1) % 4)

    seen: Set[Dart] = set()
    faces: List[List[Dart]] = []
    for ci in range(len(pd.crossings)):
        for sl in range(4):
            d = (ci, sl)
            if d in seen:
                continue
            orbit = [d]
            seen.add(d)
            cur = face_next(d)
            while cur != d:
                orbit.append(cur)
                seen.add(cur)
                cur = face_next(cur)
            faces.append(orbit)
    return faces


def _is_connected(pd: PDCode) -> bool:
    if not pd.crossings:
        return pd.free_loops <= 1
    if pd.free_loops:
        return False
    adj: Dict[int, Set[int]] = {}
    where: Dict[int, List[int]] = {}
    for ci, quad in enumerate(pd.crossings):
        for e in quad:
            where.setdefault(e, []).append(ci)
    for places in where.values():
        a, b = places
        adj.setdefault(a, set()).add(b)
        adj.setdefault(b, set()).add(a)
    seen = {0}
    todo = [0]
    while todo:
        c = todo.pop()
        for d in adj.get(c, ()):
            if d not in seen:
                seen.add(d)
                todo.append(d)
    return len(seen) == len(pd.crossings)


def determinant(pd: PDCode) -> int:
    """Knot/link determinant via the Goeritz matrix of a checkerboard
    colouring of the diagram's faces."""
    pd = reduce_pd(pd)
    if not pd.crossings:
        return 1 if pd.free_loops == 1 else 0
    if not _is_connected(pd):
        return 0
    faces = pd_faces(pd)
    face_of: Dict[Dart, int] = {}
    for fi, orbit in enumerate(faces):
        for d in orbit:
            face_of[d] = fi
    # checkerboard colouring: corners adjacent around a crossing alternate
    colour: Dict[int, int] = {}
    todo = [(face_of[(0, 0)], 0)]
    while todo:
        fi, col = todo.pop()
        if fi in colour:
            if colour[fi] != col:
                raise PDError("diagram is not checkerboard colourable")
            continue
        colour[fi] = col
        for ci, sl in faces[fi]:
            nb = face_of[(ci, (sl + 1) % 4)]
            todo.append((nb, 1 - col))
    white = sorted(fi for fi, col in colour.items() if col == 0)
    widx = {fi: i for i, fi in enumerate(white)}
    m = len(white)
    G = [[0] * m for _ in range(m)]
    for ci in range(len(pd.crossings)):
        pair = (0, 2) if colour[face_of[(ci, 0)]] == 0 else (1, 3)
        # crossing type: which opposite corner pair is white, taken
        # relative to the over/under structure
        eta = 1 if pair == (0, 2) else -1
        f1 = widx.get(face_of[(ci, pair[0])])
        f2 = widx.get(face_of[(ci, pair[1])])
        if f1 is None or f2 is None or f1 == f2:
            continue
        G[f1][f2] -= eta
        G[f2][f1] -= eta
        G[f1][f1] += eta
        G[f2][f2] += eta
    if m <= 1:
        return 1
    M = sympy.Matrix([row[:-1] for row in G[:-1]])
    return abs(int(M.det()))


# ---------------------------------------------------------------------------
# Alexander polynomial (Fox calculus on the Wirtinger presentation)
# ---------------------------------------------------------------------------


def _arc_of_edge(pd: PDCode) -> Dict[int, int]:
    """Merge edges across over-passages into Wirtinger arcs."""
    parent: Dict[int, int] = {}

    def find(x: int) -> int:
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for quad in pd.crossings:
        for e in quad:
            find(e)
        parent[find(quad[1])] = find(quad[3])
    return {e: find(e) for e in parent}


def alexander(pd: PDCode) -> LaurentPolynomial:
    """Alexander polynomial of a knot PD, normalized symmetric with
    positive leading coefficient."""
    pd = reduce_pd(pd)
    if pd.n_components() != 1:
        raise PDError("alexander is implemented for knots only")
    if not pd.crossings:
        return LaurentPolynomial.one()
    arc = _arc_of_edge(pd)
    arcs = sorted(set(arc.values()))
    aidx = {a: i for i, a in enumerate(arcs)}
    t = sympy.Symbol("t")
    n = len(pd.crossings)
    M = sympy.zeros(n, len(arcs))
    for ri, (quad, s) in enumerate(zip(pd.crossings, pd.signs)):
        under_in = aidx[arc[quad[0]]]
        under_out = aidx[arc[quad[2]]]
        over = aidx[arc[quad[1]]]
        if s > 0:
            M[ri, under_in] += t
            M[ri, under_out] += -1
            M[ri, over] += 1 - t
        else:
            M[ri, under_in] += 1
            M[ri, under_out] += -t
            M[ri, over] += t - 1
    minor = M[: n - 1, : len(arcs) - 1]
    det = sympy.expand(minor.det(method="berkowitz"))
    poly = sympy.Poly(sympy.cancel(det), t)
    coeffs: Dict[int, int] = {}
    for (e,), c in poly.terms():
        coeffs[int(e)] = int(c)
    lp = LaurentPolynomial.make(coeffs)
    if lp.is_zero():
        return lp
    lp = lp.normalized_symmetric()
    if not lp.is_symmetric():
        raise PDError("alexander polynomial failed symmetry check")
    return lp


# ---------------------------------------------------------------------------
# Kauffman bracket and Jones polynomial
# ---------------------------------------------------------------------------


def _bracket(pd: PDCode) -> LaurentPolynomial:
    """Kauffman bracket in the variable A (unnormalized)."""
    n = len(pd.crossings)
    delta = LaurentPolynomial.make({2: -1, -2: -1}, "A")
    total: Dict[int, int] = {}
    labels = sorted({e for quad in pd.crossings for e in quad})
    lidx = {e: i for i, e in enumerate(labels)}
    for state in range(1 << n):
        parent = list(range(len(labels)))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(x: int, y: int):
            parent[find(x)] = find(y)

        a_count = 0
        for ci, quad in enumerate(pd.crossings):
            a, b, c, d = (lidx[e] for e in quad)
            if state & (1 << ci):
                a_count += 1
                union(a, d)
                union(b, c)
            else:
                union(a, b)
                union(c, d)
        loops = len({find(i) for i in range(len(labels))})
        loops += pd.free_loops
        # contribution A^(a - b) * delta^(loops - 1)
        term = LaurentPolynomial.monomial(a_count - (n - a_count), 1, "A")
        for _ in range(loops - 1):
            term = term * delta
        for e, c in term.coeffs:
            total[e] = total.get(e, 0) + c
    if n == 0:
        # bare unlink of free_loops components
        term = LaurentPolynomial.one("A")
        for _ in range(max(0, pd.free_loops - 1)):
            term = term * delta
        return term
    return LaurentPolynomial.make(total, "A")


def bracket_jones(pd: PDCode) -> LaurentPolynomial:
    """Jones polynomial from the Kauffman bracket, as a Laurent polynomial
    in s = t^(1/2) (integer exponents in s)."""
    pd = reduce_pd(pd)
    if len(pd.crossings) > JONES_CROSSING_CAP:
        raise PDError(
            "crossing cap exceeded: %d > %d"
            % (len(pd.crossings), JONES_CROSSING_CAP)
        )
    if not pd.crossings and pd.free_loops == 0:
        raise PDError("empty diagram")
    br = _bracket(pd)
    w = pd.writhe()
    # f = (-A^3)^(-w) * <L>, then substitute A = s^(-1) ... A^(-2) = s
    f = br.scale((-1) ** w, -3 * w)
    coeffs: Dict[int, int] = {}
    for e, c in f.coeffs:
        if e % 2 != 0:
            raise PDError("bracket normalization produced odd exponent")
        coeffs[-e // 2] = coeffs.get(-e // 2, 0) + c
    return LaurentPolynomial.make(coeffs, "s")


def jones_text(p: LaurentPolynomial) -> str:
    """Render a Jones polynomial in s = t^(1/2) using t exponents."""
    parts = []
    for e, c in reversed(p.coeffs):
        if e % 2 == 0:
            mono = "1" if e == 0 else ("t" if e == 2 else "t^%d" % (e // 2))
        else:
            mono = "t^(%d/2)" % e
        if mono == "1":
            term = str(abs(c))
        else:
            term = mono if abs(c) == 1 else "%d*%s" % (abs(c), mono)
        if not parts:
            parts.append(("-" if c < 0 else "") + term)
        else:
            parts.append((" - " if c < 0 else " + ") + term)
    return "".join(parts) if parts else "0"


# ---------------------------------------------------------------------------
# Identification
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class InvariantTuple:
    """The identification tuple; ``jones`` is None past the crossing cap."""

    components: int
    det: int
    jones: Optional[Tuple[Tuple[int, int], ...]]
    alex: Optional[Tuple[Tuple[int, int], ...]]
    linking: Tuple[int, ...]

    def matches(self, other: "InvariantTuple") -> bool:
        if self.components != other.components:
            return False
        if self.det != other.det:
            return False
        if self.linking != other.linking:
            return False
        if self.jones is not None and other.jones is not None:
            if self.jones != other.jones:
                return False
        if self.alex is not None and other.alex is not None:
            if self.alex != other.alex:
                return False
        return True


def invariant_tuple(pd: PDCode) -> InvariantTuple:
    pd = reduce_pd(pd)
    comps = pd.n_components()
    det = determinant(pd)
    jones: Optional[Tuple[Tuple[int, int], ...]] = None
    if len(pd.crossings) <= JONES_CROSSING_CAP:
        jones = bracket_jones(pd).coeffs
    alex = None
    if comps == 1:
        alex = alexander(pd).coeffs
    return InvariantTuple(comps, det, jones, alex, pd.linking_profile())


def identify(pd: PDCode) -> List[str]:
    """Names of catalog entries whose invariant tuple matches; empty means
    unidentified, several mean ambiguous."""
    from . import knotdata

    tup = invariant_tuple(pd)
    return [name for name, ref in knotdata.reference_tuples() if tup.matches(ref)]


# ---------------------------------------------------------------------------
# PD codes from geometry: closed diagrams and endpoint closures
# ---------------------------------------------------------------------------


def _pd_from_events(comp_events, sign_of, free_loops: int = 0) -> PDCode:
    """Assemble a PD code from per-component ordered passage lists.

    Each entry of ``comp_events`` is the cyclic sequence of passages
    ``(key, role)`` along one closed component, role 'u' or 'o';
    ``sign_of`` maps every crossing key to its sign (insertion order fixes
    the crossing order of the result).  Components without passages are
    counted as free loops."""
    label: Dict[Tuple[object, str, str], int] = {}
    nxt = 1
    free = free_loops
    for evs in comp_events:
        if not evs:
            free += 1
            continue
        first = nxt
        for j, (key, role) in enumerate(evs):
            label[(key, role, "in")] = first + len(evs) - 1 if j == 0 else nxt - 1
            label[(key, role, "out")] = nxt
            nxt += 1
    quads: List[Tuple[int, int, int, int]] = []
    signs: List[int] = []
    for key, sgn in sign_of.items():
        ui, uo = label[(key, "u", "in")], label[(key, "u", "out")]
        oi, oo = label[(key, "o", "in")], label[(key, "o", "out")]
        quads.append((ui, oi, uo, oo) if sgn > 0 else (ui, oo, uo, oi))
        signs.append(sgn)
    return PDCode(tuple(quads), tuple(signs), free)


def _pd_from_cycles(cycles, records) -> PDCode:
    """PD code of a union of closed plane polygons with crossing records.

    Each record is ``((c1, s1, t1), (c2, s2, t2), over_first)`` locating a
    transverse double point on two (component, segment, parameter) spots.
    Crossing signs are recomputed from the exact segment directions, so the
    record order carries no orientation information of its own.
    """

    def seg_dir(c, s):
        pts = cycles[c]
        return sub2(pts[(s + 1) % len(pts)], pts[s])

    events: List[List[Tuple]] = [[] for _ in cycles]
    for idx, (e1, e2, over_first) in enumerate(records):
        events[e1[0]].append((e1[1], e1[2], idx, over_first))
        events[e2[0]].append((e2[1], e2[2], idx, not over_first))

    sign_of: Dict[object, int] = {}
    for idx, (e1, e2, over_first) in enumerate(records):
        d1 = seg_dir(e1[0], e1[1])
        d2 = seg_dir(e2[0], e2[1])
        du, do = (d2, d1) if over_first else (d1, d2)
        sign_of[idx] = 1 if cross2(du, do) > 0 else -1
    comp_events = [
        [(idx, "o" if is_over else "u")
         for _, _, idx, is_over in sorted(evs, key=lambda e: (e[0], e[1]))]
        for evs in events
    ]
    return _pd_from_events(comp_events, sign_of)


def pd_of_diagram(g: "GeometricDiagram") -> PDCode:
    """PD code of a closed geometric diagram (a projected knot or link)."""
    if g.has_open:
        raise PDError("open diagrams need a closure; see companion()")
    records = [
        ((x.first[0], x.first[1], x.t_first),
         (x.second[0], x.second[1], x.t_second), x.over_first)
        for x in g.crossings
    ]
    return _pd_from_cycles(list(g.components), records)


def _closure_candidates(g):
    """Deterministic endpoint-closure polylines to try, straight first."""
    h, t = g.head, g.tail
    yield [h, t]
    mid = ((h[0] + t[0]) / 2, (h[1] + t[1]) / 2)
    d = sub2(t, h)
    perp = (-d[1], d[0])
    for num, den in ((1, 4), (-1, 4), (1, 2), (-1, 2), (1, 8), (-1, 8),
                     (3, 4), (-3, 4), (3, 2), (-3, 2), (5, 2), (-5, 2),
                     (9, 2), (-9, 2), (17, 2), (-17, 2)):
        f = Fraction(num, den)
        yield [h, (mid[0] + perp[0] * f, mid[1] + perp[1] * f), t]


def _alpha_records(g, alpha, side):
    """Crossing records of the closure polyline against the diagram, or
    None when the routing is not generic (vertex hits, overlaps, triple
    points).  Records are indexed for the closed-up cycle list where the
    interior closure vertices extend component 0."""
    from .exact import seg_intersect2, segments_overlap2

    base = len(g.components[0]) - 1  # first closure segment index
    ends = {g.head, g.tail}
    xpoints = {x.point for x in g.crossings}
    records = []
    asegs = [(alpha[i], alpha[i + 1]) for i in range(len(alpha) - 1)]
    # the closure must not fold back onto itself
    for (a, b), (c, d) in itertools.combinations(asegs, 2):
        if segments_overlap2(a, b, c, d):
            return None
    for j, (a, b) in enumerate(asegs):
        for ci in range(len(g.components)):
            for si, (c, d) in enumerate(g.component_segments(ci)):
                if segments_overlap2(a, b, c, d):
                    return None
                hit = seg_intersect2(a, b, c, d)
                if hit is None:
                    continue
                s, t = hit
                x = (a[0] + s * (b[0] - a[0]), a[1] + s * (b[1] - a[1]))
                if x in ends:
                    if (s == 0 or s == 1) and (t == 0 or t == 1):
                        continue  # shared junction vertex
                    return None
                if s == 0 or s == 1 or t == 0 or t == 1:
                    return None
                if x in xpoints:
                    return None
                records.append(((0, base + j, s), (ci, si, t), side == "over"))
    return records


def companion(obj, side: str) -> PDCode:
    """PD code of the knot or link obtained by closing the open strand
    with an arc whose new crossings all pass on the given side.

    Accepts an open :class:`GeometricDiagram` (arc routed through exact
    coordinates) or a :class:`KnotoidMap` (arc routed through a shortest
    dual path of faces); closed diagrams are delegated to
    :func:`pd_of_diagram`.
    """
    from .geometry import GeometricDiagram
    from .planarmap import KnotoidMap

    if side not in ("under", "over"):
        raise PDError(f"side must be 'under' or 'over', not {side!r}")
    if isinstance(obj, KnotoidMap):
        return _companion_map(obj, side)
    if not isinstance(obj, GeometricDiagram):
        raise PDError("companion needs a GeometricDiagram or KnotoidMap")
    g = obj
    if not g.has_open:
        return pd_of_diagram(g)
    old = [
        ((x.first[0], x.first[1], x.t_first),
         (x.second[0], x.second[1], x.t_second), x.over_first)
        for x in g.crossings
    ]
    for alpha in _closure_candidates(g):
        new = _alpha_records(g, alpha, side)
        if new is None:
            continue
        cycles = [tuple(g.components[0]) + tuple(alpha[1:-1])]
        cycles.extend(g.components[1:])
        return _pd_from_cycles(cycles, old + new)
    from .winding import closure_arc

    alpha = closure_arc(g)  # crossing-free routing, if one exists
    if alpha is not None:
        cycles = [tuple(g.components[0]) + tuple(alpha[1:-1])]
        cycles.extend(g.components[1:])
        return _pd_from_cycles(cycles, old)
    raise PDError("no generic closure routing found")


def _piece_strand_walks(piece) -> List[List[Dart]]:
    """Out-darts of every strand of a piece, the tail-to-head walk first
    when the piece carries the open strand."""
    walks: List[List[Dart]] = []
    seen: Set[Dart] = set()
    if piece.is_open():
        w = piece.strands_from((piece.tail_node(), 0))
        walks.append(w)
        seen.update(w)
    for d in sorted(piece.out):
        if d in seen:
            continue
        w = piece.strands_from(d)
        walks.append(w)
        seen.update(w)
    return walks


def _walk_passages(piece, walk, hits, edge_role):
    """Passage events along a strand walk: crossings by in-dart, plus the
    closure-arc crossings recorded in ``hits`` on traversed edges."""
    evs = []
    for d in walk:
        i = hits.get(frozenset((d, piece.conn[d])))
        if i is not None:
            evs.append((("a", i), edge_role))
        nd = piece.conn[d]
        n, _ = nd
        if piece.kinds[n] == "x":
            evs.append((("x", id(piece), n), "o" if piece.is_over(nd) else "u"))
    return evs


def _dual_closure_path(piece) -> List[Dart]:
    """Darts whose edges a head-to-tail closure arc crosses, found as a
    shortest path in the face adjacency graph; each crossed edge is left
    through the face lying to the crossed dart's left."""
    import collections

    faces = piece.faces()
    face_id = {d: i for i, orbit in enumerate(faces) for d in orbit}
    start = face_id[(piece.head_node(), 0)]
    goal = face_id[(piece.tail_node(), 0)]
    prev: Dict[int, Optional[Tuple[int, Dart]]] = {start: None}
    queue = collections.deque([start])
    while queue:
        f = queue.popleft()
        if f == goal:
            break
        for d in faces[f]:
            other = face_id[piece.conn[d]]
            if other not in prev:
                prev[other] = (f, d)
                queue.append(other)
    path: List[Dart] = []
    cur = goal
    while prev[cur] is not None:
        f, d = prev[cur]
        path.append(d)
        cur = f
    path.reverse()
    return path


def _companion_map(m, side: str) -> PDCode:
    """Companion PD of a combinatorial multi-knotoid: the closure arc runs
    along a shortest dual path from the head's face to the tail's face,
    passing every crossed strand on the given side."""
    comp_events: List[List[Tuple]] = []
    sign_of: Dict[object, int] = {}

    path: List[Dart] = []
    hits: Dict[FrozenSet[Dart], int] = {}
    if m.has_open():
        p = m.open_piece()
        path = _dual_closure_path(p)
        for i, d in enumerate(path):
            e = frozenset((d, p.conn[d]))
            if e in hits:
                raise PDError("dual closure path crosses an edge twice")
            hits[e] = i

    edge_role = "o" if side == "under" else "u"
    for pi, piece in enumerate(m.pieces):
        for node in sorted(piece.over02):
            # piece signs follow the left-to-right rule, PD signs the
            # counterclockwise over-from-under rule; they are opposite
            sign_of[("x", id(piece), node)] = -piece.crossing_sign(node)
        phits = hits if (pi == 0 and m.has_open()) else {}
        walks = _piece_strand_walks(piece)
        for wi, w in enumerate(walks):
            evs = _walk_passages(piece, w, phits, edge_role)
            if pi == 0 and wi == 0 and m.has_open():
                evs.extend(
                    (("a", i), "u" if side == "under" else "o")
                    for i in range(len(path))
                )
            comp_events.append(evs)
    if m.has_open():
        p = m.open_piece()
        for i, d in enumerate(path):
            # d's left face is the one the arc leaves; when d starts its
            # edge the arc crosses the strand from its left to its right
            from_left = d in p.out
            if side == "under":
                sign_of[("a", i)] = 1 if from_left else -1
            else:
                sign_of[("a", i)] = -1 if from_left else 1
    return _pd_from_events(comp_events, sign_of, m.free_loops)
