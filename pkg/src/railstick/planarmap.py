"""Combinatorial plane maps of knotoid and multi-knotoid diagrams.

A diagram is stored as a collection of connected *pieces* plus a count
of crossing-free closed loops.  Each piece is a half-edge ("dart")
structure: a dart is a ``(node, slot)`` pair, slots run counterclockwise
around each node, crossings have four slots and the two endpoint nodes
(tail, head) have one.  ``conn`` pairs the two darts of every edge.

Conventions.  The two transversal strands at a crossing occupy opposite
slot pairs {0,2} and {1,3}; ``over02[node]`` says whether the {0,2}
strand is the over strand.  ``out`` holds the dart at the start of each
edge in strand orientation.  The face to the *left* of a dart is the
orbit of ``face_next(d) = cw(conn(d))``; ``outer`` marks a dart whose
left face is the unbounded region.

Crossing-free closed components carry no structural information beyond
their count: a closed component without crossings is a split unknot and
can be carried into any complementary region by endpoint-avoiding
moves, so its nesting is immaterial to the knotoid class.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

from .exact import cross2, sort_ccw, sub2
from .geometry import GeometricDiagram

Dart = Tuple[int, int]


class MapError(ValueError):
    """Structurally invalid plane map or inapplicable operation."""


@dataclass
class Piece:
    """One connected component of a diagram's underlying plane graph."""

    kinds: Dict[int, str]          # node -> 'x' (crossing), 't', 'h'
    conn: Dict[Dart, Dart]         # edge involution on darts
    over02: Dict[int, bool]        # crossing -> {0,2} strand is over
    out: Set[Dart]                 # darts at the start of their edge
    outer: Dart                    # dart whose left face is unbounded

    def copy(self) -> "Piece":
        return Piece(
            dict(self.kinds), dict(self.conn), dict(self.over02),
            set(self.out), self.outer,
        )

    def degree(self, node: int) -> int:
        return 4 if self.kinds[node] == "x" else 1

    def darts(self) -> List[Dart]:
        return sorted(self.conn.keys())

    def crossing_count(self) -> int:
        return sum(1 for k in self.kinds.values() if k == "x")

    def is_open(self) -> bool:
        return any(k == "t" for k in self.kinds.values())

    def tail_node(self) -> int:
        for n, k in self.kinds.items():
            if k == "t":
                return n
        raise MapError("closed piece has no tail")

    def head_node(self) -> int:
        for n, k in self.kinds.items():
            if k == "h":
                return n
        raise MapError("closed piece has no head")

    def face_next(self, d: Dart) -> Dart:
        n, s = self.conn[d]
        return (n, (s - 1) % self.degree(n))

    def face_of(self, d: Dart) -> Tuple[Dart, ...]:
        orbit = [d]
        cur = self.face_next(d)
        while cur != d:
            orbit.append(cur)
            cur = self.face_next(cur)
        return tuple(orbit)

    def faces(self) -> List[Tuple[Dart, ...]]:
        seen: Set[Dart] = set()
        out = []
        for d in self.darts():
            if d in seen:
                continue
            orbit = self.face_of(d)
            seen.update(orbit)
            out.append(orbit)
        return out

    def strand_pair(self, d: Dart) -> Dart:
        """The opposite dart of the strand passing through d's node."""
        n, s = d
        if self.kinds[n] != "x":
            raise MapError("strand_pair needs a crossing dart")
        return (n, (s + 2) % 4)

    def is_over(self, d: Dart) -> bool:
        n, s = d
        return self.over02[n] == (s % 2 == 0)

    def crossing_sign(self, node: int) -> int:
        """+1 when the over strand crosses the under strand left to
        right viewed along the under strand."""
        over_out = next(
            (node, s) for s in range(4)
            if (node, s) in self.out and self.is_over((node, s))
        )
        under_out = next(
            (node, s) for s in range(4)
            if (node, s) in self.out and not self.is_over((node, s))
        )
        so, su = over_out[1], under_out[1]
        return 1 if (so - su) % 4 == 3 else -1

    # -- structural validation -------------------------------------------

    def check(self) -> None:
        for d, e in self.conn.items():
            if self.conn.get(e) != d or d == e:
                raise MapError(f"conn is not a fixed-point-free involution at {d}")
        for n, k in self.kinds.items():
            deg = self.degree(n)
            for s in range(deg):
                if (n, s) not in self.conn:
                    raise MapError(f"missing dart {(n, s)}")
            if k == "x" and n not in self.over02:
                raise MapError(f"crossing {n} lacks over/under data")
        extra = set(self.conn) - {
            (n, s) for n in self.kinds for s in range(self.degree(n))
        }
        if extra:
            raise MapError(f"stray darts {extra}")
        V = len(self.kinds)
        E = len(self.conn) // 2
        F = len(self.faces())
        if V - E + F != 2:
            raise MapError(f"Euler relation fails: V={V} E={E} F={F}")
        for d, e in self.conn.items():
            if (d in self.out) == (e in self.out):
                raise MapError(f"edge {d}-{e} lacks a unique orientation")
        if self.outer not in self.conn:
            raise MapError("outer dart missing")
        tails = [n for n, k in self.kinds.items() if k == "t"]
        heads = [n for n, k in self.kinds.items() if k == "h"]
        if len(tails) != len(heads) or len(tails) > 1:
            raise MapError("endpoint nodes inconsistent")
        if tails:
            # tail-to-head walk must traverse open-strand edges once
            d = (tails[0], 0)
            if d not in self.out:
                raise MapError("tail dart must start its edge")
            seen = set()
            while True:
                if d in seen:
                    raise MapError("open strand walk loops")
                seen.add(d)
                n, s = self.conn[d]
                if self.kinds[n] == "h":
                    break
                if self.kinds[n] == "t":
                    raise MapError("open strand returns to the tail")
                d = (n, (s + 2) % 4)
                if d not in self.out:
                    raise MapError("strand orientation inconsistent")

    def strands_from(self, start: Dart) -> List[Dart]:
        """Out-darts of consecutive edges along the strand from `start`."""
        walk = [start]
        while True:
            n, s = self.conn[walk[-1]]
            if self.kinds[n] != "x":
                return walk
            nxt = (n, (s + 2) % 4)
            if nxt == start:
                return walk
            walk.append(nxt)


@dataclass
class KnotoidMap:
    """A multi-knotoid diagram: connected pieces + free loop count.

    Piece 0 carries the open strand when the diagram has one.
    """

    pieces: Tuple[Piece, ...]
    free_loops: int = 0

    def copy(self) -> "KnotoidMap":
        return KnotoidMap(tuple(p.copy() for p in self.pieces), self.free_loops)

    def crossing_count(self) -> int:
        return sum(p.crossing_count() for p in self.pieces)

    def has_open(self) -> bool:
        return bool(self.pieces) and self.pieces[0].is_open()

    def open_piece(self) -> Piece:
        if not self.has_open():
            raise MapError("diagram has no open strand")
        return self.pieces[0]

    def check(self) -> None:
        opens = [i for i, p in enumerate(self.pieces) if p.is_open()]
        if len(opens) > 1 or (opens and opens[0] != 0):
            raise MapError("open piece must come first and be unique")
        for p in self.pieces:
            p.check()
        if self.free_loops < 0:
            raise MapError("negative free loop count")


# ---------------------------------------------------------------------------
# Building a map from exact geometry
# ---------------------------------------------------------------------------


def to_combinatorial(g: GeometricDiagram) -> KnotoidMap:
    """Plane map of a generic geometric diagram, with faces derived from
    the exact planar subdivision and the unbounded face marked."""
    ncomp = len(g.components)
    events: List[List[Tuple[int, object, int, int]]] = [[] for _ in range(ncomp)]
    for xi, c in enumerate(g.crossings):
        events[c.first[0]].append((c.first[1], c.t_first, xi, 0))
        events[c.second[0]].append((c.second[1], c.t_second, xi, 1))
    for ev in events:
        ev.sort(key=lambda e: (e[0], e[1]))

    kinds: Dict[int, str] = {}
    over02: Dict[int, bool] = {}
    conn: Dict[Dart, Dart] = {}
    out: Set[Dart] = set()
    edge_geom: Dict[Dart, List] = {}
    node_of_crossing: Dict[int, int] = {}
    next_node = 0

    def new_node(kind: str) -> int:
        nonlocal next_node
        n = next_node
        next_node += 1
        kinds[n] = kind
        return n

    # slot layout per crossing
    slot_of: Dict[Tuple[int, int, int], int] = {}  # (xi, which, io 0=out,1=in)
    for xi, c in enumerate(g.crossings):
        node_of_crossing[xi] = new_node("x")
        d1 = _seg_dir(g, c.first)
        d2 = _seg_dir(g, c.second)
        vecs = [d1, _neg(d1), d2, _neg(d2)]  # roles: (0,out),(0,in),(1,out),(1,in)
        order = sort_ccw(vecs)
        for slot, role in enumerate(order):
            which, io = divmod(role, 2)
            slot_of[(xi, which, io)] = slot
        over_which = 0 if c.over_first else 1
        over02[node_of_crossing[xi]] = slot_of[(xi, over_which, 0)] % 2 == 0

    free_loops = 0
    for ci in range(ncomp):
        is_open = g.has_open and ci == 0
        ev = events[ci]
        if not ev and not is_open:
            free_loops += 1
            continue
        darts_along: List[Tuple[Dart, Dart]] = []  # (in_dart, out_dart) per event
        for seg, t, xi, which in ev:
            n = node_of_crossing[xi]
            darts_along.append(
                ((n, slot_of[(xi, which, 1)]), (n, slot_of[(xi, which, 0)]))
            )
        if is_open:
            tnode = new_node("t")
            hnode = new_node("h")
            chain_out = [(tnode, 0)] + [o for _, o in darts_along]
            chain_in = [i for i, _ in darts_along] + [(hnode, 0)]
        else:
            chain_out = [o for _, o in darts_along]
            chain_in = [i for i, _ in darts_along[1:]] + [darts_along[0][0]]
        for k, (a, b) in enumerate(zip(chain_out, chain_in)):
            conn[a] = b
            conn[b] = a
            out.add(a)
            edge_geom[a] = _edge_polyline(g, ci, ev, k, is_open)

    if not kinds:
        # no open strand and every loop crossing-free
        return KnotoidMap((), free_loops)

    # split into connected pieces and mark each unbounded face
    piece_of = _connected_pieces(kinds, conn)
    areas: Dict[Dart, object] = {}
    face_list: List[Tuple[Dart, ...]] = []
    seen: Set[Dart] = set()
    for d in sorted(conn):
        if d in seen:
            continue
        orbit = _face_orbit(kinds, conn, d)
        seen.update(orbit)
        face_list.append(orbit)
    outer_for_piece: Dict[int, Tuple[object, Dart]] = {}
    for orbit in face_list:
        area = _orbit_area(conn, out, edge_geom, orbit)
        pid = piece_of[orbit[0][0]]
        cur = outer_for_piece.get(pid)
        if cur is None or area < cur[0]:
            outer_for_piece[pid] = (area, orbit[0])

    pieces: List[Piece] = []
    for pid in sorted(set(piece_of.values())):
        nodes = {n: kinds[n] for n in kinds if piece_of[n] == pid}
        pconn = {d: e for d, e in conn.items() if piece_of[d[0]] == pid}
        piece = Piece(
            nodes,
            pconn,
            {n: over02[n] for n in nodes if nodes[n] == "x"},
            {d for d in out if piece_of[d[0]] == pid},
            outer_for_piece[pid][1],
        )
        pieces.append(piece)
    pieces.sort(key=lambda p: (not p.is_open(),))
    m = KnotoidMap(tuple(pieces), free_loops)
    m.check()
    return m


def _seg_dir(g: GeometricDiagram, key: Tuple[int, int]):
    ci, si = key
    a, b = g.component_segments(ci)[si]
    return sub2(b, a)


def _neg(v):
    return (-v[0], -v[1])


def _edge_polyline(g: GeometricDiagram, ci: int, ev, k: int, is_open: bool):
    """Exact planar polyline of the k-th edge along component ci."""
    pts = g.components[ci]
    nseg = len(pts) - 1 if is_open else len(pts)

    def pos(seg, t):
        a, b = g.component_segments(ci)[seg]
        return (a[0] + (b[0] - a[0]) * t, a[1] + (b[1] - a[1]) * t)

    def between(seg_a, t_a, seg_b, t_b, wrap: bool):
        out = [pos(seg_a, t_a)]
        seg = seg_a
        steps = 0
        while seg != seg_b or wrap:
            wrap = False
            seg = (seg + 1) % nseg
            out.append(pts[seg])
            steps += 1
            if steps > 2 * nseg + 2:
                raise MapError("edge walk runaway")
        out.append(pos(seg_b, t_b))
        return out

    if is_open:
        marks = [(0, 0)] + [(seg, t) for seg, t, _, _ in ev] + [(nseg - 1, 1)]
        sa, ta = marks[k]
        sb, tb = marks[k + 1]
        out = [pos(sa, ta)]
        for seg in range(sa, sb):
            out.append(pts[seg + 1])
        out.append(pos(sb, tb))
        return out
    marks = [(seg, t) for seg, t, _, _ in ev]
    sa, ta = marks[k]
    sb, tb = marks[(k + 1) % len(marks)]
    wrap = (k + 1) == len(marks)
    if not wrap:
        out = [pos(sa, ta)]
        for seg in range(sa, sb):
            out.append(pts[seg + 1])
        out.append(pos(sb, tb))
        return out
    return between(sa, ta, sb, tb, wrap=(sa, ta) >= (sb, tb))


def _face_orbit(kinds, conn, d: Dart) -> Tuple[Dart, ...]:
    def deg(n):
        return 4 if kinds[n] == "x" else 1

    orbit = [d]
    n, s = conn[d]
    cur = (n, (s - 1) % deg(n))
    while cur != d:
        orbit.append(cur)
        n, s = conn[cur]
        cur = (n, (s - 1) % deg(n))
    return tuple(orbit)


def _orbit_area(conn, out, edge_geom, orbit) -> object:
    total = 0
    for d in orbit:
        if d in out:
            pts = edge_geom[d]
        else:
            pts = list(reversed(edge_geom[conn[d]]))
        for i in range(len(pts) - 1):
            total += cross2(pts[i], pts[i + 1])
    return total


def _connected_pieces(kinds, conn) -> Dict[int, int]:
    parent = {n: n for n in kinds}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for d, e in conn.items():
        ra, rb = find(d[0]), find(e[0])
        if ra != rb:
            parent[ra] = rb
    return {n: find(n) for n in kinds}


# ---------------------------------------------------------------------------
# Involutions, product, normality
# ---------------------------------------------------------------------------


def involution(m: KnotoidMap, which: str) -> KnotoidMap:
    """mir flips all over/under, sym reflects the plane, rot = mir∘sym,
    rev reverses strand orientation (swapping tail and head roles)."""
    if which == "mir":
        out = m.copy()
        for p in out.pieces:
            for n in p.over02:
                p.over02[n] = not p.over02[n]
        return out
    if which == "sym":
        return KnotoidMap(tuple(_reflect_piece(p) for p in m.pieces), m.free_loops)
    if which == "rot":
        return involution(involution(m, "mir"), "sym")
    if which == "rev":
        out = m.copy()
        for p in out.pieces:
            new_out = {p.conn[d] for d in p.out}
            p.out = new_out
            for n, k in list(p.kinds.items()):
                if k == "t":
                    p.kinds[n] = "h"
                elif k == "h":
                    p.kinds[n] = "t"
        return out
    raise MapError(f"unknown involution {which!r}")


def _reflect_piece(p: Piece) -> Piece:
    def rmap(d: Dart) -> Dart:
        n, s = d
        return (n, (-s) % p.degree(n))

    conn = {rmap(d): rmap(e) for d, e in p.conn.items()}
    out = {rmap(d) for d in p.out}
    # reflection keeps each strand pair on the same slot parity
    return Piece(dict(p.kinds), conn, dict(p.over02), out, rmap(p.outer))


def is_normal(m: KnotoidMap) -> bool:
    """True iff the tail endpoint is adjacent to the unbounded region."""
    p = m.open_piece()
    t = (p.tail_node(), 0)
    return t in p.face_of(p.outer)


def product(k1: KnotoidMap, k2: KnotoidMap) -> KnotoidMap:
    """Concatenate k1's head with k2's tail; k2 must be normal."""
    if not is_normal(k2):
        raise MapError("right factor of a product must be normal")
    p1 = k1.open_piece().copy()
    p2 = k2.open_piece()
    # relabel p2's nodes above p1's
    off = (max(p1.kinds) + 1) if p1.kinds else 0
    kinds = dict(p1.kinds)
    conn = dict(p1.conn)
    over02 = dict(p1.over02)
    out = set(p1.out)
    for n, k in p2.kinds.items():
        kinds[n + off] = k
    for (n, s), (n2, s2) in p2.conn.items():
        conn[(n + off, s)] = (n2 + off, s2)
    for n, b in p2.over02.items():
        over02[n + off] = b
    for (n, s) in p2.out:
        out.add((n + off, s))
    h1 = p1.head_node()
    t2 = p2.tail_node() + off
    a = conn[(h1, 0)]
    b = conn[(t2, 0)]
    outer_orbit = p1.face_of(p1.outer)
    # remove the joint nodes, fuse their edges
    for n in (h1, t2):
        del kinds[n]
    for d in ((h1, 0), (t2, 0)):
        del conn[d]
        out.discard(d)
    conn[a] = b
    conn[b] = a
    if b in out:
        out.discard(b)
    out.add(a)
    survivors = [d for d in outer_orbit if d in conn]
    outer = survivors[0] if survivors else a
    merged = Piece(kinds, conn, over02, out, outer)
    pieces = (merged,) + tuple(
        p.copy() for p in k1.pieces[1:]
    ) + tuple(p.copy() for p in k2.pieces[1:])
    res = KnotoidMap(pieces, k1.free_loops + k2.free_loops)
    res.check()
    return res


# ---------------------------------------------------------------------------
# Canonical codes
# ---------------------------------------------------------------------------


def _piece_rooted_code(p: Piece, root: Dart) -> Tuple:
    """Code of the rooted plane map; equal codes iff there is an
    isomorphism of marked maps sending one root to the other."""
    node_idx: Dict[int, int] = {}
    entry_slot: Dict[int, int] = {}
    order: List[int] = []
    queue: List[Dart] = [root]
    qi = 0

    def visit(d: Dart) -> None:
        n, s = d
        if n not in node_idx:
            node_idx[n] = len(order)
            entry_slot[n] = s
            order.append(n)

    visit(root)
    code: List = []
    while qi < len(queue):
        d = queue[qi]
        qi += 1
        n, s0 = d
        if node_idx[n] != len(code):
            continue
        deg = p.degree(n)
        rec: List = [p.kinds[n]]
        if p.kinds[n] == "x":
            rec.append(p.is_over((n, entry_slot[n])))
            rec.append(p.crossing_sign(n))
        for k in range(deg):
            dd = (n, (entry_slot[n] + k) % deg)
            rec.append(1 if dd in p.out else 0)
            m_, sm = p.conn[dd]
            visit((m_, sm))
            rel = (sm - entry_slot[m_]) % p.degree(m_)
            rec.append((node_idx[m_], rel))
            queue.append((m_, sm))
        code.append(tuple(rec))
    # every node must be reached (pieces are connected)
    if len(code) != len(p.kinds):
        raise MapError("disconnected piece in code computation")
    return tuple(code)


def piece_code(p: Piece) -> Tuple:
    """Minimum rooted code over roots on the marked unbounded face."""
    return min(_piece_rooted_code(p, d) for d in p.face_of(p.outer))


def canonical_code(m: KnotoidMap, modulo: str = "none") -> str:
    """Canonical string code of the diagram.

    modulo='none' distinguishes everything; 'involutions' quotients by
    {id, mir, sym, rot} x {id, rev} (the symmetry classes under which the
    small-knotoid classification is taken)."""
    variants = [m]
    if modulo == "involutions":
        ms = [m, involution(m, "rev")]
        variants = []
        for base in ms:
            variants += [
                base,
                involution(base, "mir"),
                involution(base, "sym"),
                involution(base, "rot"),
            ]
    elif modulo != "none":
        raise MapError(f"unknown quotient {modulo!r}")
    best = None
    for v in variants:
        open_codes = [piece_code(p) for p in v.pieces if p.is_open()]
        closed_codes = sorted(piece_code(p) for p in v.pieces if not p.is_open())
        key = (tuple(open_codes), tuple(closed_codes), v.free_loops)
        if best is None or key < best:
            best = key
    return repr(best)
