"""Diagram moves on combinatorial knotoid maps.

Moves never sweep a strand across an endpoint or across the marked
point at infinity: reducing moves require the vanishing face to be an
empty bounded face (endpoints are vertices, so they never sit inside a
monogon, bigon or triangle face), the triangle move is skipped when the
triangle is the unbounded face, and growing moves create their new face
inside an existing one.

Face bookkeeping after a surgery marks the new unbounded face through
*witness* darts: a dart bordering the unbounded region keeps bordering
it when strands are only removed, merged faces are witnessed by the
union of their orbits, and a piece that splits off into a bounded
region is re-marked along the side that faced the removed crossings.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Set, Tuple

from .planarmap import Dart, KnotoidMap, MapError, Piece

REDUCING = ("R1-", "R2-")
MOVE_ORDER = {"R1-": 0, "R2-": 1, "R3": 2, "R1+": 3, "R2+": 4}


@dataclass(frozen=True, order=True)
class Move:
    piece: int
    kind: str
    data: Tuple


def available_moves(m: KnotoidMap, grow: bool = False) -> List[Move]:
    """All applicable moves, reducing moves first, deterministic order."""
    out: List[Move] = []
    for pi, p in enumerate(m.pieces):
        outer_orbit = frozenset(p.face_of(p.outer))
        for orbit in p.faces():
            is_outer = orbit[0] in outer_orbit
            nodes = [d[0] for d in orbit]
            if len(orbit) == 1 and not is_outer:
                (d,) = orbit
                if p.kinds[d[0]] == "x":
                    out.append(Move(pi, "R1-", (d,)))
            elif len(orbit) == 2 and not is_outer:
                d1, d2 = orbit
                if (
                    nodes[0] != nodes[1]
                    and p.kinds[nodes[0]] == "x"
                    and p.kinds[nodes[1]] == "x"
                    and _bigon_removable(p, d1, d2)
                ):
                    out.append(Move(pi, "R2-", (min(d1, d2), max(d1, d2))))
            elif len(orbit) == 3 and not is_outer:
                if len(set(nodes)) == 3 and all(p.kinds[n] == "x" for n in nodes):
                    for k in range(3):
                        trio = (orbit[k], orbit[(k + 1) % 3], orbit[(k + 2) % 3])
                        if _triangle_movable(p, trio[0], trio[1]) and (
                            _r3_outer_plan(p, *trio) is not None
                        ):
                            out.append(Move(pi, "R3", trio))
            if grow:
                for d in orbit:
                    for over in (False, True):
                        out.append(Move(pi, "R1+", (d, over)))
                for d1 in orbit:
                    for d2 in orbit:
                        if d1 == d2 or _same_edge(p, d1, d2):
                            continue
                        for over in (False, True):
                            out.append(Move(pi, "R2+", (d1, d2, over)))
    out.sort(key=lambda mv: (MOVE_ORDER[mv.kind], mv.piece, mv.data))
    return out


def _same_edge(p: Piece, d1: Dart, d2: Dart) -> bool:
    return p.conn[d1] == d2 or d1 == d2


def _bigon_removable(p: Piece, d1: Dart, d2: Dart) -> bool:
    (n1, s1), (n2, s2) = d1, d2
    e1_over_n1 = p.is_over((n1, s1))
    e1_over_n2 = p.is_over((n2, (s2 + 1) % 4))
    return e1_over_n1 == e1_over_n2


def _triangle_movable(p: Piece, d1: Dart, d2: Dart) -> bool:
    """The edge leaving d1 toward d2's node can slide across the third
    crossing iff it is over (or under) at both of its endpoints."""
    (n1, s1), (n2, s2) = d1, d2
    return p.is_over((n1, s1)) == p.is_over((n2, (s2 + 1) % 4))


def apply_move(m: KnotoidMap, mv: Move) -> KnotoidMap:
    p = m.pieces[mv.piece].copy()
    if mv.kind == "R1-":
        pieces, loops = _apply_r1_minus(p, *mv.data)
    elif mv.kind == "R2-":
        pieces, loops = _apply_r2_minus(p, *mv.data)
    elif mv.kind == "R3":
        pieces, loops = _apply_r3(p, *mv.data), 0
        pieces = [pieces]
    elif mv.kind == "R1+":
        pieces, loops = [_apply_r1_plus(p, *mv.data)], 0
    elif mv.kind == "R2+":
        pieces, loops = [_apply_r2_plus(p, *mv.data)], 0
    else:
        raise MapError(f"unknown move {mv.kind!r}")
    new_pieces = list(m.pieces)
    new_pieces[mv.piece : mv.piece + 1] = []
    opens = [q for q in pieces if q.is_open()]
    closeds = [q for q in pieces if not q.is_open()]
    if opens:
        new_pieces = opens + new_pieces
    new_pieces += closeds
    res = KnotoidMap(tuple(new_pieces), m.free_loops + loops)
    res.check()
    return res


# ---------------------------------------------------------------------------
# reducing surgeries
# ---------------------------------------------------------------------------


def _apply_r1_minus(p: Piece, d: Dart) -> Tuple[List[Piece], int]:
    n, s = d
    if p.face_next(d) != d or p.kinds[n] != "x":
        raise MapError("not a removable kink site")
    ext = [(n, (s + 2) % 4), (n, (s + 3) % 4)]
    witness_groups = _outer_witnesses(
        p, extra_merge=[p.face_of(d), p.face_of((n, (s + 1) % 4))]
    )
    side = [p.conn[ext[0]]]
    return _finish_reduction(p, {n}, [tuple(ext)], witness_groups, side)


def _apply_r2_minus(p: Piece, d1: Dart, d2: Dart) -> Tuple[List[Piece], int]:
    (n1, s1), (n2, s2) = d1, d2
    if p.face_next(d1) == d2:
        pass
    elif p.face_next(d2) == d1:
        (n1, s1), (n2, s2) = d2, d1
    else:
        raise MapError("not a bigon site")
    joins = [
        ((n1, (s1 + 2) % 4), (n2, (s2 + 3) % 4)),
        ((n2, (s2 + 2) % 4), (n1, (s1 + 3) % 4)),
    ]
    witness_groups = _outer_witnesses(
        p,
        extra_merge=[
            p.face_of((n1, s1)),
            p.face_of((n1, (s1 + 2) % 4)),
            p.face_of((n2, (s2 + 2) % 4)),
        ],
    )
    # darts whose left side faced the vanished bigon, for split-off parts
    side = [p.conn[(n1, (s1 + 2) % 4)], p.conn[(n1, (s1 + 3) % 4)]]
    return _finish_reduction(p, {n1, n2}, joins, witness_groups, side)


def _outer_witnesses(p: Piece, extra_merge: Sequence[Tuple[Dart, ...]]) -> List[Dart]:
    """Darts that keep the unbounded region on their left after the
    surgery.  If the outer face is among the faces being merged, every
    dart of the merged group qualifies."""
    outer_orbit = p.face_of(p.outer)
    group: Set[Dart] = set(outer_orbit)
    if any(set(orb) & set(outer_orbit) for orb in extra_merge):
        for orb in extra_merge:
            group.update(orb)
    return sorted(group)


def _finish_reduction(
    p: Piece,
    dead: Set[int],
    joins: Sequence[Tuple[Dart, Dart]],
    witnesses: Sequence[Dart],
    bigon_side: Sequence[Dart],
) -> Tuple[List[Piece], int]:
    loops = _delete_and_join(p, dead, joins)
    parts = _split_piece(p)
    out: List[Piece] = []
    live_witnesses = [w for w in witnesses if w in p.conn]
    live_side = [w for w in bigon_side if w in p.conn]
    for part in parts:
        w = next((d for d in live_witnesses if d in part.conn), None)
        if w is None:
            w = next((d for d in live_side if d in part.conn), None)
        if w is None:
            raise MapError("lost track of the unbounded face")
        part.outer = _face_start(part, w)
        out.append(part)
    return out, loops


def _face_start(p: Piece, d: Dart) -> Dart:
    return d


def _delete_and_join(
    p: Piece, dead: Set[int], joins: Sequence[Tuple[Dart, Dart]]
) -> int:
    partner: Dict[Dart, Dart] = {}
    for a, b in joins:
        partner[a] = b
        partner[b] = a

    def is_dead(d: Dart) -> bool:
        return d[0] in dead

    fused: Dict[Dart, Dart] = {}
    visited: Set[Dart] = set()
    for u in list(p.conn):
        if is_dead(u) or not is_dead(p.conn[u]):
            continue
        w = p.conn[u]
        while True:
            visited.add(w)
            w2 = partner[w]
            visited.add(w2)
            nxt = p.conn[w2]
            if not is_dead(nxt):
                break
            w = nxt
        fused[u] = nxt
    loops = 0
    for a in sorted(partner):
        if a in visited:
            continue
        loops += 1
        w = a
        while True:
            visited.add(w)
            w2 = partner[w]
            visited.add(w2)
            w = p.conn[w2]
            if w == a:
                break
    newconn = {d: e for d, e in p.conn.items() if not is_dead(d) and not is_dead(e)}
    for u, v in fused.items():
        newconn[u] = v
        if (u in p.out) == (v in p.out):
            raise MapError("orientation lost while fusing edges")
    p.conn = newconn
    for n in dead:
        del p.kinds[n]
        p.over02.pop(n, None)
    p.out = {d for d in p.out if not is_dead(d)}
    return loops


def _split_piece(p: Piece) -> List[Piece]:
    if not p.kinds:
        return []
    parent = {n: n for n in p.kinds}

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for d, e in p.conn.items():
        ra, rb = find(d[0]), find(e[0])
        if ra != rb:
            parent[ra] = rb
    roots = {find(n) for n in p.kinds}
    if len(roots) == 1:
        return [p]
    parts = []
    for r in sorted(roots):
        nodes = {n for n in p.kinds if find(n) == r}
        parts.append(
            Piece(
                {n: p.kinds[n] for n in nodes},
                {d: e for d, e in p.conn.items() if d[0] in nodes},
                {n: b for n, b in p.over02.items() if n in nodes},
                {d for d in p.out if d[0] in nodes},
                p.outer,  # re-marked by the caller
            )
        )
    return parts


# ---------------------------------------------------------------------------
# triangle slide
# ---------------------------------------------------------------------------


def _r3_sigma(d1: Dart, d2: Dart, d3: Dart) -> Dict[Dart, Dart]:
    """Dart exchange of the triangle slide: the edge leaving d1 moves
    across the third crossing, so along each of the three strands the
    two crossings it meets swap order; each strand's darts at one node
    trade places with the matching darts at the other node."""
    (a, s1), (b, s2), (c, s3) = d1, d2, d3
    pairs = [
        ((a, s1), (b, (s2 + 3) % 4)),
        ((a, (s1 + 2) % 4), (b, (s2 + 1) % 4)),
        ((b, s2), (c, (s3 + 3) % 4)),
        ((b, (s2 + 2) % 4), (c, (s3 + 1) % 4)),
        ((c, s3), (a, (s1 + 3) % 4)),
        ((c, (s3 + 2) % 4), (a, (s1 + 1) % 4)),
    ]
    sig = {}
    for x, y in pairs:
        sig[x] = y
        sig[y] = x
    return sig


def _r3_outer_plan(p: Piece, d1: Dart, d2: Dart, d3: Dart) -> Optional[Dart]:
    """Dart whose left face is unbounded after the slide, or None if the
    move cannot track the unbounded face (then it is not offered)."""
    (a, s1), (b, s2), (c, s3) = d1, d2, d3
    outer_orbit = p.face_of(p.outer)
    far = [d for d in outer_orbit if d[0] not in (a, b, c)]
    if far:
        return far[0]
    # outer face touches only the triangle crossings: tractable exactly
    # when it is the face the edge slides into (beyond the third
    # crossing); the moved edge then leaves the unbounded region on its
    # far side.
    outer_set = set(outer_orbit)
    if set(p.face_of((c, (s3 + 2) % 4))) == outer_set:
        # sliding into the unbounded face: the moved edge leaves it on
        # its far side
        return (b, (s2 + 3) % 4)
    if set(p.face_of((b, (s2 + 1) % 4))) == outer_set:
        # unbounded face across the moving edge: after the slide the dart
        # exchange seats d3 on that face (it trades places with the
        # moving edge's far-side dart at the first crossing)
        return d3
    return None


def _apply_r3(p: Piece, d1: Dart, d2: Dart, d3: Dart) -> Piece:
    (a, s1), (b, s2), (c, s3) = d1, d2, d3
    if p.face_next(d1) != d2 or p.face_next(d2) != d3 or p.face_next(d3) != d1:
        raise MapError("not a triangle site")
    outer = _r3_outer_plan(p, d1, d2, d3)
    if outer is None:
        raise MapError("triangle slide cannot track the unbounded face")
    sigma = _r3_sigma(d1, d2, d3)

    def sig(d: Dart) -> Dart:
        return sigma.get(d, d)

    p.conn = {sig(d): sig(e) for d, e in p.conn.items()}
    p.outer = outer
    return p


# ---------------------------------------------------------------------------
# growing surgeries
# ---------------------------------------------------------------------------


def _new_node(p: Piece) -> int:
    return max(p.kinds) + 1 if p.kinds else 0


def _apply_r1_plus(p: Piece, d: Dart, over: bool) -> Piece:
    e = p.conn[d]
    n = _new_node(p)
    p.kinds[n] = "x"
    p.over02[n] = over
    p.conn[d] = (n, 2)
    p.conn[(n, 2)] = d
    p.conn[e] = (n, 3)
    p.conn[(n, 3)] = e
    p.conn[(n, 0)] = (n, 1)
    p.conn[(n, 1)] = (n, 0)
    if d in p.out:
        p.out.update({(n, 0), (n, 3)})
    else:
        p.out.update({(n, 1), (n, 2)})
    return p


def _apply_r2_plus(p: Piece, d1: Dart, d2: Dart, over: bool) -> Piece:
    """Push the edge at d1 across the edge at d2 through their common
    left face; d1's strand goes over iff `over`."""
    if _same_edge(p, d1, d2):
        raise MapError("finger move needs two distinct edges")
    e1 = p.conn[d1]
    e2 = p.conn[d2]
    L = _new_node(p)
    p.kinds[L] = "x"
    R = L + 1
    p.kinds[R] = "x"
    p.over02[L] = not over
    p.over02[R] = not over
    for x, y in (
        (e1, (L, 1)),
        (d1, (R, 1)),
        (d2, (L, 2)),
        (e2, (R, 0)),
        ((L, 0), (R, 2)),
        ((L, 3), (R, 3)),
    ):
        p.conn[x] = y
        p.conn[y] = x
    if d1 in p.out:
        p.out.update({(R, 3), (L, 1)})
    else:
        p.out.update({(L, 3), (R, 1)})
    if d2 in p.out:
        p.out.update({(L, 0), (R, 0)})
    else:
        p.out.update({(R, 2), (L, 2)})
    return p


# ---------------------------------------------------------------------------
# simplification
# ---------------------------------------------------------------------------


def greedy_simplify(m: KnotoidMap) -> KnotoidMap:
    """Apply reducing moves until none remains."""
    while True:
        mvs = [mv for mv in available_moves(m) if mv.kind in REDUCING]
        if not mvs:
            return m
        m = apply_move(m, mvs[0])


def simplify(
    m: KnotoidMap, slack: int = 2, node_cap: int = 4000
) -> KnotoidMap:
    """Deterministic crossing-count minimizer: greedy reduction, then a
    breadth-first hunt (triangle slides plus growing moves up to `slack`
    extra crossings) for a position that reduces further."""
    from .planarmap import canonical_code

    cur = greedy_simplify(m)
    improved = True
    while improved and cur.crossing_count() > 0:
        improved = False
        ceiling = cur.crossing_count() + slack
        seen = {canonical_code(cur)}
        frontier = [cur]
        budget = node_cap
        while frontier and budget > 0 and not improved:
            nxt: List[KnotoidMap] = []
            for pos in frontier:
                for mv in available_moves(pos, grow=slack > 0):
                    if mv.kind == "R1+" and pos.crossing_count() + 1 > ceiling:
                        continue
                    if mv.kind == "R2+" and pos.crossing_count() + 2 > ceiling:
                        continue
                    child = apply_move(pos, mv)
                    if child.crossing_count() < cur.crossing_count():
                        cur = greedy_simplify(child)
                        improved = True
                        break
                    code = canonical_code(child)
                    if code in seen:
                        continue
                    seen.add(code)
                    nxt.append(child)
                    budget -= 1
                    if budget <= 0:
                        break
                if improved or budget <= 0:
                    break
            frontier = nxt
    return cur
