"""Knotoid diagram facade: extended Gauss codes and classification.

The heavy lifting (plane maps, moves, codes) lives in
:mod:`railstick.planarmap` and :mod:`railstick.moves`; this module adds
the strand-order Gauss code serialization and the `classify` label
lookup against the shipped catalog.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from .moves import Move, apply_move, available_moves, greedy_simplify, simplify
from .planarmap import (
    KnotoidMap,
    MapError,
    Piece,
    canonical_code,
    involution,
    is_normal,
    product,
    to_combinatorial,
)

__all__ = [
    "KnotoidMap",
    "Piece",
    "Move",
    "ExtendedGaussCode",
    "to_combinatorial",
    "available_moves",
    "apply_move",
    "simplify",
    "greedy_simplify",
    "involution",
    "product",
    "is_normal",
    "canonical_code",
    "gauss_code",
    "classify",
]


@dataclass(frozen=True)
class ExtendedGaussCode:
    """Tail-to-head passage sequence plus the face data pinning the
    planar (rather than spherical) embedding.

    ``passages`` lists one ``(label, 'O'|'U', sign)`` triple per crossing
    visit along the open strand; closed components follow in
    ``loop_passages``.  ``outer_corner`` records at which passage index
    (and corner offset) the unbounded face touches the strand, which is
    what distinguishes plane embeddings of the same spherical diagram.
    """

    passages: Tuple[Tuple[int, str, int], ...]
    loop_passages: Tuple[Tuple[Tuple[int, str, int], ...], ...] = ()
    outer_corner: Tuple[int, int] = (0, 0)
    free_loops: int = 0

    def text(self) -> str:
        def tok(p):
            return f"{p[1]}{p[0]}{'+' if p[2] > 0 else '-'}"

        parts = [" ".join(tok(p) for p in self.passages) or "-"]
        for loop in self.loop_passages:
            parts.append(" ".join(tok(p) for p in loop))
        return " / ".join(parts)


def gauss_code(m: KnotoidMap) -> ExtendedGaussCode:
    """Extended Gauss code of a knotoid map, crossings labeled in order
    of first visit along the open strand (then along each closed piece)."""
    if not m.has_open():
        raise MapError("gauss code needs an open strand")
    label: Dict[Tuple[int, int], int] = {}
    counter = [0]

    def visit(piece_idx: int, node: int) -> int:
        key = (piece_idx, node)
        if key not in label:
            counter[0] += 1
            label[key] = counter[0]
        return label[key]

    def walk_passages(pi: int, p: Piece, start) -> List[Tuple[int, str, int]]:
        out = []
        d = start
        while True:
            e = p.conn[d]  # arrive at e's node
            n = e[0]
            if p.kinds[n] != "x":
                break
            role = "O" if p.is_over(e) else "U"
            out.append((visit(pi, n), role, p.crossing_sign(n)))
            d = p.strand_pair(e)
            if d == start:
                break
        return out

    pieces = list(m.pieces)
    open_idx = next(i for i, p in enumerate(pieces) if p.is_open())
    p = pieces[open_idx]
    passages = walk_passages(open_idx, p, (p.tail_node(), 0))
    loops = []
    for i, q in enumerate(pieces):
        if i == open_idx:
            continue
        start = min(q.out)
        loops.append(tuple(walk_passages(i, q, start)))
    # locate the unbounded face against the open strand: index of the
    # passage whose crossing the outer dart belongs to, with its slot
    p0 = pieces[open_idx]
    od = p0.outer if p0.outer in p0.conn else min(p0.conn)
    corner = (label.get((open_idx, od[0]), 0), od[1])
    return ExtendedGaussCode(tuple(passages), tuple(loops), corner, m.free_loops)


def classify(m: KnotoidMap, budget: int = 4000) -> str:
    """Label of the knotoid class of ``m``.

    The map is simplified within ``budget`` search nodes; a 0-crossing
    single-strand result is ``trivial``; otherwise the canonical code of
    the minimal diagram found is matched modulo the involution orbit
    against the catalog's minimal diagrams and the monotone winding
    family.  Anything unmatched is reported ``unclassified`` rather than
    guessed.
    """
    from . import catalog
    from .winding import map_winding

    s = simplify(m, node_cap=budget)
    if s.crossing_count() > 0:
        # a second, harder pass clears the rare plateau the first one hits
        s = simplify(s, slack=4, node_cap=budget)
    if s.crossing_count() == 0:
        if all(p.is_open() for p in s.pieces) and s.free_loops == 0:
            return "trivial"
        return "trivial-multi" if s.has_open() else "unclassified"
    code = canonical_code(s, modulo="involutions")
    hit = catalog.minimal_code_table().get(code)
    if hit is not None:
        return hit
    try:
        w = map_winding(s)
    except MapError:
        w = None
    if w is not None and abs(w) >= 2 and s.crossing_count() == abs(w):
        if code == catalog.winding_minimal_code(abs(w)):
            return f"W_{abs(w)}"
    return "unclassified"
