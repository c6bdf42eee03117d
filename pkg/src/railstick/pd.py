"""Planar diagram (PD) codes for knots and links, and the invariant
computations used to identify companion closures.

A crossing is a 4-tuple of edge labels listed counterclockwise starting
from the incoming under-edge.  The code carries explicit crossing signs
and a count of crossing-free split components so unknots and unlinks stay
representable after reduction.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, List, Optional, Sequence, Set, Tuple

import sympy

from .polynomials import LaurentPolynomial


class PDError(ValueError):
    pass


@dataclass(frozen=True)
class PDCode:
    """A link diagram as a list of crossings plus free split unknots.

    ``crossings[i]`` is (a, b, c, d): edge labels counterclockwise from
    the incoming under-edge, so the under-strand runs a -> c and the
    over-strand runs b -> d when ``signs[i]`` is +1 and d -> b when it is
    -1.
    """

    crossings: Tuple[Tuple[int, int, int, int], ...]
    signs: Tuple[int, ...]
    free_loops: int = 0

    def __post_init__(self):
        if len(self.signs) != len(self.crossings):
            raise PDError("one sign per crossing required")
        if any(s not in (-1, 1) for s in self.signs):
            raise PDError("signs must be +-1")
        counts: Dict[int, int] = {}
        for quad in self.crossings:
            for e in quad:
                counts[e] = counts.get(e, 0) + 1
        bad = [e for e, k in counts.items() if k != 2]
        if bad:
            raise PDError("edge labels must appear exactly twice: %r" % bad)
        if self.free_loops < 0:
            raise PDError("negative free loop count")

    # -- strand structure ---------------------------------------------------

    def _in_out_slots(self) -> List[Tuple[int, int, int, int]]:
        """Per crossing (under_in, over_in, under_out, over_out) slots."""
        out = []
        for quad, s in zip(self.crossings, self.signs):
            if s > 0:
                out.append((0, 1, 2, 3))
            else:
                out.append((0, 3, 2, 1))
        return out

    def successor_map(self) -> Dict[int, int]:
        """Edge -> next edge along its oriented strand."""
        succ: Dict[int, int] = {}
        for quad, slots in zip(self.crossings, self._in_out_slots()):
            ui, oi, uo, oo = slots
            succ[quad[ui]] = quad[uo]
            succ[quad[oi]] = quad[oo]
        return succ

    def strands(self) -> List[List[int]]:
        """Edges grouped into oriented closed strands (components with at
        least one crossing)."""
        succ = self.successor_map()
        seen: Set[int] = set()
        out: List[List[int]] = []
        for start in sorted(succ):
            if start in seen:
                continue
            cyc = [start]
            seen.add(start)
            cur = succ[start]
            while cur != start:
                cyc.append(cur)
                seen.add(cur)
                cur = succ[cur]
            out.append(cyc)
        return out

    def n_components(self) -> int:
        return len(self.strands()) + self.free_loops

    def crossing_count(self) -> int:
        return len(self.crossings)

    def writhe(self) -> int:
        return sum(self.signs)

    def mirror(self) -> "PDCode":
        """Flip every crossing (rotate the quad so the over strand becomes
        the under strand)."""
        quads = []
        signs = []
        for (a, b, c, d), s in zip(self.crossings, self.signs):
            # the old over strand becomes the new under strand; start the
            # quad at the new incoming under-edge
            if s > 0:
                quads.append((b, c, d, a))  # over ran b->d, now under b->d
            else:
                quads.append((d, a, b, c))  # over ran d->b, now under d->b
            signs.append(-s)
        return PDCode(tuple(quads), tuple(signs), self.free_loops)

    # -- text format ---------------------------------------------------------

    def to_text(self) -> str:
        toks = ["X(%d,%d,%d,%d)" % quad for quad in self.crossings]
        if self.free_loops:
            toks.append("O*%d" % self.free_loops)
        return " ".join(toks) if toks else "O*0"

    @staticmethod
    def from_text(text: str) -> "PDCode":
        quads: List[Tuple[int, int, int, int]] = []
        free = 0
        for tok in text.split():
            m = re.fullmatch(r"X\((\d+),(\d+),(\d+),(\d+)\)", tok)
            if m:
                quads.append(tuple(int(x) for x in m.groups()))
                continue
            m = re.fullmatch(r"O\*(\d+)", tok)
            if m:
                free += int(m.group(1))
                continue
            raise PDError("bad PD token %r" % tok)
        return pd_from_quads(quads, free)

    # -- linking -------------------------------------------------------------

    def component_of_edge(self) -> Dict[int, int]:
        comp: Dict[int, int] = {}
        for i, cyc in enumerate(self.strands()):
            for e in cyc:
                comp[e] = i
        return comp

    def linking_profile(self) -> Tuple[int, ...]:
        """Sorted absolute pairwise linking numbers (orientation-proof)."""
        comp = self.component_of_edge()
        lk: Dict[FrozenSet[int], int] = {}
        for quad, s, slots in zip(
            self.crossings, self.signs, self._in_out_slots()
        ):
            cu = comp[quad[slots[0]]]
            co = comp[quad[slots[1]]]
            if cu != co:
                key = frozenset((cu, co))
                lk[key] = lk.get(key, 0) + s
        vals = sorted(abs(v) // 2 for v in lk.values())
        return tuple(vals)


def pd_from_quads(
    quads: Sequence[Tuple[int, int, int, int]], free_loops: int = 0
) -> PDCode:
    """Build a PDCode from bare quads, inferring orientations.

    Slot 0 of each quad must be the incoming under-edge; the over
    orientation is recovered by propagating in/out consistency, with any
    leftover ambiguity (components that are everywhere over) resolved
    deterministically.
    """
    # occurrence list per edge
    occ: Dict[int, List[Tuple[int, int]]] = {}
    for ci, quad in enumerate(quads):
        for sl, e in enumerate(quad):
            occ.setdefault(e, []).append((ci, sl))
    for e, places in occ.items():
        if len(places) != 2:
            raise PDError("edge %d appears %d times" % (e, len(places)))
    # direction[ci, sl] = "in" | "out"
    direction: Dict[Tuple[int, int], str] = {}

    def setdir(ci: int, sl: int, d: str):
        key = (ci, sl)
        if direction.get(key, d) != d:
            raise PDError("inconsistent strand orientation")
        if key in direction:
            return
        direction[key] = d
        # other occurrence of the same edge has the opposite role
        e = quads[ci][sl]
        for cj, sj in occ[e]:
            if (cj, sj) != key:
                other = "out" if d == "in" else "in"
                kk = (cj, sj)
                if direction.get(kk, other) != other:
                    raise PDError("inconsistent strand orientation")
                if kk not in direction:
                    direction[kk] = other
                    propagate(cj, sj)

    def propagate(ci: int, sl: int):
        # within a crossing: slot0 in, slot2 out always; slots 1,3 opposite
        quad_dirs = {s: direction.get((ci, s)) for s in range(4)}
        if quad_dirs[1] is not None and quad_dirs[3] is None:
            setdir(ci, 3, "out" if quad_dirs[1] == "in" else "in")
        if quad_dirs[3] is not None and quad_dirs[1] is None:
            setdir(ci, 1, "out" if quad_dirs[3] == "in" else "in")

    for ci in range(len(quads)):
        setdir(ci, 0, "in")
        setdir(ci, 2, "out")
    # resolve fully-over components deterministically
    for ci in range(len(quads)):
        if (ci, 1) not in direction:
            setdir(ci, 1, "in")
            propagate(ci, 1)
    signs = tuple(
        1 if direction[(ci, 1)] == "in" else -1 for ci in range(len(quads))
    )
    return PDCode(tuple(tuple(q) for q in quads), signs, free_loops)


# ---------------------------------------------------------------------------
# Braid closures
# ---------------------------------------------------------------------------


def braid_closure(word: Sequence[int], strands: Optional[int] = None) -> PDCode:
    """PD code of the closure of a braid word.

    Letters are nonzero integers: +i is the standard generator crossing
    strand i over strand i+1, -i its inverse.
    """
    if not word:
        return PDCode((), (), free_loops=max(1, strands or 1))
    k = strands or (max(abs(x) for x in word) + 1)
    if any(abs(x) < 1 or abs(x) >= k for x in word):
        raise PDError("letter out of range for %d strands" % k)
    nxt = itertools.count(1)
    cur = [next(nxt) for _ in range(k)]
    first = list(cur)
    quads: List[List[int]] = []
    signs: List[int] = []
    for letter in word:
        i = abs(letter) - 1
        a, b = cur[i], cur[i + 1]
        c, d = next(nxt), next(nxt)
        if letter > 0:
            # strand at position i passes over: under runs b -> c
            quads.append([b, a, c, d])
            signs.append(1)
        else:
            quads.append([a, c, d, b])
            signs.append(-1)
        cur[i], cur[i + 1] = c, d
    # close up: identify cur[j] with first[j]
    rename = {cur[j]: first[j] for j in range(k) if cur[j] != first[j]}
    free = sum(1 for j in range(k) if cur[j] == first[j])

    def rn(e: int) -> int:
        while e in rename:
            e = rename[e]
        return e

    quads2 = tuple(tuple(rn(e) for e in quad) for quad in quads)
    return PDCode(quads2, tuple(signs), free_loops=free)


# ---------------------------------------------------------------------------
# Reduction (R1 / R2 on the closed diagram)
# ---------------------------------------------------------------------------


def _relabel(pd: PDCode) -> PDCode:
    labels = sorted({e for quad in pd.crossings for e in quad})
    m = {e: i + 1 for i, e in enumerate(labels)}
    return PDCode(
        tuple(tuple(m[e] for e in quad) for quad in pd.crossings),
        pd.signs,
        pd.free_loops,
    )


def _apply_move(
    quads: List[List[int]],
    signs: List[int],
    remove: Sequence[int],
    joins: Sequence[Tuple[int, int]],
) -> int:
    """Delete the crossings at indices ``remove`` and splice the strands
    along the label pairs in ``joins``.  Mutates quads/signs in place and
    returns the number of free loops that closed up."""
    for k in sorted(remove, reverse=True):
        del quads[k]
        del signs[k]
    parent: Dict[int, int] = {}

    def find(x: int) -> int:
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in joins:
        parent[find(a)] = find(b)
    groups: Dict[int, List[int]] = {}
    for x in list(parent):
        groups.setdefault(find(x), []).append(x)
    freed = 0
    for members in groups.values():
        mset = set(members)
        spots = [
            (qi, sl)
            for qi, q in enumerate(quads)
            for sl in range(4)
            if q[sl] in mset
        ]
        if not spots:
            freed += 1
            continue
        if len(spots) != 2:
            raise PDError("reduction splice touched %d ends" % len(spots))
        new = min(mset)
        for qi, sl in spots:
            quads[qi][sl] = new
    return freed


def _find_r1(quads: List[List[int]]) -> Optional[Tuple[int, int]]:
    for i, q in enumerate(quads):
        for j in range(4):
            if q[j] == q[(j + 1) % 4]:
                return i, j
    return None


def _find_r2(
    quads: List[List[int]],
) -> Optional[Tuple[int, int, int, int, int, int]]:
    over = {1, 3}
    for i in range(len(quads)):
        for j in range(i + 1, len(quads)):
            shared = sorted(set(quads[i]) & set(quads[j]))
            for e1, e2 in itertools.combinations(shared, 2):
                s1, s2 = quads[i].index(e1), quads[i].index(e2)
                t1, t2 = quads[j].index(e1), quads[j].index(e2)
                if (s1 - s2) % 4 not in (1, 3) or (t1 - t2) % 4 not in (1, 3):
                    continue
                # one strand passes over the other at both crossings
                if ((s1 in over) != (t1 in over)) or (
                    (s2 in over) != (t2 in over)
                ) or ((s1 in over) == (s2 in over)):
                    continue
                # planar bigon: opposite chirality at the two corners
                if ((s2 - s1) % 4 == 1) == ((t2 - t1) % 4 == 1):
                    continue
                return i, j, s1, t1, s2, t2
    return None


def reduce_pd(pd: PDCode) -> PDCode:
    """Greedy R1/R2 reduction of a closed-diagram PD code."""
    quads = [list(q) for q in pd.crossings]
    signs = list(pd.signs)
    free = pd.free_loops
    while True:
        r1 = _find_r1(quads)
        if r1 is not None:
            i, j = r1
            q = quads[i]
            free += _apply_move(
                quads, signs, [i], [(q[(j + 2) % 4], q[(j + 3) % 4])]
            )
            continue
        r2 = _find_r2(quads)
        if r2 is not None:
            i, j, s1, t1, s2, t2 = r2
            joins = [
                (quads[i][(s1 + 2) % 4], quads[j][(t1 + 2) % 4]),
                (quads[i][(s2 + 2) % 4], quads[j][(t2 + 2) % 4]),
            ]
            free += _apply_move(quads, signs, [i, j], joins)
            continue
        break
    out = PDCode(tuple(tuple(q) for q in quads), tuple(signs), free)
    return _relabel(out)
