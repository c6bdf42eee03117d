"""Built-in verified conformations.

Every stick-count claim the library makes is backed by an explicit
conformation stored here, together with the machinery to re-check it:
``verify_all`` rebuilds each entry, projects it, classifies it, and
compares stick counts and companion identifications against the claims.

Coordinates are reconstructions: each was produced by building a
candidate (by hand or by search), running the self-check, and iterating
until it passed.  None is trusted without its check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from . import knotdata
from .geometry import (
    MultiStickRailArc,
    StickKnot,
    StickRailArc,
    project,
    stick_count,
    validate,
    validate_rail_arc,
)
from .moves import simplify
from .planarmap import canonical_code, to_combinatorial
from .winding import rail_winding

F = Fraction


# ---------------------------------------------------------------------------
# Entry type
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CatalogEntry:
    """One named conformation plus the claims made about it."""

    name: str
    kind: str  # rail-arc | knot | link | lattice-rail-arc | multi-rail-arc
    conformation: object
    sticks: int
    classification: Optional[str] = None
    companions: Dict[str, str] = field(default_factory=dict)
    winding: Optional[int] = None
    note: str = ""

    def check(self) -> List[str]:
        """Re-verify every claim; returns a list of problems (empty = pass)."""
        from . import diagram, invariants

        problems: List[str] = []
        obj = self.conformation
        if stick_count(obj) != self.sticks:
            problems.append(
                "stick count %d != claimed %d" % (stick_count(obj), self.sticks)
            )
        if not validate(obj):
            problems.append("conformation fails validation")
            return problems
        if self.kind in ("knot", "link"):
            got = invariants.identify(invariants.pd_of_diagram(
                to_combinatorial(project(obj, seed=0))))
            if self.classification is not None and self.classification not in got:
                problems.append("identified as %r, claimed %s" % (got, self.classification))
            return problems
        g = project(obj, seed=0)
        if self.winding is not None:
            w = rail_winding(g)
            if w != self.winding:
                problems.append("winding %s != claimed %d" % (w, self.winding))
        if self.classification is not None:
            label = diagram.classify(to_combinatorial(g))
            if label != self.classification:
                problems.append(
                    "classified as %s, claimed %s" % (label, self.classification)
                )
        for side, want in self.companions.items():
            got = invariants.identify(invariants.companion(
                to_combinatorial(g), side))
            if want not in got:
                problems.append(
                    "%s companion identified as %r, claimed %s" % (side, got, want)
                )
        return problems


# ---------------------------------------------------------------------------
# The winding family W_n
# ---------------------------------------------------------------------------

def winding_arc(n: int) -> StickRailArc:
    """Monotone spiral with winding ``n`` on ``4 + 2(|n|-1)`` sticks.

    The projection alternates between the upper and lower half planes,
    crossing the axis left of the tail and right of the head, with
    radii shrinking fast enough that consecutive loops nest cleanly;
    the height decreases strictly, so every crossing is a new strand
    passing under an older one.
    """
    if n == 0:
        raise ValueError("winding_arc needs n != 0")
    k = abs(n)
    pts2 = [(F(0), F(0))]
    for j in range(1, k + 1):
        s = F(16) ** (k + 1 - j)
        pts2.append((F(-4), 4 * s))
        pts2.append((F(4), -s))
    pts2.append((F(-4), F(1, 4)))
    pts2.append((F(1), F(0)))
    z = F(0)
    pts = []
    for p in pts2:
        pts.append((p[0], p[1], z))
        z -= 1
    if n > 0:
        pts = [(x, -y, zz) for (x, y, zz) in pts]
    return StickRailArc.from_points(pts)


# ---------------------------------------------------------------------------
# Multi-component family: spanning stick plus n nested unknot loops
# ---------------------------------------------------------------------------

def multi_arc_family(n: int) -> MultiStickRailArc:
    """A spanning stick plus ``n`` triangular unknots looping both rails.

    Each triangle sits in its own horizontal plane and strictly contains
    the previous one in projection, so the diagram has no crossings at
    all; the loops are nevertheless essential because each one encloses
    both rails.  Total ``3n + 1`` sticks.
    """
    if n < 1:
        raise ValueError("n >= 1")
    span = StickRailArc.from_points([(F(0), F(0), F(0)), (F(1), F(0), F(0))])
    loops = []
    for i in range(n):
        s = i + 1
        z = F(2 * (i + 1))
        loops.append(StickKnot.from_points([
            (F(-1 - s), F(-1 - s), z),
            (F(2 + s), F(-1 - s), z),
            (F(1, 2), F(1 + s), z),
        ]))
    return MultiStickRailArc(arc=span, knots=tuple(loops))


# ---------------------------------------------------------------------------
# Named rail-arc conformations (filled in from verified search output)
# ---------------------------------------------------------------------------

# name -> (points, winding, {side: companion})
_RAIL_ARC_DATA: Dict[str, Tuple[Tuple[Tuple[F, F, F], ...], Optional[int], Dict[str, str]]] = {}


def _register_arc(name, pts, w, comps):
    _RAIL_ARC_DATA[name] = (
        tuple(tuple(F(c) for c in p) for p in pts), w, dict(comps))


# ---------------------------------------------------------------------------
# Public accessors
# ---------------------------------------------------------------------------

def names() -> List[str]:
    out = sorted(_RAIL_ARC_DATA)
    out += ["1_1"]
    out += knotdata.names()
    return sorted(set(out))


@lru_cache(maxsize=None)
def get(name: str) -> CatalogEntry:
    if name == "1_1":
        return CatalogEntry(
            name="1_1", kind="rail-arc", conformation=winding_arc(1),
            sticks=4, classification="1_1", winding=1,
            note="single-crossing class; also the first winding-family member")
    if name in _RAIL_ARC_DATA:
        pts, w, comps = _RAIL_ARC_DATA[name]
        arc = StickRailArc.from_points(pts)
        return CatalogEntry(
            name=name, kind="rail-arc", conformation=arc,
            sticks=len(pts) - 1, classification=name,
            companions=comps, winding=w)
    if name in set(knotdata.names()):
        raise KeyError(
            "%r is shipped as a PD code, not a conformation; use knotdata.pd" % name)
    raise KeyError("unknown catalog name %r" % name)


def family(name: str, k: int) -> CatalogEntry:
    """Parametric families: W (winding), multi, lattice-multi, torus."""
    from . import lattice

    if name == "W":
        if k == 0:
            raise ValueError("W family needs n != 0")
        arc = winding_arc(k)
        return CatalogEntry(
            name="W_%d" % k, kind="rail-arc", conformation=arc,
            sticks=4 + 2 * (abs(k) - 1), winding=k,
            note="monotone winding spiral")
    if name == "multi":
        mu = multi_arc_family(k)
        return CatalogEntry(
            name="multi_%d" % k, kind="multi-rail-arc", conformation=mu,
            sticks=3 * k + 1,
            note="spanning stick plus %d nested unknot loops" % k)
    if name == "lattice-multi":
        mu = lattice.lattice_multi_family(k)
        return CatalogEntry(
            name="lattice_multi_%d" % k, kind="multi-rail-arc",
            conformation=mu.as_geometric(), sticks=4 * k + 1,
            note="cubic-lattice spanning stick plus %d unit squares" % k)
    if name == "torus":
        arc = lattice.torus_rail_arc(k)
        return CatalogEntry(
            name="torus_%d" % k, kind="lattice-rail-arc",
            conformation=arc.as_geometric(),
            sticks=lattice.lattice_stick_count(arc),
            note="lattice arc whose under companion is the (%d,%d) torus knot"
                 % (k, k + 1))
    raise KeyError("unknown family %r" % name)


# ---------------------------------------------------------------------------
# Canonical-code tables used by diagram.classify
# ---------------------------------------------------------------------------

def _minimal_map(conformation):
    m = simplify(to_combinatorial(project(conformation, seed=0)), node_cap=2000)
    # a second, harder pass clears the rare plateau the greedy pass hits
    return simplify(m, slack=4, node_cap=6000)


@lru_cache(maxsize=1)
def minimal_code_table() -> Dict[object, str]:
    """canonical_code (modulo involutions) of each named class's minimal diagram."""
    table: Dict[object, str] = {}
    for name in ["1_1"] + sorted(_RAIL_ARC_DATA):
        entry = get(name)
        table[canonical_code(_minimal_map(entry.conformation),
                             modulo="involutions")] = name
    return table


@lru_cache(maxsize=None)
def winding_minimal_code(n: int):
    """Minimal-diagram code of the |n|-winding spiral class."""
    return canonical_code(_minimal_map(winding_arc(abs(n))), modulo="involutions")


# ---------------------------------------------------------------------------
# verify_all
# ---------------------------------------------------------------------------

def verify_all() -> List[Tuple[str, bool, str]]:
    """Self-check every entry; (name, passed, detail) per claim."""
    from . import lattice

    rows: List[Tuple[str, bool, str]] = []

    def run(entry: CatalogEntry):
        problems = entry.check()
        rows.append((entry.name, not problems, "; ".join(problems) or "ok"))

    for name in ["1_1"] + sorted(_RAIL_ARC_DATA):
        run(get(name))
    for n in (1, 2, 3, 4, 5, -1, -2, -3, -4, -5):
        e = family("W", n)
        w = rail_winding(project(e.conformation, seed=0))
        ok = w == n and stick_count(e.conformation) == 4 + 2 * (abs(n) - 1)
        rows.append(("W_%d" % n, ok,
                     "winding %s sticks %d" % (w, stick_count(e.conformation))))
    for n in range(1, 6):
        e = family("multi", n)
        ok = validate(e.conformation) and stick_count(e.conformation) == 3 * n + 1
        rows.append((e.name, ok, "sticks %d" % stick_count(e.conformation)))
        e = family("lattice-multi", n)
        ok = validate(e.conformation) and stick_count(e.conformation) == 4 * n + 1
        rows.append((e.name, ok, "sticks %d" % stick_count(e.conformation)))
    for name, entry in sorted(lattice_entries().items()):
        run(entry)
    return rows


# ---------------------------------------------------------------------------
# Lattice entries (filled in from verified search output)
# ---------------------------------------------------------------------------

_LATTICE_ARC_DATA: Dict[str, Tuple[Tuple[Tuple[int, int, int], ...], str, str]] = {}


def _register_lattice(name, pts, side, companion):
    _LATTICE_ARC_DATA[name] = (tuple(tuple(p) for p in pts), side, companion)


@lru_cache(maxsize=1)
def lattice_entries() -> Dict[str, CatalogEntry]:
    from . import lattice

    out = {}
    for name, (pts, side, comp) in _LATTICE_ARC_DATA.items():
        arc = lattice.LatticeRailArc.from_points(pts)
        out[name] = CatalogEntry(
            name=name, kind="lattice-rail-arc", conformation=arc.as_geometric(),
            sticks=len(pts) - 1, companions={side: comp},
            note="cubic-lattice conformation")
    return out
