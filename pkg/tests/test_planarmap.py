import random
from fractions import Fraction as F

import pytest

from railstick.catalog import winding_arc
from railstick.geometry import StickRailArc, project, validate_rail_arc
from railstick.moves import apply_move, available_moves, simplify
from railstick.planarmap import canonical_code, involution, to_combinatorial


def spiral_map(n):
    return to_combinatorial(project(winding_arc(n), seed=0))


def random_arc(rng, n=5):
    pts = [(F(0), F(0), F(rng.randint(-4, 4), 2))]
    for _ in range(n - 1):
        pts.append(tuple(F(rng.randint(-12, 12), 3) for _ in range(3)))
    pts.append((F(1), F(0), F(rng.randint(-4, 4), 2)))
    return StickRailArc.from_points(pts)


def random_maps(count, seed=3, n=5):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        try:
            arc = random_arc(rng, n)
            if not validate_rail_arc(arc):
                continue
            out.append(to_combinatorial(project(arc, seed=1)))
        except Exception:
            continue
    return out


def test_to_combinatorial_crossing_count():
    m = spiral_map(3)
    g = project(winding_arc(3), seed=0)
    assert m.crossing_count() == g.crossing_count()


def test_simplify_spirals_to_minimal():
    for n in (1, 2, 3):
        s = simplify(spiral_map(n), node_cap=2000)
        assert s.crossing_count() == n


def test_canonical_code_stable_under_moves():
    for m in random_maps(6):
        s = simplify(m, node_cap=1500)
        code = canonical_code(s, modulo="involutions")
        # one more simplification round must not change the code
        assert canonical_code(simplify(s, node_cap=1500),
                              modulo="involutions") == code


@pytest.mark.parametrize("which", ["sym", "rot", "rev"])
def test_involutions_are_involutions(which):
    for m in random_maps(4):
        back = involution(involution(m, which), which)
        assert canonical_code(back) == canonical_code(m)


def test_involution_orbit_code_invariant():
    for m in random_maps(5):
        base = canonical_code(m, modulo="involutions")
        for which in ("sym", "rot", "rev"):
            assert canonical_code(involution(m, which),
                                  modulo="involutions") == base


def test_moves_preserve_crossing_parity_bound():
    # applying any single available move changes the crossing count by
    # at most 2 and never corrupts the map
    for m in random_maps(3):
        for mv in available_moves(m, grow=True)[:10]:
            m2 = apply_move(m, mv)
            assert abs(m2.crossing_count() - m.crossing_count()) <= 2
