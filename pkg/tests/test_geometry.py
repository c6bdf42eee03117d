from fractions import Fraction as F

import pytest

from railstick import geometry
from railstick.geometry import (
    StickKnot,
    StickRailArc,
    project,
    stick_count,
    two_stick_pass,
    validate,
    validate_rail_arc,
)


def simple_arc(z0=0, z1=0):
    return StickRailArc.from_points([
        (F(0), F(0), F(z0)), (F(1, 2), F(2), F(1)), (F(1), F(0), F(z1))])


def test_validate_accepts_simple_arc():
    assert validate_rail_arc(simple_arc()).ok


def test_endpoints_must_sit_on_rails():
    arc = StickRailArc.from_points(
        [(F(1, 3), F(0), F(0)), (F(1, 2), F(2), F(1)), (F(1), F(0), F(0))])
    assert not validate_rail_arc(arc).ok


def test_interior_stick_may_not_touch_rail():
    arc = StickRailArc.from_points([
        (F(0), F(0), F(0)), (F(-1), F(-1), F(1)), (F(1), F(1), F(1)),
        (F(1), F(0), F(0))])
    # the middle stick passes through (0,0,1) on the tail rail
    assert not validate_rail_arc(arc).ok


def test_collinear_merge():
    arc = StickRailArc.from_points([
        (F(0), F(0), F(0)), (F(1, 4), F(1), F(1)), (F(1, 2), F(2), F(2)),
        (F(1), F(0), F(1))])
    assert stick_count(arc) == 2


def test_project_counts_crossings_of_plane_curve():
    g = project(simple_arc())
    assert g.crossing_count() == 0
    assert g.has_open
    assert g.tail == (0, 0) and g.head == (1, 0)


def test_project_z_order_sets_over():
    # two sticks crossing in projection; the higher one must be over
    arc = StickRailArc.from_points([
        (F(0), F(0), F(0)), (F(2), F(1), F(0)), (F(-1), F(1), F(2)),
        (F(1), F(0), F(2))])
    g = project(arc)
    assert g.crossing_count() >= 1
    for c in g.crossings:
        hi = c.first if c.over_first else c.second
        assert hi is not None


def test_two_stick_pass_adds_two_sticks():
    arc = simple_arc()
    closed = two_stick_pass(arc, "under")
    assert isinstance(closed, StickKnot)
    assert stick_count(closed) == stick_count(arc) + 2


@pytest.mark.parametrize("side", ["under", "over"])
def test_two_stick_pass_side(side):
    arc = simple_arc()
    closed = two_stick_pass(arc, side)
    zs_arc = [p[2] for p in arc.vertices]
    zs_new = [p[2] for p in closed.vertices if p not in arc.vertices]
    if side == "under":
        assert all(z < min(zs_arc) for z in zs_new)
    else:
        assert all(z > max(zs_arc) for z in zs_new)


def test_validate_knot_rejects_self_intersection():
    knot = StickKnot.from_points([
        (F(0), F(0), F(0)), (F(4), F(0), F(0)),
        (F(0), F(3), F(0)), (F(4), F(3), F(0)),
    ])
    # two coplanar edges of this quadrilateral cross each other
    assert not validate(knot).ok
