from fractions import Fraction as F

import pytest

from railstick.catalog import winding_arc
from railstick.geometry import StickRailArc, project
from railstick.planarmap import to_combinatorial
from railstick.winding import (
    ClosedPolygonalCurve,
    map_winding,
    rail_winding,
    winding_at,
)


def test_winding_at_square():
    square = ClosedPolygonalCurve((
        (F(-1), F(-1)), (F(1), F(-1)), (F(1), F(1)), (F(-1), F(1))))
    assert winding_at(square, (F(0), F(0))) == 1
    assert winding_at(square, (F(3), F(0))) == 0


def test_winding_at_doubled_square():
    pts = ((F(-1), F(-1)), (F(1), F(-1)), (F(1), F(1)), (F(-1), F(1)))
    doubled = ClosedPolygonalCurve(pts + pts)
    assert winding_at(doubled, (F(0), F(0))) == 2


@pytest.mark.parametrize("n", [1, -1, 2, -2, 3, -3, 4, -4, 5, -5])
def test_rail_winding_of_spiral(n):
    assert rail_winding(project(winding_arc(n), seed=0)) == n


@pytest.mark.parametrize("n", [1, -1, 2, -2, 3, 4])
def test_map_winding_matches_geometric(n):
    g = project(winding_arc(n), seed=0)
    assert map_winding(to_combinatorial(g)) == n


def test_winding_zero_for_plain_arc():
    arc = StickRailArc.from_points([
        (F(0), F(0), F(0)), (F(1, 2), F(2), F(1)), (F(1), F(0), F(0))])
    assert rail_winding(project(arc)) == 0
