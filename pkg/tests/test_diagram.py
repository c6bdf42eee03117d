"""Gauss codes and classification of small rail arcs."""

import pytest

from railstick.catalog import winding_arc
from railstick.diagram import classify, gauss_code
from railstick.geometry import StickRailArc, project
from railstick.planarmap import MapError, to_combinatorial


def _map(arc, seed=0):
    return to_combinatorial(project(arc, seed=seed))


PLAIN = StickRailArc.from_points([(0, 0, 0), (3, 4, 1), (1, 0, 2)])


def test_gauss_code_of_plain_arc():
    code = gauss_code(_map(PLAIN))
    assert code.passages == ()
    assert code.text().startswith("-")


def test_gauss_code_spiral():
    code = gauss_code(_map(winding_arc(2)))
    labels = [p[0] for p in code.passages]
    # every crossing visited twice, once over once under
    assert sorted(labels) == sorted(set(labels)) * 2
    for lab in set(labels):
        roles = {p[1] for p in code.passages if p[0] == lab}
        assert roles == {"O", "U"}


def test_gauss_code_needs_open_strand():
    from railstick.geometry import StickKnot

    k = StickKnot(vertices=[(0, 0, 0), (4, 1, 1), (2, 3, -1), (0, 2, 2)])
    with pytest.raises(MapError):
        gauss_code(to_combinatorial(project(k)))


def test_classify_trivial():
    assert classify(_map(PLAIN)) == "trivial"


@pytest.mark.parametrize("n,label", [(1, "1_1"), (-1, "1_1"), (2, "2_3"), (-2, "2_3")])
def test_classify_windings(n, label):
    assert classify(_map(winding_arc(n))) == label


def test_classify_is_projection_seed_invariant():
    arc = winding_arc(2)
    labels = {classify(_map(arc, seed=s)) for s in range(4)}
    assert labels == {"2_3"}
