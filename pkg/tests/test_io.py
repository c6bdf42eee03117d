"""Serialization round-trips and export formats."""

from fractions import Fraction

import pytest

from railstick import io as rio
from railstick.catalog import winding_arc
from railstick.geometry import StickKnot, StickLink, MultiStickRailArc, project
from railstick.knotdata import pd as kpd


TREFOIL_KNOT = StickKnot(vertices=[
    (0, 0, 1), (4, 2, -1), (-3, 3, 0),
    (3, -2, 1), (1, 4, -1), (-4, -1, 0),
])


def test_rat_unrat_roundtrip():
    for x in (Fraction(3, 7), Fraction(-2), 5, Fraction(0)):
        assert rio.unrat(rio.rat(x)) == Fraction(x)


def test_rail_arc_json_roundtrip(tmp_path):
    arc = winding_arc(2)
    p = tmp_path / "arc.json"
    rio.save_conformation(arc, str(p))
    back = rio.load_conformation(str(p))
    assert type(back) is type(arc)
    assert back.vertices == arc.vertices


def test_knot_json_roundtrip(tmp_path):
    p = tmp_path / "k.json"
    rio.save_conformation(TREFOIL_KNOT, str(p))
    back = rio.load_conformation(str(p))
    assert [tuple(v) for v in back.vertices] == TREFOIL_KNOT.vertices


def test_link_and_multi_roundtrip(tmp_path):
    other = StickKnot(vertices=[(10, 0, 0), (12, 1, 1), (11, 3, -1), (9, 1, 0)])
    link = StickLink(components=[TREFOIL_KNOT, other])
    p = tmp_path / "l.json"
    rio.save_conformation(link, str(p))
    back = rio.load_conformation(str(p))
    assert [[tuple(v) for v in c.vertices] for c in back.components] == [
        list(c.vertices) for c in link.components]

    multi = MultiStickRailArc(arc=winding_arc(1), knots=[other])
    p2 = tmp_path / "m.json"
    rio.save_conformation(multi, str(p2))
    back2 = rio.load_conformation(str(p2))
    assert back2.arc.vertices == multi.arc.vertices
    assert [tuple(v) for v in back2.knots[0].vertices] == other.vertices


def test_json_rejects_unknown_kind():
    with pytest.raises((ValueError, KeyError)):
        rio.conformation_from_json({"kind": "mystery", "vertices": []})


def test_pd_text_roundtrip():
    code = kpd("3_1")
    text = rio.pd_to_text(code)
    back = rio.pd_from_text(text)
    assert back.crossings == code.crossings
    assert back.signs == code.signs


def test_diagram_svg_has_strands(tmp_path):
    g = project(winding_arc(2))
    svg = rio.diagram_to_svg(g)
    assert svg.startswith("<svg") or "<svg" in svg
    assert "polyline" in svg or "path" in svg
    out = tmp_path / "d.svg"
    rio.diagram_to_svg(g, str(out))
    assert out.stat().st_size > 100


def test_obj_export(tmp_path):
    text = rio.conformation_to_obj(TREFOIL_KNOT)
    assert text.count("v ") == len(TREFOIL_KNOT.vertices)
    assert "l " in text
    out = tmp_path / "k.obj"
    rio.conformation_to_obj(TREFOIL_KNOT, str(out))
    assert out.read_text() == text
