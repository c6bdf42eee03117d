"""CLI smoke tests via click's test runner."""

import json

import pytest
from click.testing import CliRunner

from railstick import io as rio
from railstick.catalog import winding_arc
from railstick.cli import main


@pytest.fixture()
def runner():
    return CliRunner()


@pytest.fixture()
def arc_file(tmp_path):
    p = tmp_path / "w2.json"
    rio.save_conformation(winding_arc(2), str(p))
    return str(p)


def test_validate(runner, arc_file):
    r = runner.invoke(main, ["validate", "--in", arc_file])
    assert r.exit_code == 0
    assert "ok" in r.output


def test_winding_json(runner, arc_file):
    r = runner.invoke(main, ["--format", "json", "winding", "--in", arc_file])
    assert r.exit_code == 0
    assert json.loads(r.output)["winding"] == 2


def test_project_writes_svg(runner, arc_file, tmp_path):
    out = tmp_path / "d.svg"
    r = runner.invoke(main, ["project", "--in", arc_file, "--out", str(out)])
    assert r.exit_code == 0
    assert out.exists()


def test_classify_and_simplify(runner, arc_file):
    r = runner.invoke(main, ["classify", "--in", arc_file])
    assert r.exit_code == 0
    r2 = runner.invoke(main, ["simplify", "--in", arc_file])
    assert r2.exit_code == 0
    assert "->" in r2.output


def test_identify_pd(runner):
    from railstick.knotdata import pd

    text = rio.pd_to_text(pd("4_1"))
    r = runner.invoke(main, ["--format", "json", "identify", "--pd", text])
    assert r.exit_code == 0
    assert "4_1" in json.loads(r.output)["names"]


def test_identify_needs_input(runner):
    r = runner.invoke(main, ["identify"])
    assert r.exit_code == 2


def test_bounds(runner):
    r = runner.invoke(main, ["--format", "json", "bounds", "3_1"])
    assert r.exit_code == 0
    data = json.loads(r.output)
    assert data["lower"] <= data["upper"]
    r2 = runner.invoke(main, ["bounds", "no_such"])
    assert r2.exit_code == 2


def test_census_small(runner):
    r = runner.invoke(main, ["--format", "json", "census", "--sticks", "3",
                             "--samples", "20", "--seed", "5"])
    assert r.exit_code == 0
    hist = json.loads(r.output)["histogram"]
    assert sum(hist.values()) == 20
    assert set(hist) == {"trivial"}


def test_catalog_show(runner):
    r = runner.invoke(main, ["catalog", "show", "1_1"])
    assert r.exit_code == 0
    r2 = runner.invoke(main, ["catalog", "show", "nope"])
    assert r2.exit_code == 2
