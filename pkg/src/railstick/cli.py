"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 input error.
With ``--format json`` every subcommand prints a single JSON document;
the text format fixes column order so reports diff cleanly.
"""

from __future__ import annotations

import csv
import json
import os
import sys

import click

from . import io as rio
from .geometry import project, stick_count, validate
from .moves import simplify
from .planarmap import to_combinatorial


def _load(path):
    try:
        return rio.load_conformation(path)
    except (OSError, ValueError, KeyError) as e:
        click.echo("error: cannot read conformation %r: %s" % (path, e), err=True)
        sys.exit(2)


def _emit(fmt, payload: dict, text_lines):
    if fmt == "json":
        click.echo(json.dumps(payload, sort_keys=True))
    else:
        for line in text_lines:
            click.echo(line)


@click.group()
@click.option("--format", "fmt", type=click.Choice(["text", "json"]),
              default="text")
@click.pass_context
def main(ctx, fmt):
    ctx.obj = {"fmt": fmt}


def _fmt(ctx):
    root = ctx.find_root()
    return (root.obj or {}).get("fmt", "text")


_in = click.option("--in", "infile", required=True,
                   type=click.Path(exists=True, dir_okay=False))
_seed = click.option("--seed", type=int, default=0, show_default=True)
_budget = click.option("--budget", type=int, default=4000, show_default=True)


@main.command("validate")
@_in
@click.pass_context
def validate_cmd(ctx, infile):
    """Check a conformation's geometric invariants."""
    obj = _load(infile)
    rep = validate(obj)
    _emit(_fmt(ctx), {"ok": rep.ok, "violations": rep.violations,
                      "sticks": stick_count(obj)},
          ["ok" if rep.ok else "INVALID"] + ["  " + v for v in rep.violations])
    sys.exit(0 if rep.ok else 1)


@main.command("project")
@_in
@_seed
@click.option("--out", type=click.Path(dir_okay=False))
@click.pass_context
def project_cmd(ctx, infile, seed, out):
    """Project to a planar diagram; optionally write an SVG."""
    obj = _load(infile)
    g = project(obj, seed=seed)
    if out:
        rio.diagram_to_svg(g, out)
    _emit(_fmt(ctx), {"crossings": g.crossing_count(),
                      "components": len(g.components), "svg": out},
          ["crossings %d" % g.crossing_count()])


@main.command("simplify")
@_in
@_seed
@_budget
@click.pass_context
def simplify_cmd(ctx, infile, seed, budget):
    """Reduce the projected diagram and print its Gauss code."""
    from .diagram import gauss_code

    obj = _load(infile)
    m = to_combinatorial(project(obj, seed=seed))
    s = simplify(m, node_cap=budget)
    code = gauss_code(s)
    _emit(_fmt(ctx), {"crossings_before": m.crossing_count(),
                      "crossings_after": s.crossing_count(),
                      "gauss": code.text()},
          ["%d -> %d crossings" % (m.crossing_count(), s.crossing_count()),
           code.text()])


@main.command("classify")
@_in
@_seed
@_budget
@click.pass_context
def classify_cmd(ctx, infile, seed, budget):
    """Class label of a rail arc conformation."""
    from .diagram import classify

    obj = _load(infile)
    label = classify(to_combinatorial(project(obj, seed=seed)), budget=budget)
    _emit(_fmt(ctx), {"label": label}, [label])
    sys.exit(0 if label != "unclassified" else 1)


@main.command("winding")
@_in
@_seed
@click.pass_context
def winding_cmd(ctx, infile, seed):
    """Winding number of a rail arc conformation."""
    from .winding import rail_winding

    obj = _load(infile)
    w = rail_winding(project(obj, seed=seed))
    _emit(_fmt(ctx), {"winding": w}, [str(w)])


@main.command("companion")
@_in
@_seed
@click.option("--side", type=click.Choice(["under", "over"]), required=True)
@click.pass_context
def companion_cmd(ctx, infile, seed, side):
    """Companion knot obtained by closing past the diagram on one side."""
    from . import invariants

    obj = _load(infile)
    m = to_combinatorial(project(obj, seed=seed))
    pd = invariants.companion(m, side)
    names = sorted(invariants.identify(pd))
    _emit(_fmt(ctx), {"side": side, "pd": rio.pd_to_text(pd), "names": names},
          [rio.pd_to_text(pd), " ".join(names) or "(unidentified)"])


@main.command("identify")
@click.option("--in", "infile", type=click.Path(exists=True, dir_okay=False))
@click.option("--pd", "pdtext")
@_seed
@click.pass_context
def identify_cmd(ctx, infile, pdtext, seed):
    """Name a knot/link from a conformation or a PD code."""
    from . import invariants

    if pdtext:
        pd = rio.pd_from_text(pdtext)
    elif infile:
        pd = invariants.pd_of_diagram(project(_load(infile), seed=seed))
    else:
        click.echo("error: need --in or --pd", err=True)
        sys.exit(2)
    names = sorted(invariants.identify(pd))
    _emit(_fmt(ctx), {"names": names}, [" ".join(names) or "(unidentified)"])
    sys.exit(0 if names else 1)


@main.command("census")
@click.option("--sticks", type=int, required=True)
@click.option("--samples", type=int, required=True)
@_seed
@click.option("--budget", type=int, default=2000, show_default=True)
@click.option("--workers", type=int, default=1, show_default=True)
@click.option("--dump", type=click.Path(dir_okay=False))
@click.pass_context
def census_cmd(ctx, sticks, samples, seed, budget, workers, dump):
    """Histogram of class labels over random conformations."""
    from .search import sample_census

    hist, dumps = sample_census(sticks, samples, seed=seed, workers=workers,
                                budget=budget)
    if dump and dumps:
        with open(dump, "w") as f:
            json.dump([[[str(c) for c in p] for p in pts] for pts in dumps], f)
    _emit(_fmt(ctx), {"histogram": dict(sorted(hist.items())),
                      "unclassified_dumped": len(dumps)},
          ["%-12s %d" % (k, v) for k, v in sorted(hist.items())])


@main.command("anneal")
@click.option("--goal", required=True)
@click.option("--max-sticks", type=int, required=True)
@click.option("--companion", "as_companion", is_flag=True,
              help="goal names a companion knot rather than a label")
@click.option("--side", type=click.Choice(["under", "over"]), default="under")
@_seed
@click.option("--budget", type=int, default=2000, show_default=True)
@click.option("--workers", type=int, default=1, show_default=True)
@click.option("--out", type=click.Path(dir_okay=False))
@click.pass_context
def anneal_cmd(ctx, goal, max_sticks, as_companion, side, seed, budget,
               workers, out):
    """Search for a conformation achieving a label or companion goal."""
    from .search import anneal

    res = anneal((side, goal) if as_companion else goal, max_sticks,
                 seed=seed, workers=workers, budget=budget)
    payload = {"achieved": res.achieved, "sticks": res.sticks,
               "energy": res.best_energy, "evaluations": res.evaluations}
    if res.achieved and out:
        rio.save_conformation(res.conformation, out)
        payload["out"] = out
    _emit(_fmt(ctx), payload,
          ["achieved" if res.achieved else "failed",
           "sticks %s energy %.3f evals %d"
           % (res.sticks, res.best_energy, res.evaluations)])
    sys.exit(0 if res.achieved else 1)


@main.command("bounds")
@click.argument("name")
@click.pass_context
def bounds_cmd(ctx, name):
    """Stick-number bounds for a named knot."""
    from . import search

    try:
        lo, hi = search.rs_bounds(name)
    except KeyError as e:
        click.echo("error: %s" % e, err=True)
        sys.exit(2)
    payload = {"name": name, "lower": lo, "upper": hi}
    lines = ["%s: rail sticks in [%d, %d]" % (name, lo, hi)]
    try:
        payload["lattice_lower"] = search.lattice_rs_lower(name)
        lines.append("lattice lower bound %d" % payload["lattice_lower"])
    except KeyError:
        pass
    _emit(_fmt(ctx), payload, lines)


@main.group("catalog")
def catalog_grp():
    """Catalog inspection and verification."""


@catalog_grp.command("verify")
@click.pass_context
def catalog_verify(ctx):
    from . import catalog

    rows = catalog.verify_all()
    bad = [r for r in rows if not r[1]]
    _emit(_fmt(ctx),
          {"checked": len(rows), "failed": len(bad),
           "rows": [{"name": n, "ok": ok, "detail": d} for n, ok, d in rows]},
          ["%-18s %s  %s" % (n, "pass" if ok else "FAIL", d)
           for n, ok, d in rows])
    sys.exit(0 if not bad else 1)


@catalog_grp.command("show")
@click.argument("name")
@click.pass_context
def catalog_show(ctx, name):
    from . import catalog

    try:
        entry = catalog.get(name)
    except KeyError as e:
        click.echo("error: %s" % e, err=True)
        sys.exit(2)
    click.echo("%s (%s): %d sticks, %s %s"
               % (entry.name, entry.kind, entry.sticks,
                  entry.classification, entry.companions or ""))


@main.command("render")
@_in
@_seed
@click.option("--kind", type=click.Choice(["svg", "obj", "png", "png3d"]),
              default="svg", show_default=True)
@click.option("--out", required=True, type=click.Path(dir_okay=False))
@click.pass_context
def render_cmd(ctx, infile, seed, kind, out):
    """Write an SVG/PNG diagram or an OBJ/PNG view of the 3-D conformation."""
    obj = _load(infile)
    if kind == "svg":
        rio.diagram_to_svg(project(obj, seed=seed), out)
    elif kind == "obj":
        rio.conformation_to_obj(obj, out)
    elif kind == "png":
        from .render import render_diagram

        render_diagram(project(obj, seed=seed), out)
    else:
        from .render import render_conformation

        render_conformation(obj, out)
    _emit(_fmt(ctx), {"out": out}, [out])


@main.command("report")
@click.option("--outdir", required=True, type=click.Path(file_okay=False))
@click.option("--samples", type=int, default=200, show_default=True)
@_seed
@click.option("--budget", type=int, default=2000, show_default=True)
@click.option("--workers", type=int, default=1, show_default=True)
@click.option("--figures", multiple=True)
@click.pass_context
def report_cmd(ctx, outdir, samples, seed, budget, workers, figures):
    """Catalog verification + a small census: CSV tables and PNG figures."""
    from . import catalog
    from .render import render_conformation, render_diagram, render_histogram
    from .search import sample_census

    os.makedirs(outdir, exist_ok=True)
    rows = catalog.verify_all()
    csv_path = os.path.join(outdir, "catalog_verify.csv")
    with open(csv_path, "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(["name", "status", "detail"])
        for n, ok, d in rows:
            w.writerow([n, "pass" if ok else "fail", d])

    written = [csv_path]
    for name in figures or ("1_1", "W_3"):
        try:
            entry = (catalog.family("W", int(name.split("_")[1]))
                     if name.startswith("W_") else catalog.get(name))
        except (KeyError, ValueError):
            continue
        written.append(render_conformation(
            entry.conformation,
            os.path.join(outdir, "%s_conformation.png" % name), title=name))
        written.append(render_diagram(
            project(entry.conformation, seed=0),
            os.path.join(outdir, "%s_diagram.png" % name), title=name))

    hist, _ = sample_census(4, samples, seed=seed, workers=workers,
                            budget=budget)
    hist_csv = os.path.join(outdir, "census_4.csv")
    with open(hist_csv, "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(["label", "count"])
        for k, v in sorted(hist.items()):
            w.writerow([k, v])
    written.append(hist_csv)
    written.append(render_histogram(
        hist, os.path.join(outdir, "census_4.png"),
        title="4-stick census (%d samples)" % samples))

    bad = [r for r in rows if not r[1]]
    _emit(_fmt(ctx), {"outdir": outdir, "written": written,
                      "failed": len(bad)},
          ["wrote %s" % p for p in written])
    sys.exit(0 if not bad else 1)


if __name__ == "__main__":
    main()
