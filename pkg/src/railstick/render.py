"""Figure output: matplotlib renderings of conformations and diagrams.

The matplotlib backend is forced to Agg so rendering works headless;
every function writes a file and returns its path.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

from .geometry import GeometricDiagram  # noqa: E402
from .io import _paths_of, _split_gaps  # noqa: E402


def render_diagram(g: GeometricDiagram, path: str, title: str = "") -> str:
    """Planar diagram with under-strand gaps and endpoint glyphs."""
    fig, ax = plt.subplots(figsize=(5, 5))
    under_cuts = {}
    for c in g.crossings:
        under = c.second if c.over_first else c.first
        t = c.t_second if c.over_first else c.t_first
        under_cuts.setdefault(under, []).append(t)
    for ci in range(len(g.components)):
        segs = g.component_segments(ci)
        cuts = {si: under_cuts.get((ci, si), []) for si in range(len(segs))}
        colour = "tab:blue" if (g.has_open and ci == 0) else "0.45"
        for p, q in _split_gaps(segs, cuts):
            ax.plot([float(p[0]), float(q[0])], [float(p[1]), float(q[1])],
                    color=colour, lw=2.0, solid_capstyle="round")
    if g.has_open:
        ax.plot([float(g.tail[0])], [float(g.tail[1])], "o",
                color="tab:blue", ms=8)
        a, b = g.components[0][-2], g.components[0][-1]
        ax.annotate("", xy=(float(b[0]), float(b[1])),
                    xytext=(float(a[0]), float(a[1])),
                    arrowprops=dict(arrowstyle="-|>", color="tab:blue", lw=2))
    ax.set_aspect("equal")
    ax.set_axis_off()
    if title:
        ax.set_title(title)
    fig.savefig(path, dpi=130, bbox_inches="tight")
    plt.close(fig)
    return path


def render_conformation(obj, path: str, title: str = "") -> str:
    """3-D polyline view with the two rails drawn as vertical lines."""
    open_path, loops = _paths_of(obj)
    fig = plt.figure(figsize=(6, 6))
    ax = fig.add_subplot(projection="3d")
    zs = [float(p[2]) for pts in ([open_path] if open_path else []) + loops
          for p in pts]
    lo, hi = (min(zs) - 1, max(zs) + 1) if zs else (-1, 1)
    for rx in (0.0, 1.0):
        ax.plot([rx, rx], [0, 0], [lo, hi], color="0.7", lw=1.4, ls="--")
    if open_path is not None:
        xs, ys, z3 = zip(*[(float(a), float(b), float(c))
                           for a, b, c in open_path])
        ax.plot(xs, ys, z3, color="tab:blue", lw=2)
        ax.scatter([xs[0], xs[-1]], [ys[0], ys[-1]], [z3[0], z3[-1]],
                   color="tab:red", s=24)
    for lp in loops:
        cyc = list(lp) + [lp[0]]
        xs, ys, z3 = zip(*[(float(a), float(b), float(c)) for a, b, c in cyc])
        ax.plot(xs, ys, z3, color="0.4", lw=2)
    if title:
        ax.set_title(title)
    fig.savefig(path, dpi=130, bbox_inches="tight")
    plt.close(fig)
    return path


def render_histogram(hist, path: str, title: str = "") -> str:
    """Bar chart of a census histogram."""
    fig, ax = plt.subplots(figsize=(6, 4))
    labels = sorted(hist)
    ax.bar(range(len(labels)), [hist[k] for k in labels], color="tab:blue")
    ax.set_xticks(range(len(labels)))
    ax.set_xticklabels(labels, rotation=30, ha="right")
    ax.set_ylabel("samples")
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=130)
    plt.close(fig)
    return path
