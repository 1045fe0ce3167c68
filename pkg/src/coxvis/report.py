"""Static figure rendering for diagrams and decompositions.

Renders the presentation diagram on a circle and a graph-of-groups tree in
breadth-first layers, written straight to image files for the CLI report
path.  Uses the Agg backend so no display is needed.
"""

import math

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .gog import VisualGoG
from .system import CoxeterSystem


def _circle_positions(n):
    return [
        (math.cos(2 * math.pi * k / n - math.pi / 2), math.sin(2 * math.pi * k / n - math.pi / 2))
        for k in range(n)
    ]


def save_diagram_figure(sys_: CoxeterSystem, path: str) -> None:
    """Draw the presentation diagram with edge order labels and save it."""
    fig, ax = plt.subplots(figsize=(4.5, 4.5))
    pos = _circle_positions(max(sys_.rank, 1))
    for i, j in sys_.diagram_edges():
        (x1, y1), (x2, y2) = pos[i], pos[j]
        ax.plot([x1, x2], [y1, y2], color="0.4", zorder=1)
        ax.text(
            (x1 + x2) / 2,
            (y1 + y2) / 2,
            str(sys_.order(i, j)),
            fontsize=9,
            ha="center",
            va="center",
            bbox=dict(boxstyle="round,pad=0.15", fc="white", ec="none"),
            zorder=2,
        )
    for k, name in enumerate(sys_.names):
        x, y = pos[k]
        ax.scatter([x], [y], s=320, color="#4878a8", zorder=3)
        ax.text(x, y, name, fontsize=9, ha="center", va="center", color="white", zorder=4)
    ax.set_xlim(-1.35, 1.35)
    ax.set_ylim(-1.35, 1.35)
    ax.set_aspect("equal")
    ax.axis("off")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def _tree_layout(g: VisualGoG):
    """Breadth-first layers from the first vertex; returns id -> (x, y)."""
    adj = g.adjacency()
    root = g.vertices[0].id
    layer = {root: 0}
    order = [root]
    queue = [root]
    while queue:
        cur = queue.pop(0)
        for nxt, _ in adj[cur]:
            if nxt not in layer:
                layer[nxt] = layer[cur] + 1
                order.append(nxt)
                queue.append(nxt)
    by_layer = {}
    for vid in order:
        by_layer.setdefault(layer[vid], []).append(vid)
    pos = {}
    for depth, members in by_layer.items():
        for k, vid in enumerate(members):
            pos[vid] = (k - (len(members) - 1) / 2, -depth)
    return pos


def save_gog_figure(sys_: CoxeterSystem, g: VisualGoG, path: str) -> None:
    """Draw a graph-of-groups tree with generator-set labels and save it."""
    fig, ax = plt.subplots(figsize=(6, 4))
    pos = _tree_layout(g)
    for e in g.edges:
        (x1, y1), (x2, y2) = pos[e.ends[0]], pos[e.ends[1]]
        ax.plot([x1, x2], [y1, y2], color="0.4", zorder=1)
        label = "{" + ",".join(sys_.names_of(e.label)) + "}"
        ax.text(
            (x1 + x2) / 2,
            (y1 + y2) / 2,
            label,
            fontsize=8,
            ha="center",
            va="center",
            bbox=dict(boxstyle="round,pad=0.15", fc="#f0e8d0", ec="none"),
            zorder=2,
        )
    for v in g.vertices:
        x, y = pos[v.id]
        label = "{" + ",".join(sys_.names_of(v.label)) + "}"
        ax.scatter([x], [y], s=900, color="#70467a", zorder=3)
        ax.text(x, y, label, fontsize=8, ha="center", va="center", color="white", zorder=4)
    xs = [p[0] for p in pos.values()]
    ys = [p[1] for p in pos.values()]
    ax.set_xlim(min(xs) - 0.8, max(xs) + 0.8)
    ax.set_ylim(min(ys) - 0.6, max(ys) + 0.6)
    ax.axis("off")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
