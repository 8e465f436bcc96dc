"""Figure rendering for the trace and co-reference reports.

Both CLI reports can drop a PNG/SVG next to their delimited output. Layout
is deterministic: trace figures place nodes on concentric rings by hop
count, co-reference figures are sorted bar charts.
"""

from __future__ import annotations

import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from oreweave.harvest import TraceResult
from oreweave.rdf import Uri


def _short(uri: Uri) -> str:
    value = uri.value.rstrip("/#")
    cut = max(value.rfind("/"), value.rfind("#"))
    return value[cut + 1 :] if cut >= 0 else value


def _ring_positions(result: TraceResult) -> dict[Uri, tuple[float, float]]:
    by_depth: dict[int, list[Uri]] = {}
    for p in result.paths:
        by_depth.setdefault(p.depth, []).append(p.node)
    positions: dict[Uri, tuple[float, float]] = {}
    for depth, nodes in by_depth.items():
        nodes.sort(key=lambda u: u.value)
        for i, node in enumerate(nodes):
            if depth == 0:
                positions[node] = (0.0, 0.0)
                continue
            angle = 2 * math.pi * i / len(nodes) + depth * 0.35
            positions[node] = (depth * math.cos(angle), depth * math.sin(angle))
    return positions


def save_trace_figure(result: TraceResult, path: str | Path, dpi: int = 150) -> None:
    """Draw the traced neighborhood with the entry URI at the center."""
    positions = _ring_positions(result)
    fig, ax = plt.subplots(figsize=(8.0, 8.0 / 1.618))
    for p in result.paths:
        for step in p.steps:
            x0, y0 = positions[step.source]
            x1, y1 = positions[step.target]
            ax.plot([x0, x1], [y0, y1], color="#9bb0c9", linewidth=1.0, zorder=1)
    xs = [positions[p.node][0] for p in result.paths]
    ys = [positions[p.node][1] for p in result.paths]
    depths = [p.depth for p in result.paths]
    ax.scatter(xs, ys, c=depths, cmap="viridis", s=60, zorder=2)
    for p in result.paths:
        x, y = positions[p.node]
        ax.annotate(
            _short(p.node), (x, y),
            textcoords="offset points", xytext=(4, 4), fontsize=7,
        )
    ax.set_title(f"trace from {_short(result.entry)} ({len(result.paths)} nodes)")
    ax.set_aspect("equal")
    ax.axis("off")
    fig.tight_layout()
    fig.savefig(path, dpi=dpi)
    plt.close(fig)


def save_coref_figure(coref: dict[Uri, frozenset[Uri]], path: str | Path, dpi: int = 150) -> None:
    """Bar chart of how many maps reference each co-referenced URI."""
    items = sorted(coref.items(), key=lambda kv: (-len(kv[1]), kv[0].value))
    labels = [_short(u) for u, _ in items]
    counts = [len(s) for _, s in items]
    height = max(2.0, 0.4 * len(items) + 1.2)
    fig, ax = plt.subplots(figsize=(8.0, height))
    if items:
        ax.barh(range(len(items)), counts, color="#4878a8")
        ax.set_yticks(range(len(items)), labels=labels, fontsize=8)
        ax.invert_yaxis()
        ax.set_xticks(range(0, max(counts) + 1))
    else:
        ax.text(0.5, 0.5, "no co-referenced URIs", ha="center", va="center")
        ax.axis("off")
    ax.set_xlabel("referencing resource maps")
    ax.set_title(f"co-referenced URIs ({len(items)})")
    fig.tight_layout()
    fig.savefig(path, dpi=dpi)
    plt.close(fig)
