"""Render drift histograms to image files (Agg backend, no display)."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .driftcheck import Histogram


def render_histogram(hist: Histogram, title: str, xlabel: str, path) -> None:
    """Draw one histogram as a bar chart and save it to ``path``."""
    lefts = hist.edges[:-1]
    widths = [b - a for a, b in zip(hist.edges, hist.edges[1:])]
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.bar(lefts, hist.counts, width=widths, align="edge",
           color="#4878a8", edgecolor="black", linewidth=0.5)
    ax.set_title(title)
    ax.set_xlabel(xlabel)
    ax.set_ylabel("pairs")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
