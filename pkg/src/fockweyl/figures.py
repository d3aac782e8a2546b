"""Matplotlib rendering for grids and convergence curves.

The CLI report path writes these figures next to the delimited text
outputs. Rendering is headless (Agg) and optional at the call sites.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np


def render_wigner_heatmap(nodes: np.ndarray, W: np.ndarray, path: str, title: str = "Wigner function") -> None:
    fig, ax = plt.subplots(figsize=(5.0, 4.2))
    vmax = float(np.abs(W).max()) or 1.0
    mesh = ax.pcolormesh(
        nodes, nodes, W.T, cmap="RdBu_r", vmin=-vmax, vmax=vmax, shading="nearest"
    )
    fig.colorbar(mesh, ax=ax, label="W(q, p)")
    ax.set_xlabel("q")
    ax.set_ylabel("p")
    ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def render_convergence(curves, path: str, title: str = "convergence") -> None:
    """curves: list of (label, xs, ys) with positive metrics on a log axis."""
    fig, ax = plt.subplots(figsize=(6.0, 4.2))
    floor = 1e-17
    for label, xs, ys in curves:
        ys = [max(float(y), floor) for y in ys]
        ax.plot(xs, ys, marker="o", label=label)
    ax.set_yscale("log")
    ax.set_xlabel("schedule point")
    ax.set_ylabel("metric")
    ax.set_title(title)
    ax.grid(True, which="both", alpha=0.3)
    if len(curves) <= 12:
        ax.legend(fontsize=7)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
