"""Shared midpoint (rectangle) quadrature kernel.

One audited integration rule used by every module that integrates:
uniform midpoint nodes on [-R, R] per axis. Accumulations use numpy
sums, whose pairwise reduction gives deterministic results for a fixed
grid on a given platform.
"""

from __future__ import annotations

import numpy as np


def midpoint_nodes(radius: float, points: int) -> tuple[np.ndarray, float]:
    """Midpoint nodes and cell width on [-radius, radius].

    ``points`` must be at least 3; odd counts place a node at the origin
    and are recommended for symmetric integrands.
    """
    if radius <= 0:
        raise ValueError(f"radius must be positive, got {radius}")
    if points < 3:
        raise ValueError(f"need at least 3 points per axis, got {points}")
    h = 2.0 * radius / points
    nodes = -radius + (np.arange(points) + 0.5) * h
    return nodes, h


def midpoint_grid(radii, points) -> tuple[list[np.ndarray], float]:
    """Per-axis midpoint nodes plus the product cell weight.

    ``radii`` and ``points`` are scalars or per-axis sequences.
    """
    radii = np.atleast_1d(np.asarray(radii, dtype=float))
    pts = np.atleast_1d(np.asarray(points, dtype=int))
    if pts.shape == (1,) and radii.shape != (1,):
        pts = np.repeat(pts, radii.shape[0])
    if radii.shape != pts.shape:
        raise ValueError("radii and points must have matching lengths")
    axes = []
    weight = 1.0
    for r, g in zip(radii, pts):
        nodes, h = midpoint_nodes(float(r), int(g))
        axes.append(nodes)
        weight *= h
    return axes, weight
