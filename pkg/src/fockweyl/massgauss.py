"""Mass partitions, their closed-form reduced matrices, and Gaussian integrals.

A mass partition holds relative masses mu_i = m_i / M and the recurring
scalar lambda = sum mu_i^2. Eliminating the last coordinate from the
product of single-particle Gaussians leaves an (n-1)-dimensional
quadratic form with matrix B_ij = mu_i mu_j / mu_n^2 + delta_ij, whose
determinant and inverse have closed forms checked here against plain LU
linear algebra. The n-dimensional integral

    int exp(-x^T B x + x^T v) d^n x = sqrt(pi^n / det B) exp(v^T B^-1 v / 4)

is provided in closed form with an independent midpoint-quadrature oracle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from fockweyl.quadrature import midpoint_nodes

_MINOR_TOL = 1e-12


@dataclass(frozen=True)
class MassPartition:
    """Relative masses of an n-particle system and derived scalars."""

    masses: np.ndarray
    mu: np.ndarray
    total_mass: float
    lam: float

    @property
    def n(self) -> int:
        return self.masses.shape[0]


def make_partition(masses) -> MassPartition:
    """Normalize masses to relative masses mu_i = m_i / sum(m)."""
    m = np.asarray(masses, dtype=float)
    if m.ndim != 1 or m.shape[0] < 1:
        raise ValueError("masses must be a non-empty vector")
    if np.any(m <= 0) or not np.all(np.isfinite(m)):
        raise ValueError(f"masses must be positive and finite, got {m}")
    total = float(m.sum())
    mu = m / total
    lam = float(np.sum(mu**2))
    mu.setflags(write=False)
    m = m.copy()
    m.setflags(write=False)
    return MassPartition(masses=m, mu=mu, total_mass=total, lam=lam)


def b_matrix(p: MassPartition) -> np.ndarray:
    """(n-1)x(n-1) matrix B_ij = mu_i mu_j / mu_n^2 + delta_ij.

    Coordinate n (the last mode) is the eliminated one; the index
    convention is fixed package-wide.
    """
    if p.n < 2:
        raise ValueError("b_matrix needs at least 2 masses")
    u = p.mu[:-1] / p.mu[-1]
    return np.outer(u, u) + np.eye(p.n - 1)


def b_det_closed(p: MassPartition) -> float:
    """det B = 1 + sum (mu_i/mu_n)^2 = lambda / mu_n^2."""
    if p.n < 2:
        raise ValueError("b_det_closed needs at least 2 masses")
    return float(p.lam / p.mu[-1] ** 2)


def b_inverse_closed(p: MassPartition) -> np.ndarray:
    """Closed-form inverse (delta_ij det B - mu_i mu_j / mu_n^2) / det B."""
    if p.n < 2:
        raise ValueError("b_inverse_closed needs at least 2 masses")
    det = b_det_closed(p)
    u = p.mu[:-1] / p.mu[-1]
    return np.eye(p.n - 1) - np.outer(u, u) / det


@dataclass(frozen=True)
class GaussianIntegralSpec:
    """Positive-definite quadratic form B and linear vector v."""

    B: np.ndarray
    v: np.ndarray

    def __post_init__(self) -> None:
        B = np.asarray(self.B, dtype=float)
        v = np.asarray(self.v, dtype=float)
        if B.ndim != 2 or B.shape[0] != B.shape[1]:
            raise ValueError(f"B must be square, got shape {B.shape}")
        if v.shape != (B.shape[0],):
            raise ValueError(f"v must have length {B.shape[0]}, got {v.shape}")
        if not (np.all(np.isfinite(B)) and np.all(np.isfinite(v))):
            raise ValueError("B and v must be finite")
        if not np.array_equal(B, B.T):
            raise ValueError("B must be exactly symmetric")
        for k in range(1, B.shape[0] + 1):
            if np.linalg.det(B[:k, :k]) <= _MINOR_TOL:
                raise ValueError(
                    f"B is not positive definite (leading minor {k} <= {_MINOR_TOL})"
                )
        B = B.copy()
        v = v.copy()
        B.setflags(write=False)
        v.setflags(write=False)
        object.__setattr__(self, "B", B)
        object.__setattr__(self, "v", v)

    @property
    def n(self) -> int:
        return self.B.shape[0]


def gaussian_integral_closed(spec: GaussianIntegralSpec) -> float:
    """sqrt(pi^n / det B) * exp(v^T B^-1 v / 4)."""
    det = np.linalg.det(spec.B)
    quad = float(spec.v @ np.linalg.solve(spec.B, spec.v))
    return float(math.sqrt(math.pi ** spec.n / det) * math.exp(quad / 4.0))


def gaussian_integral_quadrature(
    spec: GaussianIntegralSpec, radius: float, points: int
) -> float:
    """Midpoint-rule value of the same integral over [-radius, radius]^n.

    Independent oracle for :func:`gaussian_integral_closed`; the cost is
    points**n, so the dimension is capped at 3.
    """
    if spec.n > 3:
        raise ValueError(f"quadrature oracle limited to n <= 3, got n = {spec.n}")
    nodes, h = midpoint_nodes(radius, points)
    grids = np.meshgrid(*([nodes] * spec.n), indexing="ij")
    x = np.stack([g.ravel() for g in grids], axis=1)
    expo = -np.einsum("ki,ij,kj->k", x, spec.B, x) + x @ spec.v
    return float(np.sum(np.exp(expo)) * h ** spec.n)
