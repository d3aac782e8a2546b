"""Oracles and verdicts: eigen-residuals, completeness, delta-normalization.

Residuals are measured on a total-occupation window well below the
cutoff. The states built here are exact below the cutoff (creation
operators only move occupation upward), and every operator checked moves
total occupation by at most one, so window residuals sit at rounding
level by construction; the window makes that literally true instead of
asymptotically hoped. Convergence verdicts therefore carry an explicit
noise floor: a metric sequence that has already collapsed to the floor
passes without requiring further decrease.

Completeness resolutions and smeared-overlap probes are genuine
quadratures whose errors respond to the integration domain, grid, and
cutoff; their schedules are chosen in the regime where refinement
visibly reduces the error.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from fockweyl.fock import (
    BasisSpec,
    ExponentSpec,
    OperatorMatrix,
    StateVector,
)
from fockweyl.massgauss import MassPartition
from fockweyl.quadrature import midpoint_grid
from fockweyl.states import (
    EtaParam,
    MultiEprParam,
    eta_exponent,
    multipartite_exponent,
)

DEFAULT_NOISE = 0.10
DEFAULT_FLOOR = 1e-12


@dataclass(frozen=True)
class ResidualReport:
    """Windowed relative eigen-residual of one operator/state pair."""

    op_name: str
    eigenvalue: complex
    residual: float
    sector_bound: int
    cutoff: int
    tail_mass: float


@dataclass(frozen=True)
class CompletenessReport:
    """Max-abs deviation of a resolved identity on a sector."""

    family: str
    sector_bound: int
    deviation: float
    grid: tuple
    cutoff: int


@dataclass(frozen=True)
class SmearedOverlapReport:
    """Measured vs delta-model overlap of Gaussian-smeared superpositions."""

    family: str
    measured: complex
    predicted: complex
    cutoff: int
    width: float
    center1: tuple
    center2: tuple

    @property
    def relative_error(self) -> float:
        return abs(self.measured - self.predicted) / abs(self.predicted)

    @property
    def ratio(self) -> complex:
        return self.measured / self.predicted


@dataclass(frozen=True)
class ConvergenceReport:
    """Metric sequence over a refinement schedule plus the verdict."""

    name: str
    labels: tuple
    metrics: tuple
    noise: float
    floor: float
    passed: bool

    @property
    def terminal(self) -> float:
        return self.metrics[-1]


# ---------------------------------------------------------------------------
# batched state construction
# ---------------------------------------------------------------------------

def _raise_batch(spec: BasisSpec, arr: np.ndarray, mode: int) -> np.ndarray:
    """a_mode^+ applied along the state axis of an (N, dimension) array."""
    n = arr.shape[0]
    shaped = arr.reshape((n,) + spec.shape)
    out = np.zeros_like(shaped)
    src = [slice(None)] * (spec.n_modes + 1)
    dst = [slice(None)] * (spec.n_modes + 1)
    src[mode + 1] = slice(0, spec.cutoff)
    dst[mode + 1] = slice(1, spec.cutoff + 1)
    shape = [1] * (spec.n_modes + 1)
    shape[mode + 1] = spec.cutoff
    scale = np.sqrt(np.arange(1, spec.cutoff + 1)).reshape(shape)
    out[tuple(dst)] = shaped[tuple(src)] * scale
    return out.reshape(n, -1)


def build_states_batch(
    spec: BasisSpec,
    exponents: Sequence[ExponentSpec],
    max_total_power: int | None = None,
) -> np.ndarray:
    """Stack exp(exponent_k)|0...0> over k into an (N, dimension) array.

    Same terminating series as apply_exponent_to_vacuum, vectorized over
    the batch so parameter-space quadratures stay cheap. Every series
    term raises total occupation by at least one, so passing
    ``max_total_power`` truncates the series without changing any
    amplitude on total occupation <= max_total_power (used when only a
    sector is consumed downstream).
    """
    n_pts = len(exponents)
    consts = np.array([e.constant for e in exponents])
    linears = np.array([e.linear for e in exponents])
    pair_keys = [
        (i, j) for i in range(spec.n_modes) for j in range(i, spec.n_modes)
    ]
    pair_vals = {
        key: np.array([e.pair_coefficient(*key) for e in exponents]) for key in pair_keys
    }
    pair_vals = {k: v for k, v in pair_vals.items() if np.any(v)}
    lin_modes = [i for i in range(spec.n_modes) if np.any(linears[:, i])]

    depth = spec.n_modes * spec.cutoff
    if max_total_power is not None:
        depth = min(depth, max_total_power)
    term = np.zeros((n_pts, spec.dimension), dtype=complex)
    term[:, 0] = 1.0
    acc = term.copy()
    for k in range(1, depth + 1):
        new = np.zeros_like(term)
        for i in lin_modes:
            new += linears[:, i, None] * _raise_batch(spec, term, i)
        for (i, j), coeff in pair_vals.items():
            tmp = _raise_batch(spec, term, j)
            new += coeff[:, None] * _raise_batch(spec, tmp, i)
        term = new / k
        if not np.any(term):
            break
        acc += term
    return np.exp(consts)[:, None] * acc


# ---------------------------------------------------------------------------
# state families over continuous parameter spaces
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class StateFamily:
    """A parameterized family |x> with its completeness measure.

    ``measure_weight`` is the constant weight of the resolving measure
    (any state prefactor is already inside the exponent constant).
    ``axis_scales`` are the natural per-axis parameter scales used to
    size integration domains and smearing widths. ``delta_constant`` is
    the constant in <x|x'> = delta_constant * prod_i delta(x_i - x_i').
    """

    name: str
    n_modes: int
    param_dim: int
    measure_weight: float
    axis_scales: tuple
    delta_constant: float
    exponent: Callable

    def exponents(self, points: np.ndarray) -> list[ExponentSpec]:
        return [self.exponent(tuple(pt)) for pt in np.atleast_2d(points)]


def eta_family() -> StateFamily:
    return StateFamily(
        name="eta",
        n_modes=2,
        param_dim=2,
        measure_weight=1.0 / math.pi,
        axis_scales=(1.0, 1.0),
        delta_constant=math.pi,
        exponent=lambda x: eta_exponent(EtaParam(complex(x[0], x[1]))),
    )


def _mass_family(name: str, partition: MassPartition) -> StateFamily:
    n = partition.n
    lam_root = math.sqrt(partition.lam)
    scales = (lam_root,) + tuple(
        lam_root / float(partition.mu[0] * partition.mu[i]) for i in range(1, n)
    )

    def exponent(x):
        return multipartite_exponent(
            MultiEprParam(q=x[0], rho=tuple(x[1:]), partition=partition)
        )

    return StateFamily(
        name=name,
        n_modes=n,
        param_dim=n,
        measure_weight=1.0,
        axis_scales=scales,
        delta_constant=1.0,
        exponent=exponent,
    )


def bipartite_family(partition: MassPartition) -> StateFamily:
    if partition.n != 2:
        raise ValueError("bipartite family needs 2 masses")
    return _mass_family("bipartite", partition)


def tripartite_family(partition: MassPartition) -> StateFamily:
    if partition.n != 3:
        raise ValueError("tripartite family needs 3 masses")
    return _mass_family("tripartite", partition)


def multipartite_family(partition: MassPartition) -> StateFamily:
    return _mass_family(f"multipartite{partition.n}", partition)


# ---------------------------------------------------------------------------
# eigen-residuals
# ---------------------------------------------------------------------------

def eigen_residual(
    op,
    state: StateVector,
    eigenvalue: complex,
    sector_bound: int,
    op_name: str = "op",
) -> ResidualReport:
    """Windowed relative residual of (op - eigenvalue) applied to a state.

    ``op`` is an OperatorMatrix or a callable acting on flat amplitude
    arrays (matrix-free path for large mode counts). The residual and
    the state are both projected on total occupation <= sector_bound.
    """
    amps = state.amplitudes
    if isinstance(op, OperatorMatrix):
        if op.basis != state.basis:
            raise ValueError("operator and state bases differ")
        applied = op.entries @ amps
    else:
        applied = op(amps)
    resid = applied - eigenvalue * amps
    mask = state.basis.total_occupation() <= sector_bound
    sector_norm = float(np.linalg.norm(amps[mask]))
    if sector_norm == 0:
        raise ValueError("state has zero norm on the requested sector")
    full_sq = float(np.linalg.norm(amps)) ** 2
    return ResidualReport(
        op_name=op_name,
        eigenvalue=complex(eigenvalue),
        residual=float(np.linalg.norm(resid[mask])) / sector_norm,
        sector_bound=int(sector_bound),
        cutoff=state.basis.cutoff,
        tail_mass=1.0 - sector_norm**2 / full_sq,
    )


# ---------------------------------------------------------------------------
# completeness by parameter-space quadrature
# ---------------------------------------------------------------------------

def sector_indices(spec: BasisSpec, sector_bound: int) -> np.ndarray:
    return np.flatnonzero(spec.total_occupation() <= sector_bound)


def completeness_deviation(
    family: StateFamily,
    cutoff: int,
    radii,
    points,
    sector_bound: int,
    chunk: int = 4096,
) -> CompletenessReport:
    """Max-abs deviation of the resolved identity on a sector.

    Accumulates weight * |x><x| over a midpoint grid of the family's
    parameter space and compares the sector-restricted matrix with the
    identity. Creation-operator exponents never feed amplitude downward,
    so every amplitude on the sector is identical for any cutoff at or
    above the sector bound; the quadrature therefore runs on the reduced
    equivalent basis (cutoff clamped to the bound), which is what makes
    fine grids affordable. The deviation measures domain truncation and
    grid error only.
    """
    if cutoff < sector_bound:
        raise ValueError(f"cutoff {cutoff} below sector bound {sector_bound}")
    axes, cell = midpoint_grid(radii, points)
    if len(axes) != family.param_dim:
        raise ValueError(
            f"family {family.name} has {family.param_dim} parameters, got {len(axes)} axes"
        )
    grids = np.meshgrid(*axes, indexing="ij")
    pts = np.stack([g.ravel() for g in grids], axis=1)
    work_spec = BasisSpec(
        n_modes=family.n_modes, cutoff=min(cutoff, max(sector_bound, 1))
    )
    sector = sector_indices(work_spec, sector_bound)
    resolved = np.zeros((sector.size, sector.size), dtype=complex)
    for start in range(0, pts.shape[0], chunk):
        block = pts[start : start + chunk]
        amps = build_states_batch(
            work_spec, family.exponents(block), max_total_power=sector_bound
        )[:, sector]
        resolved += amps.conj().T @ amps
    resolved *= cell * family.measure_weight
    deviation = float(np.abs(resolved - np.eye(sector.size)).max())
    radii_t = tuple(np.atleast_1d(np.asarray(radii, dtype=float)))
    points_t = tuple(np.atleast_1d(np.asarray(points, dtype=int)))
    return CompletenessReport(
        family=family.name,
        sector_bound=int(sector_bound),
        deviation=deviation,
        grid=(radii_t, points_t),
        cutoff=cutoff,
    )


def basis_resolution_deviation(spec: BasisSpec, sector_bound: int) -> float:
    """Sanity baseline: summing |k><k| over the sector itself is exact."""
    sector = sector_indices(spec, sector_bound)
    resolved = np.zeros((sector.size, sector.size), dtype=complex)
    for row in range(sector.size):
        e = np.zeros(sector.size, dtype=complex)
        e[row] = 1.0
        resolved += np.outer(e, e.conj())
    return float(np.abs(resolved - np.eye(sector.size)).max())


# ---------------------------------------------------------------------------
# smeared-overlap delta-normalization probe
# ---------------------------------------------------------------------------

def smeared_state(
    family: StateFamily,
    center,
    width: float,
    cutoff: int,
    span: float = 6.0,
    points_per_axis: int = 41,
) -> StateVector:
    """Normalizable packet integral g_w(x - center) |x> dx by quadrature.

    The Gaussian weight on axis i has width ``width * axis_scales[i]``
    (unnormalized, peak value one); the grid spans ``span`` widths around
    the center on every axis.
    """
    center = tuple(float(c) for c in center)
    if len(center) != family.param_dim:
        raise ValueError(f"center must have {family.param_dim} components")
    widths = np.array([width * s for s in family.axis_scales])
    axes, cell = midpoint_grid(span * widths, [points_per_axis] * family.param_dim)
    axes = [ax + c for ax, c in zip(axes, center)]
    grids = np.meshgrid(*axes, indexing="ij")
    pts = np.stack([g.ravel() for g in grids], axis=1)
    offsets = pts - np.asarray(center)
    weights = np.exp(-np.sum(offsets**2 / (2 * widths**2), axis=1)) * cell
    spec = BasisSpec(n_modes=family.n_modes, cutoff=cutoff)
    amps = build_states_batch(spec, family.exponents(pts))
    return StateVector(spec, weights @ amps)


def smeared_overlap_probe(
    family: StateFamily,
    center1,
    center2,
    width: float,
    cutoff: int,
    span: float = 6.0,
    points_per_axis: int = 41,
) -> SmearedOverlapReport:
    """Overlap of two smeared packets against the delta-model prediction.

    Under <x|x'> = delta_constant * delta^(d)(x - x') the exact overlap
    of two unnormalized Gaussian packets is

        delta_constant * prod_i sqrt(pi) w_i * exp(-sum_i dc_i^2/(4 w_i^2)),

    the Gaussian cross-correlation of the weight functions. The measured
    value converges to it from below as the cutoff grows.
    """
    g1 = smeared_state(family, center1, width, cutoff, span, points_per_axis)
    g2 = smeared_state(family, center2, width, cutoff, span, points_per_axis)
    measured = complex(np.vdot(g1.amplitudes, g2.amplitudes))
    widths = np.array([width * s for s in family.axis_scales])
    dc = np.asarray(center2, dtype=float) - np.asarray(center1, dtype=float)
    predicted = family.delta_constant * float(
        np.prod(np.sqrt(math.pi) * widths)
    ) * math.exp(-float(np.sum(dc**2 / (4 * widths**2))))
    return SmearedOverlapReport(
        family=family.name,
        measured=measured,
        predicted=complex(predicted),
        cutoff=cutoff,
        width=width,
        center1=tuple(center1),
        center2=tuple(center2),
    )


# ---------------------------------------------------------------------------
# convergence studies
# ---------------------------------------------------------------------------

def convergence_study(
    check: Callable,
    schedule: Sequence,
    name: str = "check",
    noise: float = DEFAULT_NOISE,
    floor: float = DEFAULT_FLOOR,
) -> ConvergenceReport:
    """Run a metric-valued check over a refinement schedule.

    The verdict is "decreasing within noise": every step may grow by at
    most the noise fraction, the terminal value must not exceed the
    initial one, and values are clipped from below at ``floor`` so a
    sequence that has already converged to rounding level passes.
    """
    if len(schedule) < 2:
        raise ValueError("schedule needs at least 2 points")
    metrics = [float(check(pt)) for pt in schedule]
    clipped = [max(m, floor) for m in metrics]
    passed = all(
        later <= earlier * (1.0 + noise) for earlier, later in zip(clipped, clipped[1:])
    ) and clipped[-1] <= clipped[0]
    return ConvergenceReport(
        name=name,
        labels=tuple(schedule),
        metrics=tuple(metrics),
        noise=noise,
        floor=floor,
        passed=passed,
    )


# ---------------------------------------------------------------------------
# report format
# ---------------------------------------------------------------------------

def format_value(value) -> str:
    if isinstance(value, bool):
        return "pass" if value else "fail"
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, complex):
        return f"{value.real!r}{value.imag:+}j".replace("+-", "-")
    return str(value)


def blocks_to_text(blocks: Sequence[dict]) -> str:
    """key=value lines, one block per check, blank line between blocks."""
    chunks = []
    for block in blocks:
        chunks.append("\n".join(f"{k}={format_value(v)}" for k, v in block.items()))
    return "\n\n".join(chunks) + "\n"
