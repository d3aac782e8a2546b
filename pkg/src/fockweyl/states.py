"""Constructors for center-of-mass / relative-momentum entangled states.

Every constructor produces an :class:`~fockweyl.fock.ExponentSpec`; the
state itself is ``apply_exponent_to_vacuum(spec, exponent)``. Ground
truth is the eigen-equation system: the n-partite state is the common
eigenvector of the center-of-mass coordinate ``sum_i mu_i Q_i`` (value
q) and the mass-weighted relative momenta ``P_1/mu_1 - P_i/mu_i``
(values rho_i, i = 2..n, with rho_1 = 0 by convention). The general
closed form used here is

    |q, rho> = pi^{-n/4} sqrt(prod mu_i / lambda)
               exp{ (1/lambda) [ M/2 + sqrt(2) sum_i A_i a_i^+
                                 + sum_{ij} K_ij a_i^+ a_j^+ ] } |0...0>

    A_i = mu_i q - i sum_j mu_i mu_j^2 (rho_i - rho_j)
    K_ij = -mu_i mu_j + (lambda/2) delta_ij
    M = -q^2 - (1/2) sum_{ij} [mu_i mu_j (rho_i - rho_j)]^2

with lambda = sum mu_i^2. The overall normalization constant is fixed
to one and the vacuum amplitude carries the phase of exp(constant).

Hand-specialized closed forms for the bipartite and tripartite cases are
kept as cross-check fixtures at the end of this module. Some of their
printed coefficients are known to disagree with the general constructor;
:func:`compare_exponents` reports the differences rather than silently
correcting either side.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from fockweyl.fock import (
    BasisSpec,
    ExponentSpec,
    OperatorMatrix,
    apply_mode_matrix,
    lowering_1d,
    quadrature_matrix,
)
from fockweyl.massgauss import MassPartition


@dataclass(frozen=True)
class EtaParam:
    """Complex label eta = eta1 + i eta2 of the two-mode pair state."""

    eta: complex

    def __post_init__(self) -> None:
        if not (math.isfinite(self.eta.real) and math.isfinite(self.eta.imag)):
            raise ValueError(f"eta must be finite, got {self.eta}")


@dataclass(frozen=True)
class BipartiteEprParam:
    """Center-of-mass eigenvalue q_cm and relative-momentum eigenvalue rho."""

    q_cm: float
    rho: float
    partition: MassPartition

    def __post_init__(self) -> None:
        if self.partition.n != 2:
            raise ValueError(f"bipartite parameter needs 2 masses, got {self.partition.n}")
        if not (math.isfinite(self.q_cm) and math.isfinite(self.rho)):
            raise ValueError("q_cm and rho must be finite")

    @staticmethod
    def from_xi(xi: complex, partition: MassPartition) -> "BipartiteEprParam":
        """Parameters from the complex label xi = xi_q + i xi_p.

        The label maps to the eigenvalues through q_cm = sqrt(lambda) xi_q
        and mu_1 mu_2 rho = sqrt(lambda) xi_p. The second relation is the
        one that makes the equal-mass state coincide with the conjugate
        pair-state closed form (a direct eigenvalue computation confirms
        it; the sometimes-quoted rho = sqrt(lambda) xi_p does not).
        """
        if partition.n != 2:
            raise ValueError("from_xi needs a 2-mass partition")
        root = math.sqrt(partition.lam)
        mu12 = float(partition.mu[0] * partition.mu[1])
        return BipartiteEprParam(
            q_cm=root * xi.real, rho=root * xi.imag / mu12, partition=partition
        )

    def to_xi(self) -> complex:
        root = math.sqrt(self.partition.lam)
        mu12 = float(self.partition.mu[0] * self.partition.mu[1])
        return complex(self.q_cm / root, mu12 * self.rho / root)


@dataclass(frozen=True)
class MultiEprParam:
    """q plus (rho_2, ..., rho_n); rho_1 = 0 is implied."""

    q: float
    rho: tuple[float, ...]
    partition: MassPartition

    def __post_init__(self) -> None:
        object.__setattr__(self, "rho", tuple(float(r) for r in self.rho))
        if self.partition.n < 2:
            raise ValueError("need at least 2 masses")
        if len(self.rho) != self.partition.n - 1:
            raise ValueError(
                f"rho must have length n-1 = {self.partition.n - 1}, got {len(self.rho)}"
            )
        if not (math.isfinite(self.q) and all(math.isfinite(r) for r in self.rho)):
            raise ValueError("q and rho must be finite")


def eta_exponent(param: EtaParam) -> ExponentSpec:
    """Exponent of exp(-|eta|^2/2 + eta a1^+ - eta^* a2^+ + a1^+ a2^+)|00>."""
    eta = complex(param.eta)
    return ExponentSpec.from_pair_coefficients(
        constant=-abs(eta) ** 2 / 2,
        linear=np.array([eta, -np.conj(eta)]),
        pairs={(0, 1): 1.0},
    )


def multipartite_exponent(param: MultiEprParam) -> ExponentSpec:
    """General n-partite exponent from the A_i / K_ij / M closed form."""
    mu = param.partition.mu
    lam = param.partition.lam
    n = param.partition.n
    rho = np.concatenate([[0.0], np.asarray(param.rho, dtype=float)])
    q = param.q

    A = mu * q - 1j * np.array(
        [sum(mu[i] * mu[j] ** 2 * (rho[i] - rho[j]) for j in range(n)) for i in range(n)]
    )
    K = -np.outer(mu, mu) + np.eye(n) * (lam / 2)
    diffs = rho[:, None] - rho[None, :]
    M = -q * q - 0.5 * float(np.sum((np.outer(mu, mu) * diffs) ** 2))
    prefactor = math.pi ** (-n / 4) * math.sqrt(float(np.prod(mu)) / lam)
    return ExponentSpec(
        constant=math.log(prefactor) + M / (2 * lam),
        linear=math.sqrt(2) / lam * A,
        quadratic=K / lam,
    )


def xi_exponent(param: BipartiteEprParam) -> ExponentSpec:
    """Bipartite exponent; coefficient-identical to the n = 2 general form."""
    return multipartite_exponent(
        MultiEprParam(q=param.q_cm, rho=(param.rho,), partition=param.partition)
    )


def tripartite_exponent(param: MultiEprParam) -> ExponentSpec:
    """Tripartite exponent, the n = 3 specialization of the general form.

    The hand-specialized closed form is available as
    :func:`tripartite_specialized_exponent` for comparison; use
    :func:`compare_exponents` to report any coefficient differences.
    """
    if param.partition.n != 3:
        raise ValueError(f"tripartite constructor needs 3 masses, got {param.partition.n}")
    return multipartite_exponent(param)


# ---------------------------------------------------------------------------
# center-of-mass / relative-momentum operators
# ---------------------------------------------------------------------------

def com_operator(partition: MassPartition, spec: BasisSpec) -> OperatorMatrix:
    """sum_i mu_i Q_i as a dense matrix."""
    if spec.n_modes != partition.n:
        raise ValueError(f"basis has {spec.n_modes} modes, partition has {partition.n}")
    out = np.zeros((spec.dimension, spec.dimension), dtype=complex)
    for i in range(partition.n):
        out += partition.mu[i] * quadrature_matrix(spec, i, "Q").entries
    return OperatorMatrix(spec, out)


def rel_momentum_operator(partition: MassPartition, i: int, spec: BasisSpec) -> OperatorMatrix:
    """P_1/mu_1 - P_i/mu_i as a dense matrix; i is the 1-based label, 2 <= i <= n."""
    if spec.n_modes != partition.n:
        raise ValueError(f"basis has {spec.n_modes} modes, partition has {partition.n}")
    if not 2 <= i <= partition.n:
        raise ValueError(f"relative-momentum label i must be in 2..{partition.n}, got {i}")
    p1 = quadrature_matrix(spec, 0, "P").entries
    pi = quadrature_matrix(spec, i - 1, "P").entries
    return OperatorMatrix(spec, p1 / partition.mu[0] - pi / partition.mu[i - 1])


def _q1d(cutoff: int) -> np.ndarray:
    a = lowering_1d(cutoff)
    return (a + a.conj().T) / math.sqrt(2)


def _p1d(cutoff: int) -> np.ndarray:
    a = lowering_1d(cutoff)
    return (a - a.conj().T) / (1j * math.sqrt(2))


def com_apply(partition: MassPartition, spec: BasisSpec, amplitudes: np.ndarray) -> np.ndarray:
    """Matrix-free action of sum_i mu_i Q_i on a flat amplitude array."""
    q1 = _q1d(spec.cutoff)
    out = np.zeros_like(amplitudes)
    for i in range(partition.n):
        out += partition.mu[i] * apply_mode_matrix(spec, amplitudes, q1, i)
    return out


def rel_momentum_apply(
    partition: MassPartition, i: int, spec: BasisSpec, amplitudes: np.ndarray
) -> np.ndarray:
    """Matrix-free action of P_1/mu_1 - P_i/mu_i (1-based i in 2..n)."""
    if not 2 <= i <= partition.n:
        raise ValueError(f"relative-momentum label i must be in 2..{partition.n}, got {i}")
    p1 = _p1d(spec.cutoff)
    out = apply_mode_matrix(spec, amplitudes, p1, 0) / partition.mu[0]
    out -= apply_mode_matrix(spec, amplitudes, p1, i - 1) / partition.mu[i - 1]
    return out


def quadrature_apply(spec: BasisSpec, amplitudes: np.ndarray, mode: int, kind: str) -> np.ndarray:
    """Matrix-free action of Q_mode or P_mode."""
    mat = _q1d(spec.cutoff) if kind == "Q" else _p1d(spec.cutoff)
    return apply_mode_matrix(spec, amplitudes, mat, mode)


def eigen_system(param) -> list:
    """The defining (name, matrix-free applier, eigenvalue) rows of a state.

    Appliers take (BasisSpec, flat amplitudes). For the eta pair state
    these are the quadrature difference and the momentum sum; for the
    mass families, the center-of-mass coordinate and each mass-weighted
    relative momentum.
    """
    if isinstance(param, EtaParam):
        eta = complex(param.eta)
        return [
            (
                "Q1-Q2",
                lambda spec, v: quadrature_apply(spec, v, 0, "Q")
                - quadrature_apply(spec, v, 1, "Q"),
                math.sqrt(2) * eta.real,
            ),
            (
                "P1+P2",
                lambda spec, v: quadrature_apply(spec, v, 0, "P")
                + quadrature_apply(spec, v, 1, "P"),
                math.sqrt(2) * eta.imag,
            ),
        ]
    if isinstance(param, BipartiteEprParam):
        part = param.partition
        return [
            ("com", lambda spec, v, p=part: com_apply(p, spec, v), param.q_cm),
            ("rel2", lambda spec, v, p=part: rel_momentum_apply(p, 2, spec, v), param.rho),
        ]
    if isinstance(param, MultiEprParam):
        part = param.partition
        rows = [("com", lambda spec, v, p=part: com_apply(p, spec, v), param.q)]
        for i in range(2, part.n + 1):
            rows.append(
                (
                    f"rel{i}",
                    lambda spec, v, p=part, i=i: rel_momentum_apply(p, i, spec, v),
                    param.rho[i - 2],
                )
            )
        return rows
    raise TypeError(f"no eigen-system for parameter type {type(param).__name__}")


# ---------------------------------------------------------------------------
# hand-specialized closed forms (cross-check fixtures)
# ---------------------------------------------------------------------------
# These encode specialized displays exactly as written down by hand, typos
# included, so systematic differences from the general constructor are
# surfaced by compare_exponents instead of quietly patched.

def equal_mass_xi_exponent(xi: complex) -> ExponentSpec:
    """exp(-|xi|^2/2 + xi a1^+ + xi^* a2^+ - a1^+ a2^+)|00>, unit prefactor.

    Conjugate partner of the eta pair state; the equal-mass bipartite
    constructor must reproduce it up to the overall constant.
    """
    return ExponentSpec.from_pair_coefficients(
        constant=-abs(xi) ** 2 / 2,
        linear=np.array([xi, np.conj(xi)]),
        pairs={(0, 1): -1.0},
    )


def xi_specialized_exponent(xi: complex, partition: MassPartition) -> ExponentSpec:
    """Bipartite closed form parameterized by xi, as printed.

    Known quirks versus the general constructor: the a1^+ a2^+ coefficient
    is written -4 mu1 mu2 with no 1/lambda, and the diagonal quadratic
    carries (mu1 - mu2) rather than (mu1^2 - mu2^2). At equal masses both
    reduce to the same -a1^+ a2^+ form.
    """
    if partition.n != 2:
        raise ValueError("xi_specialized_exponent needs a 2-mass partition")
    mu1, mu2 = float(partition.mu[0]), float(partition.mu[1])
    lam = partition.lam
    root = math.sqrt(2 * lam)
    pref = math.sqrt(mu1 * mu2) / lam
    lin1 = (xi + (mu1 - mu2) * np.conj(xi)) / root
    lin2 = (np.conj(xi) - (mu1 - mu2) * xi) / root
    return ExponentSpec.from_pair_coefficients(
        constant=math.log(pref) - abs(xi) ** 2 / 2,
        linear=np.array([lin1, lin2]),
        pairs={
            (0, 0): -(mu1 - mu2) / (2 * lam),
            (1, 1): (mu1 - mu2) / (2 * lam),
            (0, 1): -4 * mu1 * mu2,
        },
    )


def tripartite_specialized_exponent(param: MultiEprParam) -> ExponentSpec:
    """Tripartite closed form as printed, for fixture comparison.

    The rho_3 row multiplies a3^+ by -(mu1^2 + mu3^2); the 2 <-> 3
    symmetry of the constant suggests -(mu1^2 + mu2^2) there, and the
    general constructor indeed produces the latter. The quadratic part is
    read as (1/lambda) sum_ij (-mu_i mu_j + (lambda/2) delta_ij)
    a_i^+ a_j^+ (the delta term taken inside the double sum; a literal
    scalar reading would add a spurious constant 3/2).
    """
    if param.partition.n != 3:
        raise ValueError("tripartite_specialized_exponent needs 3 masses")
    mu = param.partition.mu
    lam = param.partition.lam
    q = param.q
    rho2, rho3 = param.rho
    const_a = -q * q / (2 * lam) - (1 / (2 * lam)) * (
        -2 * mu[1] ** 2 * mu[2] ** 2 * rho2 * rho3
        + (mu[0] ** 2 + mu[2] ** 2) * mu[1] ** 2 * rho2 ** 2
        + (mu[0] ** 2 + mu[1] ** 2) * mu[2] ** 2 * rho3 ** 2
    )
    pref = math.pi ** (-3 / 4) * math.sqrt(float(np.prod(mu)) / lam)
    root2 = math.sqrt(2)
    lin = (root2 * q / lam) * mu.astype(complex)
    row2 = (1j * root2 * mu[1] * rho2 / lam) * np.array(
        [mu[0] * mu[1], -(mu[0] ** 2 + mu[2] ** 2), mu[1] * mu[2]]
    )
    row3 = (1j * root2 * mu[2] * rho3 / lam) * np.array(
        [mu[0] * mu[2], mu[1] * mu[2], -(mu[0] ** 2 + mu[2] ** 2)]
    )
    K = -np.outer(mu, mu) + np.eye(3) * (lam / 2)
    return ExponentSpec(
        constant=math.log(pref) + const_a,
        linear=lin + row2 + row3,
        quadratic=K / lam,
    )


def tripartite_equal_mass_exponent(q: float, rho2: float, rho3: float) -> ExponentSpec:
    """Equal-mass tripartite closed form as printed.

    Encoded verbatim: the q term multiplies a_i^+^2 (where the general
    constructor is linear in a_i^+ and adds (1/6) a_i^+^2), and the rho
    rows carry +(2 rho_2 - rho_3) and +(2 rho_3 - rho_2) where the
    general constructor has the opposite sign. compare_exponents against
    tripartite_exponent reports exactly these entries.
    """
    root2 = math.sqrt(2)
    const = (
        math.log(1 / (3 * math.pi ** 0.75))
        - 1.5 * q * q
        - (rho2 ** 2 + rho3 ** 2 - rho2 * rho3) / 27
    )
    lin = (root2 * 1j / 9) * np.array([rho2 + rho3, 2 * rho2 - rho3, 2 * rho3 - rho2])
    pairs = {
        (0, 0): root2 * q,
        (1, 1): root2 * q,
        (2, 2): root2 * q,
        (0, 1): -2 / 3,
        (0, 2): -2 / 3,
        (1, 2): -2 / 3,
    }
    return ExponentSpec.from_pair_coefficients(const, lin, pairs)


def multipartite_equal_mass_exponent(n: int, q: float, rho) -> ExponentSpec:
    """Equal-mass n-partite closed form as printed (this one is defect-free)."""
    if n < 2:
        raise ValueError("need n >= 2")
    rho_full = np.concatenate([[0.0], np.asarray(rho, dtype=float)])
    if rho_full.shape != (n,):
        raise ValueError(f"rho must have length n-1 = {n - 1}")
    root2 = math.sqrt(2)
    diffs = rho_full[:, None] - rho_full[None, :]
    const = (
        math.log(math.pi ** (-n / 4) * n ** ((1 - n) / 2))
        - n * q * q / 2
        - float(np.sum(diffs ** 2)) / (4 * n ** 3)
    )
    lin = root2 * q - (root2 * 1j / n ** 2) * np.sum(diffs, axis=1)
    pairs = {}
    for j in range(n):
        pairs[(j, j)] = 0.5 - 1 / n
        for k in range(j + 1, n):
            pairs[(j, k)] = -2 / n
    return ExponentSpec.from_pair_coefficients(const, lin.astype(complex), pairs)


def compare_exponents(derived: ExponentSpec, fixture: ExponentSpec) -> dict:
    """Coefficient-level diff between two exponents of equal mode count.

    Returns max-abs differences for the constant, linear, and pair
    coefficients plus the list of mismatching entries (tolerance 1e-12),
    so fixture disagreements are reported rather than hidden.
    """
    if derived.n_modes != fixture.n_modes:
        raise ValueError("exponents have different mode counts")
    n = derived.n_modes
    mismatches = []
    const_diff = abs(derived.constant - fixture.constant)
    if const_diff > 1e-12:
        mismatches.append(("constant", derived.constant, fixture.constant))
    lin_diff = np.abs(derived.linear - fixture.linear)
    for i in np.flatnonzero(lin_diff > 1e-12):
        mismatches.append((f"linear[{i}]", derived.linear[i], fixture.linear[i]))
    pair_diff = 0.0
    for i in range(n):
        for j in range(i, n):
            d = derived.pair_coefficient(i, j)
            f = fixture.pair_coefficient(i, j)
            pair_diff = max(pair_diff, abs(d - f))
            if abs(d - f) > 1e-12:
                mismatches.append((f"pair[{i},{j}]", d, f))
    return {
        "constant_diff": const_diff,
        "linear_diff": float(lin_diff.max()) if n else 0.0,
        "pair_diff": pair_diff,
        "mismatches": mismatches,
        "match": not mismatches,
    }
