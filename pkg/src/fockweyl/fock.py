"""Truncated multimode Fock basis, operator matrices, and state builders.

The basis truncates each bosonic mode at a per-mode occupation cutoff.
Raising past the cutoff annihilates (nilpotent creation operator), which
makes every creation-operator exponential a terminating series. Basis
ordering is lexicographic in the occupation tuple with mode 0 slowest,
i.e. numpy C-order over shape ``(cutoff+1,) * n_modes``.

All types are immutable after construction; all operations are pure.
"""

from __future__ import annotations

import math
import os
import tempfile
from dataclasses import dataclass

import numpy as np

# Largest basis dimension we agree to index; beyond this the flat index
# no longer fits the platform's array-index integer.
_MAX_DIMENSION = np.iinfo(np.intp).max


class CapacityError(ValueError):
    """Requested basis does not fit platform integer indexing."""


@dataclass(frozen=True)
class BasisSpec:
    """Shape of a truncated Fock space: mode count and per-mode cutoff."""

    n_modes: int
    cutoff: int

    def __post_init__(self) -> None:
        if self.n_modes < 1:
            raise ValueError(f"n_modes must be >= 1, got {self.n_modes}")
        if self.cutoff < 1:
            raise ValueError(f"cutoff must be >= 1, got {self.cutoff}")
        dim = (self.cutoff + 1) ** self.n_modes
        if dim > _MAX_DIMENSION:
            raise CapacityError(
                f"basis dimension {dim} exceeds platform index capacity"
            )

    @property
    def dimension(self) -> int:
        return (self.cutoff + 1) ** self.n_modes

    @property
    def shape(self) -> tuple[int, ...]:
        return (self.cutoff + 1,) * self.n_modes

    def index_of(self, occupations) -> int:
        """Flat basis index of an occupation tuple (mode 0 slowest)."""
        occ = tuple(int(x) for x in occupations)
        if len(occ) != self.n_modes:
            raise ValueError(f"expected {self.n_modes} occupations, got {len(occ)}")
        if any(x < 0 or x > self.cutoff for x in occ):
            raise ValueError(f"occupations {occ} out of range 0..{self.cutoff}")
        return int(np.ravel_multi_index(occ, self.shape))

    def occupations_of(self, index: int) -> tuple[int, ...]:
        return tuple(int(x) for x in np.unravel_index(index, self.shape))

    def total_occupation(self) -> np.ndarray:
        """Vector of total occupation per flat basis index."""
        total = np.zeros(self.shape, dtype=np.int64)
        rng = np.arange(self.cutoff + 1)
        for mode in range(self.n_modes):
            sl = [None] * self.n_modes
            sl[mode] = slice(None)
            total = total + rng[tuple(sl)]
        return total.ravel()


def basis_dimension(spec: BasisSpec) -> int:
    """(cutoff+1)**n_modes; construction already guards the capacity."""
    return spec.dimension


@dataclass(frozen=True)
class MultiIndex:
    """Occupation-number label of one Fock basis state."""

    occupations: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "occupations", tuple(int(x) for x in self.occupations))
        if any(x < 0 for x in self.occupations):
            raise ValueError(f"occupations must be non-negative, got {self.occupations}")

    def validate(self, spec: BasisSpec) -> None:
        if len(self.occupations) != spec.n_modes:
            raise ValueError(
                f"label has {len(self.occupations)} modes, basis has {spec.n_modes}"
            )
        if any(x > spec.cutoff for x in self.occupations):
            raise ValueError(f"occupations {self.occupations} exceed cutoff {spec.cutoff}")


@dataclass(frozen=True)
class StateVector:
    """Complex amplitude vector over a truncated Fock basis."""

    basis: BasisSpec
    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        amps = np.asarray(self.amplitudes, dtype=complex)
        if amps.shape != (self.basis.dimension,):
            raise ValueError(
                f"amplitude length {amps.shape} does not match dimension {self.basis.dimension}"
            )
        if not np.all(np.isfinite(amps)):
            raise ValueError("amplitudes must be finite")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))


@dataclass(frozen=True)
class OperatorMatrix:
    """Dense complex matrix acting on a truncated Fock basis."""

    basis: BasisSpec
    entries: np.ndarray

    def __post_init__(self) -> None:
        mat = np.asarray(self.entries, dtype=complex)
        d = self.basis.dimension
        if mat.shape != (d, d):
            raise ValueError(f"matrix shape {mat.shape} does not match dimension {d}")
        if not np.all(np.isfinite(mat)):
            raise ValueError("matrix entries must be finite")
        mat.setflags(write=False)
        object.__setattr__(self, "entries", mat)

    def apply(self, state: StateVector) -> StateVector:
        if state.basis != self.basis:
            raise ValueError("operator and state bases differ")
        return StateVector(self.basis, self.entries @ state.amplitudes)

    def dagger(self) -> "OperatorMatrix":
        return OperatorMatrix(self.basis, self.entries.conj().T)


@dataclass(frozen=True)
class ExponentSpec:
    """Creation-operator exponent c + sum_i L_i a_i^+ + sum_{ij} S_ij a_i^+ a_j^+.

    The quadratic matrix S is stored symmetric and enters as the full
    double sum, so the coefficient actually multiplying a_i^+ a_j^+ for
    i < j is 2*S[i, j] while the a_i^+^2 coefficient is S[i, i]. Use
    :meth:`pair_coefficient` to read coefficients in the single-count
    (i <= j) convention.
    """

    constant: complex
    linear: np.ndarray
    quadratic: np.ndarray

    def __post_init__(self) -> None:
        lin = np.asarray(self.linear, dtype=complex)
        quad = np.asarray(self.quadratic, dtype=complex)
        n = lin.shape[0]
        if lin.ndim != 1:
            raise ValueError("linear part must be a vector")
        if quad.shape != (n, n):
            raise ValueError(f"quadratic part must be {n}x{n}, got {quad.shape}")
        if not np.array_equal(quad, quad.T):
            raise ValueError("quadratic part must be exactly symmetric")
        if not (np.isfinite(complex(self.constant)) and np.all(np.isfinite(lin)) and np.all(np.isfinite(quad))):
            raise ValueError("exponent entries must be finite")
        lin.setflags(write=False)
        quad.setflags(write=False)
        object.__setattr__(self, "constant", complex(self.constant))
        object.__setattr__(self, "linear", lin)
        object.__setattr__(self, "quadratic", quad)

    @property
    def n_modes(self) -> int:
        return self.linear.shape[0]

    def pair_coefficient(self, i: int, j: int) -> complex:
        """Coefficient of a_i^+ a_j^+ in the i <= j single-count expansion."""
        if i == j:
            return complex(self.quadratic[i, i])
        return complex(2 * self.quadratic[i, j])

    @staticmethod
    def from_pair_coefficients(constant, linear, pairs: dict) -> "ExponentSpec":
        """Build from {(i, j): coeff of a_i^+ a_j^+} with i <= j keys."""
        lin = np.asarray(linear, dtype=complex)
        n = lin.shape[0]
        quad = np.zeros((n, n), dtype=complex)
        for (i, j), coeff in pairs.items():
            if i == j:
                quad[i, i] += coeff
            else:
                i, j = min(i, j), max(i, j)
                quad[i, j] += coeff / 2
                quad[j, i] += coeff / 2
        return ExponentSpec(constant, lin, quad)


# ---------------------------------------------------------------------------
# single-mode building blocks and mode-wise (matrix-free) application
# ---------------------------------------------------------------------------

def lowering_1d(cutoff: int) -> np.ndarray:
    """Single-mode annihilation matrix: a|n> = sqrt(n)|n-1>."""
    a = np.zeros((cutoff + 1, cutoff + 1), dtype=complex)
    for n in range(cutoff):
        a[n, n + 1] = math.sqrt(n + 1)
    return a


def raising_1d(cutoff: int) -> np.ndarray:
    """Single-mode creation matrix; raising past the cutoff gives zero."""
    return lowering_1d(cutoff).conj().T


def apply_mode_matrix(spec: BasisSpec, amplitudes: np.ndarray, mat1d: np.ndarray, mode: int) -> np.ndarray:
    """Apply a single-mode matrix along one tensor axis of a state array.

    Matrix-free analogue of kron(I, ..., mat1d, ..., I) @ amplitudes; this
    is what makes large-mode-count states tractable.
    """
    arr = amplitudes.reshape(spec.shape)
    out = np.tensordot(mat1d, arr, axes=([1], [mode]))
    out = np.moveaxis(out, 0, mode)
    return out.reshape(-1)


def apply_raising(spec: BasisSpec, amplitudes: np.ndarray, mode: int) -> np.ndarray:
    """a_mode^+ applied to a flat amplitude array (nilpotent at the cutoff)."""
    arr = amplitudes.reshape(spec.shape)
    out = np.zeros_like(arr)
    src = [slice(None)] * spec.n_modes
    dst = [slice(None)] * spec.n_modes
    src[mode] = slice(0, spec.cutoff)
    dst[mode] = slice(1, spec.cutoff + 1)
    shape = [1] * spec.n_modes
    shape[mode] = spec.cutoff
    scale = np.sqrt(np.arange(1, spec.cutoff + 1)).reshape(shape)
    out[tuple(dst)] = arr[tuple(src)] * scale
    return out.reshape(-1)


def _embed_mode(spec: BasisSpec, mat1d: np.ndarray, mode: int) -> np.ndarray:
    eye = np.eye(spec.cutoff + 1, dtype=complex)
    out = np.array([[1.0 + 0j]])
    for k in range(spec.n_modes):
        out = np.kron(out, mat1d if k == mode else eye)
    return out


def ladder_matrix(spec: BasisSpec, mode: int, kind: str) -> OperatorMatrix:
    """Creation ('raise') or annihilation ('lower') matrix for one mode."""
    if not 0 <= mode < spec.n_modes:
        raise ValueError(f"mode {mode} out of range for {spec.n_modes} modes")
    if kind == "raise":
        mat1d = raising_1d(spec.cutoff)
    elif kind == "lower":
        mat1d = lowering_1d(spec.cutoff)
    else:
        raise ValueError(f"kind must be 'raise' or 'lower', got {kind!r}")
    return OperatorMatrix(spec, _embed_mode(spec, mat1d, mode))


def quadrature_matrix(spec: BasisSpec, mode: int, kind: str) -> OperatorMatrix:
    """Hermitian quadratures Q = (a + a^+)/sqrt(2), P = (a - a^+)/(i sqrt(2))."""
    if not 0 <= mode < spec.n_modes:
        raise ValueError(f"mode {mode} out of range for {spec.n_modes} modes")
    a = lowering_1d(spec.cutoff)
    ad = a.conj().T
    if kind == "Q":
        mat1d = (a + ad) / math.sqrt(2)
    elif kind == "P":
        mat1d = (a - ad) / (1j * math.sqrt(2))
    else:
        raise ValueError(f"kind must be 'Q' or 'P', got {kind!r}")
    return OperatorMatrix(spec, _embed_mode(spec, mat1d, mode))


def vacuum_state(spec: BasisSpec) -> StateVector:
    amps = np.zeros(spec.dimension, dtype=complex)
    amps[0] = 1.0
    return StateVector(spec, amps)


def apply_exponent_to_vacuum(spec: BasisSpec, exponent: ExponentSpec) -> StateVector:
    """exp(c + sum L_i a_i^+ + sum_{ij} S_ij a_i^+ a_j^+)|0...0>.

    The series is summed by ascending total power of the exponent and
    terminates exactly: truncated creation operators are nilpotent, and
    every term raises total occupation by at least one, so at most
    n_modes*cutoff powers contribute. Amplitudes below the cutoff equal
    the untruncated state's amplitudes (creation operators only ever
    move occupation upward).
    """
    if exponent.n_modes != spec.n_modes:
        raise ValueError(
            f"exponent has {exponent.n_modes} modes, basis has {spec.n_modes}"
        )

    def apply_body(vec: np.ndarray) -> np.ndarray:
        out = np.zeros_like(vec)
        for i in range(spec.n_modes):
            if exponent.linear[i] != 0:
                out += exponent.linear[i] * apply_raising(spec, vec, i)
        for i in range(spec.n_modes):
            for j in range(i, spec.n_modes):
                coeff = exponent.pair_coefficient(i, j)
                if coeff != 0:
                    tmp = apply_raising(spec, vec, j)
                    out += coeff * apply_raising(spec, tmp, i)
        return out

    term = vacuum_state(spec).amplitudes.copy()
    acc = term.copy()
    max_power = spec.n_modes * spec.cutoff
    for k in range(1, max_power + 1):
        term = apply_body(term) / k
        if not np.any(term):
            break
        acc += term
    return StateVector(spec, np.exp(exponent.constant) * acc)


def inner_product(s1: StateVector, s2: StateVector) -> complex:
    """<s1|s2>, conjugate-linear in the first argument."""
    if s1.basis != s2.basis:
        raise ValueError("states live on different bases")
    return complex(np.vdot(s1.amplitudes, s2.amplitudes))


def coherent_state(spec: BasisSpec, z) -> StateVector:
    """Truncated product coherent state with amplitudes e^{-|z|^2/2} z^n/sqrt(n!).

    Note the conventional resolution of identity is used throughout the
    package: integral of |z><z| d^2z / pi equals 1.
    """
    zs = np.atleast_1d(np.asarray(z, dtype=complex))
    if zs.shape != (spec.n_modes,):
        raise ValueError(f"need one amplitude per mode, got shape {zs.shape}")
    vec = np.array([1.0 + 0j])
    ns = np.arange(spec.cutoff + 1)
    log_fact = np.cumsum(np.concatenate([[0.0], np.log(np.arange(1, spec.cutoff + 1))]))
    for zi in zs:
        if zi == 0:
            mode_amps = np.zeros(spec.cutoff + 1, dtype=complex)
            mode_amps[0] = 1.0
        else:
            mode_amps = np.exp(-abs(zi) ** 2 / 2) * zi ** ns * np.exp(-0.5 * log_fact)
        vec = np.kron(vec, mode_amps)
    return StateVector(spec, vec)


# ---------------------------------------------------------------------------
# state file format
# ---------------------------------------------------------------------------
# Text, line oriented, UTF-8. Header line "modes=<n> cutoff=<N>", then one
# line per nonzero amplitude: "<n1>,<n2>,...,<nk> <re> <im>" with re/im as
# shortest round-trip decimals. Lines may appear in any order; duplicate
# occupation labels are rejected.

def state_to_text(state: StateVector) -> str:
    spec = state.basis
    lines = [f"modes={spec.n_modes} cutoff={spec.cutoff}"]
    for idx in np.flatnonzero(state.amplitudes):
        occ = spec.occupations_of(int(idx))
        amp = complex(state.amplitudes[idx])
        lines.append(f"{','.join(str(x) for x in occ)} {amp.real!r} {amp.imag!r}")
    return "\n".join(lines) + "\n"


def state_from_text(text: str) -> StateVector:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty state file")
    header = lines[0].split()
    try:
        fields = dict(item.split("=", 1) for item in header)
        spec = BasisSpec(n_modes=int(fields["modes"]), cutoff=int(fields["cutoff"]))
    except (KeyError, ValueError) as exc:
        raise ValueError(f"malformed state header: {lines[0]!r}") from exc
    amps = np.zeros(spec.dimension, dtype=complex)
    seen: set[int] = set()
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 3:
            raise ValueError(f"malformed amplitude line: {ln!r}")
        label = MultiIndex(tuple(int(x) for x in parts[0].split(",")))
        label.validate(spec)
        idx = spec.index_of(label.occupations)
        if idx in seen:
            raise ValueError(f"duplicate occupation label: {parts[0]}")
        seen.add(idx)
        amps[idx] = complex(float(parts[1]), float(parts[2]))
    return StateVector(spec, amps)


def write_text_atomic(path: str, text: str) -> None:
    """Write via temp file + rename so readers never see partial output."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def save_state(state: StateVector, path: str) -> None:
    write_text_atomic(path, state_to_text(state))


def load_state(path: str) -> StateVector:
    with open(path, "r", encoding="utf-8") as fh:
        return state_from_text(fh.read())
