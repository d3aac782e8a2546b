"""Wigner operator, Weyl ordering, and Weyl quantization on one mode.

The Wigner operator is used in its normally ordered Gaussian form
(prefactor 1/pi). Writing alpha = (q + ip)/sqrt(2), the exponent
-(q-Q)^2 - (p-P)^2 becomes -2(a^+ - alpha^*)(a - alpha) inside the
normal-ordering symbol, where operator symbols commute. Expanding that
commuting exponential gives the monomial coefficients

    c_rs = e^{-2|alpha|^2} sum_j (-2)^j (2 alpha)^{r-j} (2 alpha^*)^{s-j}
           / (j! (r-j)! (s-j)!)

and the truncated matrix is (1/pi) sum_{r,s<=cutoff} c_rs a^+^r a^s.
The rewrite is a derived identity, not an axiom: an independent
polynomial normal-ordering oracle (:func:`normal_ordered_gaussian_oracle`)
expands the original exponent term by term and must reproduce the same
matrix.

Weyl ordering of a classical monomial q^m p^n is the binomial form
(1/2)^m sum_l C(m, l) Q^{m-l} P^n Q^l, equal on interior matrix elements
to the average of Q^m P^n over all letter interleavings
(:func:`full_symmetrization_monomial`), and to the phase-space integral
of q^m p^n against the Wigner operator
(:func:`quantize_via_wigner_quadrature`).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from fockweyl.fock import (
    BasisSpec,
    OperatorMatrix,
    StateVector,
    lowering_1d,
    raising_1d,
    write_text_atomic,
)
from fockweyl.quadrature import midpoint_nodes


@dataclass(frozen=True)
class PhasePoint:
    """Classical phase-space coordinates (dimensionless, hbar = 1)."""

    q: float
    p: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.q) and math.isfinite(self.p)):
            raise ValueError(f"phase point must be finite, got ({self.q}, {self.p})")

    @property
    def alpha(self) -> complex:
        return (self.q + 1j * self.p) / math.sqrt(2)


@dataclass(frozen=True)
class ClassicalMonomial:
    """coeff * q^m * p^n."""

    m: int
    n: int
    coeff: complex = 1.0

    def __post_init__(self) -> None:
        if self.m < 0 or self.n < 0:
            raise ValueError(f"powers must be non-negative, got ({self.m}, {self.n})")


@dataclass(frozen=True)
class ClassicalPolynomial:
    """Sum of classical monomials; canonicalized so (m, n) keys are unique."""

    terms: tuple[ClassicalMonomial, ...]

    @staticmethod
    def from_terms(terms) -> "ClassicalPolynomial":
        merged: dict[tuple[int, int], complex] = {}
        for t in terms:
            merged[(t.m, t.n)] = merged.get((t.m, t.n), 0) + t.coeff
        canon = tuple(
            ClassicalMonomial(m, n, c)
            for (m, n), c in sorted(merged.items())
            if c != 0
        )
        return ClassicalPolynomial(canon)


def _require_single_mode(spec: BasisSpec) -> None:
    if spec.n_modes != 1:
        raise ValueError(f"single-mode basis required, got {spec.n_modes} modes")


def _monomial_matrices(cutoff: int) -> tuple[list[np.ndarray], list[np.ndarray]]:
    """Powers a^+^r and a^s, r, s = 0..cutoff, as dense matrices."""
    a = lowering_1d(cutoff)
    ad = raising_1d(cutoff)
    pows_ad = [np.eye(cutoff + 1, dtype=complex)]
    pows_a = [np.eye(cutoff + 1, dtype=complex)]
    for _ in range(cutoff):
        pows_ad.append(pows_ad[-1] @ ad)
        pows_a.append(pows_a[-1] @ a)
    return pows_ad, pows_a


def _normal_coefficient_tables(alpha: np.ndarray, cutoff: int):
    """Per-grid-point powers (2 alpha)^k, (2 alpha^*)^k and Gaussian factor."""
    two_a = 2.0 * alpha
    two_ac = np.conj(two_a)
    pow_a = [np.ones_like(alpha)]
    pow_ac = [np.ones_like(alpha)]
    for _ in range(cutoff):
        pow_a.append(pow_a[-1] * two_a)
        pow_ac.append(pow_ac[-1] * two_ac)
    gauss = np.exp(-2.0 * np.abs(alpha) ** 2)
    return pow_a, pow_ac, gauss


def _normal_coefficient(pow_a, pow_ac, gauss, r: int, s: int):
    """c_rs on the grid the tables were built for."""
    acc = None
    for j in range(min(r, s) + 1):
        scal = (-2.0) ** j / (
            math.factorial(j) * math.factorial(r - j) * math.factorial(s - j)
        )
        term = scal * pow_a[r - j] * pow_ac[s - j]
        acc = term if acc is None else acc + term
    return gauss * acc


def wigner_operator(spec: BasisSpec, point: PhasePoint) -> OperatorMatrix:
    """Truncated matrix of the normally ordered Wigner operator at (q, p).

    The monomial sum cancels heavily at moderate |q|, |p|, so the
    assembled matrix is explicitly Hermitized; in exact arithmetic the
    two halves coincide, and the result is Hermitian to the bit.
    """
    _require_single_mode(spec)
    alpha = np.asarray(point.alpha)
    pow_a, pow_ac, gauss = _normal_coefficient_tables(alpha, spec.cutoff)
    pows_ad, pows_a = _monomial_matrices(spec.cutoff)
    out = np.zeros((spec.cutoff + 1, spec.cutoff + 1), dtype=complex)
    for r in range(spec.cutoff + 1):
        for s in range(spec.cutoff + 1):
            c = complex(_normal_coefficient(pow_a, pow_ac, gauss, r, s))
            if c != 0:
                out += c * (pows_ad[r] @ pows_a[s])
    out = (out + out.conj().T) / (2 * math.pi)
    return OperatorMatrix(spec, out)


# ---------------------------------------------------------------------------
# independent polynomial normal-ordering oracle
# ---------------------------------------------------------------------------

def _poly_mul(p1: dict, p2: dict, max_deg: int) -> dict:
    out: dict[tuple[int, int], complex] = {}
    for (r1, s1), c1 in p1.items():
        for (r2, s2), c2 in p2.items():
            r, s = r1 + r2, s1 + s2
            if r + s <= max_deg:
                key = (r, s)
                out[key] = out.get(key, 0) + c1 * c2
    return {k: v for k, v in out.items() if v != 0}


def normal_ordered_gaussian_oracle(spec: BasisSpec, point: PhasePoint) -> OperatorMatrix:
    """Wigner-operator matrix by direct term-by-term normal ordering.

    Treats a and a^+ as commuting symbols (the content of the
    normal-ordering symbol), expands exp(-(q - Q)^2 - (p - P)^2) as a
    bivariate polynomial capped at total degree 2*cutoff, then maps each
    monomial to the matrix a^+^r a^s. Exact for every surviving monomial,
    so it must agree with :func:`wigner_operator` to rounding; it never
    uses the shifted-factor rewrite that function is built on.
    """
    _require_single_mode(spec)
    max_deg = 2 * spec.cutoff
    inv_sqrt2 = 1.0 / math.sqrt(2)
    # Q = (a + a^+)/sqrt(2), P = (a - a^+)/(i sqrt(2)) as symbol polynomials
    q_sym = {(0, 1): inv_sqrt2 + 0j, (1, 0): inv_sqrt2 + 0j}
    p_sym = {(0, 1): -1j * inv_sqrt2, (1, 0): 1j * inv_sqrt2}
    expo: dict[tuple[int, int], complex] = {}

    def add_scaled(target: dict, source: dict, scale: complex) -> None:
        for k, v in source.items():
            target[k] = target.get(k, 0) + scale * v

    for var_sym, shift in ((q_sym, point.q), (p_sym, point.p)):
        diff = dict(var_sym)
        diff[(0, 0)] = diff.get((0, 0), 0) - shift
        add_scaled(expo, _poly_mul(diff, diff, max_deg), -1.0)
    const = expo.pop((0, 0), 0.0)

    acc: dict[tuple[int, int], complex] = {(0, 0): 1.0 + 0j}
    term: dict[tuple[int, int], complex] = {(0, 0): 1.0 + 0j}
    for k in range(1, max_deg + 1):
        term = _poly_mul(term, expo, max_deg)
        term = {key: v / k for key, v in term.items()}
        if not term:
            break
        for key, v in term.items():
            acc[key] = acc.get(key, 0) + v

    pows_ad, pows_a = _monomial_matrices(spec.cutoff)
    out = np.zeros((spec.cutoff + 1, spec.cutoff + 1), dtype=complex)
    for (r, s), coeff in acc.items():
        if r <= spec.cutoff and s <= spec.cutoff:
            out += coeff * (pows_ad[r] @ pows_a[s])
    out *= np.exp(const) / math.pi
    return OperatorMatrix(spec, out)


# ---------------------------------------------------------------------------
# Weyl ordering
# ---------------------------------------------------------------------------

def weyl_order_monomial(spec: BasisSpec, m: int, n: int) -> OperatorMatrix:
    """(1/2)^m sum_l C(m, l) Q^{m-l} P^n Q^l as a truncated matrix.

    Powers are formed by repeated left-to-right multiplication so the
    floating-point result is deterministic.
    """
    _require_single_mode(spec)
    if m < 0 or n < 0:
        raise ValueError(f"powers must be non-negative, got ({m}, {n})")
    a = lowering_1d(spec.cutoff)
    ad = a.conj().T
    Q = (a + ad) / math.sqrt(2)
    P = (a - ad) / (1j * math.sqrt(2))
    out = np.zeros_like(Q)
    for l in range(m + 1):
        word = [Q] * (m - l) + [P] * n + [Q] * l
        mat = np.eye(spec.cutoff + 1, dtype=complex)
        for w in word:
            mat = mat @ w
        out += (math.comb(m, l) / 2**m) * mat
    return OperatorMatrix(spec, out)


def full_symmetrization_monomial(spec: BasisSpec, m: int, n: int) -> OperatorMatrix:
    """Average of Q^m P^n over all (m+n)!/(m!n!) letter interleavings.

    Brute-force symmetrization oracle for :func:`weyl_order_monomial`;
    cost grows factorially, intended for m + n <= 8 or so.
    """
    _require_single_mode(spec)
    from itertools import permutations

    a = lowering_1d(spec.cutoff)
    ad = a.conj().T
    Q = (a + ad) / math.sqrt(2)
    P = (a - ad) / (1j * math.sqrt(2))
    words = sorted(set(permutations("Q" * m + "P" * n)))
    out = np.zeros_like(Q)
    for word in words:
        mat = np.eye(spec.cutoff + 1, dtype=complex)
        for ch in word:
            mat = mat @ (Q if ch == "Q" else P)
        out += mat
    return OperatorMatrix(spec, out / len(words))


def weyl_quantize(spec: BasisSpec, h: ClassicalPolynomial) -> OperatorMatrix:
    """Linear extension of Weyl monomial ordering over polynomial terms."""
    _require_single_mode(spec)
    out = np.zeros((spec.cutoff + 1, spec.cutoff + 1), dtype=complex)
    for t in ClassicalPolynomial.from_terms(h.terms).terms:
        out += t.coeff * weyl_order_monomial(spec, t.m, t.n).entries
    return OperatorMatrix(spec, out)


def quantize_via_wigner_quadrature(
    spec: BasisSpec, mono: ClassicalMonomial, radius: float, points: int
) -> OperatorMatrix:
    """Midpoint quadrature of q^m p^n times the Wigner operator over a square.

    ``points`` must be odd (>= 3) so a node sits at the origin. Converges
    to :func:`weyl_order_monomial` on interior matrix elements as the
    radius and point count grow.
    """
    _require_single_mode(spec)
    if points % 2 == 0:
        raise ValueError(f"points per axis must be odd, got {points}")
    results = quantize_monomials_via_quadrature(spec, [(mono.m, mono.n)], radius, points)
    return OperatorMatrix(spec, mono.coeff * results[(mono.m, mono.n)].entries)


def quantize_monomials_via_quadrature(
    spec: BasisSpec, powers: list[tuple[int, int]], radius: float, points: int
) -> dict[tuple[int, int], OperatorMatrix]:
    """Quadrature quantization of several unit monomials sharing one grid.

    The Wigner-operator coefficient tables dominate the cost and depend
    only on the grid, so batching the monomials is much cheaper than
    separate calls.
    """
    _require_single_mode(spec)
    nodes, h = midpoint_nodes(radius, points)
    qg, pg = np.meshgrid(nodes, nodes, indexing="ij")
    alpha = (qg + 1j * pg) / math.sqrt(2)
    pow_a, pow_ac, gauss = _normal_coefficient_tables(alpha, spec.cutoff)
    pows_ad, pows_a = _monomial_matrices(spec.cutoff)
    mono_grids = {(m, n): qg**m * pg**n for (m, n) in set(powers)}
    out = {
        mn: np.zeros((spec.cutoff + 1, spec.cutoff + 1), dtype=complex)
        for mn in mono_grids
    }
    cell = h * h / math.pi
    for r in range(spec.cutoff + 1):
        for s in range(spec.cutoff + 1):
            coeff = _normal_coefficient(pow_a, pow_ac, gauss, r, s)
            mat = pows_ad[r] @ pows_a[s]
            for mn, grid in mono_grids.items():
                val = complex(np.sum(grid * coeff)) * cell
                out[mn] += val * mat
    return {mn: OperatorMatrix(spec, m) for mn, m in out.items()}


def wigner_function(state: StateVector, point: PhasePoint) -> float:
    """Re <psi| Delta(q, p) |psi>; the imaginary part must be negligible."""
    if state.basis.n_modes != 1:
        raise ValueError("wigner_function takes a single-mode state")
    if state.norm() == 0:
        raise ValueError("state has zero norm")
    delta = wigner_operator(state.basis, point)
    val = complex(np.vdot(state.amplitudes, delta.entries @ state.amplitudes))
    scale = max(1.0, abs(val))
    if abs(val.imag) > 1e-12 * scale:
        raise ValueError(f"Wigner value has non-negligible imaginary part: {val}")
    return float(val.real)


def wigner_grid(state: StateVector, radius: float, points: int):
    """Wigner function sampled on a midpoint grid; returns (nodes, W)."""
    if state.basis.n_modes != 1:
        raise ValueError("wigner_grid takes a single-mode state")
    nodes, _ = midpoint_nodes(radius, points)
    cutoff = state.basis.cutoff
    pows_ad, pows_a = _monomial_matrices(cutoff)
    # <psi| ad^r a^s |psi> is grid-independent; precompute once.
    sandwich = np.zeros((cutoff + 1, cutoff + 1), dtype=complex)
    for r in range(cutoff + 1):
        for s in range(cutoff + 1):
            sandwich[r, s] = np.vdot(
                state.amplitudes, (pows_ad[r] @ pows_a[s]) @ state.amplitudes
            )
    qg, pg = np.meshgrid(nodes, nodes, indexing="ij")
    alpha = (qg + 1j * pg) / math.sqrt(2)
    pow_a, pow_ac, gauss = _normal_coefficient_tables(alpha, cutoff)
    W = np.zeros_like(qg, dtype=complex)
    for r in range(cutoff + 1):
        for s in range(cutoff + 1):
            if sandwich[r, s] != 0:
                W += sandwich[r, s] * _normal_coefficient(pow_a, pow_ac, gauss, r, s)
    W /= math.pi
    return nodes, W.real


def wigner_grid_to_text(nodes: np.ndarray, W: np.ndarray) -> str:
    """Grid text format: header `q_min q_max p_min p_max G`, rows `q p w`.

    Rows are emitted row-major with q as the outer loop.
    """
    g = len(nodes)
    lo, hi = float(nodes[0]), float(nodes[-1])
    lines = [f"{lo!r} {hi!r} {lo!r} {hi!r} {g}"]
    for i in range(g):
        for j in range(g):
            lines.append(f"{float(nodes[i])!r} {float(nodes[j])!r} {float(W[i, j])!r}")
    return "\n".join(lines) + "\n"


def save_wigner_grid(path: str, nodes: np.ndarray, W: np.ndarray) -> None:
    write_text_atomic(path, wigner_grid_to_text(nodes, W))
