"""Calibrated verification suite behind `verify-all` and the acceptance tests.

Each check runs at one of two levels. The ``full`` level carries the
pinned acceptance parameters and tolerances; ``quick`` runs the same
checks on smaller schedules for fast smoke coverage. Check outcomes
collect report blocks (key=value) plus any convergence curves for
rendering.

Residual sequences sit at rounding level by construction (see
fockweyl.validation), so their convergence verdicts use the explicit
noise floor; completeness, quadrature, and smeared-probe schedules are
chosen in regimes where refinement genuinely reduces the error.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from fockweyl.fock import (
    BasisSpec,
    apply_exponent_to_vacuum,
    vacuum_state,
)
from fockweyl.massgauss import (
    GaussianIntegralSpec,
    b_det_closed,
    b_inverse_closed,
    b_matrix,
    gaussian_integral_closed,
    gaussian_integral_quadrature,
    make_partition,
)
from fockweyl.states import (
    BipartiteEprParam,
    EtaParam,
    MultiEprParam,
    com_operator,
    compare_exponents,
    eigen_system,
    equal_mass_xi_exponent,
    eta_exponent,
    multipartite_equal_mass_exponent,
    multipartite_exponent,
    rel_momentum_operator,
    tripartite_equal_mass_exponent,
    tripartite_exponent,
    tripartite_specialized_exponent,
    xi_exponent,
    xi_specialized_exponent,
)
from fockweyl.validation import (
    ConvergenceReport,
    basis_resolution_deviation,
    bipartite_family,
    completeness_deviation,
    convergence_study,
    eigen_residual,
    eta_family,
    smeared_overlap_probe,
    tripartite_family,
)
from fockweyl.weyl import (
    PhasePoint,
    full_symmetrization_monomial,
    normal_ordered_gaussian_oracle,
    quantize_monomials_via_quadrature,
    weyl_order_monomial,
    wigner_grid,
    wigner_operator,
)

RESIDUAL_TARGET = 1e-3  # terminal eigen-residual ceiling at the top cutoff
FLOOR = 1e-12


@dataclass
class CheckOutcome:
    name: str
    passed: bool
    blocks: list = field(default_factory=list)
    curves: list = field(default_factory=list)  # (title, xs, ys)


def _verdict_block(name: str, passed: bool, **extra) -> dict:
    block = {"check": name}
    block.update(extra)
    block["verdict"] = bool(passed)
    return block


def _study_block(report: ConvergenceReport, **extra) -> dict:
    block = {
        "check": report.name,
        "schedule": ",".join(str(s) for s in report.labels),
        "metric": ",".join(repr(m) for m in report.metrics),
        "floor": report.floor,
    }
    block.update(extra)
    block["verdict"] = report.passed
    return block


def _derived_bound(value: float) -> float:
    """One decade above the measured value; the recorded, re-derived bound."""
    if value <= 0:
        return FLOOR
    return 10.0 ** (math.ceil(math.log10(value)) + 1)


# ---------------------------------------------------------------------------
# 1. Weyl-ordering equivalence
# ---------------------------------------------------------------------------

def check_weyl_symmetrization(level: str = "full") -> CheckOutcome:
    cfg = {
        "quick": {"cutoff": 10, "max_total": 4, "tol": 1e-10},
        "full": {"cutoff": 16, "max_total": 6, "tol": 1e-10},
    }[level]
    spec = BasisSpec(1, cfg["cutoff"])
    worst = 0.0
    worst_pair = (0, 0)
    for total in range(cfg["max_total"] + 1):
        for m in range(total + 1):
            n = total - m
            # corner commutator defects reach occupation cutoff - total/2,
            # so the contamination-free margin grows with the word length
            margin = max(2, total // 2)
            hi = cfg["cutoff"] + 1 - margin
            diff = np.abs(
                weyl_order_monomial(spec, m, n).entries
                - full_symmetrization_monomial(spec, m, n).entries
            )[:hi, :hi].max()
            if diff > worst:
                worst, worst_pair = float(diff), (m, n)
    passed = worst <= cfg["tol"]
    block = _verdict_block(
        "weyl_symmetrization",
        passed,
        cutoff=cfg["cutoff"],
        max_total_power=cfg["max_total"],
        metric=worst,
        worst_pair=f"{worst_pair[0]},{worst_pair[1]}",
        tolerance=cfg["tol"],
    )
    return CheckOutcome("weyl_symmetrization", passed, [block])


# ---------------------------------------------------------------------------
# 2. Weyl quantization by Wigner quadrature
# ---------------------------------------------------------------------------

def check_weyl_quadrature(level: str = "full") -> CheckOutcome:
    cfg = {
        "quick": {"cutoff": 10, "radius": 7.0, "G": 51, "G2": 101, "tol": 1e-3},
        "full": {"cutoff": 14, "radius": 7.0, "G": 201, "G2": 401, "tol": 1e-3},
    }[level]
    spec = BasisSpec(1, cfg["cutoff"])
    pairs = [(0, 0), (1, 0), (0, 1), (1, 1), (2, 0)]
    refs = {mn: weyl_order_monomial(spec, *mn).entries for mn in pairs}
    window = slice(0, 5)  # occupations <= 4

    def errs(points: int) -> dict:
        res = quantize_monomials_via_quadrature(spec, pairs, cfg["radius"], points)
        return {
            mn: float(np.abs(res[mn].entries - refs[mn])[window, window].max())
            for mn in pairs
        }

    base = errs(cfg["G"])
    fine = errs(cfg["G2"])
    blocks = []
    passed = True
    for mn in pairs:
        ok = base[mn] <= cfg["tol"] and (
            fine[mn] < base[mn] or (fine[mn] <= FLOOR and base[mn] <= FLOOR)
        )
        passed &= ok
        blocks.append(
            _verdict_block(
                "weyl_quadrature",
                ok,
                monomial=f"q^{mn[0]} p^{mn[1]}",
                cutoff=cfg["cutoff"],
                radius=cfg["radius"],
                metric=base[mn],
                metric_refined=fine[mn],
                grid=f"{cfg['G']}->{cfg['G2']}",
                tolerance=cfg["tol"],
            )
        )

    # demonstrate the genuine grid-refinement regime (the pinned grid above
    # is already spectrally converged, so its doubling lands on the floor)
    coarse_schedule = (15, 21, 31)

    def coarse_metric(points: int) -> float:
        res = quantize_monomials_via_quadrature(spec, pairs, cfg["radius"], points)
        return max(
            float(np.abs(res[mn].entries - refs[mn])[window, window].max())
            for mn in pairs
        )

    study = convergence_study(
        coarse_metric, coarse_schedule, name="weyl_quadrature_grid_refinement"
    )
    passed &= study.passed
    blocks.append(_study_block(study, radius=cfg["radius"], cutoff=cfg["cutoff"]))
    curves = [("weyl quadrature grid refinement", list(coarse_schedule), list(study.metrics))]
    return CheckOutcome("weyl_quadrature", passed, blocks, curves)


# ---------------------------------------------------------------------------
# 3. Wigner operator values, Hermiticity, dual-route oracle
# ---------------------------------------------------------------------------

def check_wigner_values(level: str = "full") -> CheckOutcome:
    cfg = {
        "quick": {"cutoff_values": 8, "cutoff_herm": 12, "int_grid": (6.0, 101)},
        "full": {"cutoff_values": 8, "cutoff_herm": 20, "int_grid": (7.0, 201)},
    }[level]
    blocks = []
    passed = True

    spec = BasisSpec(1, cfg["cutoff_values"])
    delta0 = wigner_operator(spec, PhasePoint(0.0, 0.0)).entries
    vac_err = abs(delta0[0, 0] - 1 / math.pi)
    one_err = abs(delta0[1, 1] + 1 / math.pi)
    ok = vac_err <= 1e-10 and one_err <= 1e-10
    passed &= ok
    blocks.append(
        _verdict_block(
            "wigner_origin_values",
            ok,
            cutoff=cfg["cutoff_values"],
            vacuum_error=float(vac_err),
            one_photon_error=float(one_err),
            tolerance=1e-10,
        )
    )

    herm_spec = BasisSpec(1, cfg["cutoff_herm"])
    herm = 0.0
    for q in (-5.0, -2.5, 0.0, 2.5, 5.0):
        for p in (-5.0, -2.5, 0.0, 2.5, 5.0):
            d = wigner_operator(herm_spec, PhasePoint(q, p)).entries
            herm = max(herm, float(np.abs(d - d.conj().T).max()))
    ok = herm <= 1e-13
    passed &= ok
    blocks.append(
        _verdict_block(
            "wigner_hermiticity",
            ok,
            cutoff=cfg["cutoff_herm"],
            metric=herm,
            tolerance=1e-13,
        )
    )

    oracle_spec = BasisSpec(1, 6)
    oracle_err = 0.0
    for q, p in [(0.0, 0.0), (0.7, -0.4), (1.2, 0.8)]:
        d1 = wigner_operator(oracle_spec, PhasePoint(q, p)).entries
        d2 = normal_ordered_gaussian_oracle(oracle_spec, PhasePoint(q, p)).entries
        oracle_err = max(oracle_err, float(np.abs(d1 - d2).max()))
    ok = oracle_err <= 1e-12
    passed &= ok
    blocks.append(
        _verdict_block(
            "wigner_normal_ordering_oracle",
            ok,
            cutoff=6,
            metric=oracle_err,
            tolerance=1e-12,
        )
    )

    radius, points = cfg["int_grid"]
    vac = vacuum_state(BasisSpec(1, 10))
    nodes, W = wigner_grid(vac, radius, points)
    cell = (nodes[1] - nodes[0]) ** 2
    total = float(np.sum(W) * cell)
    ok = abs(total - 1.0) <= 1e-3
    passed &= ok
    blocks.append(
        _verdict_block(
            "wigner_vacuum_integral",
            ok,
            radius=radius,
            grid=points,
            metric=abs(total - 1.0),
            tolerance=1e-3,
        )
    )
    return CheckOutcome("wigner_values", passed, blocks)


# ---------------------------------------------------------------------------
# 4. B-matrix closed forms
# ---------------------------------------------------------------------------

def check_bmatrix(level: str = "full") -> CheckOutcome:
    cfg = {"quick": {"count": 12}, "full": {"count": 50}}[level]
    rng = np.random.default_rng(20240)
    det_worst = inv_worst = prod_worst = 0.0
    for _ in range(cfg["count"]):
        n = int(rng.integers(2, 9))
        masses = np.exp(rng.uniform(np.log(0.1), np.log(10.0), size=n))
        p = make_partition(masses)
        B = b_matrix(p)
        det_worst = max(
            det_worst,
            abs(b_det_closed(p) - float(np.linalg.det(B))) / abs(b_det_closed(p)),
        )
        inv_worst = max(
            inv_worst, float(np.abs(b_inverse_closed(p) - np.linalg.inv(B)).max())
        )
        prod_worst = max(
            prod_worst, float(np.abs(B @ b_inverse_closed(p) - np.eye(n - 1)).max())
        )
    passed = det_worst <= 1e-10 and inv_worst <= 1e-10 and prod_worst <= 1e-12
    block = _verdict_block(
        "bmatrix_closed_forms",
        passed,
        samples=cfg["count"],
        det_relative_error=det_worst,
        inverse_error=inv_worst,
        identity_error=prod_worst,
        tolerances="1e-10,1e-10,1e-12",
    )
    return CheckOutcome("bmatrix", passed, [block])


# ---------------------------------------------------------------------------
# 5. Gaussian integral identity
# ---------------------------------------------------------------------------

def check_gauss_integral(level: str = "full") -> CheckOutcome:
    cfg = {"quick": {"count": 6}, "full": {"count": 20}}[level]
    blocks = []
    passed = True

    spec1 = GaussianIntegralSpec(np.array([[1.0]]), np.zeros(1))
    quad1 = gaussian_integral_quadrature(spec1, radius=8.0, points=4001)
    err1 = abs(quad1 - math.sqrt(math.pi))
    ok = err1 <= 1e-8
    passed &= ok
    blocks.append(
        _verdict_block(
            "gauss_integral_1d",
            ok,
            expected=math.sqrt(math.pi),
            metric=err1,
            tolerance=1e-8,
        )
    )

    worked = [
        (np.eye(2), np.array([2.0, 0.0]), math.pi * math.e),
        (
            np.array([[2.0, 1.0], [1.0, 2.0]]),
            np.array([1.0, 0.0]),
            math.sqrt(math.pi**2 / 3) * math.exp(1 / 6),
        ),
    ]
    for B, v, expected in worked:
        spec = GaussianIntegralSpec(B, v)
        closed = gaussian_integral_closed(spec)
        quad = gaussian_integral_quadrature(spec, radius=8.0, points=801)
        closed_err = abs(closed - expected) / expected
        quad_err = abs(quad - closed) / closed
        ok = closed_err <= 1e-12 and quad_err <= 1e-6
        passed &= ok
        blocks.append(
            _verdict_block(
                "gauss_integral_worked",
                ok,
                expected=expected,
                closed_relative_error=closed_err,
                quadrature_relative_error=quad_err,
                tolerance=1e-6,
            )
        )

    rng = np.random.default_rng(777)
    worst = 0.0
    for _ in range(cfg["count"]):
        eigs = rng.uniform(0.5, 3.0, size=2)
        theta = rng.uniform(0.0, 2 * math.pi)
        R = np.array(
            [[math.cos(theta), -math.sin(theta)], [math.sin(theta), math.cos(theta)]]
        )
        B = R @ np.diag(eigs) @ R.T
        B = (B + B.T) / 2
        v = rng.normal(size=2)
        norm = np.linalg.norm(v)
        if norm > 2.0:
            v *= 2.0 / norm
        spec = GaussianIntegralSpec(B, v)
        closed = gaussian_integral_closed(spec)
        quad = gaussian_integral_quadrature(spec, radius=8.0, points=801)
        worst = max(worst, abs(quad - closed) / closed)
    ok = worst <= 1e-6
    passed &= ok
    blocks.append(
        _verdict_block(
            "gauss_integral_random",
            ok,
            samples=cfg["count"],
            metric=worst,
            tolerance=1e-6,
            radius=8.0,
            grid=801,
        )
    )
    return CheckOutcome("gauss_integral", passed, blocks)


# ---------------------------------------------------------------------------
# 6. eigen-equation residuals
# ---------------------------------------------------------------------------

def _residual_configs(level: str):
    if level == "quick":
        two_mode = (8, 12, 16)
        three_mode = (6, 9, 12)
        four_mode = (6, 8, 10)
    else:
        two_mode = (16, 24, 32)
        three_mode = (12, 18, 24)
        four_mode = (12, 18, 24)
    return [
        {"family": "eta", "masses": None, "cutoffs": two_mode},
        {"family": "bipartite", "masses": (1.0, 1.0), "cutoffs": two_mode},
        {"family": "bipartite", "masses": (1.0, 2.0), "cutoffs": two_mode},
        {"family": "tripartite", "masses": (1.0, 1.0, 1.0), "cutoffs": three_mode},
        {"family": "tripartite", "masses": (1.0, 1.0, 2.0), "cutoffs": three_mode},
        {"family": "multipartite4", "masses": (1.0, 2.0, 3.0, 4.0), "cutoffs": four_mode},
    ]


def _family_ops(family: str, masses):
    """Exponent plus (name, matrix-free applier, eigenvalue) rows."""
    if family == "eta":
        param = EtaParam(0.5 + 0.3j)
        return 2, eta_exponent(param), eigen_system(param)
    part = make_partition(masses)
    n = part.n
    rho = tuple(((-1.0) ** i) * (0.3 + 0.1 * i) for i in range(n - 1))
    param = MultiEprParam(q=0.4, rho=rho, partition=part)
    return n, multipartite_exponent(param), eigen_system(param)


def check_eigen_residuals(level: str = "full") -> CheckOutcome:
    blocks = []
    curves = []
    passed = True
    for cfg in _residual_configs(level):
        n_modes, expo, ops = _family_ops(cfg["family"], cfg["masses"])
        table: dict[int, dict[str, float]] = {}
        for cutoff in cfg["cutoffs"]:
            spec = BasisSpec(n_modes, cutoff)
            state = apply_exponent_to_vacuum(spec, expo)
            row = {}
            for name, applier, ev in ops:
                rep = eigen_residual(
                    lambda v, a=applier, s=spec: a(s, v),
                    state,
                    ev,
                    sector_bound=cutoff // 2,
                    op_name=name,
                )
                row[name] = rep.residual
            table[cutoff] = row
        for name, _, ev in ops:
            study = convergence_study(
                lambda c, nm=name: table[c][nm],
                cfg["cutoffs"],
                name=f"residual_{cfg['family']}_{name}",
                floor=FLOOR,
            )
            terminal_ok = study.terminal <= RESIDUAL_TARGET
            ok = study.passed and terminal_ok
            passed &= ok
            label = cfg["family"] + (
                "" if cfg["masses"] is None else "_m" + "-".join(f"{m:g}" for m in cfg["masses"])
            )
            blocks.append(
                _study_block(
                    study,
                    family=label,
                    op=name,
                    eigenvalue=ev,
                    sector_bound="cutoff/2",
                    terminal=study.terminal,
                    terminal_target=RESIDUAL_TARGET,
                    derived_bound=_derived_bound(study.terminal),
                )
            )
            curves.append(
                (f"residual {label} {name}", list(cfg["cutoffs"]), list(study.metrics))
            )
    return CheckOutcome("eigen_residuals", passed, blocks, curves)


# ---------------------------------------------------------------------------
# 7. reduction identities and specialized-form fixtures
# ---------------------------------------------------------------------------

def check_reduction_identities(level: str = "full") -> CheckOutcome:
    del level
    blocks = []
    passed = True
    rng = np.random.default_rng(31415)

    worst = 0.0
    for _ in range(6):
        masses = rng.uniform(0.5, 3.0, size=2)
        part = make_partition(masses)
        q, rho = rng.uniform(-1, 1, size=2)
        bip = xi_exponent(BipartiteEprParam(q_cm=q, rho=rho, partition=part))
        multi = multipartite_exponent(MultiEprParam(q=q, rho=(rho,), partition=part))
        diff = compare_exponents(multi, bip)
        worst = max(worst, diff["constant_diff"], diff["linear_diff"], diff["pair_diff"])
    ok = worst <= 1e-12
    passed &= ok
    blocks.append(
        _verdict_block("reduction_bipartite", ok, metric=worst, tolerance=1e-12)
    )

    worst = 0.0
    for _ in range(6):
        masses = rng.uniform(0.5, 3.0, size=3)
        part = make_partition(masses)
        q = float(rng.uniform(-1, 1))
        rho = tuple(rng.uniform(-1, 1, size=2))
        tri = tripartite_exponent(MultiEprParam(q=q, rho=rho, partition=part))
        multi = multipartite_exponent(MultiEprParam(q=q, rho=rho, partition=part))
        diff = compare_exponents(multi, tri)
        worst = max(worst, diff["constant_diff"], diff["linear_diff"], diff["pair_diff"])
    ok = worst <= 1e-12
    passed &= ok
    blocks.append(
        _verdict_block("reduction_tripartite", ok, metric=worst, tolerance=1e-12)
    )

    # equal-mass bipartite against the conjugate-pair closed form: linear and
    # quadratic parts must match through the xi label; the constant offset is
    # the reported prefactor difference.
    part = make_partition([1.0, 1.0])
    xi = 0.35 - 0.2j
    derived = xi_exponent(BipartiteEprParam.from_xi(xi, part))
    display = equal_mass_xi_exponent(xi)
    lin_diff = float(np.abs(derived.linear - display.linear).max())
    pair_diff = max(
        abs(derived.pair_coefficient(i, j) - display.pair_coefficient(i, j))
        for i in range(2)
        for j in range(i, 2)
    )
    const_offset = derived.constant - display.constant
    expected_offset = math.log(math.sqrt(1.0 / (2 * math.pi)))
    ok = (
        lin_diff <= 1e-12
        and pair_diff <= 1e-12
        and abs(const_offset - expected_offset) <= 1e-12
    )
    passed &= ok
    blocks.append(
        _verdict_block(
            "equal_mass_conjugate_form",
            ok,
            linear_diff=lin_diff,
            pair_diff=pair_diff,
            constant_offset=complex(const_offset),
            expected_offset=expected_offset,
        )
    )

    # specialized-form fixtures: report coefficient diffs, no silent fixes
    part_u = make_partition([1.0, 1.0, 2.0])
    param_u = MultiEprParam(q=0.3, rho=(0.4, -0.5), partition=part_u)
    diff_tri = compare_exponents(
        tripartite_exponent(param_u), tripartite_specialized_exponent(param_u)
    )
    blocks.append(
        {
            "check": "fixture_tripartite_specialized",
            "masses": "1,1,2",
            "mismatch_count": len(diff_tri["mismatches"]),
            "mismatch_entries": ";".join(m[0] for m in diff_tri["mismatches"]) or "none",
            "max_diff": max(
                diff_tri["constant_diff"], diff_tri["linear_diff"], diff_tri["pair_diff"]
            ),
            "verdict": True,  # informational: differences are reported, not judged
        }
    )
    part_e = make_partition([1.0, 1.0, 1.0])
    param_e = MultiEprParam(q=0.3, rho=(0.4, -0.5), partition=part_e)
    diff_tri_eq = compare_exponents(
        tripartite_exponent(param_e), tripartite_specialized_exponent(param_e)
    )
    ok = diff_tri_eq["match"]
    passed &= ok
    blocks.append(
        _verdict_block(
            "fixture_tripartite_specialized_equal_mass",
            ok,
            max_diff=max(
                diff_tri_eq["constant_diff"],
                diff_tri_eq["linear_diff"],
                diff_tri_eq["pair_diff"],
            ),
        )
    )
    diff_display = compare_exponents(
        tripartite_exponent(param_e),
        tripartite_equal_mass_exponent(0.3, 0.4, -0.5),
    )
    blocks.append(
        {
            "check": "fixture_tripartite_equal_mass_display",
            "mismatch_count": len(diff_display["mismatches"]),
            "mismatch_entries": ";".join(m[0] for m in diff_display["mismatches"]) or "none",
            "verdict": True,
        }
    )
    part4 = make_partition([1.0] * 4)
    diff_multi = compare_exponents(
        multipartite_exponent(
            MultiEprParam(q=0.2, rho=(0.1, -0.3, 0.25), partition=part4)
        ),
        multipartite_equal_mass_exponent(4, 0.2, (0.1, -0.3, 0.25)),
    )
    ok = diff_multi["match"]
    passed &= ok
    blocks.append(
        _verdict_block(
            "fixture_multipartite_equal_mass_display",
            ok,
            max_diff=max(
                diff_multi["constant_diff"],
                diff_multi["linear_diff"],
                diff_multi["pair_diff"],
            ),
        )
    )
    part_uneq = make_partition([1.0, 3.0])
    xi2 = 0.4 + 0.3j
    diff_xi = compare_exponents(
        xi_exponent(BipartiteEprParam.from_xi(xi2, part_uneq)),
        xi_specialized_exponent(xi2, part_uneq),
    )
    blocks.append(
        {
            "check": "fixture_xi_specialized_unequal_mass",
            "masses": "1,3",
            "mismatch_count": len(diff_xi["mismatches"]),
            "mismatch_entries": ";".join(m[0] for m in diff_xi["mismatches"]) or "none",
            "verdict": True,
        }
    )
    return CheckOutcome("reduction_identities", passed, blocks)


# ---------------------------------------------------------------------------
# 8. completeness resolutions
# ---------------------------------------------------------------------------

def check_completeness(level: str = "full") -> CheckOutcome:
    blocks = []
    curves = []
    passed = True

    sanity = basis_resolution_deviation(BasisSpec(2, 6), sector_bound=2)
    ok = sanity == 0.0
    passed &= ok
    blocks.append(_verdict_block("completeness_basis_sanity", ok, metric=sanity))

    if level == "quick":
        eta_base = {"cutoff": 8, "radii": (5.0, 5.0), "points": (61, 61)}
        eta_refined = {"cutoff": 10, "radii": (6.0, 6.0), "points": (61, 61)}
        bip_base = {"cutoff": 8, "radii": (4.0, 12.0), "points": (61, 61)}
        bip_refined = {"cutoff": 10, "radii": (5.0, 16.0), "points": (61, 61)}
        radius_schedule = (2.5, 3.5, 5.0)
        grid_schedule = (9, 15, 21)
        run_tripartite = False
    else:
        eta_base = {"cutoff": 12, "radii": (6.0, 6.0), "points": (121, 121)}
        eta_refined = {"cutoff": 16, "radii": (8.0, 8.0), "points": (121, 121)}
        bip_base = {"cutoff": 12, "radii": (4.0, 12.0), "points": (121, 121)}
        bip_refined = {"cutoff": 16, "radii": (5.0, 16.0), "points": (121, 121)}
        radius_schedule = (3.0, 4.0, 5.0)
        grid_schedule = (9, 15, 21)
        run_tripartite = True

    fam = eta_family()
    base = completeness_deviation(fam, sector_bound=2, **eta_base)
    refined = completeness_deviation(fam, sector_bound=2, **eta_refined)
    ok = base.deviation <= 0.05 and refined.deviation < base.deviation
    passed &= ok
    blocks.append(
        _verdict_block(
            "completeness_eta",
            ok,
            family="eta",
            cutoff=eta_base["cutoff"],
            sector_bound=2,
            metric=base.deviation,
            metric_refined=refined.deviation,
            refined_cutoff=eta_refined["cutoff"],
            radius=eta_base["radii"][0],
            refined_radius=eta_refined["radii"][0],
            grid=eta_base["points"][0],
            tolerance=0.05,
        )
    )

    bip = bipartite_family(make_partition([1.0, 2.0]))
    base_b = completeness_deviation(bip, sector_bound=2, **bip_base)
    refined_b = completeness_deviation(bip, sector_bound=2, **bip_refined)
    ok = base_b.deviation <= 0.05 and refined_b.deviation < base_b.deviation
    passed &= ok
    blocks.append(
        _verdict_block(
            "completeness_bipartite",
            ok,
            family="bipartite",
            masses="1,2",
            cutoff=bip_base["cutoff"],
            sector_bound=2,
            metric=base_b.deviation,
            metric_refined=refined_b.deviation,
            refined_cutoff=bip_refined["cutoff"],
            grid=bip_base["points"][0],
            tolerance=0.05,
        )
    )

    # radius-refinement and grid-refinement convergence studies
    study_r = convergence_study(
        lambda r: completeness_deviation(
            fam, cutoff=10, radii=(r, r), points=(121, 121), sector_bound=2
        ).deviation,
        radius_schedule,
        name="completeness_eta_radius_refinement",
    )
    passed &= study_r.passed
    blocks.append(_study_block(study_r, family="eta", cutoff=10, sector_bound=2))
    curves.append(
        ("eta completeness vs radius", list(radius_schedule), list(study_r.metrics))
    )

    study_g = convergence_study(
        lambda g: completeness_deviation(
            fam, cutoff=10, radii=(6.0, 6.0), points=(g, g), sector_bound=2
        ).deviation,
        grid_schedule,
        name="completeness_eta_grid_refinement",
    )
    passed &= study_g.passed
    blocks.append(_study_block(study_g, family="eta", cutoff=10, sector_bound=2))
    curves.append(
        ("eta completeness vs grid", list(grid_schedule), list(study_g.metrics))
    )

    if run_tripartite:
        tri = tripartite_family(make_partition([1.0, 1.0, 2.0]))
        scales = np.array(tri.axis_scales)
        rep = completeness_deviation(
            tri,
            cutoff=8,
            radii=tuple(6.0 * scales),
            points=(41, 41, 41),
            sector_bound=2,
        )
        ok = rep.deviation <= 0.05
        passed &= ok
        blocks.append(
            _verdict_block(
                "completeness_tripartite",
                ok,
                family="tripartite",
                masses="1,1,2",
                cutoff=8,
                sector_bound=2,
                metric=rep.deviation,
                tolerance=0.05,
            )
        )
    return CheckOutcome("completeness", passed, blocks, curves)


# ---------------------------------------------------------------------------
# 9. delta-normalization probes
# ---------------------------------------------------------------------------

def check_delta_probe(level: str = "full") -> CheckOutcome:
    blocks = []
    curves = []
    passed = True
    fam = eta_family()

    schedule = (8, 12, 16)
    center = (0.4, -0.2)
    reports = {
        c: smeared_overlap_probe(fam, center, center, width=0.6, cutoff=c)
        for c in schedule
    }
    study = convergence_study(
        lambda c: reports[c].relative_error, schedule, name="delta_probe_eta_convergence"
    )
    # probe's own refinement tolerance: the terminal error must at least
    # halve the previous one (geometric convergence), not a hand value
    probe_tol = max(FLOOR, reports[schedule[-2]].relative_error / 2)
    terminal = reports[schedule[-1]].relative_error
    ok = study.passed and terminal <= probe_tol
    passed &= ok
    blocks.append(
        _study_block(
            study,
            family="eta",
            predicted=reports[schedule[-1]].predicted,
            measured=reports[schedule[-1]].measured,
            refinement_tolerance=probe_tol,
            width=0.6,
        )
    )
    curves.append(("eta delta-probe relative error", list(schedule), list(study.metrics)))

    sep_cutoff = 32 if level == "full" else 24
    sep_tol = 1e-6 if level == "full" else 1e-5
    same = smeared_overlap_probe(
        fam, (-2.0, 0.0), (-2.0, 0.0), width=0.4, cutoff=sep_cutoff, points_per_axis=31
    )
    cross = smeared_overlap_probe(
        fam, (-2.0, 0.0), (2.0, 0.0), width=0.4, cutoff=sep_cutoff, points_per_axis=31
    )
    ratio = abs(cross.measured) / abs(same.measured)
    ok = ratio <= sep_tol
    passed &= ok
    blocks.append(
        _verdict_block(
            "delta_probe_separated",
            ok,
            family="eta",
            cutoff=sep_cutoff,
            width=0.4,
            separation_widths=10.0,
            metric=ratio,
            tolerance=sep_tol,
        )
    )

    bip_eq = bipartite_family(make_partition([1.0, 1.0]))
    eq_schedule = (8, 12, 16) if level == "full" else (8, 12)
    eq_reports = {
        c: smeared_overlap_probe(bip_eq, (0.3, 0.1), (0.3, 0.1), width=0.6, cutoff=c)
        for c in eq_schedule
    }
    study_eq = convergence_study(
        lambda c: eq_reports[c].relative_error,
        eq_schedule,
        name="delta_probe_bipartite_equal_mass",
    )
    probe_tol_eq = max(FLOOR, eq_reports[eq_schedule[-2]].relative_error / 2)
    ok = study_eq.passed and eq_reports[eq_schedule[-1]].relative_error <= probe_tol_eq
    passed &= ok
    blocks.append(
        _study_block(
            study_eq,
            family="bipartite",
            masses="1,1",
            predicted=eq_reports[eq_schedule[-1]].predicted,
            measured=eq_reports[eq_schedule[-1]].measured,
            refinement_tolerance=probe_tol_eq,
            width=0.6,
        )
    )

    bip_un = bipartite_family(make_partition([1.0, 3.0]))
    un_cut = 16 if level == "full" else 12
    un = smeared_overlap_probe(bip_un, (0.3, 0.1), (0.3, 0.1), width=0.6, cutoff=un_cut)
    blocks.append(
        {
            "check": "delta_probe_unequal_mass_factor",
            "family": "bipartite",
            "masses": "1,3",
            "cutoff": un_cut,
            "measured_over_unit_delta_model": complex(un.ratio),
            "note": "recorded only; no asserted value",
            "verdict": True,
        }
    )
    return CheckOutcome("delta_probe", passed, blocks, curves)


# ---------------------------------------------------------------------------
# 10. commutation structure
# ---------------------------------------------------------------------------

def check_commutation(level: str = "full") -> CheckOutcome:
    del level
    blocks = []
    passed = True
    rng = np.random.default_rng(515)

    worst = 0.0
    cutoffs = {2: 8, 3: 6, 4: 4}
    for k in range(10):
        n = (2, 3, 4)[k % 3]
        masses = np.exp(rng.uniform(np.log(0.2), np.log(5.0), size=n))
        part = make_partition(masses)
        spec = BasisSpec(n, cutoffs[n])
        com = com_operator(part, spec).entries
        interior = np.flatnonzero(
            np.array(
                [
                    max(spec.occupations_of(i)) <= spec.cutoff - 1
                    for i in range(spec.dimension)
                ]
            )
        )
        for i in range(2, n + 1):
            rel = rel_momentum_operator(part, i, spec).entries
            comm = com @ rel - rel @ com
            worst = max(worst, float(np.abs(comm[np.ix_(interior, interior)]).max()))
    ok = worst <= 1e-12
    passed &= ok
    blocks.append(
        _verdict_block(
            "commutation_com_rel", ok, samples=10, metric=worst, tolerance=1e-12
        )
    )

    worst_qp = 0.0
    for spec in (BasisSpec(2, 8), BasisSpec(3, 5)):
        from fockweyl.fock import quadrature_matrix

        interior = np.flatnonzero(
            np.array(
                [
                    max(spec.occupations_of(i)) <= spec.cutoff - 1
                    for i in range(spec.dimension)
                ]
            )
        )
        for i in range(spec.n_modes):
            Qi = quadrature_matrix(spec, i, "Q").entries
            for j in range(spec.n_modes):
                Pj = quadrature_matrix(spec, j, "P").entries
                comm = Qi @ Pj - Pj @ Qi
                target = 1j * np.eye(spec.dimension) if i == j else 0.0
                diff = np.abs((comm - target)[np.ix_(interior, interior)]).max()
                worst_qp = max(worst_qp, float(diff))
    ok = worst_qp <= 1e-12
    passed &= ok
    blocks.append(
        _verdict_block("commutation_canonical", ok, metric=worst_qp, tolerance=1e-12)
    )
    return CheckOutcome("commutation", passed, blocks)


# ---------------------------------------------------------------------------
# orchestration
# ---------------------------------------------------------------------------

ALL_CHECKS = {
    "weyl-symmetrization": check_weyl_symmetrization,
    "weyl-quadrature": check_weyl_quadrature,
    "wigner-values": check_wigner_values,
    "bmatrix": check_bmatrix,
    "gauss-integral": check_gauss_integral,
    "eigen-residuals": check_eigen_residuals,
    "reduction-identities": check_reduction_identities,
    "completeness": check_completeness,
    "delta-probe": check_delta_probe,
    "commutation": check_commutation,
}


@dataclass
class SuiteOutcome:
    level: str
    outcomes: list
    passed: bool


def run_suite(level: str = "quick", names=None) -> SuiteOutcome:
    if level not in ("quick", "full"):
        raise ValueError(f"level must be 'quick' or 'full', got {level!r}")
    names = list(ALL_CHECKS) if names is None else list(names)
    outcomes = []
    for name in names:
        if name not in ALL_CHECKS:
            raise ValueError(f"unknown check {name!r}")
        outcomes.append(ALL_CHECKS[name](level))
    return SuiteOutcome(level, outcomes, all(o.passed for o in outcomes))


def suite_blocks(result: SuiteOutcome) -> list:
    blocks = [
        {
            "check": "suite",
            "level": result.level,
            "checks_run": len(result.outcomes),
            "verdict": result.passed,
        }
    ]
    for outcome in result.outcomes:
        blocks.extend(outcome.blocks)
    return blocks
