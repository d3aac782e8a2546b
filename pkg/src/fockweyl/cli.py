"""Command-line front end.

Commands: build-state, residual, wigner, weyl-quantize, gauss-integral,
bmatrix, completeness, verify-all. Exit code 0 on success / all checks
passing, 1 on a check failure, 2 on usage errors. Text artifacts are
written atomically; report-producing commands also render matplotlib
figures next to their text outputs (disable with --no-figure).
"""

from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from fockweyl import figures
from fockweyl.fock import (
    BasisSpec,
    apply_exponent_to_vacuum,
    coherent_state,
    load_state,
    save_state,
    write_text_atomic,
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
    eigen_system,
    eta_exponent,
    multipartite_exponent,
    xi_exponent,
)
from fockweyl.suite import ALL_CHECKS, run_suite, suite_blocks
from fockweyl.validation import (
    bipartite_family,
    blocks_to_text,
    completeness_deviation,
    eigen_residual,
    eta_family,
    multipartite_family,
    tripartite_family,
)
from fockweyl.weyl import (
    ClassicalMonomial,
    ClassicalPolynomial,
    save_wigner_grid,
    weyl_quantize,
    wigner_grid,
    wigner_grid_to_text,
)


class UsageError(Exception):
    pass


def parse_complex(text: str) -> complex:
    """Complex flags use `a+bi` / `a-bi` with no spaces."""
    cleaned = text.strip().replace("I", "i")
    if cleaned.endswith("i"):
        cleaned = cleaned[:-1] + "j"
    try:
        return complex(cleaned)
    except ValueError as exc:
        raise UsageError(f"cannot parse complex number {text!r}; use a+bi") from exc


def parse_masses(text: str) -> list[float]:
    try:
        masses = [float(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise UsageError(f"cannot parse masses {text!r}") from exc
    if not masses:
        raise UsageError("masses list is empty")
    return masses


def parse_floats(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise UsageError(f"cannot parse float list {text!r}") from exc


def _state_param(args):
    family = args.family
    if family == "coherent":
        if args.z is None:
            raise UsageError("--family coherent requires --z")
        return tuple(parse_complex(z) for z in args.z.split(","))
    if family == "eta":
        if args.eta is None:
            raise UsageError("--family eta requires --eta")
        return EtaParam(parse_complex(args.eta))
    if args.masses is None:
        raise UsageError(f"--family {family} requires --masses")
    part = make_partition(parse_masses(args.masses))
    if family == "bipartite":
        if part.n != 2:
            raise UsageError("bipartite needs exactly 2 masses")
        rho = parse_floats(args.rho or "0")
        if len(rho) != 1:
            raise UsageError("bipartite needs a single --rho value")
        return BipartiteEprParam(q_cm=args.q, rho=rho[0], partition=part)
    if family == "tripartite" and part.n != 3:
        raise UsageError("tripartite needs exactly 3 masses")
    rho = parse_floats(args.rho) if args.rho else [0.0] * (part.n - 1)
    if len(rho) != part.n - 1:
        raise UsageError(f"--rho needs {part.n - 1} comma-separated values")
    return MultiEprParam(q=args.q, rho=tuple(rho), partition=part)


def _param_exponent(param):
    if isinstance(param, EtaParam):
        return 2, eta_exponent(param)
    if isinstance(param, BipartiteEprParam):
        return 2, xi_exponent(param)
    return param.partition.n, multipartite_exponent(param)


def _emit(text: str, out_path) -> None:
    if out_path:
        write_text_atomic(out_path, text)
    else:
        sys.stdout.write(text)


def _add_state_flags(sub) -> None:
    sub.add_argument("--family", required=True,
                     choices=["eta", "bipartite", "tripartite", "multipartite", "coherent"])
    sub.add_argument("--eta", help="complex label a+bi (eta family)")
    sub.add_argument("--z", help="comma-separated complex amplitudes (coherent family)")
    sub.add_argument("--q", type=float, default=0.0, help="center-of-mass eigenvalue")
    sub.add_argument("--rho", help="comma-separated relative-momentum eigenvalues")
    sub.add_argument("--masses", help="comma-separated particle masses")
    sub.add_argument("--cutoff", type=int, required=True)


def cmd_build_state(args) -> int:
    param = _state_param(args)
    if isinstance(param, tuple):
        state = coherent_state(BasisSpec(len(param), args.cutoff), list(param))
    else:
        n_modes, exponent = _param_exponent(param)
        state = apply_exponent_to_vacuum(BasisSpec(n_modes, args.cutoff), exponent)
    if args.out:
        save_state(state, args.out)
    else:
        from fockweyl.fock import state_to_text

        sys.stdout.write(state_to_text(state))
    return 0


def cmd_residual(args) -> int:
    param = _state_param(args)
    if isinstance(param, tuple):
        raise UsageError("residual needs an entangled family, not coherent")
    n_modes, exponent = _param_exponent(param)
    spec = BasisSpec(n_modes, args.cutoff)
    state = apply_exponent_to_vacuum(spec, exponent)
    sector = args.sector_bound if args.sector_bound is not None else args.cutoff // 2
    blocks = []
    passed = True
    for name, applier, ev in eigen_system(param):
        rep = eigen_residual(
            lambda v, a=applier: a(spec, v), state, ev, sector, op_name=name
        )
        ok = rep.residual <= args.tol
        passed &= ok
        blocks.append(
            {
                "check": "residual",
                "family": args.family,
                "op": name,
                "eigenvalue": complex(ev),
                "cutoff": args.cutoff,
                "sector_bound": sector,
                "metric": rep.residual,
                "tail_mass": rep.tail_mass,
                "tolerance": args.tol,
                "verdict": ok,
            }
        )
    _emit(blocks_to_text(blocks), args.out)
    return 0 if passed else 1


def cmd_wigner(args) -> int:
    state = load_state(args.state)
    nodes, W = wigner_grid(state, args.radius, args.points)
    if args.out:
        save_wigner_grid(args.out, nodes, W)
    else:
        sys.stdout.write(wigner_grid_to_text(nodes, W))
    figure_path = args.figure
    if figure_path is None and args.out and not args.no_figure:
        figure_path = os.path.splitext(args.out)[0] + ".png"
    if figure_path:
        figures.render_wigner_heatmap(nodes, W, figure_path)
    return 0


def cmd_weyl_quantize(args) -> int:
    terms = []
    for chunk in args.terms.split(";"):
        if not chunk.strip():
            continue
        parts = chunk.split(",")
        if len(parts) not in (2, 3):
            raise UsageError(f"bad term {chunk!r}; use m,n or m,n,coeff")
        m, n = int(parts[0]), int(parts[1])
        coeff = parse_complex(parts[2]) if len(parts) == 3 else 1.0 + 0j
        terms.append(ClassicalMonomial(m, n, coeff))
    poly = ClassicalPolynomial.from_terms(terms)
    op = weyl_quantize(BasisSpec(1, args.cutoff), poly)
    lines = [f"dim={args.cutoff + 1}"]
    for i in range(args.cutoff + 1):
        for j in range(args.cutoff + 1):
            v = complex(op.entries[i, j])
            if v != 0:
                lines.append(f"{i} {j} {v.real!r} {v.imag!r}")
    _emit("\n".join(lines) + "\n", args.out)
    return 0


def _parse_matrix(text: str) -> np.ndarray:
    rows = [parse_floats(row) for row in text.split(";") if row.strip()]
    return np.array(rows, dtype=float)


def cmd_gauss_integral(args) -> int:
    B = _parse_matrix(args.b)
    v = np.array(parse_floats(args.v)) if args.v else np.zeros(B.shape[0])
    spec = GaussianIntegralSpec(B, v)
    closed = gaussian_integral_closed(spec)
    block = {
        "check": "gauss-integral",
        "n": spec.n,
        "closed_form": closed,
    }
    if args.radius is not None:
        quad = gaussian_integral_quadrature(spec, args.radius, args.points)
        block["quadrature"] = quad
        block["relative_difference"] = abs(quad - closed) / closed
    block["verdict"] = True
    _emit(blocks_to_text([block]), args.out)
    return 0


def cmd_bmatrix(args) -> int:
    part = make_partition(parse_masses(args.masses))
    B = b_matrix(part)
    inv = b_inverse_closed(part)
    det_closed = b_det_closed(part)
    det_lu = float(np.linalg.det(B))
    fmt = lambda M: ";".join(",".join(repr(float(x)) for x in row) for row in M)
    block = {
        "check": "bmatrix",
        "masses": args.masses,
        "mu": ",".join(repr(float(x)) for x in part.mu),
        "lambda": part.lam,
        "B": fmt(B),
        "det_closed": det_closed,
        "det_lu": det_lu,
        "inverse_closed": fmt(inv),
        "identity_error": float(np.abs(B @ inv - np.eye(part.n - 1)).max()),
        "verdict": abs(det_closed - det_lu) <= 1e-10 * abs(det_closed),
    }
    _emit(blocks_to_text([block]), args.out)
    return 0 if block["verdict"] else 1


def cmd_completeness(args) -> int:
    if args.family == "eta":
        family = eta_family()
    else:
        if not args.masses:
            raise UsageError(f"--family {args.family} requires --masses")
        part = make_partition(parse_masses(args.masses))
        family = {
            "bipartite": bipartite_family,
            "tripartite": tripartite_family,
            "multipartite": multipartite_family,
        }[args.family](part)
    radii = parse_floats(args.radius)
    if len(radii) == 1:
        radii = radii * family.param_dim
    rep = completeness_deviation(
        family,
        cutoff=args.cutoff,
        radii=radii,
        points=[args.points] * family.param_dim,
        sector_bound=args.sector_bound,
    )
    ok = rep.deviation <= args.tol
    block = {
        "check": "completeness",
        "family": family.name,
        "cutoff": args.cutoff,
        "sector_bound": args.sector_bound,
        "radius": ",".join(repr(r) for r in radii),
        "grid": args.points,
        "metric": rep.deviation,
        "tolerance": args.tol,
        "verdict": ok,
    }
    _emit(blocks_to_text([block]), args.out)
    return 0 if ok else 1


def cmd_verify_all(args) -> int:
    names = None
    if args.checks:
        names = [c.strip() for c in args.checks.split(",") if c.strip()]
        unknown = [c for c in names if c not in ALL_CHECKS]
        if unknown:
            raise UsageError(
                f"unknown checks {unknown}; available: {', '.join(ALL_CHECKS)}"
            )
    result = run_suite(args.level, names)
    text = blocks_to_text(suite_blocks(result))
    _emit(text, args.report)
    if args.report and not args.no_figure:
        stem = os.path.splitext(args.report)[0]
        for outcome in result.outcomes:
            if outcome.curves:
                figures.render_convergence(
                    outcome.curves, f"{stem}_{outcome.name}.png", title=outcome.name
                )
    if not args.report:
        sys.stdout.write(f"# overall: {'pass' if result.passed else 'fail'}\n")
    return 0 if result.passed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fockweyl",
        description="Truncated Fock-space numerics: entangled-state builders, "
        "Weyl/Wigner machinery, Gaussian integrals, and verification checks.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build-state", help="construct a state and write the state file")
    _add_state_flags(p)
    p.add_argument("--out", help="output path (default: stdout)")
    p.set_defaults(func=cmd_build_state)

    p = sub.add_parser("residual", help="eigen-equation residuals for a constructed state")
    _add_state_flags(p)
    p.add_argument("--sector-bound", type=int, help="total-occupation window (default cutoff/2)")
    p.add_argument("--tol", type=float, default=1e-3)
    p.add_argument("--out", help="report path (default: stdout)")
    p.set_defaults(func=cmd_residual)

    p = sub.add_parser("wigner", help="Wigner function grid of a single-mode state file")
    p.add_argument("--state", required=True, help="state file (modes=1)")
    p.add_argument("--radius", type=float, default=5.0)
    p.add_argument("--points", type=int, default=101)
    p.add_argument("--out", help="grid text path (default: stdout)")
    p.add_argument("--figure", help="heatmap path (default: alongside --out)")
    p.add_argument("--no-figure", action="store_true")
    p.set_defaults(func=cmd_wigner)

    p = sub.add_parser("weyl-quantize", help="Weyl-order a classical polynomial in q, p")
    p.add_argument("--terms", required=True, help="semicolon list: m,n or m,n,coeff")
    p.add_argument("--cutoff", type=int, required=True)
    p.add_argument("--out", help="matrix entries path (default: stdout)")
    p.set_defaults(func=cmd_weyl_quantize)

    p = sub.add_parser("gauss-integral", help="closed-form Gaussian integral, optional quadrature")
    p.add_argument("--b", required=True, help="matrix rows `a,b;c,d`")
    p.add_argument("--v", help="linear vector `a,b`")
    p.add_argument("--radius", type=float, help="run the quadrature oracle too")
    p.add_argument("--points", type=int, default=801)
    p.add_argument("--out", help="report path (default: stdout)")
    p.set_defaults(func=cmd_gauss_integral)

    p = sub.add_parser("bmatrix", help="reduced-coordinate matrix, determinant, inverse")
    p.add_argument("--masses", required=True)
    p.add_argument("--out", help="report path (default: stdout)")
    p.set_defaults(func=cmd_bmatrix)

    p = sub.add_parser("completeness", help="identity-resolution deviation on a sector")
    p.add_argument("--family", required=True,
                   choices=["eta", "bipartite", "tripartite", "multipartite"])
    p.add_argument("--masses")
    p.add_argument("--cutoff", type=int, required=True)
    p.add_argument("--radius", required=True, help="scalar or per-axis comma list")
    p.add_argument("--points", type=int, default=61)
    p.add_argument("--sector-bound", type=int, default=2)
    p.add_argument("--tol", type=float, default=0.05)
    p.add_argument("--out", help="report path (default: stdout)")
    p.set_defaults(func=cmd_completeness)

    p = sub.add_parser("verify-all", help="run the calibrated verification suite")
    p.add_argument("--level", choices=["quick", "full"], default="quick")
    p.add_argument("--checks", help="comma list of check names (default: all)")
    p.add_argument("--report", help="report path (default: stdout)")
    p.add_argument("--no-figure", action="store_true")
    p.set_defaults(func=cmd_verify_all)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors and 0 on --help
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
