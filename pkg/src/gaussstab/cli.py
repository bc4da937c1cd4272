"""Command-line interface.

Subcommands::

    gaussstab check FILE          criteria values and verdict (exit 0 pass, 1 fail)
    gaussstab synthesize FILE     stabilizing Hamiltonian and residuals
    gaussstab simulate FILE       moment dynamics as CSV
    gaussstab scan --mode MODE    surface / EPR grids as CSV
    gaussstab analyze FILE        purity, spectrum, entanglement, classification

Invalid input always exits with status 2.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from typing import Any, Optional, Sequence

import numpy as np

from . import __version__
from .criteria import criteria, cross_block, entanglement_necessary
from .dissipation import diffusion_matrix, drift_matrix
from .dynamics import evolve, strict_stabilizability_check
from .errors import GaussStabError, SingularCovariance, StepTooLarge, UnphysicalState
from .scenario_file import Scenario, ScenarioError, load_scenario
from .scenarios import scan_epr, scan_hyperboloid
from .symplectic import physicality_check, purity, symplectic_spectrum
from .synthesis import synthesize, verify_stationarity

EXIT_OK, EXIT_FAIL, EXIT_INVALID = 0, 1, 2


def fmt(x: float) -> str:
    return format(float(x), ".17g")


def _clean(obj: Any) -> Any:
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _clean(obj.tolist())
    if isinstance(obj, (np.floating, float)):
        x = float(obj) + 0.0  # drop negative zero
        return x if math.isfinite(x) else None
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    return obj


def _emit_text(text: str, out: Optional[str]) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w", newline="") as fh:
            fh.write(text)


def _emit_json(report: dict, out: Optional[str]) -> None:
    _emit_text(json.dumps(_clean(report), indent=2) + "\n", out)


def base_report(sc: Scenario) -> dict:
    """Criteria, spectrum, purity and physicality of the scenario's state."""
    V = sc.state.cov
    rep = criteria(V, sc.spec)
    phys = physicality_check(V)
    try:
        spectrum = symplectic_spectrum(V)
        gammas, degenerate = spectrum.gammas, spectrum.degenerate
    except SingularCovariance:
        gammas, degenerate = None, None
    return {
        "modes": sc.n_modes,
        "verdict": rep.verdict,
        "criteria": {
            "values": rep.values,
            "normalized": rep.normalized,
            "tolerance": rep.tolerance,
            "first_failure": rep.first_failure,
        },
        "symplectic_eigenvalues": gammas,
        "spectrum_degenerate": degenerate,
        "purity": purity(V) if phys.physical else None,
        "physical": phys.physical,
        "physicality_margin": phys.margin,
    }


def cmd_check(args) -> int:
    sc = load_scenario(args.file)
    report = base_report(sc)
    _emit_json(report, args.out)
    return EXIT_OK if report["verdict"] == "Pass" else EXIT_FAIL


def cmd_synthesize(args) -> int:
    sc = load_scenario(args.file)
    report = base_report(sc)
    try:
        result = synthesize(sc.state.cov, sc.spec)
    except GaussStabError as exc:
        report.update(error=type(exc).__name__, message=str(exc))
        _emit_json(report, args.out)
        return EXIT_FAIL
    report.update(
        G=result.G,
        stationarity_residual=result.stationarity_residual,
        diagonal_residual=result.diagonal_residual,
        verified_residual=verify_stationarity(sc.state.cov, result.G, sc.spec),
    )
    _emit_json(report, args.out)
    return EXIT_OK


def cmd_analyze(args) -> int:
    sc = load_scenario(args.file)
    report = base_report(sc)
    H = sc.hamiltonian_or_zero()
    report["stationarity_residual"] = verify_stationarity(sc.state.cov, H.G, sc.spec)
    report["stabilizability"] = strict_stabilizability_check(
        sc.state, sc.spec, H, shifted=args.shifted
    ).value
    if sc.n_modes == 2:
        report["detV12"] = float(np.linalg.det(cross_block(sc.state.cov)))
        report["entanglement_necessary"] = entanglement_necessary(sc.state.cov)
    _emit_json(report, args.out)
    return EXIT_OK


def _cov_columns(dim: int) -> list[tuple[int, int, str]]:
    sep = "" if dim < 10 else "_"
    return [(i, j, f"V_{i + 1}{sep}{j + 1}") for i in range(dim) for j in range(i, dim)]


def cmd_simulate(args) -> int:
    sc = load_scenario(args.file)
    H = sc.hamiltonian_or_zero()
    try:
        result = evolve(sc.state, sc.spec, H, args.t_final, args.dt, args.stride)
    except (StepTooLarge, UnphysicalState, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVALID
    A = drift_matrix(sc.spec, H)
    D = diffusion_matrix(sc.spec)
    dim = 2 * sc.n_modes
    cols = _cov_columns(dim)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["t"] + [f"xi_{k + 1}" for k in range(dim)] + [c[2] for c in cols] + ["residual"])
    for t, xi, V in zip(result.times, result.means, result.covs):
        res = np.abs(A @ V + V @ A.T + D).max()
        writer.writerow([fmt(t)] + [fmt(v) for v in xi] + [fmt(V[i, j]) for i, j, _ in cols] + [fmt(res)])
    _emit_text(buf.getvalue(), args.out)
    return EXIT_OK


def _grid(spec: Sequence[str], name: str, positive: bool = False) -> np.ndarray:
    lo, hi, n = float(spec[0]), float(spec[1]), int(spec[2])
    if n < 1 or lo > hi or (n == 1 and lo != hi) or (n > 1 and lo == hi):
        raise ScenarioError(f"{name}: empty or inconsistent range {lo} {hi} {n}")
    if positive and lo <= 0:
        raise ScenarioError(f"{name}: widths must be positive")
    return np.linspace(lo, hi, n)


def cmd_scan(args) -> int:
    if args.x0 <= 0:
        raise ScenarioError("--x0: must be positive")
    if args.mode == "hyperboloid":
        table = scan_hyperboloid(_grid(args.y_range, "--y-range"), _grid(args.z_range, "--z-range"), args.x0)
    else:
        if args.gamma <= 0:
            raise ScenarioError("--gamma: must be positive")
        sp = _grid(args.sigma_p_range, "--sigma-p-range", positive=True)
        sx = _grid(args.sigma_x_range, "--sigma-x-range", positive=True)
        table = scan_epr(sp, sx, args.x0, args.gamma)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(list(table))
    for row in zip(*table.values()):
        writer.writerow([fmt(v) for v in row])
    _emit_text(buf.getvalue(), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gaussstab",
        description="Stabilizability of Gaussian states under linear Lindblad dissipation",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_file_cmd(name, func, help):
        p = sub.add_parser(name, help=help)
        p.add_argument("file", help="scenario file (YAML or JSON)")
        p.add_argument("--out", "-o", help="output path (default: stdout)")
        p.set_defaults(func=func)
        return p

    add_file_cmd("check", cmd_check, "evaluate the stabilizability criteria")
    add_file_cmd("synthesize", cmd_synthesize, "construct a stabilizing quadratic Hamiltonian")
    p = add_file_cmd("analyze", cmd_analyze, "purity, spectrum, entanglement and stationarity")
    p.add_argument("--shifted", action="store_true", help="accept displaced fixed points of the mean")
    p = add_file_cmd("simulate", cmd_simulate, "integrate mean and covariance dynamics to CSV")
    p.add_argument("--t-final", type=float, required=True)
    p.add_argument("--dt", type=float, default=None)
    p.add_argument("--stride", type=int, default=None, help="store every k-th step")

    p = sub.add_parser("scan", help="tabulate the worked examples on a grid")
    p.add_argument("--mode", choices=["hyperboloid", "epr"], required=True)
    p.add_argument("--x0", type=float, default=1.0)
    p.add_argument("--y-range", nargs=3, default=["-2", "2", "101"], metavar=("LO", "HI", "N"))
    p.add_argument("--z-range", nargs=3, default=["-2", "2", "101"], metavar=("LO", "HI", "N"))
    p.add_argument("--sigma-p-range", nargs=3, default=["0.25", "4", "200"], metavar=("LO", "HI", "N"))
    p.add_argument("--sigma-x-range", nargs=3, default=["0.25", "4", "200"], metavar=("LO", "HI", "N"))
    p.add_argument("--gamma", type=float, default=1.0, help="common damping rate (epr mode)")
    p.add_argument("--out", "-o", help="output path (default: stdout)")
    p.set_defaults(func=cmd_scan)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "simulate" and args.stride is not None and args.stride < 1:
        parser.error("--stride must be positive")
    try:
        return args.func(args)
    except (ScenarioError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except ValueError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
