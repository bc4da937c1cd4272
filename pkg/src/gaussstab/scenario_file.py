"""Scenario files: one dissipative system plus one Gaussian state.

The format is YAML (JSON is accepted as a subset)::

    modes: 1
    x0: 1.0
    lindblad:
      - {damped_mode: 0, gamma: 1.0}
      - {coeffs_re: [0.5, 0.0], coeffs_im: [0.0, 0.5]}
    hamiltonian: [[0, 0], [0, 0]]      # optional, row-major
    displacement: [0, 0]               # optional
    state:
      mean: [0, 0]
      cov: [[0.5, 0], [0, 0.5]]

``x0_per_mode`` optionally overrides ``x0`` for the damped-mode shorthand.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Any, Optional

import numpy as np
import yaml

from .dissipation import DissipationSpec, GaussianState, QuadraticHamiltonian, damped_mode_vector
from .errors import GaussStabError


class ScenarioError(ValueError):
    """Malformed scenario file; the message names the offending field."""


@dataclass(frozen=True, eq=False)
class Scenario:
    n_modes: int
    x0: float
    spec: DissipationSpec
    state: GaussianState
    hamiltonian: Optional[QuadraticHamiltonian]
    damping: tuple[tuple[int, float], ...] = ()

    def hamiltonian_or_zero(self) -> QuadraticHamiltonian:
        return self.hamiltonian or QuadraticHamiltonian.zero(self.n_modes)


def _real(value: Any, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ScenarioError(f"{where}: expected a number, got {value!r}")
    return float(value)


def _vector(value: Any, length: int, where: str) -> np.ndarray:
    if not isinstance(value, list):
        raise ScenarioError(f"{where}: expected a list of {length} numbers")
    if len(value) != length:
        raise ScenarioError(f"{where}: expected {length} entries, got {len(value)}")
    return np.array([_real(v, f"{where}[{i}]") for i, v in enumerate(value)])


def _matrix(value: Any, dim: int, where: str) -> np.ndarray:
    if not isinstance(value, list):
        raise ScenarioError(f"{where}: expected a {dim}x{dim} row-major matrix")
    if len(value) != dim:
        raise ScenarioError(f"{where}: expected {dim} rows, got {len(value)}")
    return np.array([_vector(row, dim, f"{where}[{i}]") for i, row in enumerate(value)])


def parse_scenario(data: Any) -> Scenario:
    if not isinstance(data, dict):
        raise ScenarioError("top level: expected a mapping")
    known = {"modes", "x0", "x0_per_mode", "lindblad", "hamiltonian", "displacement", "state", "name", "description"}
    unknown = sorted(set(data) - known)
    if unknown:
        raise ScenarioError(f"top level: unknown field(s) {', '.join(unknown)}")

    n = data.get("modes")
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise ScenarioError(f"modes: expected a positive integer, got {n!r}")
    dim = 2 * n
    x0 = _real(data.get("x0", 1.0), "x0")
    if x0 <= 0:
        raise ScenarioError("x0: must be positive")
    x0s = np.full(n, x0)
    if "x0_per_mode" in data:
        x0s = _vector(data["x0_per_mode"], n, "x0_per_mode")
        if np.any(x0s <= 0):
            raise ScenarioError("x0_per_mode: entries must be positive")

    lindblad = data.get("lindblad", [])
    if not isinstance(lindblad, list):
        raise ScenarioError("lindblad: expected a list")
    rows, damping = [], []
    for k, entry in enumerate(lindblad):
        where = f"lindblad[{k}]"
        if not isinstance(entry, dict):
            raise ScenarioError(f"{where}: expected a mapping")
        if "damped_mode" in entry:
            idx = entry["damped_mode"]
            if isinstance(idx, bool) or not isinstance(idx, int) or not 0 <= idx < n:
                raise ScenarioError(f"{where}.damped_mode: expected an index in [0, {n})")
            gamma = _real(entry.get("gamma", None), f"{where}.gamma")
            if gamma < 0:
                raise ScenarioError(f"{where}.gamma: must be non-negative")
            rows.append(damped_mode_vector(n, idx, gamma, x0s[idx]))
            damping.append((idx, gamma))
        elif "coeffs_re" in entry or "coeffs_im" in entry:
            re = _vector(entry.get("coeffs_re", [0.0] * dim), dim, f"{where}.coeffs_re")
            im = _vector(entry.get("coeffs_im", [0.0] * dim), dim, f"{where}.coeffs_im")
            rows.append(re + 1j * im)
        else:
            raise ScenarioError(f"{where}: expected damped_mode/gamma or coeffs_re/coeffs_im")
    spec = DissipationSpec(n, np.array(rows, dtype=complex).reshape(-1, dim))

    state = data.get("state")
    if not isinstance(state, dict):
        raise ScenarioError("state: expected a mapping with mean and cov")
    if "cov" not in state:
        raise ScenarioError("state.cov: missing")
    cov = _matrix(state["cov"], dim, "state.cov")
    mean = _vector(state.get("mean", [0.0] * dim), dim, "state.mean")
    try:
        gstate = GaussianState(mean, cov)
    except GaussStabError as exc:
        raise ScenarioError(f"state.cov: {exc}") from exc

    H = None
    if data.get("hamiltonian") is not None:
        G = _matrix(data["hamiltonian"], dim, "hamiltonian")
        disp = None
        if data.get("displacement") is not None:
            disp = _vector(data["displacement"], dim, "displacement")
        try:
            H = QuadraticHamiltonian(G, disp)
        except GaussStabError as exc:
            raise ScenarioError(f"hamiltonian: {exc}") from exc
    elif data.get("displacement") is not None:
        raise ScenarioError("displacement: requires a hamiltonian")

    return Scenario(n, x0, spec, gstate, H, tuple(damping))


def load_scenario(path) -> Scenario:
    text = Path(path).read_text()
    try:
        data = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        mark = getattr(exc, "problem_mark", None)
        where = f"line {mark.line + 1}, column {mark.column + 1}" if mark else "unknown position"
        raise ScenarioError(f"{path}: parse error at {where}: {getattr(exc, 'problem', exc)}") from exc
    return parse_scenario(data)


def dump_scenario(scenario: Scenario) -> str:
    """Serialize back to YAML with explicit complex coefficient pairs."""
    data = {
        "modes": scenario.n_modes,
        "x0": scenario.x0,
        "lindblad": [
            {"coeffs_re": [float(v) for v in c.real], "coeffs_im": [float(v) for v in c.imag]}
            for c in scenario.spec.coeffs
        ],
        "state": {
            "mean": [float(v) for v in scenario.state.mean],
            "cov": [[float(v) for v in row] for row in scenario.state.cov],
        },
    }
    if scenario.hamiltonian is not None:
        data["hamiltonian"] = [[float(v) for v in row] for row in scenario.hamiltonian.G]
        if scenario.hamiltonian.displacement is not None:
            data["displacement"] = [float(v) for v in scenario.hamiltonian.displacement]
    return yaml.safe_dump(data, sort_keys=False)
