"""Time evolution and steady states of the first and second moments.

    d xi/dt = A xi + b,        d V/dt = A V + V A^T + D,

with ``A = J(G + Im C^dagger C)``, ``D = J Re(C^dagger C) J^T`` and
``b = -J G xi0`` for a displaced Hamiltonian.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .dissipation import (
    DissipationSpec,
    GaussianState,
    QuadraticHamiltonian,
    diffusion_matrix,
    drift_matrix,
    drift_offset,
)
from .errors import NotHurwitz, StepTooLarge, UnphysicalState
from .symplectic import NUM_TOL, physicality_check
from .synthesis import verify_stationarity

MAX_STEP_NORM = 0.1
HURWITZ_TOL = 1e-10
MAX_SAMPLES = 10_000
STATIONARITY_RTOL = 1e-8


@dataclass(frozen=True, eq=False)
class EvolutionResult:
    times: np.ndarray
    means: np.ndarray  # (n_samples, 2N)
    covs: np.ndarray  # (n_samples, 2N, 2N)
    final_residual: float


def default_step(A: np.ndarray, t_final: float) -> float:
    """``0.01 / ||A||_2``, capped at a tenth of the horizon."""
    norm = np.linalg.norm(A, 2)
    if norm == 0.0:
        return t_final / 10.0
    return min(0.01 / norm, t_final / 10.0)


def evolve(
    state0: GaussianState,
    spec: DissipationSpec,
    H: QuadraticHamiltonian,
    t_final: float,
    dt: Optional[float] = None,
    stride: Optional[int] = None,
) -> EvolutionResult:
    """Integrate the moment equations with the classical fixed-step RK4 scheme.

    Every ``stride``-th step is stored (plus t=0 and the final time); by
    default the stride keeps at most 10^4 samples. The last step is shortened
    if ``dt`` does not divide ``t_final``.
    """
    if t_final <= 0:
        raise ValueError(f"t_final must be positive, got {t_final}")
    check = physicality_check(state0.cov)
    if not check.physical:
        raise UnphysicalState(f"initial covariance is unphysical (margin {check.margin:.3g})")

    A = drift_matrix(spec, H)
    D = diffusion_matrix(spec)
    b = drift_offset(spec, H)
    if dt is None:
        dt = default_step(A, t_final)
    if dt <= 0:
        raise ValueError(f"dt must be positive, got {dt}")
    if dt * np.linalg.norm(A, 2) > MAX_STEP_NORM * (1 + 1e-12):
        raise StepTooLarge(
            f"dt * ||A|| = {dt * np.linalg.norm(A, 2):.3g} exceeds {MAX_STEP_NORM}; "
            f"use dt <= {MAX_STEP_NORM / np.linalg.norm(A, 2):.3g}"
        )
    n_steps = max(1, math.ceil(t_final / dt - 1e-9))
    if stride is None:
        stride = max(1, math.ceil(n_steps / (MAX_SAMPLES - 1)))

    def f_mean(x):
        return A @ x + b

    def f_cov(V):
        AV = A @ V
        return AV + AV.T + D

    x = state0.mean.copy()
    V = state0.cov.copy()
    times, means, covs = [0.0], [x.copy()], [V.copy()]
    t = 0.0
    for k in range(1, n_steps + 1):
        h = min(dt, t_final - t) if k == n_steps else dt
        k1x, k1v = f_mean(x), f_cov(V)
        k2x, k2v = f_mean(x + 0.5 * h * k1x), f_cov(V + 0.5 * h * k1v)
        k3x, k3v = f_mean(x + 0.5 * h * k2x), f_cov(V + 0.5 * h * k2v)
        k4x, k4v = f_mean(x + h * k3x), f_cov(V + h * k3v)
        x = x + h / 6.0 * (k1x + 2 * k2x + 2 * k3x + k4x)
        V = V + h / 6.0 * (k1v + 2 * k2v + 2 * k3v + k4v)
        V = 0.5 * (V + V.T)
        t = t_final if k == n_steps else k * dt
        if k % stride == 0 or k == n_steps:
            times.append(t)
            means.append(x.copy())
            covs.append(V.copy())

    residual = float(np.abs(f_cov(V)).max())
    return EvolutionResult(np.array(times), np.array(means), np.array(covs), residual)


def steady_state(spec: DissipationSpec, H: QuadraticHamiltonian) -> np.ndarray:
    """Solve ``A V + V A^T = -D`` by a dense Kronecker-structured linear solve."""
    A = drift_matrix(spec, H)
    D = diffusion_matrix(spec)
    eig = np.linalg.eigvals(A)
    worst = eig[np.argmax(eig.real)]
    if worst.real >= -HURWITZ_TOL:
        raise NotHurwitz(complex(worst))
    dim = A.shape[0]
    eye = np.eye(dim)
    # row-major vec: vec(A V) = (A kron I) vec V, vec(V A^T) = (I kron A) vec V
    op = np.kron(A, eye) + np.kron(eye, A)
    V = np.linalg.solve(op, -D.reshape(-1)).reshape(dim, dim)
    return 0.5 * (V + V.T)


class Stabilizability(str, enum.Enum):
    STRICT = "Strict"
    RELAXED = "Relaxed"
    NONE = "None"


def strict_stabilizability_check(
    state: GaussianState,
    spec: DissipationSpec,
    H: QuadraticHamiltonian,
    shifted: bool = False,
) -> Stabilizability:
    """Classify ``state`` as stationary in mean and covariance, covariance only, or neither.

    With ``shifted=True`` the mean only has to be a fixed point of the
    displaced first-moment equation instead of sitting at the origin.
    """
    D = diffusion_matrix(spec)
    tol = STATIONARITY_RTOL * max(float(np.abs(D).max()), 1.0)
    if verify_stationarity(state.cov, H.G, spec) > tol:
        return Stabilizability.NONE
    if shifted:
        velocity = drift_matrix(spec, H) @ state.mean + drift_offset(spec, H)
        mean_ok = np.linalg.norm(velocity) <= tol
    else:
        mean_ok = np.linalg.norm(state.mean) <= NUM_TOL
    return Stabilizability.STRICT if mean_ok else Stabilizability.RELAXED
