"""Hamiltonian-independent stabilizability criteria.

For an N-mode covariance ``V`` and ``Vt = J V`` the quantities

    T_n = 2 Tr[(Im C^dagger C) J Vt^n] + Tr[(Re C^dagger C) J Vt^(n-1)],

n = 1..2N, must all vanish if some quadratic Hamiltonian keeps ``V``
stationary. ``T_1`` vanishes for every symmetric ``V``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .dissipation import DissipationSpec, re_im_cc
from .errors import DimensionMismatch
from .symplectic import as_covariance, n_modes_of, symplectic_form

CRITERIA_TOL = 1e-9
_SCALE_FLOOR = np.finfo(float).tiny
NUM_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class CriteriaReport:
    values: np.ndarray
    normalized: np.ndarray
    tolerance: float = CRITERIA_TOL

    @property
    def first_failure(self) -> Optional[int]:
        """1-based index ``n`` of the first violated condition, if any."""
        bad = np.flatnonzero(np.abs(self.normalized) > self.tolerance)
        return int(bad[0]) + 1 if bad.size else None

    @property
    def passed(self) -> bool:
        return self.first_failure is None

    @property
    def verdict(self) -> str:
        n = self.first_failure
        return "Pass" if n is None else f"Fail({n})"


def criteria_scales(V: np.ndarray, re: np.ndarray, im: np.ndarray) -> np.ndarray:
    vmax = np.abs(V).max()
    n = np.arange(1, V.shape[0] + 1)
    return np.abs(im).max(initial=0.0) * vmax**n + np.abs(re).max(initial=0.0) * vmax ** (n - 1) + _SCALE_FLOOR


def criteria(V, spec: DissipationSpec, tolerance: float = CRITERIA_TOL) -> CriteriaReport:
    V = as_covariance(V)
    n_modes = n_modes_of(V)
    if n_modes != spec.n_modes:
        raise DimensionMismatch(
            f"covariance describes {n_modes} modes, dissipator {spec.n_modes}"
        )
    J = symplectic_form(n_modes)
    re, im = re_im_cc(spec)
    Vt = J @ V
    im_j = im @ J
    re_j = re @ J

    values = np.empty(2 * n_modes)
    power = np.eye(2 * n_modes)  # Vt^(n-1)
    for k in range(2 * n_modes):
        nxt = power @ Vt
        values[k] = 2.0 * np.trace(im_j @ nxt) + np.trace(re_j @ power)
        power = nxt
    normalized = values / criteria_scales(V, re, im)
    return CriteriaReport(values, normalized, tolerance)


def omega_single_mode(vxx, vpp, vxp, x0=1.0):
    """Left-hand side of the single damped-mode condition (zero on the stabilizable set).

    Broadcasts over array arguments.
    """
    return vxx / x0**2 + x0**2 * vpp - 4.0 * vxx * vpp + 4.0 * vxp**2


def _mode_omega(V: np.ndarray, i: int, x0: float) -> float:
    n = V.shape[0] // 2
    return omega_single_mode(V[i, i], V[n + i, n + i], V[i, n + i], x0)


def cross_block(V) -> np.ndarray:
    """``V_12 = [[V_x1x2, V_x1p2], [V_p1x2, V_p1p2]]`` of a two-mode covariance."""
    V = as_covariance(V)
    if n_modes_of(V) != 2:
        raise DimensionMismatch("cross_block requires a two-mode covariance")
    return V[np.ix_([0, 2], [1, 3])]


def two_mode_condition(V, gamma1: float, gamma2: float, x0: float = 1.0) -> float:
    """``g1 Omega_1 + g2 Omega_2 - 4 (g1 + g2) det V_12`` for two locally damped modes."""
    V = as_covariance(V)
    if n_modes_of(V) != 2:
        raise DimensionMismatch("two_mode_condition requires a two-mode covariance")
    if gamma1 < 0 or gamma2 < 0 or gamma1 + gamma2 == 0:
        raise ValueError("damping rates must be non-negative and not both zero")
    det12 = np.linalg.det(cross_block(V))
    return float(
        gamma1 * _mode_omega(V, 0, x0)
        + gamma2 * _mode_omega(V, 1, x0)
        - 4.0 * (gamma1 + gamma2) * det12
    )


def entanglement_necessary(V) -> bool:
    """True iff ``det V_12 < 0``, the necessary condition for two-mode entanglement."""
    return bool(np.linalg.det(cross_block(V)) < -NUM_TOL)


def detV12_from_local(omega1: float, omega2: float, gamma1: float, gamma2: float) -> float:
    """Value of ``det V_12`` forced on a stabilizable two-mode state by its local Omegas."""
    total = gamma1 + gamma2
    if total <= 0:
        raise ValueError("gamma1 + gamma2 must be positive")
    return (gamma1 * omega1 + gamma2 * omega2) / (4.0 * total)
