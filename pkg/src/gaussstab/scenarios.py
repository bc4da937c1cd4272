"""Worked examples: the single damped mode and two locally damped modes.

Single mode. With ``x = Vxx/x0^2 + x0^2 Vpp - 1/2``, ``y = Vxx/x0^2 - x0^2 Vpp``
and ``z = 2 Vxp`` the stabilizable covariances form the sheet
``x = +sqrt(1/4 + y^2 + z^2)`` of the hyperboloid ``x^2 - y^2 - z^2 = 1/4``.

Two modes. The EPR family is a pure product of a Gaussian in
``p_cm = p1 + p2`` (width ``sigma_p``) and one in ``x_rel = x1 - x2``
(width ``sigma_x``). Their conjugates are ``x_cm = (x1 + x2)/2`` and
``p_rel = (p1 - p2)/2``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .criteria import omega_single_mode, two_mode_condition
from .errors import ExcludedPoint


@dataclass(frozen=True)
class HyperboloidPoint:
    """A single-mode covariance and its hyperboloid coordinates.

    Fields may be floats or equally shaped arrays.
    """

    vxx: np.ndarray
    vpp: np.ndarray
    vxp: np.ndarray
    x: np.ndarray
    y: np.ndarray
    z: np.ndarray
    x0: float = 1.0

    def covariance(self) -> np.ndarray:
        """2x2 covariance (only for scalar points)."""
        return np.array([[self.vxx, self.vxp], [self.vxp, self.vpp]], dtype=float)

    @property
    def omega(self):
        return omega_single_mode(self.vxx, self.vpp, self.vxp, self.x0)

    @property
    def purity(self):
        return 1.0 / (2.0 * np.sqrt(self.vxx * self.vpp - self.vxp**2))


def hyperboloid_coordinates(vxx, vpp, vxp, x0: float = 1.0):
    """Forward map ``(Vxx, Vpp, Vxp) -> (x, y, z)``."""
    u = vxx / x0**2
    w = vpp * x0**2
    return u + w - 0.5, u - w, 2.0 * vxp


def hyperboloid_sample(y, z, x0: float = 1.0) -> HyperboloidPoint:
    """Stabilizable covariance with hyperboloid coordinates ``(y, z)`` on the physical sheet."""
    y = np.asarray(y, dtype=float)
    z = np.asarray(z, dtype=float)
    x = np.sqrt(0.25 + y**2 + z**2)
    # x + 1/2 > |y|, so both variances are positive
    u = 0.5 * (x + 0.5 + y)
    w = 0.5 * (x + 0.5 - y)
    fields = (u * x0**2, w / x0**2, 0.5 * z, x, y, z)
    if x.ndim == 0:
        fields = tuple(float(f) for f in fields)
    return HyperboloidPoint(*fields, x0=x0)


def min_vxx_at(vpp, vxp, x0: float = 1.0, swap_axes: bool = False):
    """Position variance on the stabilizable surface at given ``Vpp`` and ``Vxp``.

    Valid on the branch ``Vpp > 1/(4 x0^2)``; tends to ``x0^2/4`` as
    ``Vpp -> inf``. With ``swap_axes=True`` the roles of x and p are
    exchanged: the first argument is ``Vxx`` and the result is ``Vpp``,
    bounded below by ``1/(4 x0^2)``.
    """
    scale = 1.0 / x0 if swap_axes else x0
    other = np.asarray(vpp, dtype=float)
    excluded = 0.25 / scale**2
    if np.any(np.isclose(other, excluded, rtol=1e-12, atol=0.0)):
        raise ExcludedPoint(f"the condition cannot be solved at the excluded value {excluded}")
    if np.any(other < excluded):
        raise ValueError(f"variance must exceed {excluded} on the physical branch")
    result = (scale**2 * other + 4.0 * np.asarray(vxp, dtype=float) ** 2) / (4.0 * other - 1.0 / scale**2)
    return float(result) if np.ndim(result) == 0 else result


@dataclass(frozen=True)
class EprAnsatz:
    sigma_p_cm: float
    sigma_x_rel: float
    x0: float = 1.0

    def __post_init__(self):
        if self.sigma_p_cm <= 0 or self.sigma_x_rel <= 0 or self.x0 <= 0:
            raise ValueError("EPR widths and x0 must be positive")


def epr_covariance(a: EprAnsatz) -> np.ndarray:
    """Pure two-mode covariance of the EPR ansatz in ``(x1, x2, p1, p2)`` order."""
    var_x_cm = 1.0 / (4.0 * a.sigma_p_cm**2)
    var_x_rel = a.sigma_x_rel**2
    var_p_cm = a.sigma_p_cm**2
    var_p_rel = 1.0 / (4.0 * a.sigma_x_rel**2)
    # x1,2 = x_cm +- x_rel/2 ; p1,2 = p_cm/2 +- p_rel
    vx_local = var_x_cm + var_x_rel / 4.0
    vx_cross = var_x_cm - var_x_rel / 4.0
    vp_local = var_p_cm / 4.0 + var_p_rel
    vp_cross = var_p_cm / 4.0 - var_p_rel
    V = np.zeros((4, 4))
    V[:2, :2] = [[vx_local, vx_cross], [vx_cross, vx_local]]
    V[2:, 2:] = [[vp_local, vp_cross], [vp_cross, vp_local]]
    return V


def epr_condition_lhs(a: EprAnsatz):
    """Left side of the equal-damping EPR condition; it equals 2 only at
    ``sigma_p_cm = 1/x0``, ``sigma_x_rel = x0``.
    """
    return epr_condition_lhs_grid(a.sigma_p_cm, a.sigma_x_rel, a.x0)


def epr_condition_lhs_grid(sigma_p_cm, sigma_x_rel, x0: float = 1.0):
    sp = np.asarray(sigma_p_cm, dtype=float)
    sx = np.asarray(sigma_x_rel, dtype=float)
    lhs = 0.5 * (sp**-2 / x0**2 + sx**2 / x0**2 + x0**2 * sp**2 + x0**2 * sx**-2)
    return float(lhs) if lhs.ndim == 0 else lhs


def epr_detV12_grid(sigma_p_cm, sigma_x_rel):
    """``det V_12`` of the EPR covariance, vectorized."""
    sp = np.asarray(sigma_p_cm, dtype=float)
    sx = np.asarray(sigma_x_rel, dtype=float)
    return (0.25 / sp**2 - 0.25 * sx**2) * (0.25 * sp**2 - 0.25 / sx**2)


def scan_hyperboloid(ys, zs, x0: float = 1.0) -> dict[str, np.ndarray]:
    """Tabulate the stabilizable surface on the ``ys x zs`` grid (row-major in y)."""
    Y, Z = np.meshgrid(np.asarray(ys, float), np.asarray(zs, float), indexing="ij")
    pt = hyperboloid_sample(Y.ravel(), Z.ravel(), x0)
    return {
        "y": pt.y,
        "z": pt.z,
        "V_xx": pt.vxx,
        "V_pp": pt.vpp,
        "V_xp": pt.vxp,
        "purity": pt.purity,
        "omega_residual": np.abs(pt.omega),
    }


def scan_epr(sigmas_p, sigmas_x, x0: float = 1.0, gamma: float = 1.0) -> dict[str, np.ndarray]:
    """Tabulate the EPR condition on a grid (row-major in ``sigma_p_cm``).

    ``condition_value`` is the generic two-mode condition evaluated on the
    EPR covariance with equal damping rates ``gamma``.
    """
    SP, SX = np.meshgrid(np.asarray(sigmas_p, float), np.asarray(sigmas_x, float), indexing="ij")
    sp, sx = SP.ravel(), SX.ravel()
    cond = np.array(
        [two_mode_condition(epr_covariance(EprAnsatz(p, q, x0)), gamma, gamma, x0) for p, q in zip(sp, sx)]
    )
    return {
        "sigma_p_cm": sp,
        "sigma_x_rel": sx,
        "lhs": epr_condition_lhs_grid(sp, sx, x0),
        "detV12": epr_detV12_grid(sp, sx),
        "condition_value": cond,
    }
