"""Symplectic form, covariance validation and symplectic spectra.

Quadratures are ordered ``(x_1, ..., x_N, p_1, ..., p_N)`` and hbar = 1, so
the vacuum covariance of a mode is ``diag(1/2, 1/2)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import AsymmetricMatrix, DegenerateSpectrum, DimensionMismatch
from .errors import SingularCovariance, UnphysicalState

SYM_RTOL = 1e-10
INV_RTOL = 1e-12
PSD_TOL = 1e-10
NUM_TOL = 1e-10
DEGENERACY_RTOL = 1e-8


def symplectic_form(n_modes: int) -> np.ndarray:
    """Return ``J = [[0, I], [-I, 0]]`` for ``n_modes`` modes."""
    if n_modes < 1:
        raise ValueError(f"n_modes must be positive, got {n_modes}")
    eye = np.eye(n_modes)
    zero = np.zeros((n_modes, n_modes))
    return np.block([[zero, eye], [-eye, zero]])


def n_modes_of(matrix: np.ndarray) -> int:
    dim = matrix.shape[0]
    if matrix.ndim != 2 or matrix.shape[1] != dim or dim == 0 or dim % 2:
        raise DimensionMismatch(
            f"expected a square matrix of even dimension, got shape {matrix.shape}"
        )
    return dim // 2


def as_covariance(V) -> np.ndarray:
    """Validate ``V`` as a covariance matrix and return its symmetrized copy.

    Asymmetry below ``1e-10 * max|V|`` is treated as round-off and averaged
    away; anything larger is rejected.
    """
    V = np.array(V, dtype=float)
    n_modes_of(V)
    if not np.all(np.isfinite(V)):
        raise ValueError("covariance matrix has non-finite entries")
    scale = np.abs(V).max()
    asym = np.abs(V - V.T).max()
    if asym > SYM_RTOL * scale:
        raise AsymmetricMatrix(
            f"covariance matrix is not symmetric (max |V - V^T| = {asym:.3g})"
        )
    return 0.5 * (V + V.T)


def _checked_eigh(V: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    w, U = np.linalg.eigh(V)
    floor = INV_RTOL * np.abs(V).max()
    if w[0] <= floor:
        raise SingularCovariance(
            f"covariance matrix is not invertible (min eigenvalue {w[0]:.3g})"
        )
    return w, U


def symmetric_sqrt(V) -> np.ndarray:
    """Principal square root of a symmetric positive definite matrix.

    Raises:
        SingularCovariance: if the smallest eigenvalue is not above
            ``1e-12 * max|V|``.
    """
    w, U = _checked_eigh(as_covariance(V))
    S = (U * np.sqrt(w)) @ U.T
    return 0.5 * (S + S.T)


def inverse_sqrt(V) -> np.ndarray:
    """Inverse of :func:`symmetric_sqrt`, computed from the same eigenbasis."""
    w, U = _checked_eigh(as_covariance(V))
    S = (U / np.sqrt(w)) @ U.T
    return 0.5 * (S + S.T)


@dataclass(frozen=True, eq=False)
class SymplecticSpectrum:
    """Eigen-decomposition of ``V^{1/2} J V^{1/2}``.

    ``eigenvalues[l]`` is ``i*gammas[l]`` for ``l < N`` and
    ``-i*gammas[l-N]`` otherwise; ``eigenvectors[:, l]`` is the matching
    orthonormal eigenvector, and the second half are the complex conjugates
    of the first half.
    """

    gammas: np.ndarray
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    min_gap: float
    degenerate: bool

    @property
    def n_modes(self) -> int:
        return len(self.gammas)

    def require_nondegenerate(self) -> None:
        if self.degenerate:
            raise DegenerateSpectrum(
                f"spectrum of V^(1/2) J V^(1/2) is degenerate (min gap "
                f"{self.min_gap:.3g}, symplectic eigenvalues {self.gammas}); "
                "perturb V within the stabilizable set to lift the degeneracy"
            )


def symplectic_spectrum(V) -> SymplecticSpectrum:
    V = as_covariance(V)
    n = n_modes_of(V)
    J = symplectic_form(n)
    S = symmetric_sqrt(V)
    skew = S @ J @ S
    skew = 0.5 * (skew - skew.T)
    # -i * skew is Hermitian with eigenvalues +-gamma_j
    h, U = np.linalg.eigh(-1j * skew)
    order = np.argsort(h)[::-1][:n]
    gammas = h[order]
    upper = U[:, order]
    vectors = np.hstack([upper, upper.conj()])
    z = np.concatenate([1j * gammas, -1j * gammas])

    gaps = np.abs(z[:, None] - z[None, :])
    gaps[np.diag_indices_from(gaps)] = np.inf
    min_gap = float(gaps.min())
    degenerate = min_gap < DEGENERACY_RTOL * gammas.max()
    return SymplecticSpectrum(
        gammas=gammas,
        eigenvalues=z,
        eigenvectors=vectors,
        min_gap=min_gap,
        degenerate=bool(degenerate),
    )


class Physicality(NamedTuple):
    physical: bool
    margin: float


def physicality_check(V) -> Physicality:
    """Test the uncertainty relation ``V + iJ/2 >= 0``.

    The margin is the smallest eigenvalue of the Hermitian matrix
    ``V + iJ/2``; it is zero for pure states.
    """
    V = as_covariance(V)
    J = symplectic_form(n_modes_of(V))
    margin = float(np.linalg.eigvalsh(V + 0.5j * J)[0])
    return Physicality(margin >= -PSD_TOL, margin)


def purity(V) -> float:
    """``tr(rho^2) = 1 / sqrt(2^(2N) det V)`` of a physical Gaussian state."""
    V = as_covariance(V)
    check = physicality_check(V)
    if not check.physical:
        raise UnphysicalState(
            f"covariance violates the uncertainty relation (margin {check.margin:.3g})"
        )
    n = n_modes_of(V)
    return float(1.0 / np.sqrt(4.0**n * np.linalg.det(V)))
