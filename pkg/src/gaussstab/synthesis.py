"""Construction of a stabilizing quadratic Hamiltonian.

Work in the eigenbasis ``|z_l>`` of ``V^{1/2} J V^{1/2}``. With
``|zt_l> = J^T V^{-1/2} |z_l>`` the dissipator enters through

    D_{l'l} = <zt_l'| (z_l + z_l') Im C^dagger C + Re C^dagger C |zt_l>,

and stationarity of ``V`` is equivalent to

    (z_l - z_l') <zt_l'| G |zt_l> + D_{l'l} = 0   for all l, l'.

Off-diagonal equations fix ``G``; the diagonal ones demand ``D_ll = 0``,
which the trace criteria guarantee when the spectrum is non-degenerate.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .criteria import criteria
from .dissipation import DissipationSpec, QuadraticHamiltonian, re_im_cc
from .errors import CriteriaViolated, DimensionMismatch, SynthesisError
from .symplectic import (
    SymplecticSpectrum,
    as_covariance,
    inverse_sqrt,
    n_modes_of,
    symmetric_sqrt,
    symplectic_form,
    symplectic_spectrum,
)

SYNTH_TOL = 1e-8


@dataclass(frozen=True, eq=False)
class SynthesisResult:
    hamiltonian: QuadraticHamiltonian
    dissipator_elements: np.ndarray
    diagonal_residual: float
    stationarity_residual: float
    spectrum: SymplecticSpectrum

    @property
    def G(self) -> np.ndarray:
        return self.hamiltonian.G


def _check_modes(V: np.ndarray, spec: DissipationSpec) -> int:
    n = n_modes_of(V)
    if n != spec.n_modes:
        raise DimensionMismatch(f"covariance describes {n} modes, dissipator {spec.n_modes}")
    return n


def _tilde_vectors(V: np.ndarray, spectrum: SymplecticSpectrum) -> np.ndarray:
    J = symplectic_form(spectrum.n_modes)
    return J.T @ inverse_sqrt(V) @ spectrum.eigenvectors


def dissipator_elements(V, spec: DissipationSpec, spectrum: SymplecticSpectrum | None = None) -> np.ndarray:
    """Matrix ``D[l', l]`` of dissipator elements in the ``|z_l>`` basis."""
    V = as_covariance(V)
    _check_modes(V, spec)
    if spectrum is None:
        spectrum = symplectic_spectrum(V)
    re, im = re_im_cc(spec)
    zt = _tilde_vectors(V, spectrum)
    z = spectrum.eigenvalues
    im_el = zt.conj().T @ im @ zt
    re_el = zt.conj().T @ re @ zt
    return (z[None, :] + z[:, None]) * im_el + re_el


def _tolerance_scale(spec: DissipationSpec) -> float:
    re, _ = re_im_cc(spec)
    return max(float(np.abs(re).max(initial=0.0)), np.finfo(float).tiny)


def consistency_diagonal(V, spec: DissipationSpec) -> float:
    """``max_l |D_ll|``; vanishes exactly on the stabilizable set."""
    spectrum = symplectic_spectrum(V)
    spectrum.require_nondegenerate()
    return float(np.abs(np.diag(dissipator_elements(V, spec, spectrum))).max())


def synthesize(V, spec: DissipationSpec) -> SynthesisResult:
    """Build the stabilizing ``G`` for a covariance that passes the criteria.

    Raises:
        SingularCovariance: ``V`` is not invertible.
        DegenerateSpectrum: two eigenvalues of ``V^{1/2} J V^{1/2}`` coincide.
        CriteriaViolated: ``V`` is not stabilizable under ``spec``.
        SynthesisError: the assembled ``G`` is not real symmetric to tolerance.
    """
    V = as_covariance(V)
    n = _check_modes(V, spec)
    spectrum = symplectic_spectrum(V)
    spectrum.require_nondegenerate()

    report = criteria(V, spec)
    D = dissipator_elements(V, spec, spectrum)
    diag_res = float(np.abs(np.diag(D)).max())
    tol = SYNTH_TOL * _tolerance_scale(spec)
    if not report.passed:
        raise CriteriaViolated(
            f"stabilizability criteria fail at n={report.first_failure} "
            f"(normalized T = {report.normalized[report.first_failure - 1]:.3g})"
        )
    if diag_res > tol:
        raise CriteriaViolated(f"diagonal dissipator elements do not vanish (max |D_ll| = {diag_res:.3g})")

    z = spectrum.eigenvalues
    diff = z[:, None] - z[None, :]
    np.fill_diagonal(diff, 1.0)
    K = D / diff
    np.fill_diagonal(K, 0.0)
    vecs = spectrum.eigenvectors
    kernel = vecs @ K @ vecs.conj().T

    J = symplectic_form(n)
    S = symmetric_sqrt(V)
    G = J.T @ S @ kernel @ S @ J

    g_scale = max(float(np.abs(G).max()), 1.0)
    imag = float(np.abs(G.imag).max())
    asym = float(np.abs(G - G.T).max())
    if imag > tol * g_scale or asym > tol * g_scale:
        raise SynthesisError(
            f"synthesized G is not real symmetric (|Im G| = {imag:.3g}, |G - G^T| = {asym:.3g})"
        )
    G = G.real
    G = 0.5 * (G + G.T)
    H = QuadraticHamiltonian(G)

    # residual in the J V form: A J^T Vt + Vt^T J A^T + J Re J^T
    re, im = re_im_cc(spec)
    A = J @ (G + im)
    Vt = J @ V
    res = A @ J.T @ Vt + Vt.T @ J @ A.T + J @ re @ J.T
    return SynthesisResult(
        hamiltonian=H,
        dissipator_elements=D,
        diagonal_residual=diag_res,
        stationarity_residual=float(np.abs(res).max()),
        spectrum=spectrum,
    )


def major_residual(V, spec: DissipationSpec, G) -> float:
    """``max_{l != l'} |(z_l - z_l') <zt_l'|G|zt_l> + D_l'l|`` for a candidate ``G``."""
    V = as_covariance(V)
    spectrum = symplectic_spectrum(V)
    zt = _tilde_vectors(V, spectrum)
    D = dissipator_elements(V, spec, spectrum)
    z = spectrum.eigenvalues
    lhs = (z[None, :] - z[:, None]) * (zt.conj().T @ np.asarray(G, dtype=float) @ zt) + D
    np.fill_diagonal(lhs, 0.0)
    return float(np.abs(lhs).max())


def verify_stationarity(V, G, spec: DissipationSpec) -> float:
    """``max |A V + V A^T + J Re(C^dagger C) J^T|`` with ``A = J (G + Im C^dagger C)``.

    Deliberately shares no helpers with :func:`synthesize` so it can serve
    as an independent check of its output.
    """
    V = np.asarray(V, dtype=float)
    G = G.G if isinstance(G, QuadraticHamiltonian) else np.asarray(G, dtype=float)
    dim = V.shape[0]
    if V.shape != (dim, dim) or G.shape != (dim, dim) or spec.coeffs.shape[1] != dim:
        raise DimensionMismatch(
            f"shape mismatch: V {V.shape}, G {G.shape}, C {spec.coeffs.shape}"
        )
    n = dim // 2
    J = np.zeros((dim, dim))
    J[:n, n:] = np.eye(n)
    J[n:, :n] = -np.eye(n)
    C = spec.coeffs
    cc = C.conj().T @ C
    A = J @ (G + cc.imag)
    return float(np.abs(A @ V + V @ A.T + J @ cc.real @ J.T).max())
