"""Linear Lindblad dissipators and quadratic Hamiltonians.

A dissipator is given by M complex vectors ``c_k`` defining Lindblad
operators ``L_k = c_k^T xi``. Everything the moment equations need is
derived from ``C^dagger C``, where ``C`` has the ``c_k`` as rows.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

import numpy as np

from .errors import AsymmetricMatrix, DimensionMismatch
from .symplectic import SYM_RTOL, as_covariance, n_modes_of, symplectic_form


@dataclass(frozen=True, eq=False)
class DissipationSpec:
    """Dissipation matrix ``C`` of shape ``(M, 2N)``; ``M`` may be zero."""

    n_modes: int
    coeffs: np.ndarray = field(repr=False)

    def __post_init__(self):
        C = np.array(self.coeffs, dtype=complex)
        if C.size == 0:
            C = np.zeros((0, 2 * self.n_modes), dtype=complex)
        if self.n_modes < 1:
            raise ValueError(f"n_modes must be positive, got {self.n_modes}")
        if C.ndim != 2 or C.shape[1] != 2 * self.n_modes:
            raise DimensionMismatch(
                f"Lindblad vectors must have length {2 * self.n_modes}, "
                f"got array of shape {C.shape}"
            )
        C.setflags(write=False)
        object.__setattr__(self, "coeffs", C)

    @classmethod
    def from_vectors(cls, vectors: Sequence[Sequence[complex]], n_modes: int):
        vectors = list(vectors)
        for k, c in enumerate(vectors):
            if len(c) != 2 * n_modes:
                raise DimensionMismatch(
                    f"Lindblad vector {k} has length {len(c)}, expected {2 * n_modes}"
                )
        return cls(n_modes, np.array(vectors, dtype=complex).reshape(-1, 2 * n_modes))

    @classmethod
    def damped_modes(
        cls,
        gammas: Sequence[float],
        x0: Union[float, Sequence[float]] = 1.0,
        n_modes: Optional[int] = None,
    ):
        """Local damping ``L_i = sqrt(gamma_i) a_i`` on the first ``len(gammas)`` modes.

        ``x0`` is the length scale in ``a = (x/x0 + i p x0)/sqrt(2)``, either
        shared or one per mode.
        """
        n = len(gammas) if n_modes is None else n_modes
        x0s = np.broadcast_to(np.asarray(x0, dtype=float), (n,))
        rows = [damped_mode_vector(n, i, g, x0s[i]) for i, g in enumerate(gammas)]
        return cls(n, np.array(rows, dtype=complex).reshape(-1, 2 * n))

    @property
    def n_operators(self) -> int:
        return self.coeffs.shape[0]

    def scaled(self, factor: float) -> "DissipationSpec":
        """Spec with every rate multiplied by ``factor`` (vectors by its root)."""
        return DissipationSpec(self.n_modes, np.sqrt(factor) * self.coeffs)


def damped_mode_vector(n_modes: int, index: int, gamma: float, x0: float = 1.0) -> np.ndarray:
    """Coefficients of ``sqrt(gamma) a_index`` in quadrature form."""
    if not 0 <= index < n_modes:
        raise DimensionMismatch(f"mode index {index} out of range for {n_modes} modes")
    if gamma < 0 or x0 <= 0:
        raise ValueError("gamma must be non-negative and x0 positive")
    c = np.zeros(2 * n_modes, dtype=complex)
    amp = np.sqrt(gamma / 2.0)
    c[index] = amp / x0
    c[n_modes + index] = 1j * amp * x0
    return c


@dataclass(frozen=True, eq=False)
class QuadraticHamiltonian:
    """``H = 1/2 (xi - xi0)^T G (xi - xi0)`` with ``G`` real symmetric."""

    G: np.ndarray
    displacement: Optional[np.ndarray] = None

    def __post_init__(self):
        G = np.array(self.G, dtype=float)
        n_modes_of(G)
        asym = np.abs(G - G.T).max()
        if asym > SYM_RTOL * max(np.abs(G).max(), 1.0):
            raise AsymmetricMatrix(f"G must be symmetric (max |G - G^T| = {asym:.3g})")
        G = 0.5 * (G + G.T)
        G.setflags(write=False)
        object.__setattr__(self, "G", G)
        if self.displacement is not None:
            d = np.array(self.displacement, dtype=float)
            if d.shape != (G.shape[0],):
                raise DimensionMismatch(
                    f"displacement must have length {G.shape[0]}, got shape {d.shape}"
                )
            object.__setattr__(self, "displacement", d)

    @classmethod
    def zero(cls, n_modes: int) -> "QuadraticHamiltonian":
        return cls(np.zeros((2 * n_modes, 2 * n_modes)))

    @property
    def n_modes(self) -> int:
        return self.G.shape[0] // 2


@dataclass(frozen=True, eq=False)
class GaussianState:
    """Mean vector and covariance of a Gaussian state.

    Only symmetry is enforced here; physicality is checked by the
    operations that need it so that unphysical inputs can still be reported on.
    """

    mean: np.ndarray
    cov: np.ndarray

    def __post_init__(self):
        cov = as_covariance(self.cov)
        mean = np.array(self.mean, dtype=float)
        if mean.shape != (cov.shape[0],):
            raise DimensionMismatch(
                f"mean must have length {cov.shape[0]}, got shape {mean.shape}"
            )
        object.__setattr__(self, "cov", cov)
        object.__setattr__(self, "mean", mean)

    @classmethod
    def centered(cls, cov) -> "GaussianState":
        cov = np.asarray(cov, dtype=float)
        return cls(np.zeros(cov.shape[0]), cov)

    @property
    def n_modes(self) -> int:
        return self.cov.shape[0] // 2


def re_im_cc(spec: DissipationSpec) -> tuple[np.ndarray, np.ndarray]:
    """Return ``(Re C^dagger C, Im C^dagger C)`` built entrywise from the ``c_k``."""
    C = spec.coeffs
    outer = np.einsum("jk,jl->kl", C.conj(), C)
    swapped = np.einsum("jk,jl->kl", C, C.conj())
    re = ((outer + swapped) / 2).real
    im = ((outer - swapped) / 2j).real
    return 0.5 * (re + re.T), 0.5 * (im - im.T)


def _check_dims(spec: DissipationSpec, H: QuadraticHamiltonian) -> None:
    if H.n_modes != spec.n_modes:
        raise DimensionMismatch(
            f"Hamiltonian acts on {H.n_modes} modes, dissipator on {spec.n_modes}"
        )


def drift_matrix(spec: DissipationSpec, H: QuadraticHamiltonian) -> np.ndarray:
    """``A = J (G + Im C^dagger C)``."""
    _check_dims(spec, H)
    _, im = re_im_cc(spec)
    return symplectic_form(spec.n_modes) @ (H.G + im)


def diffusion_matrix(spec: DissipationSpec) -> np.ndarray:
    """``D = J (Re C^dagger C) J^T``."""
    re, _ = re_im_cc(spec)
    J = symplectic_form(spec.n_modes)
    D = J @ re @ J.T
    return 0.5 * (D + D.T)


def drift_offset(spec: DissipationSpec, H: QuadraticHamiltonian) -> np.ndarray:
    """Constant term ``-J G xi0`` in ``d xi/dt`` produced by a displaced Hamiltonian."""
    _check_dims(spec, H)
    if H.displacement is None:
        return np.zeros(2 * spec.n_modes)
    return -symplectic_form(spec.n_modes) @ H.G @ H.displacement
