"""Stabilizability of Gaussian states under linear Lindblad dissipation."""

__version__ = "0.1.0"

from .criteria import (
    CriteriaReport,
    criteria,
    detV12_from_local,
    entanglement_necessary,
    omega_single_mode,
    two_mode_condition,
)
from .dissipation import (
    DissipationSpec,
    GaussianState,
    QuadraticHamiltonian,
    diffusion_matrix,
    drift_matrix,
    re_im_cc,
)
from .dynamics import Stabilizability, evolve, steady_state, strict_stabilizability_check
from .errors import (
    CriteriaViolated,
    DegenerateSpectrum,
    DimensionMismatch,
    GaussStabError,
    NotHurwitz,
    SingularCovariance,
    StepTooLarge,
    UnphysicalState,
)
from .scenarios import (
    EprAnsatz,
    epr_condition_lhs,
    epr_covariance,
    hyperboloid_sample,
    min_vxx_at,
)
from .symplectic import (
    physicality_check,
    purity,
    symmetric_sqrt,
    symplectic_form,
    symplectic_spectrum,
)
from .synthesis import consistency_diagonal, synthesize, verify_stationarity
