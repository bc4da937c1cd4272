"""Exception types raised by the toolkit."""


class GaussStabError(Exception):
    """Base class for all toolkit errors."""


class DimensionMismatch(GaussStabError, ValueError):
    pass


class AsymmetricMatrix(GaussStabError, ValueError):
    pass


class SingularCovariance(GaussStabError):
    pass


class UnphysicalState(GaussStabError):
    pass


class DegenerateSpectrum(GaussStabError):
    pass


class CriteriaViolated(GaussStabError):
    pass


class SynthesisError(GaussStabError):
    """The synthesized Hamiltonian failed a realness or symmetry check."""


class NotHurwitz(GaussStabError):
    def __init__(self, eigenvalue: complex):
        self.eigenvalue = eigenvalue
        super().__init__(
            f"drift matrix is not Hurwitz: eigenvalue {eigenvalue:.6g} "
            "has non-negative real part"
        )


class StepTooLarge(GaussStabError, ValueError):
    pass


class ExcludedPoint(GaussStabError, ValueError):
    pass
