"""Exception hierarchy.

Every domain failure derives from :class:`TopologyError` so the CLI can map
it to exit code 1; configuration problems raise :class:`ConfigError` (exit 2).
"""


class TopologyError(Exception):
    """Base class for domain errors (a precondition of some operation failed)."""


class ConfigError(ValueError):
    """Invalid experiment configuration."""


class NearZeroEigenvalue(TopologyError):
    pass


class SingularMatrix(TopologyError):
    pass


class EigensolverFailure(TopologyError):
    pass


class ResolventSingular(TopologyError):
    def __init__(self, k, min_singular_value):
        self.k = k
        self.min_singular_value = min_singular_value
        super().__init__(
            f"omega_e - H(k) is singular at k={k} (sigma_min={min_singular_value:.3e})"
        )


class UnsupportedLayout(TopologyError):
    pass


class CertificateFailed(TopologyError):
    def __init__(self, k, lam, rel_error):
        self.k = k
        self.lam = lam
        self.rel_error = rel_error
        super().__init__(
            f"determinant identity violated at k={k}, lambda={lam}: rel. error {rel_error:.3e}"
        )


class NotChiral(TopologyError):
    pass


class GapClosed(TopologyError):
    pass


class PointGapClosed(GapClosed):
    pass


class NonHermitianInput(TopologyError):
    pass


class UnitarizationFailed(TopologyError):
    pass


class NonQuantized(TopologyError):
    pass


class AmbiguousClass(TopologyError):
    pass


class InfiniteRange(TopologyError):
    pass


class LayoutMismatch(TopologyError):
    pass


class EmptySector(TopologyError):
    pass
