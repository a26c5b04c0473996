"""Exception types shared across the package."""


class PhysicsError(ValueError):
    """A physical precondition or invariant was violated."""


class DegeneracyError(PhysicsError):
    """Energy levels are not strictly increasing."""


class DimensionError(PhysicsError):
    """Mismatched, empty, or insufficient dimensions."""


class NormalizationError(PhysicsError):
    """Coefficient vector is not unit norm (or cannot be normalized)."""


class MembershipError(PhysicsError):
    """State is not in the zero-coefficient-sum subspace."""


class ZeroProjectionError(PhysicsError):
    """Projection onto the zero-sum subspace annihilated the state."""


class ZeroSignalError(PhysicsError):
    """Operation undefined for the identically-zero signal."""


class ApproximationError(PhysicsError):
    """Requested tolerance unreachable under the denominator cap.

    Carries the best guaranteed sup-norm bound that was achievable.
    """

    def __init__(self, message: str, achieved_bound: float | None = None):
        super().__init__(message)
        self.achieved_bound = achieved_bound


class SchemaError(ValueError):
    """Input document does not match the expected JSON schema."""
