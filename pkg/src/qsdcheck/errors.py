"""Exception types shared across the package."""


class QsdError(Exception):
    """Base class for all errors raised by this package."""


class InvalidParametersError(QsdError):
    """Inputs violate a structural requirement (e.g. k >= v or x == y)."""


class NonDesignError(QsdError):
    """A derived object cannot be the parameter set of any design."""


class NotQuasisymmetricError(QsdError):
    """Block intersections do not take exactly two distinct sizes."""


class DegenerateGraphError(QsdError):
    """The block graph degenerates (b <= v, or smallest eigenvalue -1)."""


class SamplingError(QsdError):
    """Rejection sampling failed to hit the requested domain."""


class OracleMismatchError(QsdError):
    """A brute-force count disagrees with the closed-form prediction."""

    def __init__(self, quantity: str, detail: str = ""):
        self.quantity = quantity
        msg = f"oracle mismatch in {quantity}"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class CandidateCapError(QsdError):
    """A scan would enumerate more candidates than the configured cap."""


class ConsistencyError(QsdError):
    """An internal cross-check between two exact computations failed."""
