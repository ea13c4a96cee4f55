"""Exception taxonomy.

Three branches, mirroring the CLI exit codes: bad input data (exit 2),
numerical failure at runtime (exit 3), and randomized constructions that
exhaust their retry budget (exit 4).
"""


class StressKitError(Exception):
    """Base class for every error raised by this package."""


class InvalidInput(StressKitError):
    """Malformed or out-of-contract input data."""


class NotConnectedEnough(InvalidInput):
    """Graph fails the vertex-connectivity requirement of a construction."""


class NumericalError(StressKitError):
    """A numerical precondition or residual check failed at runtime."""


class SpanDeficient(NumericalError):
    """Configuration does not affinely span the ambient space."""


class NotEquilibrium(NumericalError):
    """Load has a nonzero net force or net torque."""


class Unresolvable(NumericalError):
    """No edge-force vector resolves the load within tolerance."""


class WrongRank(NumericalError):
    """Matrix rank differs from the rank the operation requires."""


class NotAStressMatrix(NumericalError):
    """Matrix fails the stress-matrix invariants (symmetry, zero row sums,
    zeros on non-edges, all-ones kernel vector)."""


class NotAStress(NumericalError):
    """Candidate stress does not annihilate the given framework."""


class NotCentered(NumericalError):
    """Representation vectors do not sum to zero within tolerance."""


class PinningFailed(NumericalError):
    """No vertex subset of the required size yields an invertible pinning
    block, so the kernel framework cannot be normalized."""


class OutsideDomain(NumericalError):
    """Input lies outside the open domain where a construction is defined
    (for example, a singular equilibrium system)."""


class ConstructionFailed(StressKitError):
    """A randomized construction exhausted its retry budget."""
