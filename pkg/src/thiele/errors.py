"""Exception hierarchy shared by every module of the package."""


class ThieleError(Exception):
    """Base class for all errors raised by this package."""


class IndexOutOfRange(ThieleError, ValueError):
    pass


class InvalidCommitteeSize(ThieleError, ValueError):
    pass


class LengthMismatch(ThieleError, ValueError):
    pass


class WeightsNotNonIncreasing(ThieleError, ValueError):
    pass


class WeightsNegative(ThieleError, ValueError):
    pass


class WeightsNotStrictlyDecreasingPositive(ThieleError, ValueError):
    pass


class RepresentationOverflow(ThieleError, ValueError):
    pass


class NotShifted(ThieleError, ValueError):
    """A feasible recipient-donor pair is still present in the x-vector."""


class DomainViolation(ThieleError):
    """The input matrix provably lies outside the VCI/LC domain.

    ``certificate`` names what was observed: ``"fractional-residual-vertex"``,
    ``"fractional-extreme-point"`` or ``"residual-not-ci"``.
    """

    def __init__(self, message, certificate):
        super().__init__(message)
        self.certificate = certificate


class NotLcWitness(ThieleError, ValueError):
    pass


class EmptyRowOrColumn(ThieleError, ValueError):
    pass


class DisconnectedSubtree(ThieleError, ValueError):
    pass


class TooLarge(ThieleError, ValueError):
    pass


class NoCover(ThieleError):
    pass
