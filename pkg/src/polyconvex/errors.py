"""Exception types shared across the toolkit."""


class PolyconvexError(Exception):
    """Base class for all toolkit errors."""


class DimensionMismatch(PolyconvexError):
    pass


class NotLagrangian(PolyconvexError):
    pass


class DegenerateFrame(PolyconvexError):
    pass


class DegenerateBox(PolyconvexError):
    pass


class ThetaOutOfRange(PolyconvexError):
    pass


class NotInPencil(PolyconvexError):
    """Centre does not lie in any e^{i*theta} * R^n."""


class HypothesisViolated(PolyconvexError):
    pass


class DisjointnessViolated(PolyconvexError):
    pass


class Degenerate(PolyconvexError):
    pass


class NotOnVariety(PolyconvexError):
    pass


class IllConditioned(PolyconvexError):
    def __init__(self, message, degree=None):
        super().__init__(message)
        self.degree = degree


class ConfigInvalid(PolyconvexError):
    def __init__(self, message, pointer=""):
        super().__init__(message)
        self.pointer = pointer


class IoFailure(PolyconvexError):
    pass
