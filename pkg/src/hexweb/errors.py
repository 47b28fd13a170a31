"""Exception hierarchy shared by every hexweb module."""


class GeometryError(ValueError):
    """Base class for all geometric failures raised by hexweb."""


class CoincidentCurves(GeometryError):
    pass


class CoincidentCircles(CoincidentCurves):
    pass


class ZeroDirection(GeometryError):
    pass


class IdenticallyZero(GeometryError):
    pass


class DegenerateConfiguration(GeometryError):
    pass


class NoRealSolution(GeometryError):
    pass


class NoRealTangent(GeometryError):
    pass


class AmbiguousOrder(GeometryError):
    pass


class NotCentralConic(GeometryError):
    pass


class AngleOutOfRange(GeometryError):
    pass


class DegenerateRoots(GeometryError):
    pass


class OutsideDomain(GeometryError):
    pass


class DegenerateFoot(GeometryError):
    pass


class WrongEccentricity(GeometryError):
    pass


class AtVertex(GeometryError):
    pass


class AtLimitingPoint(GeometryError):
    pass


class BranchJump(GeometryError):
    pass


class MissesSphere(GeometryError):
    pass


class ProjectsToInfinity(GeometryError):
    pass


class InvalidConfig(GeometryError):
    pass


class MisalignedChart(GeometryError):
    pass


class InsufficientValidTraces(RuntimeError):
    def __init__(self, succeeded: int, attempted: int):
        super().__init__(f"only {succeeded} of {attempted} traces succeeded")
        self.succeeded = succeeded
        self.attempted = attempted


class TraceError(GeometryError):
    """A closure trace could not be completed at step ``k`` (1-based vertex index)."""

    def __init__(self, k: int, reason: str = ""):
        super().__init__(f"step A{k}: {reason}" if reason else f"step A{k}")
        self.k = k
        self.reason = reason


class StepFailed(TraceError):
    pass


class BranchAmbiguous(TraceError):
    pass
