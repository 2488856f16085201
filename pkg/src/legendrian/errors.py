"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class LegendrianError(Exception):
    """Base class for every error raised by this package."""


class FrontError(LegendrianError, ValueError):
    pass


class UnknownToken(FrontError):
    def __init__(self, token: str, index: int):
        super().__init__(f"unknown token {token!r} at event {index}")
        self.token = token
        self.index = index


class InvalidPosition(FrontError):
    def __init__(self, index: int, kind: str, pos: int, strands: int):
        super().__init__(
            f"invalid position at event {index}: {kind}{pos} with {strands} strands"
        )
        self.index = index
        self.kind = kind
        self.pos = pos
        self.strands = strands


class NonClosedDiagram(FrontError):
    def __init__(self, strands: int):
        super().__init__(f"front ends with {strands} strands instead of 0")
        self.strands = strands


class MultiComponent(FrontError):
    pass


class RulingError(LegendrianError):
    """A switch set fails the left-to-right sweep."""

    def __init__(self, message: str, event: int):
        super().__init__(f"{message} (event {event})")
        self.event = event


class RightCuspMismatch(RulingError):
    pass


class SwitchOfPartneredStrands(RulingError):
    pass


class PartneredCrossing(RulingError):
    """Two strands of one ruling pair meet at a crossing without switching."""


class NotAComplex(LegendrianError):
    pass


class NotTriangular(LegendrianError):
    pass


class NotExact(LegendrianError):
    pass


class NotAnAugmentation(LegendrianError):
    pass


class NotAcyclic(LegendrianError):
    pass


class NormalityViolation(LegendrianError):
    pass


class NotNormal(LegendrianError):
    pass


class NotGraded(LegendrianError):
    pass


class MovieError(LegendrianError):
    """A Morse movie violates a slice invariant or an event rule."""

    def __init__(self, message: str, step: int | None = None):
        where = "" if step is None else f" (step {step})"
        super().__init__(message + where)
        self.step = step


class AugmentationCheckFailed(LegendrianError):
    pass
