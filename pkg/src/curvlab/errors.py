"""Exception hierarchy shared by every curvlab module."""

from __future__ import annotations


class CurvlabError(Exception):
    """Base class for all errors raised by curvlab."""


class MapError(CurvlabError):
    """A rotation system does not describe a simple sphere map."""


class NonSymmetricAdjacency(MapError):
    pass


class LoopEdge(MapError):
    pass


class MultiEdge(MapError):
    pass


class NotConnected(MapError):
    pass


class NotSphere(MapError):
    pass


class UnknownId(CurvlabError, KeyError):
    pass


class NotATriangle(CurvlabError):
    pass


class NotIncident(CurvlabError):
    pass


class EntryBelowThree(CurvlabError, ValueError):
    pass


class InadmissibleVertex(CurvlabError):
    pass


class UnclassifiableVertex(CurvlabError):
    pass


class NotTSVertex(CurvlabError):
    pass


class RuleConflict(CurvlabError):
    pass


class WrongFaceSize(CurvlabError):
    pass


class ZeroMass(CurvlabError):
    pass


class NTooSmall(CurvlabError, ValueError):
    pass


class SizeOutOfRange(CurvlabError, ValueError):
    pass


class ParseError(CurvlabError):
    """Malformed input text; carries the 1-based line and column."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)


class WriteError(CurvlabError, OSError):
    pass


class BrokenChain(CurvlabError):
    pass


class OpenChain(CurvlabError):
    pass


class AsymmetricBoundary(CurvlabError):
    pass


class UnknownWeight(CurvlabError):
    pass


class UnknownFaceVector(CurvlabError):
    pass


class Infeasible(CurvlabError):
    """The constraint system has no solution; ``violated`` lists a conflicting subset."""

    def __init__(self, message: str, violated: list[str] | None = None):
        self.violated = violated or []
        super().__init__(message)


class Unbounded(CurvlabError):
    pass
