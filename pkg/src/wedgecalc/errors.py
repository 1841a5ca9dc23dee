"""Closed set of domain errors shared by every module and the CLI.

Each error carries a machine-readable ``payload`` so the command line can
render it as a JSON object; the class name is the stable error code.
"""

from __future__ import annotations

from typing import Any


class WedgeCalcError(ValueError):
    """Base class for all domain errors."""

    def __init__(self, message: str = "", **payload: Any) -> None:
        super().__init__(message or type(self).__name__)
        self.payload = payload

    @property
    def code(self) -> str:
        return type(self).__name__

    def to_dict(self) -> dict[str, Any]:
        return {"error": self.code, "message": str(self), "payload": _jsonable(self.payload)}


def _jsonable(value: Any) -> Any:
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        items = sorted(value) if isinstance(value, (set, frozenset)) else value
        return [_jsonable(v) for v in items]
    if isinstance(value, (int, float, str, bool)) or value is None:
        return value
    if hasattr(value, "to_json"):
        return value.to_json()
    return str(value)


# complex construction
class DuplicateVertexInFace(WedgeCalcError): ...
class VertexOutOfRange(WedgeCalcError): ...
class FaceNotInComplex(WedgeCalcError): ...
class VertexSetsOverlap(WedgeCalcError): ...
class KOutOfRange(WedgeCalcError): ...
class MissingMultiplicity(WedgeCalcError): ...
class NonpositiveMultiplicity(WedgeCalcError): ...
class OverlapNotExactlyTau(WedgeCalcError): ...
class MissingSingleton(WedgeCalcError): ...
class VoidComplex(WedgeCalcError): ...


# shiftedness
class NotShifted(WedgeCalcError): ...
class BoundaryNotInLink(WedgeCalcError): ...
class TooManyVertices(WedgeCalcError): ...


# symbolic algebra
class EmptyIndexSet(WedgeCalcError): ...
class IndexSetsOverlap(WedgeCalcError): ...
class NotASuspension(WedgeCalcError): ...
class OverlappingIndices(WedgeCalcError): ...
class EmptyFactor(WedgeCalcError): ...
class NotASubMultiset(WedgeCalcError): ...
class MissingSubstitution(WedgeCalcError): ...
class OverlappingReplacementLabels(WedgeCalcError): ...


# decomposer / specializer
class OverlapNotTau(WedgeCalcError): ...
class MissingDimension(WedgeCalcError): ...
class SuspendedOnlyNotAcknowledged(WedgeCalcError): ...
class TorsionInShiftedComplex(WedgeCalcError): ...


# front end
class ParseError(WedgeCalcError): ...
class UnknownSubcommand(WedgeCalcError): ...


class TorsionPresent(UserWarning):
    """Some full subcomplex has torsion; only the suspended statement holds."""
