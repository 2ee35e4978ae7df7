"""Exception hierarchy shared across the engine.

Every error carries a stable machine code (used verbatim by the HTTP API)
and a details dict safe for canonical serialization.
"""
from __future__ import annotations

from typing import Any


class PsmError(Exception):
    """Base class for all engine errors."""

    code = "ERROR"

    def __init__(self, message: str, **details: Any):
        super().__init__(message)
        self.message = message
        self.details = details


# --- model errors -----------------------------------------------------------

class ModelError(PsmError):
    code = "MODEL"


class UnknownNode(ModelError):
    code = "UNKNOWN_NODE"


class UnknownSolution(ModelError):
    code = "UNKNOWN_SOLUTION"


class UnknownResource(ModelError):
    code = "UNKNOWN_RESOURCE"


class UnknownStakeholder(ModelError):
    code = "UNKNOWN_STAKEHOLDER"


class NotALeaf(ModelError):
    code = "NOT_A_LEAF"


class HasChildren(ModelError):
    code = "HAS_CHILDREN"


class HasSolutions(ModelError):
    code = "HAS_SOLUTIONS"


class WeightSumViolation(ModelError):
    code = "WEIGHT_SUM_VIOLATION"


class ShareOverflow(ModelError):
    code = "SHARE_OVERFLOW"


class DuplicateAssignment(ModelError):
    code = "DUPLICATE_ASSIGNMENT"


class DuplicateId(ModelError):
    code = "DUPLICATE_ID"


class InvalidValue(ModelError):
    code = "INVALID_VALUE"


class ValidationError(PsmError):
    """A model failed validate(); carries the full violation list."""

    code = "VALIDATION"

    def __init__(self, message: str, violations=(), **details: Any):
        super().__init__(message, **details)
        self.violations = list(violations)


# --- session errors ---------------------------------------------------------

class SessionError(PsmError):
    code = "SESSION"


class PhaseCoherenceError(SessionError):
    """An event kind was submitted outside its phase (gate denial)."""

    code = "PHASE_COHERENCE"

    def __init__(self, message: str, phase: str, kind: str, **details: Any):
        super().__init__(message, phase=phase, kind=kind, **details)
        self.phase = phase
        self.kind = kind


class ChainError(SessionError):
    code = "CHAIN_ERROR"


class IncompletePhase(SessionError):
    """Phase advance blocked; details carry the unmet items."""

    code = "INCOMPLETE_PHASE"

    def __init__(self, message: str, unmet=(), **details: Any):
        super().__init__(message, unmet=list(unmet), **details)
        self.unmet = list(unmet)


class AgreementError(SessionError):
    code = "AGREEMENT"


class NotInImplementation(SessionError):
    code = "NOT_IN_IMPLEMENTATION"


class MinorCannotTargetGoal(SessionError):
    code = "MINOR_CANNOT_TARGET_GOAL"


class InvalidRevisionTarget(SessionError):
    code = "INVALID_REVISION_TARGET"


# --- applicability errors ---------------------------------------------------

class NonPositiveMS(PsmError):
    code = "NON_POSITIVE_MS"


class DanglingDependency(PsmError):
    code = "DANGLING_DEPENDENCY"


# --- persistence errors -----------------------------------------------------

class PersistenceError(PsmError):
    code = "PERSISTENCE"


class ParseError(PersistenceError):
    """Document is not well-formed; carries line/column when known."""

    code = "PARSE"

    def __init__(self, message: str, line: int | None = None,
                 column: int | None = None, **details: Any):
        super().__init__(message, line=line, column=column, **details)
        self.line = line
        self.column = column


class SchemaError(PersistenceError):
    """Document parsed but does not match the schema; carries the field path."""

    code = "SCHEMA"

    def __init__(self, message: str, path: str = "", **details: Any):
        super().__init__(message, path=path, **details)
        self.path = path


class IoError(PersistenceError):
    code = "IO"
