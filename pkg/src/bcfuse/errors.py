"""Exception hierarchy shared across the package."""

from __future__ import annotations


class BcfuseError(Exception):
    """Base class for all errors raised by bcfuse."""


class LabelError(BcfuseError, ValueError):
    """Raised for labels that cannot be normalized (empty / whitespace-only)."""


class ParseError(BcfuseError):
    """Syntax or format error in a .bcm, .onto or .syn input.

    Carries the 1-based line and column of the offending token plus a short
    description of what was expected there.
    """

    def __init__(self, line: int, column: int, expected: str, found: str | None = None):
        self.line = line
        self.column = column
        self.expected = expected
        self.found = found
        detail = f"expected {expected}"
        if found:
            detail += f", found {found!r}"
        super().__init__(f"line {line}, column {column}: {detail}")


class ModelInvalid(BcfuseError):
    """A model failed validation where a valid one was required."""

    def __init__(self, findings, context: str = "model"):
        self.findings = list(findings)
        summary = "; ".join(f"{f.code} at {f.path}" for f in self.findings)
        super().__init__(f"{context} failed validation: {summary}")


class OntologyInvalid(BcfuseError):
    """An ontology violates its structural invariants (dangling edge, is-a cycle...)."""


class UnknownConcept(BcfuseError, KeyError):
    """A concept id was looked up in an ontology that does not declare it."""

    def __init__(self, concept_id: str, ontology: str):
        self.concept_id = concept_id
        self.ontology = ontology
        super().__init__(f"unknown concept {concept_id!r} in ontology {ontology!r}")


class StateError(BcfuseError):
    """An operation was applied in an illegal state (e.g. re-deciding a conflict)."""


class SizeLimitError(BcfuseError):
    """Input exceeds a hard size limit (brute-force search is factorial)."""


class IntegrationError(BcfuseError):
    """Integration cannot proceed or produced an invalid result.

    ``findings`` holds post-merge validation findings when that is the cause.
    """

    def __init__(self, message: str, findings=None, pending=None):
        self.findings = list(findings) if findings else []
        self.pending = list(pending) if pending else []
        super().__init__(message)
