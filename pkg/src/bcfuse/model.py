"""Business-component domain types, label normalization and model validation.

A component model is a named bundle of structures; each structure holds
concepts (with typed attributes), relations between concepts, and service
signatures. Reusable components carry exactly one structure, generic ones
one or more alternative structures for the same business object.

All types are immutable value objects; collection fields are tuples so models
hash and compare structurally. ``validate`` reports invariant violations as
findings instead of raising, so parsers can hand back a complete picture.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from enum import Enum

from .errors import LabelError

_IDENT_RE = re.compile(r"^[A-Za-z][A-Za-z0-9_]*$")
# Merged components are named by joining their input names with '+'.
_COMPONENT_NAME_RE = re.compile(r"^[A-Za-z][A-Za-z0-9_]*(\+[A-Za-z][A-Za-z0-9_]*)*$")
# Must agree with the .bcm card grammar in ingest.
_CARD_RE = re.compile(r"^[A-Za-z0-9*]+\.\.[A-Za-z0-9*]+$")
_CAMEL_SPLIT_RE = re.compile(r"(?<=[a-z0-9])(?=[A-Z])|(?<=[A-Z])(?=[A-Z][a-z])")


class ComponentKind(str, Enum):
    ENTITY = "entity"
    PROCESS = "process"


class ReuseKind(str, Enum):
    REUSABLE = "reusable"
    GENERIC = "generic"


class RelationKind(str, Enum):
    ASSOC = "assoc"
    ISA = "isa"
    COMP = "comp"


def is_identifier(s: str) -> bool:
    return bool(_IDENT_RE.match(s))


def normalize_label(raw: str) -> str:
    """Normalize a label for comparison.

    Lowercases and splits camelCase / snake_case / space-separated tokens,
    re-joining them with single spaces. Idempotent by construction: the
    output contains no uppercase letters, underscores or repeated spaces,
    so a second pass finds nothing to split.

    Raises LabelError when no token survives (empty, whitespace-only or
    separator-only input); returning "" would break idempotence.
    """
    if not raw or not raw.strip():
        raise LabelError("label must be nonempty")
    tokens: list[str] = []
    for chunk in re.split(r"[\s_]+", raw.strip()):
        if chunk:
            tokens.extend(t for t in _CAMEL_SPLIT_RE.split(chunk) if t)
    if not tokens:
        raise LabelError(f"label {raw!r} has no usable tokens")
    return " ".join(t.lower() for t in tokens)


@dataclass(frozen=True, order=True)
class Attribute:
    name: str
    value_type: str


@dataclass(frozen=True)
class Concept:
    name: str
    attributes: tuple[Attribute, ...] = ()


@dataclass(frozen=True, order=True)
class Relation:
    source: str
    target: str
    kind: RelationKind
    label: str | None = None
    cardinality: str | None = None


@dataclass(frozen=True, order=True)
class Param:
    name: str
    value_type: str


@dataclass(frozen=True)
class ServiceSignature:
    name: str
    params: tuple[Param, ...] = ()
    return_type: str | None = None

    def sort_key(self):
        return (self.name, self.params, self.return_type or "")


@dataclass(frozen=True)
class Structure:
    id: str
    concepts: tuple[Concept, ...] = ()
    relations: tuple[Relation, ...] = ()
    services: tuple[ServiceSignature, ...] = ()


@dataclass(frozen=True)
class ComponentModel:
    name: str
    kind: ComponentKind
    reuse: ReuseKind
    structures: tuple[Structure, ...]
    # Where the model came from; metadata only, excluded from equality.
    provenance: str = field(default="<memory>", compare=False)

    def concept_names(self) -> list[str]:
        """All concept names across structures, in declaration order."""
        return [c.name for s in self.structures for c in s.concepts]


@dataclass(frozen=True)
class Finding:
    """One validation finding: a machine-readable code plus the element path."""

    code: str
    path: str
    message: str


def _check_ident(name: str, path: str, findings: list[Finding], what: str) -> None:
    if not is_identifier(name):
        findings.append(Finding("BAD_IDENT", path, f"{what} {name!r} is not a valid identifier"))


def validate(model: ComponentModel) -> list[Finding]:
    """Check every type invariant; returns [] exactly when the model is well formed.

    Codes: BAD_IDENT, BAD_CARD, STRUCT_COUNT, DUP_CONCEPT, DUP_ATTR,
    DANGLING_REF, ISA_LABEL, DUP_PARAM.
    """
    findings: list[Finding] = []
    if not _COMPONENT_NAME_RE.match(model.name):
        findings.append(Finding("BAD_IDENT", "component", f"component name {model.name!r} is not a valid identifier"))

    n = len(model.structures)
    if model.reuse is ReuseKind.REUSABLE and n != 1:
        findings.append(Finding("STRUCT_COUNT", "component", f"reusable component must have exactly 1 structure, has {n}"))
    elif model.reuse is ReuseKind.GENERIC and n < 1:
        findings.append(Finding("STRUCT_COUNT", "component", "generic component must have at least 1 structure"))

    for s in model.structures:
        spath = f"structure[{s.id}]"
        _check_ident(s.id, spath, findings, "structure id")
        seen_labels: dict[str, str] = {}
        names: set[str] = set()
        for c in s.concepts:
            cpath = f"{spath}.concept[{c.name}]"
            _check_ident(c.name, cpath, findings, "concept name")
            try:
                norm = normalize_label(c.name)
            except LabelError:
                norm = ""
            if norm in seen_labels:
                findings.append(Finding("DUP_CONCEPT", cpath, f"concept {c.name!r} collides with {seen_labels[norm]!r} after normalization"))
            else:
                seen_labels[norm] = c.name
            names.add(c.name)
            attr_names: set[str] = set()
            for a in c.attributes:
                apath = f"{cpath}.attr[{a.name}]"
                _check_ident(a.name, apath, findings, "attribute name")
                _check_ident(a.value_type, apath, findings, "attribute type")
                if a.name in attr_names:
                    findings.append(Finding("DUP_ATTR", apath, f"duplicate attribute {a.name!r}"))
                attr_names.add(a.name)
        for i, r in enumerate(s.relations):
            rpath = f"{spath}.relation[{i}]"
            for endpoint in (r.source, r.target):
                if endpoint not in names:
                    findings.append(Finding("DANGLING_REF", rpath, f"relation endpoint {endpoint!r} names no concept in this structure"))
            if r.kind is RelationKind.ISA and r.label is not None:
                findings.append(Finding("ISA_LABEL", rpath, "isa relations carry no label"))
            elif r.label is not None and not _IDENT_RE.match(r.label):
                findings.append(Finding("BAD_IDENT", rpath, f"relation label {r.label!r} is not a word"))
            if r.cardinality is not None and not _CARD_RE.match(r.cardinality):
                findings.append(Finding("BAD_CARD", rpath, f"cardinality {r.cardinality!r} is not of the form m..n"))
        for svc in s.services:
            vpath = f"{spath}.service[{svc.name}]"
            _check_ident(svc.name, vpath, findings, "service name")
            pnames: set[str] = set()
            for p in svc.params:
                _check_ident(p.name, vpath, findings, "parameter name")
                _check_ident(p.value_type, vpath, findings, "parameter type")
                if p.name in pnames:
                    findings.append(Finding("DUP_PARAM", vpath, f"duplicate parameter {p.name!r}"))
                pnames.add(p.name)
            if svc.return_type is not None:
                _check_ident(svc.return_type, vpath, findings, "return type")
    return findings


def canonicalize(model: ComponentModel) -> ComponentModel:
    """Return the model with all unordered collections sorted lexicographically.

    Structure order and parameter order are semantic and preserved.
    """
    structures = []
    for s in model.structures:
        concepts = tuple(
            replace(c, attributes=tuple(sorted(c.attributes)))
            for c in sorted(s.concepts, key=lambda c: c.name)
        )
        relations = tuple(sorted(s.relations, key=lambda r: (r.source, r.target, r.kind.value, r.label or "", r.cardinality or "")))
        services = tuple(sorted(s.services, key=ServiceSignature.sort_key))
        structures.append(Structure(s.id, concepts, relations, services))
    return replace(model, structures=tuple(structures))
