"""Parsers and serializers for the three line-oriented input formats.

.bcm  — business-component models (see fixtures/bc1.bcm)
.onto — ontologies: concepts with quoted labels, is-a edges, labeled
        relation edges and "syn" alias lines
.syn  — lexicon: one synset per line, comma-separated terms

All parsers are total over arbitrary text: they either return a value or
raise a structured error (ParseError with line/column, OntologyInvalid for
semantic problems), never anything else. '#' starts a comment outside quotes.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import LabelError, ModelInvalid, OntologyInvalid, ParseError
from .model import (
    Attribute,
    ComponentKind,
    ComponentModel,
    Concept,
    Param,
    Relation,
    RelationKind,
    ReuseKind,
    ServiceSignature,
    Structure,
    canonicalize,
    normalize_label,
    validate,
)
from .ontology import IsaEdge, OntoConcept, Ontology, RelEdge, find_isa_cycle

_IDENT = r"[A-Za-z][A-Za-z0-9_]*"
# Ontology concept ids additionally allow ':' so synthesized ids
# (root:Name, valuetype:string) survive a serialization round trip.
_ONTO_ID = r"[A-Za-z][A-Za-z0-9_:]*"
_CARD = r"[A-Za-z0-9*]+\.\.[A-Za-z0-9*]+"

_COMPONENT_RE = re.compile(
    rf"^component\s+(?P<name>{_IDENT}(?:\+{_IDENT})*)\s+kind=(?P<kind>entity|process)\s+reuse=(?P<reuse>reusable|generic)\s*$"
)
_STRUCTURE_RE = re.compile(rf"^structure\s+(?P<id>{_IDENT})\s*$")
_CONCEPT_RE = re.compile(rf"^concept\s+(?P<name>{_IDENT})\s*$")
_ATTR_RE = re.compile(rf"^attr\s+(?P<name>{_IDENT})\s*:\s*(?P<type>{_IDENT})\s*$")
_RELATION_RE = re.compile(
    rf"^relation\s+(?P<src>{_IDENT})\s+->\s+(?P<dst>{_IDENT})\s+kind=(?P<kind>assoc|isa|comp)"
    rf"(?:\s+label=(?P<label>{_IDENT}))?(?:\s+card=(?P<card>{_CARD}))?\s*$"
)
_SERVICE_RE = re.compile(
    rf"^service\s+(?P<name>{_IDENT})\s*\((?P<params>[^()]*)\)\s*(?::\s*(?P<ret>{_IDENT}))?\s*$"
)
_PARAM_RE = re.compile(rf"^\s*(?P<name>{_IDENT})\s*:\s*(?P<type>{_IDENT})\s*$")

_ONTOLOGY_RE = re.compile(rf"^ontology\s+(?P<name>{_IDENT})\s*$")
_ONTO_CONCEPT_RE = re.compile(rf'^concept\s+(?P<id>{_ONTO_ID})\s+label="(?P<label>[^"]*)"\s*$')
_ISA_RE = re.compile(rf"^isa\s+(?P<child>{_ONTO_ID})\s+(?P<parent>{_ONTO_ID})\s*$")
_REL_RE = re.compile(
    rf'^rel\s+(?P<id>{_ONTO_ID})\s+(?P<src>{_ONTO_ID})\s+(?P<dst>{_ONTO_ID})\s+label="(?P<label>[^"]*)"\s*$'
)
_SYN_RE = re.compile(rf"^syn\s+(?P<id>{_ONTO_ID})(?P<aliases>(?:\s+\"[^\"]*\")+)\s*$")
_ALIAS_RE = re.compile(r'"([^"]*)"')


@dataclass(frozen=True)
class Lexicon:
    """Synonym sets of normalized labels; a pluggable stand-in for a lexical database."""

    synsets: tuple[frozenset[str], ...] = ()

    def expansions(self, label: str) -> set[str]:
        """Union of all synsets containing the normalized label."""
        out: set[str] = set()
        for synset in self.synsets:
            if label in synset:
                out |= synset
        return out

    def share_synset(self, a: str, b: str) -> bool:
        return any(a in synset and b in synset for synset in self.synsets)


def _strip_comment(line: str) -> str:
    out = []
    in_quote = False
    for ch in line:
        if ch == '"':
            in_quote = not in_quote
        if ch == "#" and not in_quote:
            break
        out.append(ch)
    return "".join(out)


def _content_lines(text: str):
    """Yield (lineno, stripped content) for lines that carry a directive."""
    for lineno, raw in enumerate(text.splitlines(), start=1):
        content = _strip_comment(raw).strip()
        if content:
            yield lineno, content, raw


def _directive(content: str) -> str:
    return content.split(None, 1)[0]


def _args_column(raw: str, content: str) -> int:
    """1-based column where the directive's arguments start in the raw line."""
    idx = raw.find(content)
    base = idx if idx >= 0 else 0
    return base + len(_directive(content)) + 2


def parse_bcm(text: str, source: str = "<string>") -> ComponentModel:
    """Parse a .bcm component model.

    Syntax errors raise ParseError. Invariant violations (duplicate concepts,
    dangling relation endpoints...) are left for ``validate`` to report, so
    callers get the full list of findings rather than the first one.
    """
    header = None
    structures: list[dict] = []
    current: dict | None = None
    current_concept: Concept | None = None

    def flush_concept():
        nonlocal current_concept
        if current_concept is not None:
            current["concepts"].append(current_concept)
            current_concept = None

    for lineno, content, raw in _content_lines(text):
        word = _directive(content)
        col = _args_column(raw, content)
        if header is None:
            m = _COMPONENT_RE.match(content)
            if not m:
                raise ParseError(lineno, 1, "'component <Name> kind=<entity|process> reuse=<reusable|generic>'", word)
            header = m
            continue
        if word == "component":
            raise ParseError(lineno, 1, "at most one 'component' directive", word)
        if word == "structure":
            m = _STRUCTURE_RE.match(content)
            if not m:
                raise ParseError(lineno, col, "'structure <id>'")
            flush_concept()
            current = {"id": m["id"], "concepts": [], "relations": [], "services": []}
            structures.append(current)
        elif word == "concept":
            m = _CONCEPT_RE.match(content)
            if not m:
                raise ParseError(lineno, col, "'concept <Name>'")
            if current is None:
                raise ParseError(lineno, 1, "'structure' before 'concept'", word)
            flush_concept()
            current_concept = Concept(m["name"])
        elif word == "attr":
            m = _ATTR_RE.match(content)
            if not m:
                raise ParseError(lineno, col, "'attr <name> : <type>'")
            if current_concept is None:
                raise ParseError(lineno, 1, "'concept' before 'attr'", word)
            current_concept = Concept(
                current_concept.name,
                current_concept.attributes + (Attribute(m["name"], m["type"]),),
            )
        elif word == "relation":
            m = _RELATION_RE.match(content)
            if not m:
                raise ParseError(lineno, col, "'relation <Src> -> <Dst> kind=<assoc|isa|comp> [label=<word>] [card=<m..n>]'")
            if current is None:
                raise ParseError(lineno, 1, "'structure' before 'relation'", word)
            current["relations"].append(
                Relation(m["src"], m["dst"], RelationKind(m["kind"]), m["label"], m["card"])
            )
        elif word == "service":
            m = _SERVICE_RE.match(content)
            if not m:
                raise ParseError(lineno, col, "'service <name>(<p:type,...>) [: <rettype>]'")
            if current is None:
                raise ParseError(lineno, 1, "'structure' before 'service'", word)
            params = []
            raw_params = m["params"].strip()
            if raw_params:
                for part in raw_params.split(","):
                    pm = _PARAM_RE.match(part)
                    if not pm:
                        raise ParseError(lineno, col, "parameter '<name>:<type>'", part.strip())
                    params.append(Param(pm["name"], pm["type"]))
            current["services"].append(ServiceSignature(m["name"], tuple(params), m["ret"]))
        else:
            raise ParseError(lineno, 1, "one of component/structure/concept/attr/relation/service", word)

    if header is None:
        raise ParseError(1, 1, "'component <Name> kind=<entity|process> reuse=<reusable|generic>'")
    flush_concept()
    return ComponentModel(
        name=header["name"],
        kind=ComponentKind(header["kind"]),
        reuse=ReuseKind(header["reuse"]),
        structures=tuple(
            Structure(s["id"], tuple(s["concepts"]), tuple(s["relations"]), tuple(s["services"]))
            for s in structures
        ),
        provenance=source,
    )


def serialize_bcm(model: ComponentModel) -> str:
    """Canonical .bcm text: collections sorted lexicographically, so equal
    models serialize byte-identically. Rejects invalid models."""
    findings = validate(model)
    if findings:
        raise ModelInvalid(findings, context=f"component {model.name!r}")
    model = canonicalize(model)
    lines = [f"component {model.name} kind={model.kind.value} reuse={model.reuse.value}"]
    for s in model.structures:
        lines.append(f"structure {s.id}")
        for c in s.concepts:
            lines.append(f"concept {c.name}")
            for a in c.attributes:
                lines.append(f"  attr {a.name} : {a.value_type}")
        for r in s.relations:
            parts = [f"relation {r.source} -> {r.target} kind={r.kind.value}"]
            if r.label is not None:
                parts.append(f"label={r.label}")
            if r.cardinality is not None:
                parts.append(f"card={r.cardinality}")
            lines.append(" ".join(parts))
        for svc in s.services:
            params = ", ".join(f"{p.name}:{p.value_type}" for p in svc.params)
            line = f"service {svc.name}({params})"
            if svc.return_type is not None:
                line += f" : {svc.return_type}"
            lines.append(line)
    return "\n".join(lines) + "\n"


def parse_onto(text: str, source: str = "<string>") -> Ontology:
    """Parse a .onto ontology and check its structural invariants."""
    name = None
    concepts: list[tuple[int, str, str]] = []
    isa: list[tuple[int, IsaEdge]] = []
    rels: list[tuple[int, RelEdge]] = []
    syns: list[tuple[int, str, list[str]]] = []

    for lineno, content, raw in _content_lines(text):
        word = _directive(content)
        col = _args_column(raw, content)
        if name is None:
            m = _ONTOLOGY_RE.match(content)
            if not m:
                raise ParseError(lineno, 1, "'ontology <Name>'", word)
            name = m["name"]
            continue
        if word == "ontology":
            raise ParseError(lineno, 1, "at most one 'ontology' directive", word)
        if word == "concept":
            m = _ONTO_CONCEPT_RE.match(content)
            if not m:
                raise ParseError(lineno, col, "'concept <id> label=\"<text>\"'")
            concepts.append((lineno, m["id"], m["label"]))
        elif word == "isa":
            m = _ISA_RE.match(content)
            if not m:
                raise ParseError(lineno, col, "'isa <child> <parent>'")
            isa.append((lineno, IsaEdge(m["child"], m["parent"])))
        elif word == "rel":
            m = _REL_RE.match(content)
            if not m:
                raise ParseError(lineno, col, "'rel <id> <src> <dst> label=\"<text>\"'")
            rels.append((lineno, RelEdge(m["id"], m["src"], m["dst"], m["label"])))
        elif word == "syn":
            m = _SYN_RE.match(content)
            if not m:
                raise ParseError(lineno, col, "'syn <id> \"<alias>\" ...'")
            syns.append((lineno, m["id"], _ALIAS_RE.findall(m["aliases"])))
        else:
            raise ParseError(lineno, 1, "one of ontology/concept/isa/rel/syn", word)

    if name is None:
        raise ParseError(1, 1, "'ontology <Name>'")

    declared: dict[str, str] = {}
    for lineno, cid, label in concepts:
        if cid in declared:
            raise OntologyInvalid(f"{source}:{lineno}: duplicate concept id {cid!r}")
        declared[cid] = label
    aliases: dict[str, set[str]] = {cid: set() for cid in declared}
    for lineno, cid, alias_list in syns:
        if cid not in declared:
            raise OntologyInvalid(f"{source}:{lineno}: syn references unknown concept {cid!r}")
        aliases[cid].update(alias_list)
    for lineno, edge in isa:
        for endpoint in (edge.child, edge.parent):
            if endpoint not in declared:
                raise OntologyInvalid(f"{source}:{lineno}: isa references unknown concept {endpoint!r}")
    for lineno, edge in rels:
        for endpoint in (edge.src, edge.dst):
            if endpoint not in declared:
                raise OntologyInvalid(f"{source}:{lineno}: rel {edge.id!r} references unknown concept {endpoint!r}")

    cycle = find_isa_cycle(e for _, e in isa)
    if cycle:
        raise OntologyInvalid(f"{source}: is-a cycle through " + " -> ".join(cycle))

    ontology = Ontology(
        name=name,
        concepts=tuple(
            OntoConcept(cid, label, frozenset(aliases[cid])) for _, cid, label in concepts
        ),
        isa_edges=tuple(e for _, e in isa),
        rel_edges=tuple(e for _, e in rels),
    )
    ontology.check()
    return ontology


def serialize_onto(ontology: Ontology) -> str:
    """Canonical .onto text (concepts and edges sorted; origin metadata is not kept)."""
    lines = [f"ontology {ontology.name}"]
    for c in sorted(ontology.concepts, key=lambda c: c.id):
        lines.append(f'concept {c.id} label="{c.label}"')
    for e in sorted(ontology.isa_edges):
        lines.append(f"isa {e.child} {e.parent}")
    for r in sorted(ontology.rel_edges):
        lines.append(f'rel {r.id} {r.src} {r.dst} label="{r.label}"')
    for c in sorted(ontology.concepts, key=lambda c: c.id):
        if c.aliases:
            quoted = " ".join(f'"{a}"' for a in sorted(c.aliases))
            lines.append(f"syn {c.id} {quoted}")
    return "\n".join(lines) + "\n"


def parse_lexicon(text: str, source: str = "<string>") -> Lexicon:
    """Parse a .syn lexicon: one synset per line, comma-separated terms.

    Terms are normalized; a line yielding fewer than two distinct normalized
    terms is a format error (reported with its line number).
    """
    synsets: list[frozenset[str]] = []
    for lineno, content, _raw in _content_lines(text):
        terms: set[str] = set()
        for part in content.split(","):
            try:
                terms.add(normalize_label(part))
            except LabelError:
                raise ParseError(lineno, 1, "nonempty term", part.strip()) from None
        if len(terms) < 2:
            raise ParseError(lineno, 1, "at least 2 distinct terms per synset after normalization")
        synsets.append(frozenset(terms))
    return Lexicon(tuple(synsets))


def read_text(path) -> str:
    """Read a file as UTF-8, replacing undecodable bytes (parsers stay total)."""
    with open(path, "rb") as fh:
        return fh.read().decode("utf-8", errors="replace")
