"""Turn a business component into an ontology suitable for alignment.

Mapping: a synthesized root concept carries the component name and every
model concept hangs off it via a "partOf" edge; attributes become
"hasAttr:<name>" edges into shared value-type concepts; is-a relations become
is-a edges and association/composition relations become labeled edges.
Generic components contribute the union of their structures, with concepts
deduplicated by normalized label.
"""

from __future__ import annotations

from .errors import ModelInvalid
from .model import ComponentModel, RelationKind, normalize_label, validate
from .ontology import (
    ROOT_PREFIX,
    VALUETYPE_PREFIX,
    IsaEdge,
    OntoConcept,
    Ontology,
    RelEdge,
)


def flatten_concepts(model: ComponentModel):
    """Union concepts across structures, deduplicated by normalized label.

    Returns (ordered concept names, name->canonical-name map, canonical-name ->
    ordered list of (attr name, attr type) pairs). First declaration wins the
    canonical spelling; attributes union in declaration order.
    """
    order: list[str] = []
    canon: dict[str, str] = {}
    by_norm: dict[str, str] = {}
    attrs: dict[str, list[tuple[str, str]]] = {}
    for s in model.structures:
        for c in s.concepts:
            norm = normalize_label(c.name)
            if norm not in by_norm:
                by_norm[norm] = c.name
                order.append(c.name)
                attrs[c.name] = []
            keeper = by_norm[norm]
            canon[c.name] = keeper
            for a in c.attributes:
                pair = (a.name, a.value_type)
                if pair not in attrs[keeper]:
                    attrs[keeper].append(pair)
    return order, canon, attrs


def to_ontology(model: ComponentModel) -> Ontology:
    """Transform a validated component model into its ontology."""
    findings = validate(model)
    if findings:
        raise ModelInvalid(findings, context=f"component {model.name!r}")

    root_id = ROOT_PREFIX + model.name
    concepts: list[OntoConcept] = [OntoConcept(root_id, model.name, component=model.name)]
    isa_edges: list[IsaEdge] = []
    rel_edges: list[RelEdge] = []
    edge_counter = 0

    def next_edge_id() -> str:
        nonlocal edge_counter
        edge_counter += 1
        return f"e{edge_counter}"

    order, canon, attrs = flatten_concepts(model)
    value_types: dict[str, str] = {}

    for name in order:
        concepts.append(OntoConcept(name, name, component=model.name))
        rel_edges.append(RelEdge(next_edge_id(), name, root_id, "partOf"))
        for attr_name, attr_type in attrs[name]:
            vt_norm = normalize_label(attr_type)
            vt_id = VALUETYPE_PREFIX + vt_norm.replace(" ", "_")
            if vt_id not in value_types:
                value_types[vt_id] = attr_type
            rel_edges.append(RelEdge(next_edge_id(), name, vt_id, f"hasAttr:{attr_name}"))

    for vt_id, vt_label in value_types.items():
        concepts.append(OntoConcept(vt_id, vt_label, component=model.name))

    seen_relations = set()
    for s in model.structures:
        for r in s.relations:
            src = canon[r.source]
            dst = canon[r.target]
            key = (src, dst, r.kind, r.label, r.cardinality)
            if key in seen_relations:
                continue
            seen_relations.add(key)
            if r.kind is RelationKind.ISA:
                edge = IsaEdge(src, dst)
                if edge not in isa_edges:
                    isa_edges.append(edge)
            else:
                rel_edges.append(RelEdge(next_edge_id(), src, dst, r.label or r.kind.value))

    ontology = Ontology(
        name=model.name,
        concepts=tuple(concepts),
        isa_edges=tuple(isa_edges),
        rel_edges=tuple(rel_edges),
    )
    ontology.check()
    return ontology


def concept_count(ontology: Ontology) -> int:
    return len(ontology.concepts)
