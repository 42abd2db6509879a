"""Similarity measures, background-ontology anchoring and pairwise alignment.

Concepts of two component ontologies are compared pairwise. Each concept is
first anchored to its best-matching domain concept (lexical similarity over
labels and aliases, boosted to 1.0 by a shared lexicon synset, accepted above
a threshold). The pair is then classified:

  equal labels, same anchor (or both unanchored), attribute overlap high  -> equivalent
  equal labels otherwise                                                  -> homonym
  different labels, same anchor                                           -> synonym

Concept-level correspondences aggregate into component-level ones (BCCO):
two components are synonymous when at least half of the smaller one's
concepts have a synonym/equivalent counterpart in the other.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Mapping

from . import kernels
from .errors import LabelError
from .ingest import Lexicon
from .model import normalize_label
from .ontology import Ontology, isa_distance


class SemanticRelation(str, Enum):
    SYNONYM = "synonym"
    HOMONYM = "homonym"
    EQUIVALENT = "equivalent"


@dataclass(frozen=True)
class AlignmentParams:
    """Tunables of the matching process; all values live in [0, 1].

    lexical_weight is reserved for blended lexical/semantic scoring and is
    not consumed by the current measures.
    """

    anchor_threshold: float = 0.8
    homonym_attr_jaccard_max: float = 0.25
    lexical_weight: float = 0.5

    def __post_init__(self):
        for name in ("anchor_threshold", "homonym_attr_jaccard_max", "lexical_weight"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                raise ValueError(f"{name} must be in [0, 1], got {v}")


@dataclass(frozen=True)
class ResourceSet:
    """Background knowledge for anchoring; either member may be absent."""

    domain: Ontology | None = None
    lexicon: Lexicon | None = None


@dataclass(frozen=True, order=True)
class ConceptRef:
    component: str
    concept: str


@dataclass(frozen=True)
class Correspondence:
    source: ConceptRef
    target: ConceptRef
    relation: SemanticRelation
    confidence: float
    # Shared anchor when both sides anchor to the same domain concept.
    anchor: str | None = None
    # Per-side anchors; needed to place homonyms in a domain context.
    source_anchor: str | None = None
    target_anchor: str | None = None

    def swapped(self) -> "Correspondence":
        return Correspondence(
            source=self.target,
            target=self.source,
            relation=self.relation,
            confidence=self.confidence,
            anchor=self.anchor,
            source_anchor=self.target_anchor,
            target_anchor=self.source_anchor,
        )


@dataclass(frozen=True)
class ComponentCorrespondence:
    a: str
    b: str
    relation: SemanticRelation
    support: float


@dataclass(frozen=True)
class CorrespondenceOntology:
    correspondences: tuple[Correspondence, ...] = ()
    component_correspondences: tuple[ComponentCorrespondence, ...] = ()


def _norm(label: str) -> str:
    try:
        return normalize_label(label)
    except LabelError:
        return ""


def lexical_similarity(a: str, b: str) -> float:
    """Normalized edit-distance similarity of two labels, in [0, 1]."""
    na, nb = _norm(a), _norm(b)
    if na == nb:
        return 1.0
    longest = max(len(na), len(nb))
    return 1.0 - kernels.levenshtein(na, nb) / longest


def semantic_similarity(c1: str, c2: str, domain: Ontology) -> float:
    """Inverse is-a path-length similarity between two domain concepts.

    1 / (1 + d) with d the shortest undirected path over is-a edges;
    0.0 when the concepts are disconnected. Unknown ids raise.
    """
    d = isa_distance(domain, c1, c2)
    if d is None:
        return 0.0
    return 1.0 / (1.0 + d)


def anchor(label: str, resources: ResourceSet, params: AlignmentParams) -> tuple[str, float] | None:
    """Best domain concept for a label, or None below the acceptance threshold.

    A domain concept scores the max lexical similarity of the label against
    its own label and aliases, raised to 1.0 when the lexicon puts the label
    in a synset shared with any of them. Ties break on the smaller concept id.
    """
    if resources.domain is None:
        return None
    norm = _norm(label)
    expansions = resources.lexicon.expansions(norm) if resources.lexicon else set()
    best: tuple[str, float] | None = None
    for concept in resources.domain.concepts:
        names = [concept.label, *concept.aliases]
        score = max(lexical_similarity(label, name) for name in names)
        if score < 1.0 and expansions:
            if any(_norm(name) in expansions for name in names):
                score = 1.0
        if score >= params.anchor_threshold:
            if best is None or score > best[1] or (score == best[1] and concept.id < best[0]):
                best = (concept.id, score)
    return best


def _jaccard(a: frozenset[str], b: frozenset[str]) -> float:
    if not a and not b:
        return 1.0
    return len(a & b) / len(a | b)


@dataclass(frozen=True)
class AlignConcept:
    """Alignment view of one component-ontology concept."""

    component: str
    concept_id: str
    label: str
    attr_names: frozenset[str] = frozenset()
    anchor: tuple[str, float] | None = None


def classify(a: AlignConcept, b: AlignConcept, params: AlignmentParams) -> Correspondence | None:
    """Classify one concept pair; None when neither labels nor anchors relate them."""
    if a.component == b.component:
        raise ValueError("classify expects concepts from different components")
    same_label = _norm(a.label) == _norm(b.label)
    same_anchor = a.anchor is not None and b.anchor is not None and a.anchor[0] == b.anchor[0]
    both_unanchored = a.anchor is None and b.anchor is None
    jaccard = _jaccard(a.attr_names, b.attr_names)

    relation: SemanticRelation
    confidence: float
    if same_label and (same_anchor or both_unanchored) and jaccard >= params.homonym_attr_jaccard_max:
        relation = SemanticRelation.EQUIVALENT
        confidence = a.anchor[1] * b.anchor[1] if same_anchor else 1.0
    elif same_label:
        relation = SemanticRelation.HOMONYM
        confidence = 1.0 - jaccard
    elif same_anchor:
        relation = SemanticRelation.SYNONYM
        confidence = a.anchor[1] * b.anchor[1]
    else:
        return None

    return Correspondence(
        source=ConceptRef(a.component, a.concept_id),
        target=ConceptRef(b.component, b.concept_id),
        relation=relation,
        confidence=confidence,
        anchor=a.anchor[0] if same_anchor else None,
        source_anchor=a.anchor[0] if a.anchor else None,
        target_anchor=b.anchor[0] if b.anchor else None,
    )


def alignment_views(ontology: Ontology, resources: ResourceSet, params: AlignmentParams) -> list[AlignConcept]:
    """Anchored alignment views for every member concept of a component ontology."""
    attr_names: dict[str, set[str]] = {}
    for edge in ontology.rel_edges:
        if edge.label.startswith("hasAttr:"):
            attr_names.setdefault(edge.src, set()).add(_norm(edge.label[len("hasAttr:"):]))
    views = []
    for concept in ontology.member_concepts():
        views.append(
            AlignConcept(
                component=ontology.name,
                concept_id=concept.id,
                label=concept.label,
                attr_names=frozenset(attr_names.get(concept.id, set())),
                anchor=anchor(concept.label, resources, params),
            )
        )
    return views


def _correspondence_sort_key(c: Correspondence):
    return (c.source.component, c.source.concept, c.target.component, c.target.concept, c.relation.value)


def align_pair(
    o1: Ontology,
    o2: Ontology,
    resources: ResourceSet | None = None,
    params: AlignmentParams | None = None,
) -> CorrespondenceOntology:
    """Align two component ontologies into a correspondence ontology."""
    resources = resources or ResourceSet()
    params = params or AlignmentParams()
    if o1.name == o2.name:
        raise ValueError("align_pair expects ontologies of distinct components")
    views1 = alignment_views(o1, resources, params)
    views2 = alignment_views(o2, resources, params)
    correspondences = []
    for a in views1:
        for b in views2:
            c = classify(a, b, params)
            if c is not None:
                correspondences.append(c)
    correspondences.sort(key=_correspondence_sort_key)
    sizes = {o1.name: len(views1), o2.name: len(views2)}
    return CorrespondenceOntology(
        correspondences=tuple(correspondences),
        component_correspondences=build_bcco(correspondences, sizes),
    )


def align_all(
    ontologies: Iterable[Ontology],
    resources: ResourceSet | None = None,
    params: AlignmentParams | None = None,
) -> CorrespondenceOntology:
    """Pairwise alignment over every ontology pair, unioned into one result."""
    resources = resources or ResourceSet()
    params = params or AlignmentParams()
    onts = list(ontologies)
    views = {o.name: alignment_views(o, resources, params) for o in onts}
    correspondences = []
    for i, o1 in enumerate(onts):
        for o2 in onts[i + 1:]:
            for a in views[o1.name]:
                for b in views[o2.name]:
                    c = classify(a, b, params)
                    if c is not None:
                        correspondences.append(c)
    correspondences.sort(key=_correspondence_sort_key)
    sizes = {name: len(v) for name, v in views.items()}
    return CorrespondenceOntology(
        correspondences=tuple(correspondences),
        component_correspondences=build_bcco(correspondences, sizes),
    )


def build_bcco(
    correspondences: Iterable[Correspondence],
    component_sizes: Mapping[str, int],
    support_cutoff: float = 0.5,
) -> tuple[ComponentCorrespondence, ...]:
    """Aggregate concept correspondences to component level.

    support(A, B) = (#synonym + #equivalent pairs) / min(|A|, |B|), capped at
    1.0; the pair is reported as a component synonym iff support reaches the
    cutoff. Pairs are keyed order-independently (lexicographically sorted).
    """
    counts: dict[tuple[str, str], int] = {}
    for c in correspondences:
        if c.relation is SemanticRelation.HOMONYM:
            continue
        pair = tuple(sorted((c.source.component, c.target.component)))
        counts[pair] = counts.get(pair, 0) + 1
    out = []
    for (a, b), n in sorted(counts.items()):
        smaller = min(component_sizes.get(a, 0), component_sizes.get(b, 0))
        if smaller == 0:
            continue
        support = min(1.0, n / smaller)
        if support >= support_cutoff:
            out.append(ComponentCorrespondence(a, b, SemanticRelation.SYNONYM, support))
    return tuple(out)


def export_alignment(co: CorrespondenceOntology) -> str:
    """Canonical JSON export: sorted keys, arrays in canonical order."""
    doc = {
        "correspondences": [
            {
                "source": {"component": c.source.component, "concept": c.source.concept},
                "target": {"component": c.target.component, "concept": c.target.concept},
                "relation": c.relation.value,
                "confidence": c.confidence,
                "anchor": c.anchor,
            }
            for c in sorted(co.correspondences, key=_correspondence_sort_key)
        ],
        "components": [
            {"a": cc.a, "b": cc.b, "relation": cc.relation.value, "support": cc.support}
            for cc in sorted(co.component_correspondences, key=lambda cc: (cc.a, cc.b))
        ],
    }
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"
