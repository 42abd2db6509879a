"""Apply decided actions to a set of components and produce the integrated one.

The inputs' structures are flattened into one disjoint union, then every
decision rewrites it: renameSame and mergeConcepts unify the two concepts
(attribute union, relation endpoints re-pointed), renameDifferent and
keepBoth pull the labels apart, deleteOne drops a concept with its incident
relations. The merged component is always reusable with a single structure;
its name is the input names joined by '+'.

Unification is tracked with a union-find over (component, concept) nodes so
chains of decisions compose: once Article and Paper are one node, a later
decision naming either of them lands on the same node.
"""

from __future__ import annotations

from dataclasses import dataclass

from .align import ConceptRef, Correspondence, CorrespondenceOntology, SemanticRelation
from .errors import IntegrationError, ModelInvalid, UnknownConcept
from .model import (
    Attribute,
    ComponentKind,
    ComponentModel,
    Concept,
    Relation,
    ReuseKind,
    Structure,
    canonicalize,
    normalize_label,
    validate,
)
from .ontology import Ontology
from .resolve import ActionKind, Conflict, ResolutionAction, Side
from .transform import flatten_concepts

NodeKey = tuple[str, str]


def choose_rename_label(c: Correspondence, domain: Ontology | None) -> str:
    """Target label for renameSame: the shared anchor's domain label when the
    pair is anchored, else the lexicographically smaller normalized label."""
    if c.anchor is not None:
        if domain is not None:
            return domain.get(c.anchor).label
        return c.anchor
    return min(normalize_label(c.source.concept), normalize_label(c.target.concept))


@dataclass(frozen=True)
class ReportEntry:
    """One applied decision: what it was and which labels it touched."""

    index: int
    relation: SemanticRelation
    context_key: str
    action: str
    before: tuple[str, str]
    after: tuple[str, ...]

    def to_line(self) -> str:
        return f"{self.index}\t{self.relation.value}\t{self.context_key}\t{self.action}"


@dataclass(frozen=True)
class IntegrationReport:
    entries: tuple[ReportEntry, ...] = ()

    def to_tsv(self) -> str:
        # One line per decision: index, relation, context, applied action.
        return "".join(e.to_line() + "\n" for e in self.entries)


@dataclass(frozen=True)
class MergeResult:
    model: ComponentModel
    report: IntegrationReport


class _Node:
    __slots__ = ("rank", "label", "attrs", "dropped")

    def __init__(self, rank: int, label: str):
        self.rank = rank
        self.label = label
        self.attrs: list[tuple[str, str]] = []
        self.dropped = False


class _Graph:
    """Union-find over flattened concept nodes plus the pooled relations."""

    def __init__(self):
        self.nodes: dict[NodeKey, _Node] = {}
        self.parent: dict[NodeKey, NodeKey] = {}
        self.edges: list[tuple[NodeKey, NodeKey, object, str | None, str | None]] = []

    def add_node(self, key: NodeKey, attrs: list[tuple[str, str]]) -> None:
        node = _Node(len(self.nodes), key[1])
        node.attrs = list(attrs)
        self.nodes[key] = node
        self.parent[key] = key

    def find(self, key: NodeKey) -> NodeKey:
        root = key
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[key] != root:
            self.parent[key], key = root, self.parent[key]
        return root

    def union(self, a: NodeKey, b: NodeKey) -> NodeKey:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return ra
        # The earlier-added node stays the representative so output order
        # follows input order.
        if self.nodes[rb].rank < self.nodes[ra].rank:
            ra, rb = rb, ra
        keeper, gone = self.nodes[ra], self.nodes[rb]
        for pair in gone.attrs:
            if pair not in keeper.attrs:
                keeper.attrs.append(pair)
        self.parent[rb] = ra
        return ra

    def node(self, key: NodeKey) -> _Node:
        return self.nodes[self.find(key)]


def _build_graph(models: list[ComponentModel]) -> tuple[_Graph, dict[str, dict[str, str]]]:
    graph = _Graph()
    canon_by_component: dict[str, dict[str, str]] = {}
    for model in models:
        order, canon, attrs = flatten_concepts(model)
        canon_by_component[model.name] = canon
        for name in order:
            graph.add_node((model.name, name), attrs[name])
        seen = set()
        for s in model.structures:
            for r in s.relations:
                src = (model.name, canon[r.source])
                dst = (model.name, canon[r.target])
                key = (src, dst, r.kind, r.label, r.cardinality)
                if key in seen:
                    continue
                seen.add(key)
                graph.edges.append(key)
    return graph, canon_by_component


def _resolve_ref(
    ref: ConceptRef, canon_by_component: dict[str, dict[str, str]]
) -> NodeKey:
    canon = canon_by_component.get(ref.component)
    if canon is None or ref.concept not in canon:
        raise UnknownConcept(f"{ref.component}.{ref.concept}", "merge input")
    return (ref.component, canon[ref.concept])


def _default_apart_labels(c: Correspondence) -> tuple[str, str]:
    return (
        f"{c.source.concept}_{c.source.component}",
        f"{c.target.concept}_{c.target.component}",
    )


def _apply(
    graph: _Graph,
    conflict: Conflict,
    action: ResolutionAction,
    canon_by_component: dict[str, dict[str, str]],
    domain: Ontology | None,
) -> ReportEntry:
    c = conflict.correspondence
    skey = graph.find(_resolve_ref(c.source, canon_by_component))
    tkey = graph.find(_resolve_ref(c.target, canon_by_component))
    snode, tnode = graph.nodes[skey], graph.nodes[tkey]
    if snode.dropped or tnode.dropped:
        raise IntegrationError(
            f"conflict {conflict.index}: decision references a deleted concept"
        )
    before = (snode.label, tnode.label)

    if action.kind in (ActionKind.RENAME_SAME, ActionKind.MERGE_CONCEPTS):
        if action.kind is ActionKind.RENAME_SAME:
            label = action.label or choose_rename_label(c, domain)
        else:
            label = min(before, key=lambda l: (normalize_label(l), l))
        root = graph.union(skey, tkey)
        graph.nodes[root].label = label
        after: tuple[str, ...] = (label,)
    elif action.kind in (ActionKind.RENAME_DIFFERENT, ActionKind.KEEP_BOTH):
        if skey == tkey:
            raise IntegrationError(
                f"conflict {conflict.index}: cannot keep apart concepts already unified"
            )
        da, db = _default_apart_labels(c)
        label_a = action.label_a or da
        label_b = action.label_b or db
        if normalize_label(label_a) == normalize_label(label_b):
            raise IntegrationError(
                f"conflict {conflict.index}: rename-apart labels collide ({label_a!r})"
            )
        snode.label, tnode.label = label_a, label_b
        after = (label_a, label_b)
    elif action.kind is ActionKind.DELETE_ONE:
        if skey == tkey:
            raise IntegrationError(
                f"conflict {conflict.index}: cannot delete a concept already unified"
            )
        keep = action.keep or Side.SOURCE
        gone = tnode if keep is Side.SOURCE else snode
        gone.dropped = True
        after = (snode.label if keep is Side.SOURCE else tnode.label,)
    else:
        raise IntegrationError(f"conflict {conflict.index}: unsupported action {action.kind}")

    return ReportEntry(
        index=conflict.index,
        relation=conflict.relation,
        context_key=conflict.context_key,
        action=action.describe(),
        before=before,
        after=after,
    )


def _assemble(graph: _Graph, models: list[ComponentModel]) -> ComponentModel:
    roots: list[NodeKey] = []
    seen_roots = set()
    for key in graph.nodes:
        root = graph.find(key)
        if root in seen_roots:
            continue
        seen_roots.add(root)
        if not graph.nodes[root].dropped:
            roots.append(root)

    concepts = tuple(
        Concept(
            name=graph.nodes[r].label,
            attributes=tuple(Attribute(n, t) for n, t in graph.nodes[r].attrs),
        )
        for r in roots
    )

    relations: list[Relation] = []
    seen_edges = set()
    for src, dst, kind, label, card in graph.edges:
        sroot, droot = graph.find(src), graph.find(dst)
        if graph.nodes[sroot].dropped or graph.nodes[droot].dropped:
            continue
        resolved = (graph.nodes[sroot].label, graph.nodes[droot].label, kind, label, card)
        if resolved in seen_edges:
            continue
        seen_edges.add(resolved)
        relations.append(Relation(resolved[0], resolved[1], kind, label, card))

    services = []
    for model in models:
        for s in model.structures:
            for sig in s.services:
                if sig not in services:
                    services.append(sig)

    merged = ComponentModel(
        name="+".join(m.name for m in models),
        kind=(
            ComponentKind.ENTITY
            if all(m.kind is ComponentKind.ENTITY for m in models)
            else ComponentKind.PROCESS
        ),
        reuse=ReuseKind.REUSABLE,
        structures=(
            Structure(
                id=models[0].structures[0].id,
                concepts=concepts,
                relations=tuple(relations),
                services=tuple(services),
            ),
        ),
        provenance="merged",
    )
    return canonicalize(merged)


def integrate(
    models: list[ComponentModel],
    co: CorrespondenceOntology,
    decisions: list[Conflict],
    domain: Ontology | None = None,
    partial: bool = False,
) -> MergeResult:
    """Merge the models under the decided conflicts.

    Every correspondence of `co` must be covered by a decided conflict unless
    `partial` is set, in which case pending conflicts are skipped and the
    post-merge validation is waived (preview semantics). Validation findings
    on the final model are reported as an error, never patched over.
    """
    if not models:
        raise ValueError("integrate needs at least one model")
    names = [m.name for m in models]
    if len(set(names)) != len(names):
        raise ValueError(f"duplicate component names: {names}")
    for model in models:
        findings = validate(model)
        if findings:
            raise ModelInvalid(findings, context=f"component {model.name!r}")

    if not partial:
        pending = sorted({cf.index for cf in decisions if cf.pending})
        decided_corrs = {cf.correspondence for cf in decisions if not cf.pending}
        uncovered = [
            f"{c.source.component}.{c.source.concept}~{c.target.component}.{c.target.concept}"
            for c in co.correspondences
            if c not in decided_corrs
        ]
        if pending or uncovered:
            msg = "cannot integrate with undecided conflicts"
            if uncovered:
                msg += " (uncovered: " + ", ".join(uncovered) + ")"
            raise IntegrationError(msg, pending=pending)

    graph, canon_by_component = _build_graph(models)
    entries = []
    for conflict in sorted(decisions, key=lambda cf: cf.index):
        if conflict.decided_action is None:
            continue
        entries.append(
            _apply(graph, conflict, conflict.decided_action, canon_by_component, domain)
        )

    merged = _assemble(graph, models)
    if not partial:
        findings = validate(merged)
        if findings:
            raise IntegrationError(
                "merged model failed validation", findings=findings
            )
    return MergeResult(model=merged, report=IntegrationReport(tuple(entries)))
