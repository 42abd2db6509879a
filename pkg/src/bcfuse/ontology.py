"""Labeled concept graphs with is-a and association edges.

One Ontology type serves three roles: the designer-chosen domain ontology,
the per-component ontologies produced by ``transform``, and (serialized) any
merged views. Component-derived ontologies use reserved id prefixes for the
synthesized root ("root:") and attribute value-type ("valuetype:") concepts
so alignment can exclude them without extra bookkeeping.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .errors import OntologyInvalid, UnknownConcept

ROOT_PREFIX = "root:"
VALUETYPE_PREFIX = "valuetype:"


@dataclass(frozen=True)
class OntoConcept:
    id: str
    label: str
    aliases: frozenset[str] = frozenset()
    # None for domain ontologies, else the originating component name.
    component: str | None = None


@dataclass(frozen=True, order=True)
class IsaEdge:
    child: str
    parent: str


@dataclass(frozen=True, order=True)
class RelEdge:
    id: str
    src: str
    dst: str
    label: str


def is_root_id(concept_id: str) -> bool:
    return concept_id.startswith(ROOT_PREFIX)


def is_value_type_id(concept_id: str) -> bool:
    return concept_id.startswith(VALUETYPE_PREFIX)


@dataclass(frozen=True)
class Ontology:
    name: str
    concepts: tuple[OntoConcept, ...]
    isa_edges: tuple[IsaEdge, ...] = ()
    rel_edges: tuple[RelEdge, ...] = ()

    def concept_ids(self) -> set[str]:
        return {c.id for c in self.concepts}

    def get(self, concept_id: str) -> OntoConcept:
        for c in self.concepts:
            if c.id == concept_id:
                return c
        raise UnknownConcept(concept_id, self.name)

    def member_concepts(self) -> list[OntoConcept]:
        """Concepts that stand for model concepts (no root, no value types)."""
        return [c for c in self.concepts if not is_root_id(c.id) and not is_value_type_id(c.id)]

    def check(self) -> None:
        """Raise OntologyInvalid unless ids are unique, edges are grounded
        and the is-a graph is acyclic."""
        ids: set[str] = set()
        for c in self.concepts:
            if c.id in ids:
                raise OntologyInvalid(f"duplicate concept id {c.id!r} in ontology {self.name!r}")
            ids.add(c.id)
        for e in self.isa_edges:
            for endpoint in (e.child, e.parent):
                if endpoint not in ids:
                    raise OntologyInvalid(f"isa edge references unknown concept {endpoint!r}")
        edge_ids: set[str] = set()
        for r in self.rel_edges:
            if r.id in edge_ids:
                raise OntologyInvalid(f"duplicate edge id {r.id!r}")
            edge_ids.add(r.id)
            for endpoint in (r.src, r.dst):
                if endpoint not in ids:
                    raise OntologyInvalid(f"rel edge {r.id!r} references unknown concept {endpoint!r}")
        cycle = find_isa_cycle(self.isa_edges)
        if cycle:
            raise OntologyInvalid("is-a cycle through " + " -> ".join(cycle))

    def isa_parents(self) -> dict[str, set[str]]:
        parents: dict[str, set[str]] = {}
        for e in self.isa_edges:
            parents.setdefault(e.child, set()).add(e.parent)
        return parents


def find_isa_cycle(isa_edges) -> list[str] | None:
    """Return the node sequence of one is-a cycle, or None if acyclic."""
    children: dict[str, list[str]] = {}
    for e in isa_edges:
        children.setdefault(e.child, []).append(e.parent)
    WHITE, GRAY, BLACK = 0, 1, 2
    color: dict[str, int] = {}
    stack: list[str] = []

    def visit(node: str) -> list[str] | None:
        color[node] = GRAY
        stack.append(node)
        for nxt in children.get(node, ()):
            state = color.get(nxt, WHITE)
            if state == GRAY:
                return stack[stack.index(nxt):] + [nxt]
            if state == WHITE:
                found = visit(nxt)
                if found:
                    return found
        stack.pop()
        color[node] = BLACK
        return None

    for start in list(children):
        if color.get(start, WHITE) == WHITE:
            found = visit(start)
            if found:
                return found
    return None


def isa_distance(ontology: Ontology, a: str, b: str) -> int | None:
    """Shortest undirected path length over is-a edges; None when disconnected."""
    ids = ontology.concept_ids()
    if a not in ids:
        raise UnknownConcept(a, ontology.name)
    if b not in ids:
        raise UnknownConcept(b, ontology.name)
    if a == b:
        return 0
    neighbors: dict[str, set[str]] = {}
    for e in ontology.isa_edges:
        neighbors.setdefault(e.child, set()).add(e.parent)
        neighbors.setdefault(e.parent, set()).add(e.child)
    seen = {a}
    queue = deque([(a, 0)])
    while queue:
        node, dist = queue.popleft()
        for nxt in neighbors.get(node, ()):
            if nxt == b:
                return dist + 1
            if nxt not in seen:
                seen.add(nxt)
                queue.append((nxt, dist + 1))
    return None


def ancestors_with_depth(ontology: Ontology, start: str) -> dict[str, int]:
    """Map of is-a ancestor id -> upward distance from start (start itself at 0)."""
    parents = ontology.isa_parents()
    depths = {start: 0}
    queue = deque([start])
    while queue:
        node = queue.popleft()
        for parent in parents.get(node, ()):
            if parent not in depths:
                depths[parent] = depths[node] + 1
                queue.append(parent)
    return depths


def nearest_common_ancestor(ontology: Ontology, a: str, b: str) -> str | None:
    """Nearest common is-a ancestor of a and b (either may be its own ancestor).

    Nearest means minimal combined upward distance; ties break on the
    lexicographically smallest concept id. None when the two share no ancestor.
    """
    da = ancestors_with_depth(ontology, a)
    db = ancestors_with_depth(ontology, b)
    common = set(da) & set(db)
    if not common:
        return None
    return min(common, key=lambda cid: (da[cid] + db[cid], cid))
