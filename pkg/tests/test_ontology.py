"""Ontology invariants, is-a distance (vs BFS oracle) and common ancestors."""

from __future__ import annotations

import random
from collections import deque

import pytest

from bcfuse.align import semantic_similarity
from bcfuse.errors import OntologyInvalid, UnknownConcept
from bcfuse.ontology import (
    IsaEdge,
    OntoConcept,
    Ontology,
    RelEdge,
    ancestors_with_depth,
    find_isa_cycle,
    is_root_id,
    is_value_type_id,
    isa_distance,
    nearest_common_ancestor,
)
from generators import random_domain


def _onto(concept_ids, isa=(), rels=()):
    return Ontology(
        name="T",
        concepts=tuple(OntoConcept(c, c) for c in concept_ids),
        isa_edges=tuple(IsaEdge(*e) for e in isa),
        rel_edges=tuple(RelEdge(*r) for r in rels),
    )


class TestCheck:
    def test_fixture_passes(self, domain):
        domain.check()

    def test_duplicate_concept_id(self):
        o = Ontology("T", (OntoConcept("A", "a"), OntoConcept("A", "b")))
        with pytest.raises(OntologyInvalid, match="duplicate concept id"):
            o.check()

    def test_dangling_isa(self):
        with pytest.raises(OntologyInvalid, match="unknown concept"):
            _onto(["A"], isa=[("A", "Ghost")]).check()

    def test_dangling_rel(self):
        with pytest.raises(OntologyInvalid, match="unknown concept"):
            _onto(["A"], rels=[("r1", "A", "Ghost", "x")]).check()

    def test_duplicate_edge_id(self):
        o = _onto(["A", "B"], rels=[("r1", "A", "B", "x"), ("r1", "B", "A", "y")])
        with pytest.raises(OntologyInvalid, match="duplicate edge id"):
            o.check()

    def test_isa_cycle(self):
        o = _onto(["A", "B"], isa=[("A", "B"), ("B", "A")])
        with pytest.raises(OntologyInvalid, match="cycle"):
            o.check()

    def test_get_unknown(self, domain):
        with pytest.raises(UnknownConcept):
            domain.get("Nonexistent")


class TestFindIsaCycle:
    def test_none_on_forest(self, domain):
        assert find_isa_cycle(domain.isa_edges) is None

    def test_self_loop(self):
        cycle = find_isa_cycle([IsaEdge("A", "A")])
        assert cycle and cycle.count("A") >= 1

    def test_cycle_lists_members(self):
        cycle = find_isa_cycle([IsaEdge("A", "B"), IsaEdge("B", "C"), IsaEdge("C", "A")])
        assert cycle is not None
        assert {"A", "B", "C"} <= set(cycle)

    def test_diamond_is_not_a_cycle(self):
        edges = [IsaEdge("D", "B"), IsaEdge("D", "C"), IsaEdge("B", "A"), IsaEdge("C", "A")]
        assert find_isa_cycle(edges) is None


def oracle_distance(ontology, a, b):
    """Plain BFS over an undirected adjacency map built from scratch."""
    adj: dict[str, set[str]] = {c.id: set() for c in ontology.concepts}
    for e in ontology.isa_edges:
        adj[e.child].add(e.parent)
        adj[e.parent].add(e.child)
    dist = {a: 0}
    q = deque([a])
    while q:
        x = q.popleft()
        for y in adj[x]:
            if y not in dist:
                dist[y] = dist[x] + 1
                q.append(y)
    return dist.get(b)


class TestIsaDistance:
    @pytest.mark.parametrize(
        ("a", "b", "expected"),
        [
            ("Paper", "Paper", 0),
            ("Paper", "Document", 1),
            ("Paper", "Review", 2),
            ("Conference", "Session", 2),
            ("Paper", "Person", None),
            ("Author", "Reviewer", 2),
        ],
    )
    def test_fixture_values(self, domain, a, b, expected):
        assert isa_distance(domain, a, b) == expected
        assert isa_distance(domain, b, a) == expected

    def test_unknown_concept(self, domain):
        with pytest.raises(UnknownConcept):
            isa_distance(domain, "Paper", "Nope")

    def test_matches_bfs_oracle_on_random_domains(self):
        rng = random.Random(31)
        for _ in range(40):
            onto = random_domain(rng, n_concepts=rng.randrange(2, 10))
            ids = sorted(onto.concept_ids())
            for _ in range(15):
                a, b = rng.choice(ids), rng.choice(ids)
                assert isa_distance(onto, a, b) == oracle_distance(onto, a, b)


class TestAncestors:
    def test_start_at_zero(self, domain):
        d = ancestors_with_depth(domain, "Paper")
        assert d == {"Paper": 0, "Document": 1}

    def test_root_has_only_itself(self, domain):
        assert ancestors_with_depth(domain, "Event") == {"Event": 0}

    def test_multi_parent(self):
        o = _onto(["A", "B", "C"], isa=[("C", "A"), ("C", "B")])
        assert ancestors_with_depth(o, "C") == {"C": 0, "A": 1, "B": 1}


class TestNearestCommonAncestor:
    def test_siblings(self, domain):
        assert nearest_common_ancestor(domain, "Paper", "Review") == "Document"
        assert nearest_common_ancestor(domain, "Conference", "Session") == "Event"

    def test_ancestor_of_itself(self, domain):
        assert nearest_common_ancestor(domain, "Paper", "Document") == "Document"
        assert nearest_common_ancestor(domain, "Paper", "Paper") == "Paper"

    def test_disconnected(self, domain):
        assert nearest_common_ancestor(domain, "Paper", "Person") is None

    def test_tie_breaks_lexicographically(self):
        # X and Y are both common ancestors at combined distance 2
        o = _onto(
            ["A", "B", "X", "Y"],
            isa=[("A", "X"), ("A", "Y"), ("B", "X"), ("B", "Y")],
        )
        assert nearest_common_ancestor(o, "A", "B") == "X"


class TestSemanticSimilarity:
    @pytest.mark.parametrize(
        ("a", "b", "expected"),
        [
            ("Paper", "Paper", 1.0),
            ("Paper", "Document", 0.5),
            ("Conference", "Session", pytest.approx(1 / 3)),
            ("Paper", "Person", 0.0),
        ],
    )
    def test_fixture_values(self, domain, a, b, expected):
        assert semantic_similarity(a, b, domain) == expected

    def test_symmetric_and_bounded(self, domain):
        ids = sorted(domain.concept_ids())
        for a in ids:
            for b in ids:
                s = semantic_similarity(a, b, domain)
                assert 0.0 <= s <= 1.0
                assert s == semantic_similarity(b, a, domain)
                if a == b:
                    assert s == 1.0


def test_id_kind_helpers():
    assert is_root_id("root:SubmissionMgr")
    assert not is_root_id("Paper")
    assert is_value_type_id("valuetype:string")
    assert not is_value_type_id("root:X")
