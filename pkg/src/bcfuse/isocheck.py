"""Non-isomorphism pre-filter over sub-components, plus a brute-force oracle.

A sub-component's type signature is the set of relation tags crossing its
boundary together with the crossing-edge count. Two cheap rejection rules:

  A: the boundary tag sets differ
  B: the boundary degrees differ, or the member counts differ

Passing both rules means "possibly isomorphic", nothing stronger: the filter
is sound (it never rejects a truly isomorphic pair) but incomplete. The
brute-force oracle settles small cases exactly by searching all bijections
that preserve internal edges (kind and label, direction included) and each
concept's boundary signature.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import kernels
from .errors import SizeLimitError
from .model import ComponentModel, Relation
from .transform import flatten_concepts

# Factorial search; 10! permutations is the practical ceiling.
MAX_ORACLE_SIZE = 10


@dataclass(frozen=True)
class SubComponent:
    """A nonempty subset of a component's (flattened) concepts."""

    parent: ComponentModel
    members: frozenset[str]

    def __post_init__(self):
        order, canon, _ = flatten_concepts(self.parent)
        if not self.members:
            raise ValueError("sub-component needs at least one member concept")
        resolved = set()
        for name in self.members:
            if name not in canon:
                raise ValueError(
                    f"concept {name!r} is not part of component {self.parent.name!r}"
                )
            resolved.add(canon[name])
        # Store canonical spellings so membership tests line up with the
        # flattened relation endpoints.
        object.__setattr__(self, "members", frozenset(resolved))

    def member_list(self) -> list[str]:
        order, _, _ = flatten_concepts(self.parent)
        return [name for name in order if name in self.members]


def whole(model: ComponentModel) -> SubComponent:
    order, _, _ = flatten_concepts(model)
    return SubComponent(model, frozenset(order))


def _flat_relations(model: ComponentModel) -> list[Relation]:
    """Relations over canonical concept names, exact duplicates removed."""
    _, canon, _ = flatten_concepts(model)
    out: list[Relation] = []
    seen = set()
    for s in model.structures:
        for r in s.relations:
            resolved = Relation(canon[r.source], canon[r.target], r.kind, r.label, r.cardinality)
            key = (resolved.source, resolved.target, resolved.kind, resolved.label, resolved.cardinality)
            if key not in seen:
                seen.add(key)
                out.append(resolved)
    return out


def _tag(r: Relation) -> str:
    return f"{r.kind.value}:{r.label or ''}"


@dataclass(frozen=True)
class TypeSignature:
    """Boundary fingerprint: tag set plus crossing degree (with multiplicity)."""

    label_set: frozenset[str]
    degree: int

    def __post_init__(self):
        if self.degree < 0:
            raise ValueError("degree must be >= 0")
        if (self.degree == 0) != (not self.label_set):
            raise ValueError("label set must be empty exactly when degree is 0")
        if self.degree > 0 and self.degree < len(self.label_set):
            raise ValueError("degree counts every crossing edge, so it bounds the tag set")


def set_type(s: SubComponent) -> TypeSignature:
    """Tags and count of relations with exactly one endpoint inside `s`."""
    tags = set()
    degree = 0
    for r in _flat_relations(s.parent):
        if (r.source in s.members) != (r.target in s.members):
            tags.add(_tag(r))
            degree += 1
    return TypeSignature(frozenset(tags), degree)


@dataclass(frozen=True)
class Verdict:
    non_isomorphic: bool
    fired_rule: str | None = None

    def __post_init__(self):
        if self.non_isomorphic and self.fired_rule not in ("A", "B"):
            raise ValueError("a non-isomorphic verdict names the rule that fired")
        if not self.non_isomorphic and self.fired_rule is not None:
            raise ValueError("possibly-isomorphic verdicts carry no rule")

    @property
    def possibly_isomorphic(self) -> bool:
        return not self.non_isomorphic

    def describe(self) -> str:
        if self.non_isomorphic:
            return f"nonIsomorphic({self.fired_rule})"
        return "possiblyIsomorphic"


POSSIBLY_ISOMORPHIC = Verdict(False)


def non_iso_check(s1: SubComponent, s2: SubComponent) -> Verdict:
    """Cheap sound rejection: rule A on tag sets, rule B on degrees/sizes."""
    t1, t2 = set_type(s1), set_type(s2)
    if t1.label_set != t2.label_set:
        return Verdict(True, "A")
    if t1.degree != t2.degree or len(s1.members) != len(s2.members):
        return Verdict(True, "B")
    return POSSIBLY_ISOMORPHIC


def _encode(
    s: SubComponent, interner: dict[tuple, int]
) -> tuple[int, list[int], list[int]]:
    """Pack a sub-component into the kernel's integer matrices.

    Matrix cell (i, j) holds an interned code for the multiset of internal
    edge tags from member i to member j (diagonal: self-loops). The boundary
    vector holds one code per member: its multiset of (direction, tag) pairs
    over boundary edges.
    """
    members = s.member_list()
    index = {name: i for i, name in enumerate(members)}
    n = len(members)

    cells: list[list[str]] = [[] for _ in range(n * n)]
    boundary: list[list[tuple[str, str]]] = [[] for _ in range(n)]
    for r in _flat_relations(s.parent):
        inside_src = r.source in s.members
        inside_dst = r.target in s.members
        if inside_src and inside_dst:
            cells[index[r.source] * n + index[r.target]].append(_tag(r))
        elif inside_src:
            boundary[index[r.source]].append(("out", _tag(r)))
        elif inside_dst:
            boundary[index[r.target]].append(("in", _tag(r)))

    def intern(key: tuple) -> int:
        if key not in interner:
            interner[key] = len(interner)
        return interner[key]

    matrix = [intern(tuple(sorted(cell))) for cell in cells]
    bvec = [intern(tuple(sorted(b))) for b in boundary]
    return n, matrix, bvec


def brute_force_isomorphic(s1: SubComponent, s2: SubComponent) -> bool:
    """Exact answer by exhaustive bijection search (small inputs only)."""
    n1, n2 = len(s1.members), len(s2.members)
    if n1 > MAX_ORACLE_SIZE or n2 > MAX_ORACLE_SIZE:
        raise SizeLimitError(
            f"brute-force search is capped at {MAX_ORACLE_SIZE} member concepts"
        )
    if n1 != n2:
        return False
    interner: dict[tuple, int] = {}
    n, m1, b1 = _encode(s1, interner)
    _, m2, b2 = _encode(s2, interner)
    return kernels.iso_exists(n, m1, m2, b1, b2)
