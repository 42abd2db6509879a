"""Conflict detection, the resolution-rule catalog and the action recommender.

Every correspondence becomes one Conflict: synonyms default to renaming both
concepts to one shared name, homonyms to renaming them apart, and equivalent
pairs enter the queue as merge opportunities. Designers may pick any cataloged
alternative; their choices are appended to a history keyed by
(relation, context). Once an action's frequency in a context reaches the
threshold it replaces the catalog default as the recommendation.

A conflict's context is its relation kind plus the nearest common is-a
ancestor of the two anchors in the domain ontology ("unanchored" when either
side has no anchor or no common ancestor exists).
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from datetime import datetime, timezone
from enum import Enum
from pathlib import Path

from .align import Correspondence, CorrespondenceOntology, SemanticRelation
from .errors import ParseError, StateError
from .model import normalize_label
from .ontology import Ontology, nearest_common_ancestor

UNANCHORED = "unanchored"


class ActionKind(str, Enum):
    RENAME_SAME = "renameSame"
    RENAME_DIFFERENT = "renameDifferent"
    MERGE_CONCEPTS = "mergeConcepts"
    DELETE_ONE = "deleteOne"
    KEEP_BOTH = "keepBoth"


class Side(str, Enum):
    SOURCE = "source"
    TARGET = "target"


@dataclass(frozen=True)
class ResolutionAction:
    """A concrete action: a kind plus the arguments that kind needs.

    renameSame(label) / renameDifferent(label_a, label_b) / deleteOne(keep);
    mergeConcepts and keepBoth carry no arguments. Argument fields may be left
    None to request the deterministic defaults at application time.
    """

    kind: ActionKind
    label: str | None = None
    label_a: str | None = None
    label_b: str | None = None
    keep: Side | None = None

    def __post_init__(self):
        if self.kind is ActionKind.RENAME_DIFFERENT and self.label_a and self.label_b:
            if normalize_label(self.label_a) == normalize_label(self.label_b):
                raise ValueError("renameDifferent labels must differ after normalization")

    def describe(self) -> str:
        if self.kind is ActionKind.RENAME_SAME:
            return f"renameSame({self.label or '?'})"
        if self.kind is ActionKind.RENAME_DIFFERENT:
            return f"renameDifferent({self.label_a or '?'},{self.label_b or '?'})"
        if self.kind is ActionKind.DELETE_ONE:
            return f"deleteOne({(self.keep or Side.SOURCE).value})"
        return self.kind.value


@dataclass(frozen=True)
class RuleCatalogEntry:
    relation: SemanticRelation
    default: ActionKind
    alternatives: tuple[ActionKind, ...]

    def __post_init__(self):
        if self.default in self.alternatives:
            raise ValueError("default action must not repeat in alternatives")

    def legal_kinds(self) -> tuple[ActionKind, ...]:
        return (self.default, *self.alternatives)


CATALOG: dict[SemanticRelation, RuleCatalogEntry] = {
    SemanticRelation.SYNONYM: RuleCatalogEntry(
        SemanticRelation.SYNONYM,
        ActionKind.RENAME_SAME,
        (ActionKind.MERGE_CONCEPTS, ActionKind.DELETE_ONE, ActionKind.KEEP_BOTH),
    ),
    SemanticRelation.HOMONYM: RuleCatalogEntry(
        SemanticRelation.HOMONYM,
        ActionKind.RENAME_DIFFERENT,
        (ActionKind.KEEP_BOTH,),
    ),
    SemanticRelation.EQUIVALENT: RuleCatalogEntry(
        SemanticRelation.EQUIVALENT,
        ActionKind.MERGE_CONCEPTS,
        (ActionKind.KEEP_BOTH, ActionKind.DELETE_ONE),
    ),
}


def lookup_rule(relation: SemanticRelation) -> RuleCatalogEntry:
    return CATALOG[relation]


def context_key(c: Correspondence, domain: Ontology | None) -> str:
    """"<relation>|<nearest common is-a ancestor of the anchors>", with
    "unanchored" when either anchor is missing or no common ancestor exists."""
    context = UNANCHORED
    if c.source_anchor is not None and c.target_anchor is not None:
        if c.source_anchor == c.target_anchor:
            context = c.source_anchor
        elif domain is not None:
            ancestor = nearest_common_ancestor(domain, c.source_anchor, c.target_anchor)
            if ancestor is not None:
                context = ancestor
    return f"{c.relation.value}|{context}"


@dataclass(frozen=True)
class HistoryRecord:
    timestamp: str
    relation: SemanticRelation
    context_key: str
    action_kind: ActionKind


@dataclass(frozen=True)
class ActionHistory:
    """Append-only designer-choice log driving the recommender."""

    records: tuple[HistoryRecord, ...] = ()
    threshold: int = 3

    def __post_init__(self):
        if self.threshold < 1:
            raise ValueError("threshold must be >= 1")

    def matching(self, relation: SemanticRelation, context: str) -> list[HistoryRecord]:
        return [r for r in self.records if r.relation is relation and r.context_key == context]

    def with_record(self, record: HistoryRecord) -> "ActionHistory":
        return replace(self, records=self.records + (record,))


@dataclass
class Conflict:
    """One detected conflict (or merge opportunity) awaiting a decision."""

    index: int
    correspondence: Correspondence
    context_key: str
    default_action: ResolutionAction
    recommended_action: ResolutionAction
    decided_action: ResolutionAction | None = None

    @property
    def relation(self) -> SemanticRelation:
        return self.correspondence.relation

    @property
    def pending(self) -> bool:
        return self.decided_action is None

    def legal_kinds(self) -> tuple[ActionKind, ...]:
        return lookup_rule(self.relation).legal_kinds()

    def decide(self, action: ResolutionAction) -> None:
        if not self.pending:
            raise StateError(f"conflict {self.index} is already decided")
        if action.kind not in self.legal_kinds():
            raise StateError(
                f"action {action.kind.value!r} is not legal for a {self.relation.value} conflict"
            )
        self.decided_action = action


def default_rename_labels(c: Correspondence) -> tuple[str, str]:
    """Deterministic rename-apart labels: <concept>_<component> on each side."""
    return (
        f"{c.source.concept}_{c.source.component}",
        f"{c.target.concept}_{c.target.component}",
    )


def concretize(kind: ActionKind, c: Correspondence, domain: Ontology | None) -> ResolutionAction:
    """Fill in an action's default arguments for a given correspondence."""
    if kind is ActionKind.RENAME_SAME:
        from .merge import choose_rename_label

        return ResolutionAction(kind, label=choose_rename_label(c, domain))
    if kind in (ActionKind.RENAME_DIFFERENT, ActionKind.KEEP_BOTH):
        label_a, label_b = default_rename_labels(c)
        if kind is ActionKind.RENAME_DIFFERENT:
            return ResolutionAction(kind, label_a=label_a, label_b=label_b)
        return ResolutionAction(kind)
    if kind is ActionKind.DELETE_ONE:
        return ResolutionAction(kind, keep=Side.SOURCE)
    return ResolutionAction(kind)


def recommend(conflict: Conflict, history: ActionHistory | None) -> ResolutionAction:
    """History-driven recommendation for a conflict.

    Counts past decisions matching the conflict's (relation, context). When
    the top count reaches the history threshold, that action is recommended
    (ties go to the most recently recorded action); otherwise the catalog
    default stands.
    """
    if history is None:
        return conflict.default_action
    records = history.matching(conflict.relation, conflict.context_key)
    if not records:
        return conflict.default_action
    counts: dict[ActionKind, int] = {}
    for r in records:
        counts[r.action_kind] = counts.get(r.action_kind, 0) + 1
    top = max(counts.values())
    if top < history.threshold:
        return conflict.default_action
    tied = {kind for kind, n in counts.items() if n == top}
    if len(tied) == 1:
        chosen = tied.pop()
    else:
        chosen = next(r.action_kind for r in reversed(records) if r.action_kind in tied)
    if chosen is conflict.default_action.kind:
        return conflict.default_action
    return concretize(chosen, conflict.correspondence, None)


def detect_conflicts(
    co: CorrespondenceOntology,
    domain: Ontology | None = None,
    history: ActionHistory | None = None,
) -> list[Conflict]:
    """One conflict per correspondence, ordered by (relation, source id).

    Synonyms and homonyms are naming conflicts; equivalent correspondences
    are listed as merge opportunities with mergeConcepts as their default.
    """
    ordered = sorted(
        co.correspondences,
        key=lambda c: (c.relation.value, c.source.component, c.source.concept,
                       c.target.component, c.target.concept),
    )
    conflicts = []
    for index, corr in enumerate(ordered):
        entry = lookup_rule(corr.relation)
        conflict = Conflict(
            index=index,
            correspondence=corr,
            context_key=context_key(corr, domain),
            default_action=concretize(entry.default, corr, domain),
            recommended_action=ResolutionAction(entry.default),
        )
        conflict.recommended_action = recommend(conflict, history)
        conflicts.append(conflict)
    return conflicts


def record_decision(
    history: ActionHistory,
    conflict: Conflict,
    action: ResolutionAction,
    timestamp: datetime | None = None,
) -> ActionHistory:
    """Decide a pending conflict and append the choice to the history."""
    conflict.decide(action)
    when = timestamp or datetime.now(timezone.utc)
    record = HistoryRecord(
        timestamp=when.isoformat(),
        relation=conflict.relation,
        context_key=conflict.context_key,
        action_kind=action.kind,
    )
    return history.with_record(record)


def format_history_line(record: HistoryRecord) -> str:
    return f"{record.timestamp}\t{record.relation.value}\t{record.context_key}\t{record.action_kind.value}"


def parse_history(text: str, threshold: int = 3, source: str = "<history>") -> ActionHistory:
    """Parse the tab-separated persisted history file."""
    records = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 4:
            raise ParseError(lineno, 1, "4 tab-separated fields (timestamp, relation, context, action)")
        timestamp, relation, context, action = parts
        try:
            records.append(
                HistoryRecord(timestamp, SemanticRelation(relation), context, ActionKind(action))
            )
        except ValueError as exc:
            raise ParseError(lineno, 1, f"valid relation/action value ({exc})") from None
    return ActionHistory(tuple(records), threshold=threshold)


def load_history(path: str | Path | None, threshold: int = 3) -> ActionHistory:
    """Load history from a file; a missing path (or None) yields an empty history."""
    if path is None:
        return ActionHistory(threshold=threshold)
    p = Path(path)
    if not p.exists():
        return ActionHistory(threshold=threshold)
    return parse_history(p.read_text(encoding="utf-8"), threshold=threshold, source=str(p))


def append_history_line(path: str | Path, record: HistoryRecord) -> None:
    """Append one record to the persisted history (the cross-session source of truth)."""
    with open(path, "a", encoding="utf-8") as fh:
        fh.write(format_history_line(record) + "\n")
