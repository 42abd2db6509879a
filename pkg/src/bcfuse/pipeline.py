"""Shared plumbing between the CLI and the HTTP service.

Builds a workspace (parse inputs, transform, align, detect conflicts) and
provides the JSON codecs for the pieces that cross process boundaries:
actions, conflicts, models and decision files. Batch integration decides
every pending conflict with its recommendation, which with an empty history
means the catalog defaults.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Mapping, Sequence

from .align import (
    AlignmentParams,
    CorrespondenceOntology,
    ResourceSet,
    align_all,
    export_alignment,
)
from .ingest import Lexicon, parse_bcm, parse_lexicon, parse_onto, read_text
from .merge import MergeResult, integrate
from .model import ComponentModel
from .ontology import Ontology
from .resolve import (
    ActionHistory,
    ActionKind,
    Conflict,
    ResolutionAction,
    Side,
    detect_conflicts,
    load_history,
    lookup_rule,
)
from .transform import to_ontology


@dataclass
class Workspace:
    """Everything derived from one set of inputs, ready for decisions."""

    models: list[ComponentModel]
    domain: Ontology | None
    lexicon: Lexicon | None
    params: AlignmentParams
    co: CorrespondenceOntology
    conflicts: list[Conflict]
    history: ActionHistory

    def alignment_export(self) -> str:
        return export_alignment(self.co)


def build_workspace(
    components: Sequence[tuple[str, str]],
    domain_text: tuple[str, str] | None = None,
    lexicon_text: tuple[str, str] | None = None,
    history: ActionHistory | None = None,
    params: AlignmentParams | None = None,
) -> Workspace:
    """Assemble a workspace from (source-name, text) input pairs.

    Raises ParseError / ModelInvalid / OntologyInvalid for bad inputs and
    ValueError for duplicate component names; background resources are
    optional.
    """
    if not components:
        raise ValueError("at least one component is required")
    params = params or AlignmentParams()
    history = history or ActionHistory()

    models = [parse_bcm(text, source=name) for name, text in components]
    names = [m.name for m in models]
    if len(set(names)) != len(names):
        raise ValueError(f"component names must be distinct, got {names}")

    domain = parse_onto(domain_text[1], source=domain_text[0]) if domain_text else None
    lexicon = parse_lexicon(lexicon_text[1], source=lexicon_text[0]) if lexicon_text else None
    resources = ResourceSet(domain=domain, lexicon=lexicon)

    ontologies = [to_ontology(m) for m in models]
    co = align_all(ontologies, resources, params) if len(ontologies) > 1 else CorrespondenceOntology()
    conflicts = detect_conflicts(co, domain, history)
    return Workspace(
        models=models,
        domain=domain,
        lexicon=lexicon,
        params=params,
        co=co,
        conflicts=conflicts,
        history=history,
    )


def build_workspace_from_paths(
    component_paths: Sequence[str | Path],
    domain_path: str | Path | None = None,
    lexicon_path: str | Path | None = None,
    history_path: str | Path | None = None,
    threshold: int = 3,
    params: AlignmentParams | None = None,
) -> Workspace:
    components = [(str(p), read_text(p)) for p in component_paths]
    domain_text = (str(domain_path), read_text(domain_path)) if domain_path else None
    lexicon_text = (str(lexicon_path), read_text(lexicon_path)) if lexicon_path else None
    history = load_history(history_path, threshold=threshold)
    return build_workspace(components, domain_text, lexicon_text, history, params)


# ---------------------------------------------------------------- JSON wire


def action_to_json(action: ResolutionAction) -> dict[str, Any]:
    doc: dict[str, Any] = {"kind": action.kind.value}
    if action.label is not None:
        doc["label"] = action.label
    if action.label_a is not None:
        doc["labelA"] = action.label_a
    if action.label_b is not None:
        doc["labelB"] = action.label_b
    if action.keep is not None:
        doc["keep"] = action.keep.value
    return doc


def action_from_json(doc: Mapping[str, Any]) -> ResolutionAction:
    try:
        kind = ActionKind(doc["kind"])
    except (KeyError, ValueError):
        raise ValueError(f"unknown action kind in {dict(doc)!r}") from None
    keep = Side(doc["keep"]) if "keep" in doc and doc["keep"] is not None else None
    return ResolutionAction(
        kind,
        label=doc.get("label"),
        label_a=doc.get("labelA"),
        label_b=doc.get("labelB"),
        keep=keep,
    )


def conflict_to_json(cf: Conflict) -> dict[str, Any]:
    c = cf.correspondence
    return {
        "index": cf.index,
        "relation": cf.relation.value,
        "source": {"component": c.source.component, "concept": c.source.concept},
        "target": {"component": c.target.component, "concept": c.target.concept},
        "confidence": c.confidence,
        "anchor": c.anchor,
        "contextKey": cf.context_key,
        "defaultAction": action_to_json(cf.default_action),
        "recommendedAction": action_to_json(cf.recommended_action),
        "alternatives": [k.value for k in lookup_rule(cf.relation).alternatives],
        "decidedAction": action_to_json(cf.decided_action) if cf.decided_action else None,
        "pending": cf.pending,
    }


def model_to_json(model: ComponentModel) -> dict[str, Any]:
    return {
        "name": model.name,
        "kind": model.kind.value,
        "reuse": model.reuse.value,
        "structures": [
            {
                "id": s.id,
                "concepts": [
                    {
                        "name": c.name,
                        "attributes": [
                            {"name": a.name, "type": a.value_type} for a in c.attributes
                        ],
                    }
                    for c in s.concepts
                ],
                "relations": [
                    {
                        "source": r.source,
                        "target": r.target,
                        "kind": r.kind.value,
                        "label": r.label,
                        "cardinality": r.cardinality,
                    }
                    for r in s.relations
                ],
                "services": [
                    {
                        "name": sig.name,
                        "params": [{"name": p.name, "type": p.value_type} for p in sig.params],
                        "returnType": sig.return_type,
                    }
                    for sig in s.services
                ],
            }
            for s in model.structures
        ],
    }


# ------------------------------------------------------------- decisions IO


def decisions_to_json(conflicts: Sequence[Conflict]) -> str:
    """Serialize decided conflicts to the decisions-file format."""
    docs = [
        {"index": cf.index, "action": action_to_json(cf.decided_action)}
        for cf in conflicts
        if cf.decided_action is not None
    ]
    return json.dumps(docs, indent=2, sort_keys=True) + "\n"


def parse_decisions(text: str) -> list[tuple[int, ResolutionAction]]:
    doc = json.loads(text)
    if not isinstance(doc, list):
        raise ValueError("decisions file must hold a JSON array")
    out = []
    for entry in doc:
        if not isinstance(entry, dict) or "index" not in entry or "action" not in entry:
            raise ValueError(f"decision entry needs index and action: {entry!r}")
        out.append((int(entry["index"]), action_from_json(entry["action"])))
    return out


def apply_decisions(conflicts: Sequence[Conflict], decisions: Sequence[tuple[int, ResolutionAction]]) -> None:
    by_index = {cf.index: cf for cf in conflicts}
    for index, action in decisions:
        if index not in by_index:
            raise ValueError(f"decision references unknown conflict index {index}")
        by_index[index].decide(action)


def run_batch(ws: Workspace, decisions: Sequence[tuple[int, ResolutionAction]] | None = None) -> MergeResult:
    """Decide and integrate: explicit decisions first, recommendations for the rest."""
    if decisions:
        apply_decisions(ws.conflicts, decisions)
    for cf in ws.conflicts:
        if cf.pending:
            cf.decide(cf.recommended_action)
    return integrate(ws.models, ws.co, ws.conflicts, domain=ws.domain)
