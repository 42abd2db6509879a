"""bcfuse: merge business-component models through ontology alignment.

Pipeline: parse component models, transform each into an ontology, align
them pairwise against a domain ontology and lexicon, classify correspondences
(synonym / homonym / equivalent), resolve conflicts through a rule catalog
with a history-driven recommender, and integrate everything into one
component. A non-isomorphism pre-filter over sub-components is included for
cheap structural screening.
"""

from .align import (
    AlignmentParams,
    Correspondence,
    CorrespondenceOntology,
    ResourceSet,
    SemanticRelation,
    align_all,
    align_pair,
    export_alignment,
)
from .errors import BcfuseError
from .ingest import parse_bcm, parse_lexicon, parse_onto, serialize_bcm
from .merge import IntegrationReport, MergeResult, integrate
from .model import ComponentModel, canonicalize, normalize_label, validate
from .ontology import Ontology
from .resolve import (
    ActionHistory,
    ActionKind,
    Conflict,
    ResolutionAction,
    detect_conflicts,
    recommend,
)
from .transform import to_ontology

__version__ = "0.1.0"

__all__ = [
    "ActionHistory",
    "ActionKind",
    "AlignmentParams",
    "BcfuseError",
    "ComponentModel",
    "Conflict",
    "Correspondence",
    "CorrespondenceOntology",
    "IntegrationReport",
    "MergeResult",
    "Ontology",
    "ResolutionAction",
    "ResourceSet",
    "SemanticRelation",
    "align_all",
    "align_pair",
    "canonicalize",
    "detect_conflicts",
    "export_alignment",
    "integrate",
    "normalize_label",
    "parse_bcm",
    "parse_lexicon",
    "parse_onto",
    "recommend",
    "serialize_bcm",
    "to_ontology",
    "validate",
    "__version__",
]
