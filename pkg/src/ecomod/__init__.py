"""Ecological modeling workbench.

Express conceptual ecosystem models as typed component graphs, validate
and score them, compile them into agent-based simulation programs, and
execute seeded deterministic runs with full carbon accounting. Species
parameters come from a pluggable trait store; an HTTP service and CLI
wrap the whole pipeline.
"""

from .codec import decode_model, encode_model, model_to_dict
from .compiler import (
    SECONDS_PER_MONTH,
    LifecycleRule,
    PopulationSchema,
    Rule,
    RuleKind,
    SimProgram,
    SimSettings,
    compile_model,
    emit_listing,
)
from .engine import (
    Agent,
    CarbonLedger,
    PopulationSeries,
    RunResult,
    WorldState,
    batch_run,
    init_world,
    run,
    step,
)
from .errors import (
    AttributeRangeError,
    CompileError,
    DecodeError,
    EcomodError,
    EngineInvariantError,
    InvalidModelError,
    InvalidQueryError,
    StaleRevisionError,
    StorageError,
    TaxonNotFoundError,
    TransportError,
    UnsupportedKindError,
)
from .metrics import ModelScores, complexity_score, creativity_score, score_model
from .model import (
    AFFECT_LIKE_KINDS,
    ATTRIBUTE_FIELDS,
    Category,
    Component,
    ComponentKind,
    ConceptualModel,
    Habitat,
    Interaction,
    InteractionKind,
    InteractionParams,
    SpeciesAttributes,
    attribute_issues,
)
from .traits import (
    ATTRIBUTE_DEFAULTS,
    AttributeBundle,
    Provenance,
    RemoteTraitClient,
    TaxonRecord,
    TraitStore,
    bundled_store,
    default_attributes,
    fill_defaults,
)
from .validation import Issue, Severity, ValidationReport, validate_model

__version__ = "0.1.0"

__all__ = [
    "AFFECT_LIKE_KINDS",
    "ATTRIBUTE_DEFAULTS",
    "ATTRIBUTE_FIELDS",
    "Agent",
    "AttributeBundle",
    "AttributeRangeError",
    "CarbonLedger",
    "Category",
    "CompileError",
    "Component",
    "ComponentKind",
    "ConceptualModel",
    "DecodeError",
    "EcomodError",
    "EngineInvariantError",
    "Habitat",
    "Interaction",
    "InteractionKind",
    "InteractionParams",
    "InvalidModelError",
    "InvalidQueryError",
    "Issue",
    "LifecycleRule",
    "ModelScores",
    "PopulationSchema",
    "PopulationSeries",
    "Provenance",
    "RemoteTraitClient",
    "Rule",
    "RuleKind",
    "RunResult",
    "SECONDS_PER_MONTH",
    "Severity",
    "SimProgram",
    "SimSettings",
    "SpeciesAttributes",
    "StaleRevisionError",
    "StorageError",
    "TaxonRecord",
    "TaxonNotFoundError",
    "TraitStore",
    "TransportError",
    "UnsupportedKindError",
    "ValidationReport",
    "WorldState",
    "attribute_issues",
    "batch_run",
    "bundled_store",
    "compile_model",
    "complexity_score",
    "creativity_score",
    "decode_model",
    "default_attributes",
    "emit_listing",
    "encode_model",
    "fill_defaults",
    "init_world",
    "model_to_dict",
    "run",
    "score_model",
    "step",
    "validate_model",
]
