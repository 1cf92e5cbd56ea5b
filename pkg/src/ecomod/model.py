"""Core domain types for conceptual ecosystem models.

A conceptual model is a directed graph: components (biotic populations and
abiotic substances) connected by typed interactions, optionally grouped into
habitats. All types here are immutable value objects; anything that checks
or transforms them lives in :mod:`ecomod.validation`, :mod:`ecomod.metrics`
and :mod:`ecomod.codec`.

Units are fixed by field name and never carried at runtime: durations are
months, masses are kg, metabolic rates are kg/s.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum


class ComponentKind(str, Enum):
    BIOTIC = "biotic"
    ABIOTIC = "abiotic"


class Category(str, Enum):
    """Modeler-assigned role annotation, used by the creativity metric."""

    PREDATOR = "predator"
    PREY = "prey"
    COMPETITOR = "competitor"
    PATHOGEN = "pathogen"
    SOCIAL_FACTOR = "social_factor"
    ENVIRONMENTAL_FACTOR = "environmental_factor"
    UNCATEGORIZED = "uncategorized"


class InteractionKind(str, Enum):
    DESTROYS = "destroys"
    PRODUCES = "produces"
    CONSUMES = "consumes"
    BECOMES_ON_DEATH = "becomes_on_death"
    AFFECTS = "affects"
    INFECTS = "infects"
    PARASITE_OF = "parasite_of"


# Infects / parasite_of are accepted as distinct kinds (they count separately
# in the creativity metric) but execute as affects-with-negative-modifier.
AFFECT_LIKE_KINDS = frozenset(
    {InteractionKind.AFFECTS, InteractionKind.INFECTS, InteractionKind.PARASITE_OF}
)

ATTRIBUTE_FIELDS = (
    "lifespan",
    "body_mass",
    "carbon_biomass",
    "respiratory_rate",
    "photosynthesis_rate",
    "assimilation_efficiency",
    "reproductive_maturity",
    "reproductive_interval",
    "offspring_count",
)


@dataclass(frozen=True)
class SpeciesAttributes:
    """Per-population simulation parameters.

    lifespan, reproductive_maturity, reproductive_interval: months.
    body_mass, carbon_biomass: kg per individual.
    respiratory_rate, photosynthesis_rate: kg/s per individual.
    assimilation_efficiency: fraction of consumed carbon retained, [0, 1].
    offspring_count: average offspring per reproduction event (may be
    fractional; the engine rounds stochastically).
    """

    lifespan: float
    body_mass: float
    carbon_biomass: float
    respiratory_rate: float
    photosynthesis_rate: float
    assimilation_efficiency: float
    reproductive_maturity: float
    reproductive_interval: float
    offspring_count: float

    def as_dict(self) -> dict[str, float]:
        return {name: getattr(self, name) for name in ATTRIBUTE_FIELDS}


def attribute_issues(attrs: SpeciesAttributes) -> list[tuple[str, str]]:
    """Range-check species attributes.

    Returns ``(field, message)`` pairs; empty means every value is in range.
    Shared by the model validator and the trait store so both report the
    same violations. Values are also rejected when non-finite.
    """
    issues: list[tuple[str, str]] = []

    def bad(name: str, msg: str) -> None:
        issues.append((name, msg))

    for name in ATTRIBUTE_FIELDS:
        value = getattr(attrs, name)
        if not isinstance(value, (int, float)) or not math.isfinite(value):
            bad(name, f"{name} must be a finite number")
            return issues

    if attrs.lifespan <= 0:
        bad("lifespan", "lifespan must be > 0 months")
    if attrs.body_mass <= 0:
        bad("body_mass", "body_mass must be > 0 kg")
    if attrs.carbon_biomass <= 0:
        bad("carbon_biomass", "carbon_biomass must be > 0 kg")
    elif attrs.carbon_biomass > attrs.body_mass > 0:
        bad("carbon_biomass", "carbon_biomass cannot exceed body_mass")
    if attrs.respiratory_rate < 0:
        bad("respiratory_rate", "respiratory_rate must be >= 0 kg/s")
    if attrs.photosynthesis_rate < 0:
        bad("photosynthesis_rate", "photosynthesis_rate must be >= 0 kg/s")
    if not 0.0 <= attrs.assimilation_efficiency <= 1.0:
        bad("assimilation_efficiency", "assimilation_efficiency must be within [0.0, 1.0]")
    if attrs.reproductive_maturity < 0:
        bad("reproductive_maturity", "reproductive_maturity must be >= 0 months")
    elif attrs.lifespan > 0 and attrs.reproductive_maturity >= attrs.lifespan:
        # A population that matures at or after its lifespan can never
        # reproduce; almost certainly a data-entry mistake.
        bad("reproductive_maturity", "reproductive_maturity must be < lifespan")
    if attrs.reproductive_interval <= 0:
        bad("reproductive_interval", "reproductive_interval must be > 0 months")
    if attrs.offspring_count < 0:
        bad("offspring_count", "offspring_count must be >= 0")
    return issues


@dataclass(frozen=True)
class InteractionParams:
    """Kind-specific interaction parameters; each field is meaningful only
    for the kinds noted, and must be left unset otherwise.

    growth_modifier: dimensionless in [-1, 1] (affects / infects / parasite_of).
    produce_probability: per-emitter monthly probability in [0, 1] (produces).
    produce_amount: kg emitted per event, > 0 (produces).
    encounter_half_saturation: prey count at which feeding succeeds half the
        time, > 0 (consumes / destroys; engine default 100).
    destroy_fraction: fraction of target carbon lost per event, (0, 1]
        (destroys; engine default 1.0).
    """

    growth_modifier: float | None = None
    produce_probability: float | None = None
    produce_amount: float | None = None
    encounter_half_saturation: float | None = None
    destroy_fraction: float | None = None


@dataclass(frozen=True)
class Interaction:
    id: str
    kind: InteractionKind
    source_id: str
    target_id: str
    params: InteractionParams = field(default_factory=InteractionParams)


@dataclass(frozen=True)
class Habitat:
    id: str
    name: str


@dataclass(frozen=True)
class Component:
    """One node of the model graph.

    Biotic components carry ``attributes`` and ``initial_population``
    (individual count); abiotic components carry ``initial_amount`` (kg) and
    no attributes. ``unlimited`` marks a boundary resource that never
    depletes. ``category`` is a modeler annotation, never inferred from
    trait data.
    """

    id: str
    name: str
    kind: ComponentKind
    category: Category = Category.UNCATEGORIZED
    taxon_id: str | None = None
    attributes: SpeciesAttributes | None = None
    initial_population: int | None = None
    initial_amount: float | None = None
    unlimited: bool = False
    habitat_id: str | None = None


@dataclass(frozen=True)
class ConceptualModel:
    """A named component-interaction graph plus per-component parameters."""

    id: str
    name: str
    components: tuple[Component, ...] = ()
    interactions: tuple[Interaction, ...] = ()
    habitats: tuple[Habitat, ...] = ()
    baseline_component_ids: frozenset[str] = frozenset()
    notes: str | None = None

    def component_by_id(self, component_id: str) -> Component | None:
        for c in self.components:
            if c.id == component_id:
                return c
        return None


@dataclass(frozen=True)
class ModelScores:
    complexity: int
    creativity: int
