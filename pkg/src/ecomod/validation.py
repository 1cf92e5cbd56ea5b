"""Model validation.

``validate_model`` is a pure function: it never mutates its input, never
throws for content problems, and reports everything it finds in one pass.

Error codes (anything with severity ERROR makes the model invalid):

  duplicate-id          component / habitat / interaction ids repeat
  dangling-endpoint     interaction references a missing component
  dangling-habitat      component references a missing habitat
  dangling-baseline     baseline id set includes a missing component
  self-interaction      consumes / destroys where source == target
  missing-attributes    biotic component without species attributes
  attr-range            species attribute outside its legal range
  init-range            initial population / amount missing or negative
  kind-mismatch         biotic/abiotic field used on the wrong component kind
  param-mismatch        interaction parameter missing, out of range, or set
                        on a kind it does not apply to

Warning codes:

  no-food-source        limited biotic component that neither consumes
                        anything nor photosynthesizes (it will starve)
  uncategorized-component
  cross-habitat         interaction whose endpoints live in different
                        habitats (the engine will never fire it)
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .model import (
    AFFECT_LIKE_KINDS,
    Component,
    ComponentKind,
    ConceptualModel,
    Category,
    Interaction,
    InteractionKind,
    attribute_issues,
)


class Severity(str, Enum):
    ERROR = "error"
    WARNING = "warning"


@dataclass(frozen=True)
class Issue:
    severity: Severity
    code: str
    message: str
    subject_id: str | None = None


@dataclass(frozen=True)
class ValidationReport:
    issues: tuple[Issue, ...]

    @property
    def valid(self) -> bool:
        return not any(i.severity is Severity.ERROR for i in self.issues)

    def errors(self) -> list[Issue]:
        return [i for i in self.issues if i.severity is Severity.ERROR]

    def warnings(self) -> list[Issue]:
        return [i for i in self.issues if i.severity is Severity.WARNING]

    def as_dict(self) -> dict:
        return {
            "valid": self.valid,
            "issues": [
                {
                    "severity": i.severity.value,
                    "code": i.code,
                    "message": i.message,
                    "subject_id": i.subject_id,
                }
                for i in self.issues
            ],
        }


# Which InteractionParams fields apply to which interaction kind, and whether
# they are required there.
_PARAM_SPECS: dict[str, tuple[frozenset[InteractionKind], bool]] = {
    "growth_modifier": (AFFECT_LIKE_KINDS, True),
    "produce_probability": (frozenset({InteractionKind.PRODUCES}), True),
    "produce_amount": (frozenset({InteractionKind.PRODUCES}), True),
    "encounter_half_saturation": (
        frozenset({InteractionKind.CONSUMES, InteractionKind.DESTROYS}),
        False,
    ),
    "destroy_fraction": (frozenset({InteractionKind.DESTROYS}), False),
}


def validate_model(model: ConceptualModel, *, maturity_as_warning: bool = False) -> ValidationReport:
    """Check a decoded model against every structural and range constraint.

    ``maturity_as_warning`` downgrades the reproductive_maturity < lifespan
    check from ERROR to WARNING for stores that carry odd source data.
    """
    issues: list[Issue] = []

    def err(code: str, message: str, subject: str | None = None) -> None:
        issues.append(Issue(Severity.ERROR, code, message, subject))

    def warn(code: str, message: str, subject: str | None = None) -> None:
        issues.append(Issue(Severity.WARNING, code, message, subject))

    seen: set[str] = set()
    for comp in model.components:
        if comp.id in seen:
            err("duplicate-id", f"duplicate component id {comp.id!r}", comp.id)
        seen.add(comp.id)
    component_ids = {c.id for c in model.components}

    habitat_ids: set[str] = set()
    for hab in model.habitats:
        if hab.id in habitat_ids:
            err("duplicate-id", f"duplicate habitat id {hab.id!r}", hab.id)
        habitat_ids.add(hab.id)

    interaction_ids: set[str] = set()
    for inter in model.interactions:
        if inter.id in interaction_ids:
            err("duplicate-id", f"duplicate interaction id {inter.id!r}", inter.id)
        interaction_ids.add(inter.id)

    for comp in model.components:
        _check_component(comp, habitat_ids, err, warn, maturity_as_warning)

    for inter in model.interactions:
        _check_interaction(inter, component_ids, err)

    for baseline_id in sorted(model.baseline_component_ids):
        if baseline_id not in component_ids:
            err("dangling-baseline", f"baseline id {baseline_id!r} is not a component", baseline_id)

    _check_food_sources(model, warn)
    _check_habitat_reach(model, warn)

    return ValidationReport(issues=tuple(issues))


def _check_component(comp: Component, habitat_ids, err, warn, maturity_as_warning: bool) -> None:
    if comp.habitat_id is not None and comp.habitat_id not in habitat_ids:
        err("dangling-habitat", f"component {comp.id!r} names unknown habitat {comp.habitat_id!r}", comp.id)

    if comp.kind is ComponentKind.BIOTIC:
        if comp.attributes is None:
            err("missing-attributes", f"biotic component {comp.id!r} has no species attributes", comp.id)
        else:
            for field_name, message in attribute_issues(comp.attributes):
                if field_name == "reproductive_maturity" and "lifespan" in message and maturity_as_warning:
                    warn("attr-range", f"{comp.id!r}: {message}", comp.id)
                else:
                    err("attr-range", f"{comp.id!r}: {message}", comp.id)
        if comp.initial_population is None or comp.initial_population < 0:
            err("init-range", f"biotic component {comp.id!r} needs initial_population >= 0", comp.id)
        if comp.initial_amount is not None:
            err("kind-mismatch", f"biotic component {comp.id!r} must not carry initial_amount", comp.id)
    else:
        if comp.attributes is not None:
            err("kind-mismatch", f"abiotic component {comp.id!r} must not carry species attributes", comp.id)
        if comp.initial_population is not None:
            err("kind-mismatch", f"abiotic component {comp.id!r} must not carry initial_population", comp.id)
        if comp.initial_amount is None or comp.initial_amount < 0:
            err("init-range", f"abiotic component {comp.id!r} needs initial_amount >= 0 kg", comp.id)

    if comp.category is Category.UNCATEGORIZED:
        warn("uncategorized-component", f"component {comp.id!r} has no category", comp.id)


def _check_interaction(inter: Interaction, component_ids, err) -> None:
    for endpoint in (inter.source_id, inter.target_id):
        if endpoint not in component_ids:
            err("dangling-endpoint", f"interaction {inter.id!r} references unknown component {endpoint!r}", inter.id)

    if inter.kind in (InteractionKind.CONSUMES, InteractionKind.DESTROYS) and inter.source_id == inter.target_id:
        err("self-interaction", f"{inter.kind.value} interaction {inter.id!r} cannot target its own source", inter.id)

    params = inter.params
    for field_name, (kinds, required) in _PARAM_SPECS.items():
        value = getattr(params, field_name)
        if value is not None and inter.kind not in kinds:
            err("param-mismatch", f"interaction {inter.id!r}: {field_name} does not apply to {inter.kind.value}", inter.id)
        if value is None and required and inter.kind in kinds:
            err("param-mismatch", f"interaction {inter.id!r}: {inter.kind.value} requires {field_name}", inter.id)

    g = params.growth_modifier
    if g is not None and inter.kind in AFFECT_LIKE_KINDS:
        if not -1.0 <= g <= 1.0:
            err("param-mismatch", f"interaction {inter.id!r}: growth_modifier must be in [-1, 1]", inter.id)
        elif inter.kind is not InteractionKind.AFFECTS and g >= 0:
            # infects / parasite_of run as affects with a harmful modifier
            err("param-mismatch", f"interaction {inter.id!r}: {inter.kind.value} requires a negative growth_modifier", inter.id)
    p = params.produce_probability
    if p is not None and not 0.0 <= p <= 1.0:
        err("param-mismatch", f"interaction {inter.id!r}: produce_probability must be in [0, 1]", inter.id)
    a = params.produce_amount
    if a is not None and not a > 0:
        err("param-mismatch", f"interaction {inter.id!r}: produce_amount must be > 0 kg", inter.id)
    h = params.encounter_half_saturation
    if h is not None and not h > 0:
        err("param-mismatch", f"interaction {inter.id!r}: encounter_half_saturation must be > 0", inter.id)
    f = params.destroy_fraction
    if f is not None and not 0.0 < f <= 1.0:
        err("param-mismatch", f"interaction {inter.id!r}: destroy_fraction must be in (0, 1]", inter.id)


def _check_food_sources(model: ConceptualModel, warn) -> None:
    eats = {i.source_id for i in model.interactions if i.kind is InteractionKind.CONSUMES}
    for comp in model.components:
        if comp.kind is not ComponentKind.BIOTIC or comp.unlimited or comp.attributes is None:
            continue
        if comp.id not in eats and comp.attributes.photosynthesis_rate == 0:
            warn(
                "no-food-source",
                f"biotic component {comp.id!r} consumes nothing and does not photosynthesize; it will starve",
                comp.id,
            )


def _check_habitat_reach(model: ConceptualModel, warn) -> None:
    habitat_of = {c.id: c.habitat_id for c in model.components}
    for inter in model.interactions:
        src = habitat_of.get(inter.source_id)
        dst = habitat_of.get(inter.target_id)
        if src is not None and dst is not None and src != dst:
            warn(
                "cross-habitat",
                f"interaction {inter.id!r} spans habitats {src!r} and {dst!r} and will never fire",
                inter.id,
            )
