"""Translate validated conceptual models into executable simulation programs.

A compiled program holds one population schema per component, one rule per
interaction (a strict bijection, so listings and audits line up with the
source model), and the implicit lifecycle rules the engine applies to every
limited biotic pool. Unit conversion happens here: per-second physiological
rates become kg/month, and large populations get a super-individual scale
so agent counts stay bounded.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import asdict, dataclass
from enum import Enum

from .errors import CompileError, InvalidModelError
from .model import (
    AFFECT_LIKE_KINDS,
    Component,
    ComponentKind,
    ConceptualModel,
    InteractionKind,
    SpeciesAttributes,
)
from .validation import validate_model

SECONDS_PER_MONTH = 2_592_000


class RuleKind(str, Enum):
    AFFECT = "affect"
    CONSUME = "consume"
    DESTROY = "destroy"
    PRODUCE = "produce"
    BECOME_ON_DEATH = "become_on_death"


# Phase order the engine executes within a month; becomes-on-death rules run
# inside the mortality phase and therefore sort last.
_KIND_PHASE = {
    RuleKind.AFFECT: 0,
    RuleKind.CONSUME: 1,
    RuleKind.DESTROY: 1,
    RuleKind.PRODUCE: 2,
    RuleKind.BECOME_ON_DEATH: 3,
}

_RULE_KIND_FOR_INTERACTION = {
    InteractionKind.AFFECTS: RuleKind.AFFECT,
    InteractionKind.INFECTS: RuleKind.AFFECT,
    InteractionKind.PARASITE_OF: RuleKind.AFFECT,
    InteractionKind.CONSUMES: RuleKind.CONSUME,
    InteractionKind.DESTROYS: RuleKind.DESTROY,
    InteractionKind.PRODUCES: RuleKind.PRODUCE,
    InteractionKind.BECOMES_ON_DEATH: RuleKind.BECOME_ON_DEATH,
}


@dataclass(frozen=True)
class SimSettings:
    """Engine knobs baked into a compiled program.

    agent_cap bounds per-pool agent counts via super-individual scaling.
    starvation_fraction sets the death threshold as a fraction of reference
    carbon. spread_initial_ages draws starting ages uniformly over the
    lifespan instead of starting every agent at age zero.
    """

    agent_cap: int = 10_000
    starvation_fraction: float = 0.25
    default_half_saturation: float = 100.0
    spread_initial_ages: bool = True

    def as_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class PopulationSchema:
    index: int
    component_id: str
    name: str
    biotic: bool
    unlimited: bool
    scale: int
    initial_agents: int
    initial_amount: float
    attributes: SpeciesAttributes | None
    # monthly per-agent rates, already multiplied by scale
    monthly_respiration: float
    monthly_photosynthesis: float
    reference_carbon: float

    @property
    def initial_count(self) -> int:
        """Represented individuals at month zero."""
        return self.initial_agents * self.scale

    def as_dict(self) -> dict:
        d = {
            "index": self.index,
            "component_id": self.component_id,
            "name": self.name,
            "biotic": self.biotic,
            "unlimited": self.unlimited,
            "scale": self.scale,
            "initial_agents": self.initial_agents,
            "initial_amount": self.initial_amount,
            "monthly_respiration": self.monthly_respiration,
            "monthly_photosynthesis": self.monthly_photosynthesis,
            "reference_carbon": self.reference_carbon,
        }
        if self.attributes is not None:
            d["attributes"] = self.attributes.as_dict()
        return d


@dataclass(frozen=True)
class Rule:
    rule_id: str
    index: int
    kind: RuleKind
    source_pool: int
    target_pool: int
    origin_id: str
    origin_kind: InteractionKind
    enabled: bool = True
    growth_modifier: float = 0.0
    produce_probability: float = 0.0
    produce_amount: float = 0.0
    half_saturation: float = 100.0
    destroy_fraction: float = 1.0

    def as_dict(self) -> dict:
        return {
            "rule_id": self.rule_id,
            "index": self.index,
            "kind": self.kind.value,
            "source_pool": self.source_pool,
            "target_pool": self.target_pool,
            "origin_id": self.origin_id,
            "origin_kind": self.origin_kind.value,
            "enabled": self.enabled,
            "growth_modifier": self.growth_modifier,
            "produce_probability": self.produce_probability,
            "produce_amount": self.produce_amount,
            "half_saturation": self.half_saturation,
            "destroy_fraction": self.destroy_fraction,
        }


@dataclass(frozen=True)
class LifecycleRule:
    """Implicit per-pool behavior: metabolism, aging, reproduction."""

    pool: int
    kind: str  # "metabolism" | "aging" | "reproduction"

    def as_dict(self) -> dict:
        return {"pool": self.pool, "kind": self.kind}


@dataclass(frozen=True)
class SimProgram:
    source_model_id: str
    model_name: str
    populations: tuple[PopulationSchema, ...]
    rules: tuple[Rule, ...]
    lifecycle: tuple[LifecycleRule, ...]
    settings: SimSettings

    def pool_index(self, component_id: str) -> int:
        for schema in self.populations:
            if schema.component_id == component_id:
                return schema.index
        raise KeyError(component_id)

    def as_dict(self) -> dict:
        return {
            "source_model_id": self.source_model_id,
            "model_name": self.model_name,
            "populations": [p.as_dict() for p in self.populations],
            "rules": [r.as_dict() for r in self.rules],
            "lifecycle": [r.as_dict() for r in self.lifecycle],
            "settings": self.settings.as_dict(),
        }

    def program_hash(self) -> str:
        canonical = json.dumps(self.as_dict(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


def compile_model(model: ConceptualModel, settings: SimSettings | None = None) -> SimProgram:
    """Compile a conceptual model into a runnable program.

    Total on valid models: every valid model either compiles or raises
    CompileError with a stable code. Pure and deterministic - no clock, no
    randomness, no ambient configuration.
    """
    settings = settings or SimSettings()
    report = validate_model(model)
    if not report.valid:
        raise InvalidModelError(report)

    pools: list[PopulationSchema] = []
    index_of: dict[str, int] = {}
    for position, comp in enumerate(model.components):
        schema = _plan_population(position, comp, settings)
        pools.append(schema)
        index_of[comp.id] = position

    habitat_of = {c.id: c.habitat_id for c in model.components}
    drafts = []
    for inter in model.interactions:
        kind = _RULE_KIND_FOR_INTERACTION[inter.kind]
        src = pools[index_of[inter.source_id]]
        dst = pools[index_of[inter.target_id]]
        _check_endpoints(kind, inter, src, dst)
        src_hab = habitat_of[inter.source_id]
        dst_hab = habitat_of[inter.target_id]
        enabled = src_hab is None or dst_hab is None or src_hab == dst_hab
        params = inter.params
        drafts.append(
            dict(
                rule_id=f"r-{inter.id}",
                kind=kind,
                source_pool=src.index,
                target_pool=dst.index,
                origin_id=inter.id,
                origin_kind=inter.kind,
                enabled=enabled,
                growth_modifier=params.growth_modifier if params.growth_modifier is not None else 0.0,
                produce_probability=params.produce_probability if params.produce_probability is not None else 0.0,
                produce_amount=params.produce_amount if params.produce_amount is not None else 0.0,
                half_saturation=(
                    params.encounter_half_saturation
                    if params.encounter_half_saturation is not None
                    else settings.default_half_saturation
                ),
                destroy_fraction=params.destroy_fraction if params.destroy_fraction is not None else 1.0,
            )
        )

    # Canonical order: phase group first, then source-model interaction order.
    drafts.sort(key=lambda d: _KIND_PHASE[d["kind"]])
    rules = tuple(Rule(index=i, **draft) for i, draft in enumerate(drafts))

    lifecycle = []
    for schema in pools:
        if schema.biotic and not schema.unlimited:
            lifecycle.append(LifecycleRule(schema.index, "metabolism"))
            lifecycle.append(LifecycleRule(schema.index, "aging"))
            lifecycle.append(LifecycleRule(schema.index, "reproduction"))

    return SimProgram(
        source_model_id=model.id,
        model_name=model.name,
        populations=tuple(pools),
        rules=rules,
        lifecycle=tuple(lifecycle),
        settings=settings,
    )


def _plan_population(index: int, comp: Component, settings: SimSettings) -> PopulationSchema:
    if comp.kind is ComponentKind.BIOTIC:
        attrs = comp.attributes
        initial = int(comp.initial_population or 0)
        scale = 1
        if initial > settings.agent_cap:
            scale = math.ceil(initial / settings.agent_cap)
        agents = math.ceil(initial / scale) if initial else 0
        return PopulationSchema(
            index=index,
            component_id=comp.id,
            name=comp.name,
            biotic=True,
            unlimited=comp.unlimited,
            scale=scale,
            initial_agents=agents,
            initial_amount=0.0,
            attributes=attrs,
            monthly_respiration=attrs.respiratory_rate * SECONDS_PER_MONTH * scale,
            monthly_photosynthesis=attrs.photosynthesis_rate * SECONDS_PER_MONTH * scale,
            reference_carbon=attrs.carbon_biomass * scale,
        )
    return PopulationSchema(
        index=index,
        component_id=comp.id,
        name=comp.name,
        biotic=False,
        unlimited=comp.unlimited,
        scale=1,
        initial_agents=0,
        initial_amount=float(comp.initial_amount or 0.0),
        attributes=None,
        monthly_respiration=0.0,
        monthly_photosynthesis=0.0,
        reference_carbon=0.0,
    )


def _check_endpoints(kind: RuleKind, inter, src: PopulationSchema, dst: PopulationSchema) -> None:
    def fail(code: str, detail: str) -> None:
        raise CompileError(code, f"interaction {inter.id!r}: {detail}")

    if kind is RuleKind.BECOME_ON_DEATH:
        if dst.biotic:
            fail("becomes-target-not-abiotic", "becomes_on_death must target an abiotic pool")
        if not src.biotic:
            fail("becomes-source-not-biotic", "becomes_on_death source must be a biotic pool")
    elif kind is RuleKind.PRODUCE:
        if dst.biotic:
            fail("produce-target-not-abiotic", "produces must target an abiotic pool")
    elif kind in (RuleKind.CONSUME, RuleKind.DESTROY):
        if not src.biotic:
            fail(f"{kind.value}-source-not-biotic", f"{kind.value} source must be a biotic pool")
        if src.unlimited:
            # frozen boundary pools never act, they only get acted upon
            fail("unlimited-source", f"unlimited pool cannot be a {kind.value} source")
        if kind is RuleKind.DESTROY and not dst.biotic:
            fail("destroy-target-not-biotic", "destroys must target a biotic pool")


def emit_listing(program: SimProgram) -> str:
    """Human-readable, diffable rule listing with resolved parameters."""
    lines = [
        f"program {program.program_hash()}",
        f"model {program.source_model_id} ({program.model_name})",
        "settings "
        + ", ".join(f"{k}={v}" for k, v in sorted(program.settings.as_dict().items())),
        "",
        "pools:",
    ]
    for p in program.populations:
        if p.biotic:
            mode = "unlimited" if p.unlimited else "limited"
            lines.append(
                f"  [{p.index}] BIOTIC {p.name} ({mode}) agents={p.initial_agents} scale={p.scale} "
                f"resp={p.monthly_respiration:.6g} kg/month photo={p.monthly_photosynthesis:.6g} kg/month "
                f"ref={p.reference_carbon:.6g} kg"
            )
        else:
            mode = "unlimited" if p.unlimited else "limited"
            lines.append(
                f"  [{p.index}] ABIOTIC {p.name} ({mode}) amount={p.initial_amount:.6g} kg"
            )
    lines.append("")
    lines.append("rules:")
    for r in program.rules:
        lines.append(_rule_line(program, r))
    lines.append("")
    lines.append("lifecycle:")
    for lc in program.lifecycle:
        name = program.populations[lc.pool].name
        lines.append(f"{lc.kind.upper()} {name}")
    return "\n".join(lines) + "\n"


def _rule_line(program: SimProgram, rule: Rule) -> str:
    src = program.populations[rule.source_pool].name
    dst = program.populations[rule.target_pool].name
    parts: list[str] = []
    if rule.kind is RuleKind.AFFECT:
        parts.append(f"growth_modifier={rule.growth_modifier:g}")
        if rule.origin_kind is not InteractionKind.AFFECTS:
            parts.append(f"origin={rule.origin_kind.value}")
    elif rule.kind is RuleKind.CONSUME:
        parts.append(f"half_saturation={rule.half_saturation:g}")
    elif rule.kind is RuleKind.DESTROY:
        parts.append(f"half_saturation={rule.half_saturation:g}")
        parts.append(f"destroy_fraction={rule.destroy_fraction:g}")
    elif rule.kind is RuleKind.PRODUCE:
        parts.append(f"probability={rule.produce_probability:g}")
        parts.append(f"amount={rule.produce_amount:g} kg")
    if not rule.enabled:
        parts.append("disabled=habitat-mismatch")
    body = "{" + ", ".join(parts) + "}"
    return f"{rule.kind.name.replace('_', '-')} {src} -> {dst} {body}"
