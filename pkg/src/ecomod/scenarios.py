"""Canned conceptual models: a grazing-food-chain progression and small
fixtures with known metric scores.

The progression starts from a single sheep population and grows by one
mechanism at a time (unlimited food, limited food, a sunlight growth
driver, store-measured physiology, a predator), so each model isolates one
dynamic. Later stages append components and interactions after the shared
ones, which keeps pool and rule indices stable across stages; paired-seed
runs of neighboring stages then differ only through the added mechanism.
"""

from __future__ import annotations

from functools import lru_cache

from .model import (
    Category,
    Component,
    ComponentKind,
    ConceptualModel,
    Interaction,
    InteractionKind,
    InteractionParams,
    SpeciesAttributes,
)
from .traits import bundled_store, default_attributes, fill_defaults

SHEEP_INITIAL = 20
GRASS_INITIAL = 50_000
WOLF_INITIAL = 6

# Encounter half-saturations: grass is browsed against a large standing
# population, wolves hunt a small flock.
GRASS_HALF_SATURATION = 20_000.0
SHEEP_HALF_SATURATION = 150.0

SUNLIGHT_BOOST = 0.5


@lru_cache(maxsize=None)
def _store_attributes(taxon_id: str) -> SpeciesAttributes:
    bundle = fill_defaults(bundled_store().fetch_attributes(taxon_id))
    return bundle.species_attributes()


def grass_attributes() -> SpeciesAttributes:
    return _store_attributes("pp-1")


def measured_sheep_attributes() -> SpeciesAttributes:
    return _store_attributes("oa-1")


def wolf_attributes() -> SpeciesAttributes:
    return _store_attributes("cl-1")


def _sheep(attrs: SpeciesAttributes) -> Component:
    return Component(
        id="sheep",
        name="sheep",
        kind=ComponentKind.BIOTIC,
        category=Category.PREY,
        taxon_id="oa-1",
        attributes=attrs,
        initial_population=SHEEP_INITIAL,
    )


def _grass(unlimited: bool) -> Component:
    return Component(
        id="grass",
        name="grass",
        kind=ComponentKind.BIOTIC,
        category=Category.PREY,
        taxon_id="pp-1",
        attributes=grass_attributes(),
        initial_population=GRASS_INITIAL,
        unlimited=unlimited,
    )


def _sunlight() -> Component:
    return Component(
        id="sunlight",
        name="sunlight",
        kind=ComponentKind.ABIOTIC,
        category=Category.ENVIRONMENTAL_FACTOR,
        initial_amount=1000.0,
        unlimited=True,
    )


def _wolf() -> Component:
    return Component(
        id="wolf",
        name="wolf",
        kind=ComponentKind.BIOTIC,
        category=Category.PREDATOR,
        taxon_id="cl-1",
        attributes=wolf_attributes(),
        initial_population=WOLF_INITIAL,
    )


def _grazing(target: str = "grass") -> Interaction:
    return Interaction(
        id="sheep-eats-grass",
        kind=InteractionKind.CONSUMES,
        source_id="sheep",
        target_id=target,
        params=InteractionParams(encounter_half_saturation=GRASS_HALF_SATURATION),
    )


def _sunlight_boost() -> Interaction:
    return Interaction(
        id="sunlight-feeds-grass",
        kind=InteractionKind.AFFECTS,
        source_id="sunlight",
        target_id="grass",
        params=InteractionParams(growth_modifier=SUNLIGHT_BOOST),
    )


def _predation() -> Interaction:
    return Interaction(
        id="wolf-eats-sheep",
        kind=InteractionKind.CONSUMES,
        source_id="wolf",
        target_id="sheep",
        params=InteractionParams(encounter_half_saturation=SHEEP_HALF_SATURATION),
    )


def sheep_alone() -> ConceptualModel:
    """A flock with nothing to eat."""
    return ConceptualModel(
        id="sheep-alone",
        name="sheep with no food source",
        components=(_sheep(default_attributes()),),
        interactions=(),
        habitats=(),
        baseline_component_ids=frozenset(),
    )


def sheep_unlimited_grass() -> ConceptualModel:
    """Grazing against a boundary food pool that never runs out."""
    return ConceptualModel(
        id="sheep-unlimited-grass",
        name="sheep grazing unlimited grass",
        components=(_sheep(default_attributes()), _grass(unlimited=True)),
        interactions=(_grazing(),),
        habitats=(),
        baseline_component_ids=frozenset(),
    )


def sheep_limited_grass() -> ConceptualModel:
    """Same grazing chain, but the grass is a real population."""
    return ConceptualModel(
        id="sheep-limited-grass",
        name="sheep grazing limited grass",
        components=(_sheep(default_attributes()), _grass(unlimited=False)),
        interactions=(_grazing(),),
        habitats=(),
        baseline_component_ids=frozenset(),
    )


def sheep_grass_sunlight() -> ConceptualModel:
    """Limited grass with a sunlight reproduction boost."""
    return ConceptualModel(
        id="sheep-grass-sunlight",
        name="sheep, grass and sunlight",
        components=(_sheep(default_attributes()), _grass(unlimited=False), _sunlight()),
        interactions=(_grazing(), _sunlight_boost()),
        habitats=(),
        baseline_component_ids=frozenset(),
    )


def sheep_grass_sunlight_measured() -> ConceptualModel:
    """As sheep_grass_sunlight, with store-measured sheep physiology."""
    return ConceptualModel(
        id="sheep-grass-sunlight-measured",
        name="measured sheep, grass and sunlight",
        components=(_sheep(measured_sheep_attributes()), _grass(unlimited=False), _sunlight()),
        interactions=(_grazing(), _sunlight_boost()),
        habitats=(),
        baseline_component_ids=frozenset(),
    )


def wolf_sheep_grass_sunlight() -> ConceptualModel:
    """The measured grazing chain plus a wolf predator."""
    return ConceptualModel(
        id="wolf-sheep-grass-sunlight",
        name="wolf, measured sheep, grass and sunlight",
        components=(
            _sheep(measured_sheep_attributes()),
            _grass(unlimited=False),
            _sunlight(),
            _wolf(),
        ),
        interactions=(_grazing(), _sunlight_boost(), _predation()),
        habitats=(),
        baseline_component_ids=frozenset(),
    )


def wolf_sheep_grass() -> ConceptualModel:
    """Three-species food chain; the standard small end-to-end fixture."""
    return ConceptualModel(
        id="wolf-sheep-grass",
        name="wolf, sheep and grass",
        components=(
            _sheep(measured_sheep_attributes()),
            _grass(unlimited=False),
            _wolf(),
        ),
        interactions=(_grazing(), _predation()),
        habitats=(),
        baseline_component_ids=frozenset(),
    )


def six_component_pond() -> ConceptualModel:
    """Pond food web: 6 components, 6 interactions."""
    algae = Component(
        id="algae", name="algae", kind=ComponentKind.BIOTIC, category=Category.PREY,
        attributes=grass_attributes(), initial_population=5_000,
    )
    insect = Component(
        id="mayfly", name="mayfly larvae", kind=ComponentKind.BIOTIC, category=Category.PREY,
        attributes=default_attributes(), initial_population=800,
    )
    fish = Component(
        id="perch", name="perch", kind=ComponentKind.BIOTIC, category=Category.PREDATOR,
        attributes=default_attributes(), initial_population=60,
    )
    heron = Component(
        id="heron", name="heron", kind=ComponentKind.BIOTIC, category=Category.PREDATOR,
        attributes=measured_sheep_attributes(), initial_population=6,
    )
    sun = Component(
        id="sunlight", name="sunlight", kind=ComponentKind.ABIOTIC,
        category=Category.ENVIRONMENTAL_FACTOR, initial_amount=1000.0, unlimited=True,
    )
    sediment = Component(
        id="sediment", name="pond sediment", kind=ComponentKind.ABIOTIC,
        initial_amount=0.0,
    )
    inter = (
        Interaction(id="i1", kind=InteractionKind.CONSUMES, source_id="mayfly", target_id="algae",
                    params=InteractionParams(encounter_half_saturation=2_000.0)),
        Interaction(id="i2", kind=InteractionKind.CONSUMES, source_id="perch", target_id="mayfly",
                    params=InteractionParams(encounter_half_saturation=400.0)),
        Interaction(id="i3", kind=InteractionKind.CONSUMES, source_id="heron", target_id="perch",
                    params=InteractionParams(encounter_half_saturation=40.0)),
        Interaction(id="i4", kind=InteractionKind.AFFECTS, source_id="sunlight", target_id="algae",
                    params=InteractionParams(growth_modifier=0.3)),
        Interaction(id="i5", kind=InteractionKind.BECOMES_ON_DEATH, source_id="perch",
                    target_id="sediment"),
        Interaction(id="i6", kind=InteractionKind.BECOMES_ON_DEATH, source_id="heron",
                    target_id="sediment"),
    )
    return ConceptualModel(
        id="pond-web",
        name="pond food web",
        components=(algae, insect, fish, heron, sun, sediment),
        interactions=inter,
        habitats=(),
        baseline_component_ids=frozenset(),
    )


def grazing_pair() -> ConceptualModel:
    """Smallest runnable chain: 2 components, 1 interaction."""
    return ConceptualModel(
        id="grazing-pair",
        name="sheep and grass",
        components=(_sheep(default_attributes()), _grass(unlimited=True)),
        interactions=(_grazing(),),
        habitats=(),
        baseline_component_ids=frozenset(),
    )


def parasite_web() -> ConceptualModel:
    """Predation plus parasitism across three categorized populations."""
    fox = Component(
        id="fox", name="fox", kind=ComponentKind.BIOTIC, category=Category.PREDATOR,
        attributes=wolf_attributes(), initial_population=8,
    )
    rabbit = Component(
        id="rabbit", name="rabbit", kind=ComponentKind.BIOTIC, category=Category.PREY,
        attributes=default_attributes(), initial_population=200,
    )
    mite = Component(
        id="mite", name="ear mite", kind=ComponentKind.BIOTIC, category=Category.PATHOGEN,
        attributes=grass_attributes(), initial_population=1_000,
    )
    inter = (
        Interaction(id="hunts", kind=InteractionKind.CONSUMES, source_id="fox", target_id="rabbit",
                    params=InteractionParams(encounter_half_saturation=100.0)),
        Interaction(id="infests", kind=InteractionKind.PARASITE_OF, source_id="mite",
                    target_id="rabbit", params=InteractionParams(growth_modifier=-0.2)),
    )
    return ConceptualModel(
        id="parasite-web",
        name="fox, rabbit and ear mite",
        components=(fox, rabbit, mite),
        interactions=inter,
        habitats=(),
        baseline_component_ids=frozenset(),
    )


def single_predation() -> ConceptualModel:
    """One categorized predator eating an uncategorized prey."""
    hawk = Component(
        id="hawk", name="hawk", kind=ComponentKind.BIOTIC, category=Category.PREDATOR,
        taxon_id="bj-1", attributes=default_attributes(), initial_population=10,
    )
    sparrow = Component(
        id="sparrow", name="sparrow", kind=ComponentKind.BIOTIC,
        attributes=default_attributes(), initial_population=300,
    )
    inter = (
        Interaction(id="hunts", kind=InteractionKind.CONSUMES, source_id="hawk",
                    target_id="sparrow", params=InteractionParams(encounter_half_saturation=200.0)),
    )
    return ConceptualModel(
        id="single-predation",
        name="hawk and sparrow",
        components=(hawk, sparrow),
        interactions=inter,
        habitats=(),
        baseline_component_ids=frozenset(),
    )
