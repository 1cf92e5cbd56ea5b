from __future__ import annotations

import pytest

from ecomod import (
    SECONDS_PER_MONTH,
    Category,
    CompileError,
    Component,
    ComponentKind,
    ConceptualModel,
    Habitat,
    Interaction,
    InteractionKind,
    InteractionParams,
    InvalidModelError,
    RuleKind,
    SimSettings,
    compile_model,
    emit_listing,
)
from ecomod.scenarios import sheep_alone
from ecomod.traits import default_attributes

from modelgen import random_model


def biotic(cid, *, unlimited=False, population=10, habitat_id=None):
    return Component(
        id=cid, name=cid, kind=ComponentKind.BIOTIC, category=Category.PREY,
        attributes=default_attributes(), initial_population=population,
        unlimited=unlimited, habitat_id=habitat_id,
    )


def abiotic(cid, *, unlimited=False, amount=5.0, habitat_id=None):
    return Component(
        id=cid, name=cid, kind=ComponentKind.ABIOTIC,
        category=Category.ENVIRONMENTAL_FACTOR, initial_amount=amount,
        unlimited=unlimited, habitat_id=habitat_id,
    )


def model(components, interactions=(), habitats=()):
    return ConceptualModel(
        id="m", name="m", components=tuple(components),
        interactions=tuple(interactions), habitats=tuple(habitats),
    )


def test_wolf_sheep_grass_program_shape(wsg_program):
    names = [p.name for p in wsg_program.populations]
    assert names == ["sheep", "grass", "wolf"]
    assert [r.kind for r in wsg_program.rules] == [RuleKind.CONSUME, RuleKind.CONSUME]
    # model interaction order is preserved inside the phase
    assert [r.origin_id for r in wsg_program.rules] == ["sheep-eats-grass", "wolf-eats-sheep"]
    assert wsg_program.rules[0].source_pool == wsg_program.pool_index("sheep")
    assert wsg_program.rules[0].target_pool == wsg_program.pool_index("grass")
    # 3 limited biotic pools x (metabolism, aging, reproduction)
    assert len(wsg_program.lifecycle) == 9
    kinds = {(lc.pool, lc.kind) for lc in wsg_program.lifecycle}
    assert (0, "metabolism") in kinds and (2, "reproduction") in kinds


def test_rule_is_one_to_one_with_interactions(wsg_model, wsg_program):
    assert sorted(r.origin_id for r in wsg_program.rules) == sorted(
        i.id for i in wsg_model.interactions
    )
    assert all(r.rule_id == f"r-{r.origin_id}" for r in wsg_program.rules)


def test_zero_interaction_model_compiles():
    program = compile_model(sheep_alone())
    assert len(program.populations) == 1
    assert program.rules == ()
    assert len(program.lifecycle) == 3


def test_monthly_rate_conversion():
    assert SECONDS_PER_MONTH == 2_592_000
    attrs = default_attributes().as_dict()
    attrs["respiratory_rate"] = 1.0e-9
    from ecomod import SpeciesAttributes

    comp = Component(
        id="b", name="b", kind=ComponentKind.BIOTIC, category=Category.PREY,
        attributes=SpeciesAttributes(**attrs), initial_population=5,
    )
    schema = compile_model(model([comp])).populations[0]
    assert schema.monthly_respiration == pytest.approx(2.592e-3, rel=1e-12)


def test_super_individual_scaling():
    big = biotic("crowd", population=50_000)
    schema = compile_model(model([big])).populations[0]
    assert schema.scale == 5
    assert schema.initial_agents == 10_000
    assert schema.initial_count == 50_000
    # per-agent rates and reference carbon carry the scale
    assert schema.reference_carbon == pytest.approx(0.2 * 5)
    assert schema.monthly_respiration == pytest.approx(1e-9 * SECONDS_PER_MONTH * 5)


def test_scaling_rounds_population_up_to_agent_multiple():
    schema = compile_model(model([biotic("crowd", population=10_001)])).populations[0]
    assert schema.scale == 2
    assert schema.initial_agents == 5_001
    assert schema.initial_count == 10_002


def test_small_population_is_unscaled():
    schema = compile_model(model([biotic("few", population=9_999)])).populations[0]
    assert schema.scale == 1
    assert schema.initial_agents == 9_999


def test_agent_cap_setting_respected():
    program = compile_model(model([biotic("crowd", population=900)]), SimSettings(agent_cap=100))
    schema = program.populations[0]
    assert schema.scale == 9
    assert schema.initial_agents == 100


def test_invalid_model_does_not_compile():
    bad = model([biotic("a"), biotic("a")])
    with pytest.raises(InvalidModelError):
        compile_model(bad)


@pytest.mark.parametrize(
    "code,components,interaction",
    [
        (
            "becomes-target-not-abiotic",
            [biotic("a"), biotic("b")],
            Interaction(id="i", kind=InteractionKind.BECOMES_ON_DEATH, source_id="a", target_id="b"),
        ),
        (
            "becomes-source-not-biotic",
            [abiotic("a"), abiotic("b")],
            Interaction(id="i", kind=InteractionKind.BECOMES_ON_DEATH, source_id="a", target_id="b"),
        ),
        (
            "produce-target-not-abiotic",
            [biotic("a"), biotic("b")],
            Interaction(
                id="i", kind=InteractionKind.PRODUCES, source_id="a", target_id="b",
                params=InteractionParams(produce_probability=0.5, produce_amount=1.0),
            ),
        ),
        (
            "consume-source-not-biotic",
            [abiotic("a"), biotic("b")],
            Interaction(id="i", kind=InteractionKind.CONSUMES, source_id="a", target_id="b"),
        ),
        (
            "destroy-source-not-biotic",
            [abiotic("a"), biotic("b")],
            Interaction(id="i", kind=InteractionKind.DESTROYS, source_id="a", target_id="b"),
        ),
        (
            "unlimited-source",
            [biotic("a", unlimited=True), biotic("b")],
            Interaction(id="i", kind=InteractionKind.CONSUMES, source_id="a", target_id="b"),
        ),
        (
            "destroy-target-not-biotic",
            [biotic("a"), abiotic("b")],
            Interaction(id="i", kind=InteractionKind.DESTROYS, source_id="a", target_id="b"),
        ),
    ],
)
def test_compile_error_codes(code, components, interaction):
    with pytest.raises(CompileError) as exc:
        compile_model(model(components, [interaction]))
    assert exc.value.code == code
    assert "interaction 'i'" in str(exc.value)


def test_habitat_mismatch_compiles_to_disabled_rule():
    habitats = [Habitat(id="h1", name="a"), Habitat(id="h2", name="b")]
    mismatched = model(
        [biotic("a", habitat_id="h1"), abiotic("b", habitat_id="h2")],
        [Interaction(id="i", kind=InteractionKind.CONSUMES, source_id="a", target_id="b")],
        habitats,
    )
    rule = compile_model(mismatched).rules[0]
    assert rule.enabled is False

    for target_habitat in ("h1", None):
        matched = model(
            [biotic("a", habitat_id="h1"), abiotic("b", habitat_id=target_habitat)],
            [Interaction(id="i", kind=InteractionKind.CONSUMES, source_id="a", target_id="b")],
            habitats,
        )
        assert compile_model(matched).rules[0].enabled is True


def test_canonical_rule_order_groups_phases():
    comps = [biotic("a"), biotic("b"), abiotic("x"), abiotic("y")]
    inters = [
        Interaction(id="i1", kind=InteractionKind.BECOMES_ON_DEATH, source_id="a", target_id="x"),
        Interaction(
            id="i2", kind=InteractionKind.PRODUCES, source_id="a", target_id="y",
            params=InteractionParams(produce_probability=0.5, produce_amount=0.1),
        ),
        Interaction(id="i3", kind=InteractionKind.DESTROYS, source_id="a", target_id="b"),
        Interaction(
            id="i4", kind=InteractionKind.AFFECTS, source_id="x", target_id="b",
            params=InteractionParams(growth_modifier=0.2),
        ),
        Interaction(id="i5", kind=InteractionKind.CONSUMES, source_id="b", target_id="x"),
    ]
    program = compile_model(model(comps, inters))
    assert [r.origin_id for r in program.rules] == ["i4", "i3", "i5", "i2", "i1"]
    assert [r.index for r in program.rules] == [0, 1, 2, 3, 4]
    assert [r.kind for r in program.rules] == [
        RuleKind.AFFECT, RuleKind.DESTROY, RuleKind.CONSUME,
        RuleKind.PRODUCE, RuleKind.BECOME_ON_DEATH,
    ]


def test_parameter_defaults_applied():
    comps = [biotic("a"), biotic("b")]
    program = compile_model(model(comps, [
        Interaction(id="c", kind=InteractionKind.CONSUMES, source_id="a", target_id="b"),
        Interaction(id="d", kind=InteractionKind.DESTROYS, source_id="b", target_id="a"),
    ]))
    consume, destroy = program.rules
    assert consume.half_saturation == 100.0
    assert destroy.destroy_fraction == 1.0
    custom = compile_model(
        model(comps, [Interaction(id="c", kind=InteractionKind.CONSUMES, source_id="a", target_id="b")]),
        SimSettings(default_half_saturation=42.0),
    )
    assert custom.rules[0].half_saturation == 42.0


def test_compilation_is_pure_and_hash_stable(wsg_model):
    p1 = compile_model(wsg_model)
    p2 = compile_model(wsg_model)
    assert p1 == p2
    assert p1.program_hash() == p2.program_hash()


def test_hash_tracks_model_changes(wsg_model, wsg_program):
    altered = ConceptualModel(
        id=wsg_model.id, name=wsg_model.name, components=wsg_model.components,
        interactions=(
            wsg_model.interactions[0],
            Interaction(
                id="wolf-eats-sheep", kind=InteractionKind.CONSUMES,
                source_id="wolf", target_id="sheep",
                params=InteractionParams(encounter_half_saturation=151.0),
            ),
        ),
    )
    assert compile_model(altered).program_hash() != wsg_program.program_hash()


def test_hash_tracks_settings():
    m = model([biotic("a")])
    assert (
        compile_model(m).program_hash()
        != compile_model(m, SimSettings(starvation_fraction=0.3)).program_hash()
    )


def test_pool_index_lookup(wsg_program):
    assert wsg_program.pool_index("wolf") == 2
    with pytest.raises(KeyError):
        wsg_program.pool_index("bear")


def test_unlimited_biotic_pool_has_no_lifecycle():
    program = compile_model(model([biotic("stock", unlimited=True), abiotic("x")]))
    assert program.lifecycle == ()


def test_program_as_dict_is_json_ready(wsg_program):
    import json

    doc = json.loads(json.dumps(wsg_program.as_dict()))
    assert doc["source_model_id"] == "wolf-sheep-grass"
    assert len(doc["populations"]) == 3
    assert doc["rules"][0]["kind"] == "consume"
    assert doc["settings"]["agent_cap"] == 10_000


# -- listing -----------------------------------------------------------------

def test_listing_consume_lines(wsg_program):
    listing = emit_listing(wsg_program)
    consume_lines = [l for l in listing.splitlines() if l.startswith("CONSUME")]
    assert consume_lines == [
        "CONSUME sheep -> grass {half_saturation=20000}",
        "CONSUME wolf -> sheep {half_saturation=150}",
    ]
    assert f"program {wsg_program.program_hash()}" == listing.splitlines()[0]
    assert "METABOLISM sheep" in listing.splitlines()
    assert listing == emit_listing(wsg_program)


def test_listing_annotates_affect_origin(parasite_model):
    listing = emit_listing(compile_model(parasite_model))
    affect_lines = [l for l in listing.splitlines() if l.startswith("AFFECT")]
    assert affect_lines == ["AFFECT ear mite -> rabbit {growth_modifier=-0.2, origin=parasite_of}"]


def test_listing_marks_disabled_rules():
    habitats = [Habitat(id="h1", name="a"), Habitat(id="h2", name="b")]
    m = model(
        [biotic("a", habitat_id="h1"), abiotic("b", habitat_id="h2")],
        [Interaction(id="i", kind=InteractionKind.CONSUMES, source_id="a", target_id="b")],
        habitats,
    )
    listing = emit_listing(compile_model(m))
    assert "disabled=habitat-mismatch" in listing


def test_listing_spells_become_on_death(pond_model):
    listing = emit_listing(compile_model(pond_model))
    become = [l for l in listing.splitlines() if l.startswith("BECOME-ON-DEATH")]
    assert become == [
        "BECOME-ON-DEATH perch -> pond sediment {}",
        "BECOME-ON-DEATH heron -> pond sediment {}",
    ]


# -- totality over generated corpus ------------------------------------------

@pytest.mark.parametrize("seed", range(150))
def test_generated_corpus_compiles_or_fails_with_stable_code(seed):
    m = random_model(seed)
    try:
        program = compile_model(m)
    except CompileError as exc:
        assert exc.code
        return
    assert len(program.rules) == len(m.interactions)
    assert sorted(r.origin_id for r in program.rules) == sorted(i.id for i in m.interactions)
    assert len(program.populations) == len(m.components)
    # recompilation is bit-identical
    assert compile_model(m).program_hash() == program.program_hash()
