from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ecomod import (
    Category,
    Component,
    ComponentKind,
    ConceptualModel,
    InvalidModelError,
    complexity_score,
    creativity_score,
    score_model,
)

from modelgen import random_model

SEEDS = st.integers(min_value=0, max_value=10**6)


def test_six_component_pond_exact_scores(pond_model):
    assert complexity_score(pond_model) == 12
    assert creativity_score(pond_model) == 6


def test_grazing_pair_exact_complexity(pair_model):
    assert complexity_score(pair_model) == 3


def test_parasite_web_exact_scores(parasite_model):
    assert creativity_score(parasite_model) == 5
    assert complexity_score(parasite_model) == 5


def test_single_predation_exact_creativity(predation_model):
    # predator category + uncategorized partner (not counted) + one kind
    assert creativity_score(predation_model) == 2
    assert complexity_score(predation_model) == 3


def test_score_model_bundles_both(pond_model):
    scores = score_model(pond_model)
    assert (scores.complexity, scores.creativity) == (12, 6)


def test_invalid_model_is_rejected():
    broken = ConceptualModel(
        id="m", name="m",
        components=(
            Component(id="x", name="x", kind=ComponentKind.ABIOTIC, initial_amount=1.0),
            Component(id="x", name="x2", kind=ComponentKind.ABIOTIC, initial_amount=1.0),
        ),
    )
    for fn in (complexity_score, creativity_score, score_model):
        with pytest.raises(InvalidModelError) as exc:
            fn(broken)
        assert "duplicate-id" in str(exc.value)


def test_habitats_do_not_count_toward_complexity(pair_model, wsg_model):
    # wolf-sheep-grass fixture has no habitats; the complexity formula sees
    # only components and interactions either way
    assert complexity_score(pair_model) == len(pair_model.components) + len(pair_model.interactions)
    assert complexity_score(wsg_model) == len(wsg_model.components) + len(wsg_model.interactions)


def test_fully_baseline_model_has_zero_creativity(pond_model):
    everything = frozenset(c.id for c in pond_model.components)
    reframed = ConceptualModel(
        id=pond_model.id, name=pond_model.name, components=pond_model.components,
        interactions=pond_model.interactions, habitats=pond_model.habitats,
        baseline_component_ids=everything,
    )
    assert creativity_score(reframed) == 0
    assert complexity_score(reframed) == complexity_score(pond_model)


def test_duplicate_category_does_not_raise_creativity(pond_model):
    a_biotic = next(c for c in pond_model.components if c.kind is ComponentKind.BIOTIC)
    clone = Component(
        id="clone", name="clone", kind=a_biotic.kind, category=a_biotic.category,
        attributes=a_biotic.attributes, initial_population=a_biotic.initial_population,
    )
    grown = ConceptualModel(
        id=pond_model.id, name=pond_model.name,
        components=pond_model.components + (clone,),
        interactions=pond_model.interactions, habitats=pond_model.habitats,
        baseline_component_ids=pond_model.baseline_component_ids,
    )
    assert creativity_score(grown) == creativity_score(pond_model)
    assert complexity_score(grown) == complexity_score(pond_model) + 1


def test_uncategorized_components_never_add_creativity():
    base = ConceptualModel(
        id="m", name="m",
        components=(Component(id="a", name="a", kind=ComponentKind.ABIOTIC, initial_amount=1.0),),
    )
    assert creativity_score(base) == 0


@settings(max_examples=60, deadline=None)
@given(SEEDS)
def test_complexity_is_graph_size(seed):
    model = random_model(seed)
    assert complexity_score(model) == len(model.components) + len(model.interactions)


@settings(max_examples=60, deadline=None)
@given(SEEDS)
def test_creativity_never_exceeds_complexity(seed):
    model = random_model(seed)
    assert 0 <= creativity_score(model) <= complexity_score(model)


@settings(max_examples=60, deadline=None)
@given(SEEDS)
def test_growing_baseline_never_raises_creativity(seed):
    model = random_model(seed)
    before = creativity_score(model)
    widened = ConceptualModel(
        id=model.id, name=model.name, components=model.components,
        interactions=model.interactions, habitats=model.habitats,
        baseline_component_ids=frozenset(c.id for c in model.components[: 1 + seed % 3])
        | model.baseline_component_ids,
    )
    assert creativity_score(widened) <= before


@settings(max_examples=60, deadline=None)
@given(SEEDS)
def test_scores_are_pure(seed):
    model = random_model(seed)
    assert score_model(model) == score_model(model)
