from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from ecomod import (
    SimSettings,
    bundled_store,
    compile_model,
)
from ecomod.scenarios import (
    grazing_pair,
    parasite_web,
    single_predation,
    six_component_pond,
    wolf_sheep_grass,
)


@pytest.fixture(scope="session")
def store():
    return bundled_store()


@pytest.fixture(scope="session")
def pond_model():
    return six_component_pond()


@pytest.fixture(scope="session")
def wsg_model():
    return wolf_sheep_grass()


@pytest.fixture(scope="session")
def wsg_program(wsg_model):
    return compile_model(wsg_model)


@pytest.fixture(scope="session")
def pair_model():
    return grazing_pair()


@pytest.fixture(scope="session")
def parasite_model():
    return parasite_web()


@pytest.fixture(scope="session")
def predation_model():
    return single_predation()


@pytest.fixture
def small_settings():
    return SimSettings(agent_cap=500)
