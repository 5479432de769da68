"""
Shared fixtures: corpus paths, the population dynamics KB and orderings
"""
from typing import List

import pytest

from src.config import Settings
from src.core.adpcsp import load_preferences
from src.core.kb import KnowledgeBase, load_kb
from src.core.modelspace import ModelSpace, generate_model_space
from src.core.terms import Term, parse, parse_file

KB_FILE = Settings.get_corpus_path("population-dynamics.kb")


def corpus_terms(*names: str) -> List[Term]:
    terms: List[Term] = []
    for name in names:
        terms.extend(parse_file(Settings.get_corpus_path(name)))
    return terms


def scenario_space(scenario_file: str, scenario_name: str) -> ModelSpace:
    kb = load_kb(corpus_terms("population-dynamics.kb", scenario_file))
    return generate_model_space(kb, kb.scenario(scenario_name))


def kb_from_text(text: str) -> KnowledgeBase:
    return load_kb(parse(text, "test.kb"))


@pytest.fixture(scope="session")
def population_kb() -> KnowledgeBase:
    return load_kb(corpus_terms("population-dynamics.kb"))


@pytest.fixture(scope="session")
def frog_space() -> ModelSpace:
    return scenario_space("frog.scenario", "frog-scenario")


@pytest.fixture(scope="session")
def predator_prey_space() -> ModelSpace:
    return scenario_space("predator-prey.scenario", "predator-prey-scenario")


@pytest.fixture(scope="session")
def pred_prey_prey_space() -> ModelSpace:
    return scenario_space("pred-prey-prey.scenario", "pred-prey-prey-scenario")


@pytest.fixture(scope="session")
def population_prefs():
    return load_preferences(corpus_terms("population-dynamics.prefs"))


@pytest.fixture(scope="session")
def three_magnitude():
    ordering, _ = load_preferences(corpus_terms("three-magnitude.prefs"))
    return ordering
