"""
The four stage pipeline: model space, constraint problem, preferences and
scenario model selection
"""
import logging
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from ..core.adpcsp import (
    ADPCSP, Solution, attach_preferences, brute_force_solve, build_adcsp, load_preferences, load_problem, solve,
)
from ..core.atms import ATMS, brute_force_labels
from ..core.errors import ComposerError
from ..core.kb import KnowledgeBase, KnowledgeBaseError, Scenario, load_kb, normalize
from ..core.modelspace import ModelSpace, ScenarioModel, extract_scenario_model, generate_model_space
from ..core.terms import Symbol, Term, form_head, parse_file, parse_one
from .config import RunConfig

logger = logging.getLogger(__name__)


class UnsatisfiableScenario(ComposerError):
    def __init__(self):
        super().__init__("no assignment satisfies the constraint problem")


class OracleMismatch(ComposerError):
    pass


@dataclass
class RunResult:
    csp: ADPCSP
    solutions: List[Solution]
    models: List[ScenarioModel] = field(default_factory=list)
    space: Optional[ModelSpace] = None


def load_knowledge_base(cfg: RunConfig) -> Tuple[KnowledgeBase, List[Term]]:
    """Load the KB files together with the scenario file, if any"""
    terms: List[Term] = []
    for path in cfg.kb_paths:
        terms.extend(parse_file(path))
    scenario_terms = parse_file(cfg.scenario_path) if cfg.scenario_path is not None else []
    return load_kb(terms + scenario_terms), scenario_terms


def load_scenario(cfg: RunConfig) -> Tuple[KnowledgeBase, Scenario]:
    """The KB and the single scenario defined in the scenario file"""
    kb, scenario_terms = load_knowledge_base(cfg)
    names = [
        term.args[0].name for term in scenario_terms
        if form_head(term) == "defScenario" and term.args and isinstance(term.args[0], Symbol)
    ]
    if len(names) != 1:
        raise KnowledgeBaseError(f"{cfg.scenario_path} must define exactly one scenario, found {len(names)}")
    return kb, kb.scenario(names[0])


def requirement_terms(cfg: RunConfig) -> List[Term]:
    return [normalize(parse_one(text, "--require")) for text in cfg.requirements]


def generate_space(cfg: RunConfig) -> ModelSpace:
    kb, scenario = load_scenario(cfg)
    return generate_model_space(kb, scenario, requirement_terms(cfg))


def build_problem(cfg: RunConfig) -> Tuple[Optional[ModelSpace], ADPCSP]:
    """
    The constraint problem to solve, with its preferences attached

    A problem file is read as is; otherwise the model space is generated
    and translated, and the preference file, if any, is applied.
    """
    if cfg.uses_problem_file:
        return None, load_problem(parse_file(cfg.problem_path))
    space = generate_space(cfg)
    csp = build_adcsp(space)
    if cfg.pref_path is not None:
        ordering, assignments = load_preferences(parse_file(cfg.pref_path))
        csp = attach_preferences(csp, ordering, assignments)
    return space, csp


def assumption_terms(csp: ADPCSP, solution: Solution) -> List[Term]:
    return [csp.attribute(a).assumption(v) for a, v in solution.assignment]


def check_solutions(csp: ADPCSP, solutions: List[Solution], max_solutions: int, bound: int) -> None:
    expected = {s.assignment for s in brute_force_solve(csp, bound)}
    found = {s.assignment for s in solutions}
    if not found <= expected or (len(solutions) < max_solutions and found != expected):
        raise OracleMismatch(f"search found {len(found)} solutions, enumeration found {len(expected)}")
    logger.info("solutions agree with enumeration over %d maximal assignments", len(expected))


def check_labels(atms: ATMS, bound: int) -> None:
    expected = brute_force_labels(atms, bound)
    for node in atms.nodes:
        if node.label != expected[node.id]:
            raise OracleMismatch(f"label of {atms.render_datum(node.id)} differs from enumeration")
    logger.info("labels of %d nodes agree with enumeration", len(atms.nodes))


def run(cfg: RunConfig) -> RunResult:
    """
    Solve and extract one scenario model per solution

    Raises:
        UnsatisfiableScenario: when the problem has no solution
    """
    space, csp = build_problem(cfg)
    solutions = solve(csp, cfg.max_solutions)
    if cfg.oracle_bound is not None:
        check_solutions(csp, solutions, cfg.max_solutions, cfg.oracle_bound)
    if not solutions:
        raise UnsatisfiableScenario()
    models = []
    if space is not None:
        models = [extract_scenario_model(space, assumption_terms(csp, s)) for s in solutions]
    return RunResult(csp, solutions, models, space)
