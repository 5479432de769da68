"""
Inconsistency detection and the model space generation driver
"""
import logging
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Set, Tuple

from ..atms import Env, is_complementary, minimize, sorted_envs
from ..kb import KnowledgeBase, Scenario
from ..terms import Term, apply_subst, term_key
from .composition import Functor, IfFunctor, classify, composable, target_key
from .extraction import flow_relations
from .space import ModelSpace, build_space

logger = logging.getLogger(__name__)


def _record(space: ModelSpace, kind: str, env: Env) -> None:
    if space.atms.is_inconsistent(env):
        return
    space.atms.add_nogood(sorted(env))
    space.inconsistencies.append((kind, env))


def _exclusion_nogoods(space: ModelSpace) -> None:
    for cls in space.model_classes:
        for (_, first), (_, second) in combinations(cls.values, 2):
            _record(space, "exclusion", frozenset({first, second}))


def _equation_supports(space: ModelSpace) -> Dict[Tuple[str, str], Dict[Term, Set[Env]]]:
    """Equations per target with their labels, flows read as their d/dt relations"""
    groups: Dict[Tuple[str, str], Dict[Term, Set[Env]]] = {}
    for relation in sorted(space.relation_nodes, key=term_key):
        label = space.label(relation)
        for equation in [relation, *flow_relations(relation)]:
            key = target_key(equation)
            if key is not None:
                groups.setdefault(key, {}).setdefault(equation, set()).update(label)
    return {key: {eq: minimize(envs) for eq, envs in supports.items()} for key, supports in groups.items()}


def _composition_nogoods(space: ModelSpace) -> None:
    groups = _equation_supports(space)
    for key in sorted(groups):
        supports = groups[key]
        for first, second in combinations(sorted(supports, key=term_key), 2):
            f1, f2 = classify(first), classify(second)
            if composable(f1.functor if f1 else None, f2.functor if f2 else None):
                continue
            for left in sorted_envs(supports[first]):
                for right in sorted_envs(supports[second]):
                    env = left | right
                    if not is_complementary(env):
                        _record(space, "non-composable", env)
    _selection_nogoods(space, groups)


def _selection_nogoods(space: ModelSpace, groups: Dict[Tuple[str, str], Dict[Term, Set[Env]]]) -> None:
    """A C-if holds only together with a C-else on its target"""
    space.reset_refutations()
    for key in sorted(groups):
        supports = groups[key]
        readings = [(eq, classify(eq)) for eq in sorted(supports, key=term_key)]
        elses: Set[Env] = set()
        for equation, reading in readings:
            if reading is not None and reading.functor is Functor.ELSE:
                elses.update(supports[equation])
        for equation, reading in readings:
            if reading is None or not isinstance(reading.functor, IfFunctor):
                continue
            for support in sorted_envs(supports[equation]):
                if space.atms.is_inconsistent(support):
                    continue
                for refuting in sorted_envs(space.complement(minimize(elses), base=support)):
                    _record(space, "non-composable", support | refuting)


def _purpose_nogoods(space: ModelSpace) -> None:
    space.reset_refutations()
    for application in list(space.applications):
        for required in application.rule.purpose_required:
            target = apply_subst(application.subst, required)
            for support in sorted_envs(space.atms.label(application.node)):
                for refuting in sorted_envs(space.complement(space.label(target), base=support)):
                    _record(space, "purpose", support | refuting)


def _goal_nogoods(space: ModelSpace) -> None:
    space.reset_refutations()
    for goal in space.goals:
        for refuting in sorted_envs(space.complement(space.label(goal))):
            _record(space, "goal", refuting)


def detect_inconsistencies(space: ModelSpace, kb: Optional[KnowledgeBase] = None, goals: Sequence[Term] = ()) -> ModelSpace:
    """
    Report every inconsistency of a finished space to its ATMS

    Model choices on one subject exclude each other; equations on one
    target whose functors do not compose cannot hold together, nor can a
    C-if without a C-else; flows count as their d/dt relations. An
    application whose purpose-required property cannot be derived is
    inconsistent; so is any environment refuting a required property.
    """
    space.goals.extend(g for g in goals if g not in space.goals)
    before = len(space.inconsistencies)
    _exclusion_nogoods(space)
    _composition_nogoods(space)
    _purpose_nogoods(space)
    _goal_nogoods(space)
    logger.info(
        "recorded %d inconsistencies, %d minimal nogoods",
        len(space.inconsistencies) - before, len(space.atms.nogoods()),
    )
    return space


def generate_model_space(
    kb: KnowledgeBase,
    scenario: Scenario,
    goals: Sequence[Term] = (),
    fixpoint_limit: Optional[int] = None,
) -> ModelSpace:
    """
    Instantiate the knowledge base against a scenario

    Args:
        kb: loaded knowledge base
        scenario: scenario to seed the space with
        goals: required global properties beyond the scenario's own
        fixpoint_limit: rule application budget, Settings.FIXPOINT_LIMIT when None

    Returns:
        The finished space with every inconsistency recorded
    """
    space = ModelSpace(kb, scenario)
    space.seed()
    build_space(space, fixpoint_limit)
    return detect_inconsistencies(space, kb, goals)
