"""
Model space construction, inconsistency detection, relation composition
and scenario model extraction
"""
from .composition import (
    EQUATION_HEADS, ComposableRelation, Functor, IfFunctor, NonComposable, classify, compose_relations,
    composable, family, target_key,
)
from .extraction import (
    InconsistentAssumptionSet, NonComposableModel, ScenarioModel, extract_scenario_model, flow_relations,
)
from .inconsistencies import detect_inconsistencies, generate_model_space
from .space import (
    Application, AssumptionClass, FixpointBudgetExceeded, Match, ModelSpace, ModelSpaceError,
    StratificationViolation, build_space, match_fragment,
)

__all__ = [
    'EQUATION_HEADS', 'ComposableRelation', 'Functor', 'IfFunctor', 'NonComposable', 'classify',
    'compose_relations', 'composable', 'family', 'target_key',
    'InconsistentAssumptionSet', 'NonComposableModel', 'ScenarioModel', 'extract_scenario_model', 'flow_relations',
    'detect_inconsistencies', 'generate_model_space',
    'Application', 'AssumptionClass', 'FixpointBudgetExceeded', 'Match', 'ModelSpace', 'ModelSpaceError',
    'StratificationViolation', 'build_space', 'match_fragment',
]
