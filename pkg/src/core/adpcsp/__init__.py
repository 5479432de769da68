"""Activity-based dynamic preference CSPs: translation, preferences and search"""
from .problem import (
    ADPCSP, ActivityConstraint, Attribute, CSPError, CompatibilityConstraint, Evaluation, MalformedProblem,
    Pair, Solution, Status, UnknownAttribute, UnknownValue, UntranslatableLiteral,
    activated, assignment_preference, canonical_assignment, evaluate,
)
from .translate import build_adcsp
from .preferences import PreferenceAssignment, attach_preferences, load_preferences
from .solver import BestFirstSearch, SearchNode, solve
from .oracle import brute_force_solve
from .problem_file import PROBLEM_FORMS, dump_ordering, dump_problem, load_problem

__all__ = [
    'ADPCSP', 'ActivityConstraint', 'Attribute', 'CSPError', 'CompatibilityConstraint', 'Evaluation',
    'MalformedProblem', 'Pair', 'Solution', 'Status', 'UnknownAttribute', 'UnknownValue',
    'UntranslatableLiteral', 'activated', 'assignment_preference', 'canonical_assignment', 'evaluate',
    'build_adcsp',
    'PreferenceAssignment', 'attach_preferences', 'load_preferences',
    'BestFirstSearch', 'SearchNode', 'solve',
    'brute_force_solve',
    'PROBLEM_FORMS', 'dump_ordering', 'dump_problem', 'load_problem',
]
