"""
Exhaustive solution oracle for small problems
"""
from itertools import product
from math import prod
from typing import List, Optional

from ...config import Settings
from ..atms import OracleBoundExceeded
from ..omp import dominates
from .problem import ADPCSP, Solution, canonical_assignment, evaluate


def brute_force_solve(csp: ADPCSP, bound: Optional[int] = None) -> List[Solution]:
    """
    Every maximally preferred solution, by enumerating all assignments

    Each attribute is either unassigned or given one of its values; the
    candidates that satisfy the solution conditions are filtered to those
    no other candidate strictly dominates.
    """
    bound = Settings.SEARCH_ORACLE_BOUND if bound is None else bound
    size = prod(len(a.values) + 1 for a in csp.attributes)
    if size > bound:
        raise OracleBoundExceeded(size, bound)

    choices = [[None, *a.values] for a in csp.attributes]
    valid: List[Solution] = []
    for picked in product(*choices):
        assignment = {a.id: v for a, v in zip(csp.attributes, picked) if v is not None}
        evaluation = evaluate(csp, assignment)
        if evaluation.is_solution:
            valid.append(Solution(canonical_assignment(csp, assignment), evaluation.preference))
    return [s for s in valid if not any(dominates(o.preference, s.preference) for o in valid)]
