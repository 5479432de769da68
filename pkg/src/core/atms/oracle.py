"""
Brute-force label oracle

Recomputes labels from first principles by enumerating every signed
assumption environment. Used by the test suite to check the incremental
labels of small networks.
"""
from itertools import product
from typing import Dict, List, Optional, Set

from ...config import Settings
from .atms import ATMS, ATMSError, Env, minimize, neg, pos


class OracleBoundExceeded(ATMSError):
    def __init__(self, count: int, bound: int):
        super().__init__(f"search space of {count} exceeds the oracle bound of {bound}")
        self.count = count
        self.bound = bound


def all_environments(assumptions: List[int]) -> List[Env]:
    """Every non-complementary signed environment over the assumptions"""
    choices = [(None, pos(a), neg(a)) for a in assumptions]
    return [
        frozenset(lit for lit in picked if lit is not None)
        for picked in product(*choices)
    ]


def brute_force_labels(atms: ATMS, bound: Optional[int] = None) -> Dict[int, Set[Env]]:
    """
    Labels of every node, recomputed by enumeration

    A node's label is the set of minimal environments whose closure
    derives the node without deriving ⊥; the label of ⊥ is the set of
    minimal environments whose closure derives ⊥.
    """
    bound = Settings.ATMS_ORACLE_BOUND if bound is None else bound
    assumptions = atms.assumptions
    if len(assumptions) > bound:
        raise OracleBoundExceeded(len(assumptions), bound)

    deriving: Dict[int, List[Env]] = {node.id: [] for node in atms.nodes}
    for env in all_environments(assumptions):
        closure = atms.consequences(env)
        if ATMS.BOTTOM in closure:
            deriving[ATMS.BOTTOM].append(env)
            continue
        for node_id in closure:
            deriving[node_id].append(env)
    return {node_id: minimize(envs) for node_id, envs in deriving.items()}


def brute_force_label(atms: ATMS, node_id: int, bound: Optional[int] = None) -> Set[Env]:
    atms.node(node_id)
    return brute_force_labels(atms, bound)[node_id]


def derives(atms: ATMS, env: Env, node_id: int) -> bool:
    """Soundness check: asserting env derives the node"""
    return node_id in atms.consequences(env)
