"""
Admissible best-first search for ADPCSPs

Nodes are ordered by potential preference, then committed preference, then
insertion. Ranks come from a linear extension of the preference order, so
no queued node can hold a strictly better potential than the node popped.
"""
import heapq
import logging
from dataclasses import dataclass
from itertools import count
from typing import Dict, List, Optional, Tuple

from ...config import Settings
from ..omp import OMP, combine, combine_all, dominates, maximal_bound, topological_rank
from .problem import ADPCSP, Pair, Solution, activated

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SearchNode:
    """
    A partial assignment on the search frontier

    Attributes:
        assignment: committed pairs in assignment order
        unassigned: active attributes still to assign, first one expands next
        undecided: unassigned attributes that may still become active
        committed: combination of the preferences of the assignment
        potential: committed plus an optimistic bound per undecided attribute
    """
    assignment: Tuple[Pair, ...]
    unassigned: Tuple[str, ...]
    undecided: Tuple[str, ...]
    committed: OMP
    potential: OMP

    @property
    def is_complete(self) -> bool:
        return not self.unassigned


def _negated(rank: Tuple[int, ...]) -> Tuple[int, ...]:
    return tuple(-r for r in rank)


class BestFirstSearch:
    """One search over a fixed problem"""

    def __init__(self, csp: ADPCSP):
        self.csp = csp
        self.order = {attribute_id: i for i, attribute_id in enumerate(csp.ids)}
        self.bounds: Dict[str, OMP] = {
            a.id: maximal_bound(csp.ordering, [csp.preference(a.id, v) for v in a.values])
            for a in csp.attributes
        }
        self.queue: List[Tuple[Tuple[int, ...], Tuple[int, ...], int, SearchNode]] = []
        self.sequence = count()
        self.expanded = 0

    def _may_activate(self, attribute_id: str, assignment: Dict[str, str]) -> bool:
        return any(
            all(a not in assignment or assignment[a] == v for a, v in trigger)
            for trigger in self.csp.triggers(attribute_id)
        )

    def node(self, assignment: Tuple[Pair, ...], committed: OMP) -> SearchNode:
        assigned = dict(assignment)
        active = activated(self.csp, assigned)
        unassigned = tuple(a for a in self.csp.ids if a in active and a not in assigned)
        # A complete node is final, so its potential is exactly what it committed
        undecided = () if not unassigned else tuple(
            a for a in self.csp.ids
            if a not in assigned and (a in active or self._may_activate(a, assigned))
        )
        potential = combine(committed, combine_all(self.csp.ordering, (self.bounds[a] for a in undecided)))
        return SearchNode(assignment, unassigned, undecided, committed, potential)

    def push(self, node: SearchNode) -> None:
        key = (_negated(topological_rank(node.potential)), _negated(topological_rank(node.committed)))
        heapq.heappush(self.queue, (key[0], key[1], next(self.sequence), node))

    def children(self, node: SearchNode) -> List[SearchNode]:
        attribute_id = node.unassigned[0]
        attribute = self.csp.attribute(attribute_id)
        result = []
        for value in attribute.values:
            assignment = node.assignment + ((attribute_id, value),)
            assigned = dict(assignment)
            if any(c.violated_by(assigned) for c in self.csp.compatibility):
                continue
            committed = combine(node.committed, self.csp.preference(attribute_id, value))
            result.append(self.node(assignment, committed))
        return result

    def run(self, max_solutions: int) -> List[Solution]:
        solutions: List[Solution] = []
        root = self.node((), OMP.empty(self.csp.ordering))
        if not any(c.violated_by({}) for c in self.csp.compatibility):
            self.push(root)
        while self.queue and len(solutions) < max_solutions:
            node = heapq.heappop(self.queue)[-1]
            if node.is_complete:
                if any(dominates(s.preference, node.committed) for s in solutions):
                    continue
                ordered = tuple(sorted(node.assignment, key=lambda p: self.order[p[0]]))
                solutions.append(Solution(ordered, node.committed))
                logger.debug("solution %d: %s", len(solutions), ordered)
                continue
            if any(dominates(s.preference, node.potential) for s in solutions):
                continue
            self.expanded += 1
            logger.debug("expanding %s on %s", node.assignment, node.unassigned[0])
            for child in self.children(node):
                self.push(child)
        logger.info("solver found %d solutions after expanding %d nodes", len(solutions), self.expanded)
        return solutions


def solve(csp: ADPCSP, max_solutions: Optional[int] = None) -> List[Solution]:
    """
    Maximally preferred solutions, best first

    Args:
        csp: the problem
        max_solutions: stop after this many, Settings.MAX_SOLUTIONS when None

    Returns:
        Solutions in discovery order; empty when the problem is unsatisfiable
    """
    limit = Settings.MAX_SOLUTIONS if max_solutions is None else max_solutions
    return BestFirstSearch(csp).run(limit)
