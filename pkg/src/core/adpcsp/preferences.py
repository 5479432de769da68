"""
Preference attachment and preference file reading

    (defBPQ p-logistic :magnitude growth)
    (defBPQOrder (p-exponential < p-logistic))
    (prefer (model * logistic) p-logistic)
    (prefer (not (relevant competition * *)) p-no-competition)
"""
import logging
from collections import defaultdict
from typing import Dict, List, Optional, Sequence, Tuple

from ..omp import OMP, BPQOrdering, MalformedPreferenceDeclaration, OrderingCollector, UnknownBPQ
from ..terms import Term, expect_symbol, form_head, match_pattern
from .problem import ADPCSP, Pair

logger = logging.getLogger(__name__)

PreferenceAssignment = Tuple[Term, str]


def attach_preferences(
    csp: ADPCSP, ordering: BPQOrdering, assignments: Sequence[PreferenceAssignment]
) -> ADPCSP:
    """
    Attach BPQs to the attribute values whose assumptions match a pattern

    Args:
        csp: translated problem
        ordering: ordering governing every BPQ
        assignments: (assumption pattern, BPQ) pairs; a value matched by
            several patterns gets the combination of their BPQs

    Returns:
        The problem with preferences and ordering replaced
    """
    for pattern, bpq in assignments:
        if bpq not in ordering.bpqs:
            raise UnknownBPQ(bpq, pattern.pos)
    collected: Dict[Pair, List[str]] = defaultdict(list)
    for attribute in csp.attributes:
        for value, assumption in zip(attribute.values, attribute.assumptions):
            for pattern, bpq in assignments:
                if match_pattern(pattern, assumption) is not None:
                    collected[(attribute.id, value)].append(bpq)
    preferences = {pair: OMP.of(ordering, *bpqs) for pair, bpqs in collected.items()}
    logger.info("attached preferences to %d attribute values", len(preferences))
    return csp.with_preferences(ordering, preferences)


def load_preferences(
    terms: Sequence[Term], collector: Optional[OrderingCollector] = None
) -> Tuple[BPQOrdering, List[PreferenceAssignment]]:
    """
    Read ordering declarations and `(prefer pattern bpq)` forms

    Returns:
        (ordering, preference assignments in file order)
    """
    collector = collector or OrderingCollector()
    assignments: List[PreferenceAssignment] = []
    for term in terms:
        if collector.accept(term):
            continue
        if form_head(term) != "prefer" or len(term.items) != 3:
            raise MalformedPreferenceDeclaration("expected (prefer <assumption pattern> <bpq>)", term.pos)
        bpq = expect_symbol(term.items[2], "BPQ name", MalformedPreferenceDeclaration)
        assignments.append((term.items[1], bpq))
    return collector.build(), assignments
