"""
Reader for preference declaration forms

    (defBPQ p-logistic :magnitude growth)
    (defMagnitudeOrder (growth << predation))
    (defBPQOrder (p-logistic < p-other) (b15 < b12 < b11))
"""
import logging
from typing import Dict, List, Optional, Tuple

from ..errors import Position
from ..terms import Compound, Symbol, Term, expect_symbol, form_head, split_keywords
from .ordering import BPQOrdering, OrderingError, validate_ordering

logger = logging.getLogger(__name__)

ORDERING_FORMS = ("defBPQ", "defMagnitudeOrder", "defBPQOrder")


class MalformedPreferenceDeclaration(OrderingError):
    """Raised when a preference declaration form cannot be read"""


def _chain(term: Term, operator: str) -> List[Tuple[str, str]]:
    """Read `(a op b op c ...)` into consecutive (lower, higher) pairs"""
    if not isinstance(term, Compound) or len(term.items) < 3 or len(term.items) % 2 == 0:
        raise MalformedPreferenceDeclaration(f"expected a chain like (a {operator} b)", term.pos)
    names = []
    for i, item in enumerate(term.items):
        if i % 2:
            if not (isinstance(item, Symbol) and item.name == operator):
                raise MalformedPreferenceDeclaration(f"expected `{operator}` in ordering chain", item.pos)
        else:
            names.append(expect_symbol(item, "ordered name", MalformedPreferenceDeclaration))
    return list(zip(names, names[1:]))


class OrderingCollector:
    """Accumulates declarations, then validates them into one BPQOrdering"""

    def __init__(self):
        self.bpqs: List[Tuple[str, str]] = []
        self.magnitude_pairs: List[Tuple[str, str]] = []
        self.bpq_pairs: List[Tuple[str, str]] = []
        self.positions: Dict[str, Position] = {}

    def accept(self, term: Term) -> bool:
        """Consume the term if it is an ordering form; return whether it was"""
        head = form_head(term)
        if head not in ORDERING_FORMS:
            return False
        positionals, keywords = split_keywords(term.args, MalformedPreferenceDeclaration)
        if head == "defBPQ":
            if len(positionals) != 1 or set(keywords) != {"magnitude"}:
                raise MalformedPreferenceDeclaration(
                    "expected (defBPQ <name> :magnitude <magnitude>)", term.pos
                )
            name = expect_symbol(positionals[0], "BPQ name", MalformedPreferenceDeclaration)
            magnitude = expect_symbol(keywords["magnitude"], "magnitude", MalformedPreferenceDeclaration)
            self.bpqs.append((name, magnitude))
            self.positions.setdefault(name, term.pos)
        elif keywords:
            raise MalformedPreferenceDeclaration(f"{head} takes no keywords", term.pos)
        elif head == "defMagnitudeOrder":
            for chain in positionals:
                self.magnitude_pairs.extend(_chain(chain, "<<"))
        else:
            for chain in positionals:
                self.bpq_pairs.extend(_chain(chain, "<"))
        return True

    def build(self) -> BPQOrdering:
        ordering = validate_ordering(self.bpqs, self.magnitude_pairs, self.bpq_pairs)
        logger.debug(
            "ordering: %d BPQs in %d magnitudes", len(ordering.bpqs), len(ordering.magnitudes)
        )
        return ordering


def collect_ordering(
    terms: List[Term], collector: Optional[OrderingCollector] = None
) -> Tuple[BPQOrdering, List[Term]]:
    """
    Split the ordering declarations out of a list of top-level terms

    Args:
        terms: parsed top-level forms
        collector: existing collector to extend (for several input files)

    Returns:
        (validated ordering, terms that are not ordering declarations)
    """
    collector = collector or OrderingCollector()
    rest = [term for term in terms if not collector.accept(term)]
    return collector.build(), rest
