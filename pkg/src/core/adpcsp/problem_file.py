"""
Standalone problem files

    (defBPQ p-logistic :magnitude growth)
    (defAttribute x4 :domain (other logistic))
    (defActivity x4 :when ((x1 yes)))
    (defCompatibility (x4 x6) :allowed ((other lotka-volterra) (logistic holling)))
    (defNogood ((x1 no) (x2 no)))
    (defPreference (x4 logistic) p-logistic)

Attributes without a defActivity form are always active. Each defActivity
form adds one trigger; a trigger is the conjunction of its pairs.
"""
import logging
from collections import defaultdict
from itertools import product
from typing import Dict, List, Sequence, Tuple

from ..omp import OMP, BPQOrdering, OrderingCollector, UnknownBPQ
from ..terms import Term, expect_list, expect_symbol, form_head, print_canonical, split_keywords
from .problem import (
    ADPCSP, ActivityConstraint, Attribute, CompatibilityConstraint, MalformedProblem, Pair,
    UnknownAttribute, UnknownValue,
)

logger = logging.getLogger(__name__)

PROBLEM_FORMS = ("defAttribute", "defActivity", "defCompatibility", "defNogood", "defPreference")


class _ProblemReader:
    def __init__(self):
        self.collector = OrderingCollector()
        self.attributes: Dict[str, Attribute] = {}
        self.activity: List[ActivityConstraint] = []
        self.forbidden: List[Tuple[Pair, ...]] = []
        self.preferences: List[Tuple[Pair, str, Term]] = []

    def pair(self, term: Term) -> Pair:
        items = expect_list(term, "attribute-value pair", MalformedProblem)
        if len(items) != 2:
            raise MalformedProblem(f"expected (attribute value), got {print_canonical(term)}", term.pos)
        attribute = expect_symbol(items[0], "attribute", MalformedProblem)
        value = expect_symbol(items[1], "value", MalformedProblem)
        if attribute not in self.attributes:
            raise UnknownAttribute(attribute, term.pos)
        if value not in self.attributes[attribute].values:
            raise UnknownValue(attribute, value, term.pos)
        return attribute, value

    def pairs(self, term: Term) -> Tuple[Pair, ...]:
        pairs = tuple(self.pair(item) for item in expect_list(term, "pair list", MalformedProblem))
        if len({a for a, _ in pairs}) != len(pairs):
            raise MalformedProblem(f"attribute repeated in {print_canonical(term)}", term.pos)
        return pairs

    def read(self, term: Term) -> None:
        if self.collector.accept(term):
            return
        head = form_head(term)
        if head not in PROBLEM_FORMS:
            raise MalformedProblem(f"unknown problem form {print_canonical(term)}", term.pos)
        positionals, keywords = split_keywords(term.args, MalformedProblem)
        getattr(self, "_" + head[3:].lower())(term, positionals, keywords)

    def _expect(self, term: Term, positionals: List[Term], keywords: Dict[str, Term], count: int, keys: Tuple[str, ...]) -> None:
        if len(positionals) != count or set(keywords) != set(keys):
            raise MalformedProblem(f"malformed {term.head_name} form", term.pos)

    def _attribute(self, term: Term, positionals: List[Term], keywords: Dict[str, Term]) -> None:
        self._expect(term, positionals, keywords, 1, ("domain",))
        name = expect_symbol(positionals[0], "attribute", MalformedProblem)
        if name in self.attributes:
            raise MalformedProblem(f"attribute {name} declared twice", term.pos)
        values = tuple(expect_symbol(v, "value", MalformedProblem)
                       for v in expect_list(keywords["domain"], "domain", MalformedProblem))
        if not values or len(set(values)) != len(values):
            raise MalformedProblem(f"domain of {name} must be non-empty and distinct", term.pos)
        self.attributes[name] = Attribute(name, values)

    def _activity(self, term: Term, positionals: List[Term], keywords: Dict[str, Term]) -> None:
        self._expect(term, positionals, keywords, 1, ("when",))
        target = expect_symbol(positionals[0], "attribute", MalformedProblem)
        if target not in self.attributes:
            raise UnknownAttribute(target, positionals[0].pos)
        trigger = self.pairs(keywords["when"])
        if any(a == target for a, _ in trigger):
            raise MalformedProblem(f"activity of {target} cannot depend on {target}", term.pos)
        self.activity.append(ActivityConstraint(target, trigger))

    def _compatibility(self, term: Term, positionals: List[Term], keywords: Dict[str, Term]) -> None:
        self._expect(term, positionals, keywords, 1, ("allowed",))
        scope = [expect_symbol(s, "attribute", MalformedProblem)
                 for s in expect_list(positionals[0], "scope", MalformedProblem)]
        for name in scope:
            if name not in self.attributes:
                raise UnknownAttribute(name, positionals[0].pos)
        if len(set(scope)) != len(scope):
            raise MalformedProblem("attribute repeated in compatibility scope", term.pos)
        allowed = set()
        for row in expect_list(keywords["allowed"], "allowed tuples", MalformedProblem):
            values = expect_list(row, "allowed tuple", MalformedProblem)
            if len(values) != len(scope):
                raise MalformedProblem(f"tuple {print_canonical(row)} does not fit the scope", row.pos)
            row_values = tuple(expect_symbol(v, "value", MalformedProblem) for v in values)
            for name, value in zip(scope, row_values):
                if value not in self.attributes[name].values:
                    raise UnknownValue(name, value, row.pos)
            allowed.add(row_values)
        for combination in product(*(self.attributes[name].values for name in scope)):
            if combination not in allowed:
                self.forbidden.append(tuple(zip(scope, combination)))

    def _nogood(self, term: Term, positionals: List[Term], keywords: Dict[str, Term]) -> None:
        self._expect(term, positionals, keywords, 1, ())
        self.forbidden.append(self.pairs(positionals[0]))

    def _preference(self, term: Term, positionals: List[Term], keywords: Dict[str, Term]) -> None:
        self._expect(term, positionals, keywords, 2, ())
        bpq = expect_symbol(positionals[1], "BPQ name", MalformedProblem)
        self.preferences.append((self.pair(positionals[0]), bpq, term))

    def build(self) -> ADPCSP:
        ordering = self.collector.build()
        collected: Dict[Pair, List[str]] = defaultdict(list)
        for pair, bpq, term in self.preferences:
            if bpq not in ordering.bpqs:
                raise UnknownBPQ(bpq, term.pos)
            collected[pair].append(bpq)
        order = {name: i for i, name in enumerate(self.attributes)}
        compatibility = []
        for forbidden in dict.fromkeys(tuple(sorted(f, key=lambda p: order[p[0]])) for f in self.forbidden):
            compatibility.append(CompatibilityConstraint(forbidden))
        return ADPCSP(
            tuple(self.attributes.values()),
            tuple(self.activity),
            tuple(compatibility),
            ordering,
            {pair: OMP.of(ordering, *bpqs) for pair, bpqs in collected.items()},
        )


def load_problem(terms: Sequence[Term]) -> ADPCSP:
    """Build an ADPCSP from the forms of a problem file"""
    reader = _ProblemReader()
    for term in terms:
        reader.read(term)
    csp = reader.build()
    logger.info(
        "problem loaded: %d attributes, %d activity constraints, %d compatibility constraints",
        len(csp.attributes), len(csp.activity), len(csp.compatibility),
    )
    return csp


def _pairs_text(pairs: Sequence[Pair]) -> str:
    return "(" + " ".join(f"({a} {v})" for a, v in pairs) + ")"


def dump_ordering(ordering: BPQOrdering) -> List[str]:
    lines = [f"(defBPQ {b} :magnitude {m})" for m, members in ordering.magnitudes for b in members]
    if ordering.mag_order:
        chains = " ".join(f"({lo} << {hi})" for lo, hi in sorted(ordering.mag_order))
        lines.append(f"(defMagnitudeOrder {chains})")
    if ordering.within_order:
        chains = " ".join(f"({lo} < {hi})" for lo, hi in sorted(ordering.within_order))
        lines.append(f"(defBPQOrder {chains})")
    return lines


def dump_problem(csp: ADPCSP) -> str:
    """
    Render a problem in the problem file format

    Translated attributes are preceded by a comment naming the assumption
    class they stand for.
    """
    lines = dump_ordering(csp.ordering)
    for attribute in csp.attributes:
        if attribute.assumptions:
            lines.append(f"; {attribute.id}: {', '.join(print_canonical(t) for t in attribute.assumptions)}")
        lines.append(f"(defAttribute {attribute.id} :domain ({' '.join(attribute.values)}))")
    for constraint in csp.activity:
        lines.append(f"(defActivity {constraint.target} :when {_pairs_text(constraint.trigger)})")
    for constraint in csp.compatibility:
        lines.append(f"(defNogood {_pairs_text(constraint.forbidden)})")
    for attribute in csp.attributes:
        for value in attribute.values:
            for bpq, times in csp.preference(attribute.id, value).counts:
                lines.extend([f"(defPreference ({attribute.id} {value}) {bpq})"] * times)
    return "\n".join(lines) + "\n"
