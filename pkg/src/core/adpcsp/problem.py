"""
Activity-based dynamic preference CSP data model
Attributes, activity and compatibility constraints, preferences and the
solution check
"""
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Dict, Iterable, List, Mapping, Optional, Set, Tuple

from ..errors import ComposerError, Position
from ..omp import OMP, BPQOrdering, combine_all
from ..terms import Term

Pair = Tuple[str, str]


class CSPError(ComposerError):
    """Base class of constraint problem errors"""


class UntranslatableLiteral(CSPError):
    pass


class UnknownAttribute(CSPError):
    def __init__(self, attribute: str, position: Optional[Position] = None):
        super().__init__(f"unknown attribute {attribute}", position)
        self.attribute = attribute


class UnknownValue(CSPError):
    def __init__(self, attribute: str, value: str, position: Optional[Position] = None):
        super().__init__(f"{value} is not in the domain of {attribute}", position)
        self.attribute = attribute
        self.value = value


class MalformedProblem(CSPError):
    pass


@dataclass(frozen=True)
class Attribute:
    """
    One attribute and its domain

    Attributes:
        id: attribute name, x1, x2, ... for translated problems
        values: the domain, in declaration order
        assumptions: the assumption term behind each value, when translated
        origin: the assumption class key the attribute was built from
    """
    id: str
    values: Tuple[str, ...]
    assumptions: Tuple[Term, ...] = ()
    origin: Optional[Term] = None

    def assumption(self, value: str) -> Optional[Term]:
        if not self.assumptions:
            return None
        return self.assumptions[self.values.index(value)]


@dataclass(frozen=True)
class ActivityConstraint:
    """trigger → active(target); the trigger is a conjunction of assignments"""
    target: str
    trigger: Tuple[Pair, ...]


@dataclass(frozen=True)
class CompatibilityConstraint:
    """A forbidden partial assignment"""
    forbidden: Tuple[Pair, ...]

    @property
    def scope(self) -> Tuple[str, ...]:
        return tuple(attribute for attribute, _ in self.forbidden)

    def violated_by(self, assignment: Mapping[str, str]) -> bool:
        return all(assignment.get(attribute) == value for attribute, value in self.forbidden)


class Status(Enum):
    SOLUTION = "solution"
    ACTIVITY_VIOLATION = "activity-violation"
    COMPATIBILITY_VIOLATION = "compatibility-violation"


@dataclass(frozen=True)
class Evaluation:
    status: Status
    preference: Optional[OMP] = None

    @property
    def is_solution(self) -> bool:
        return self.status is Status.SOLUTION


@dataclass(frozen=True)
class Solution:
    """A complete assignment and its preference"""
    assignment: Tuple[Pair, ...]
    preference: OMP

    def as_dict(self) -> Dict[str, str]:
        return dict(self.assignment)


@dataclass(frozen=True)
class ADPCSP:
    """
    Attributes with their activity and compatibility constraints and preferences

    An attribute without activity constraints is always active. Preferences
    map (attribute, value) to an OMP; absent pairs carry the empty OMP.
    """
    attributes: Tuple[Attribute, ...] = ()
    activity: Tuple[ActivityConstraint, ...] = ()
    compatibility: Tuple[CompatibilityConstraint, ...] = ()
    ordering: BPQOrdering = field(default_factory=BPQOrdering.empty)
    preferences: Mapping[Pair, OMP] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "_index", {a.id: a for a in self.attributes})
        for constraint in self.activity:
            self.attribute(constraint.target)
            for pair in constraint.trigger:
                self.check_pair(*pair)
        for constraint in self.compatibility:
            for pair in constraint.forbidden:
                self.check_pair(*pair)
        for pair in self.preferences:
            self.check_pair(*pair)

    def attribute(self, attribute_id: str) -> Attribute:
        try:
            return self._index[attribute_id]
        except KeyError:
            raise UnknownAttribute(attribute_id) from None

    def check_pair(self, attribute_id: str, value: str) -> None:
        if value not in self.attribute(attribute_id).values:
            raise UnknownValue(attribute_id, value)

    @property
    def ids(self) -> Tuple[str, ...]:
        return tuple(a.id for a in self.attributes)

    @property
    def always_active(self) -> Tuple[str, ...]:
        targets = {c.target for c in self.activity}
        return tuple(a.id for a in self.attributes if a.id not in targets)

    def triggers(self, attribute_id: str) -> List[Tuple[Pair, ...]]:
        return [c.trigger for c in self.activity if c.target == attribute_id]

    def preference(self, attribute_id: str, value: str) -> OMP:
        found = self.preferences.get((attribute_id, value))
        return found if found is not None else OMP.empty(self.ordering)

    def with_preferences(self, ordering: BPQOrdering, preferences: Mapping[Pair, OMP]) -> "ADPCSP":
        return replace(self, ordering=ordering, preferences=dict(preferences))


def activated(csp: ADPCSP, assignment: Mapping[str, str]) -> Set[str]:
    """
    Least set of active attributes under an assignment

    Always-active attributes start the set; an activity constraint fires
    when every attribute of its trigger is active and holds the trigger value.
    """
    active: Set[str] = set(csp.always_active)
    changed = True
    while changed:
        changed = False
        for constraint in csp.activity:
            if constraint.target in active:
                continue
            if all(a in active and assignment.get(a) == v for a, v in constraint.trigger):
                active.add(constraint.target)
                changed = True
    return active


def assignment_preference(csp: ADPCSP, assignment: Iterable[Pair]) -> OMP:
    return combine_all(csp.ordering, (csp.preference(a, v) for a, v in assignment))


def evaluate(csp: ADPCSP, assignment: Mapping[str, str]) -> Evaluation:
    """
    Check an assignment against the solution conditions

    The assigned attributes must be exactly the active ones and no
    compatibility constraint may be violated.
    """
    for attribute_id, value in assignment.items():
        csp.check_pair(attribute_id, value)
    if set(assignment) != activated(csp, assignment):
        return Evaluation(Status.ACTIVITY_VIOLATION)
    if any(c.violated_by(assignment) for c in csp.compatibility):
        return Evaluation(Status.COMPATIBILITY_VIOLATION)
    return Evaluation(Status.SOLUTION, assignment_preference(csp, assignment.items()))


def canonical_assignment(csp: ADPCSP, assignment: Mapping[str, str]) -> Tuple[Pair, ...]:
    """Assignment pairs in attribute declaration order"""
    return tuple((a, assignment[a]) for a in csp.ids if a in assignment)
