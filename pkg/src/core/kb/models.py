"""
Knowledge base data model
Entity classes, participant specifications, model fragments, property
definitions, scenarios and assumption forms
"""
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, List, NamedTuple, Optional, Set, Tuple, Union

from ..errors import ComposerError, Position
from ..terms import Compound, Symbol, Term, print_canonical


class KnowledgeBaseError(ComposerError):
    """Base class of knowledge base errors"""


class UnknownDefForm(KnowledgeBaseError):
    pass


class UnknownType(KnowledgeBaseError):
    def __init__(self, var: Optional[str], type_name: str, position: Optional[Position] = None):
        subject = f"participant ?{var} has unknown type" if var else "unknown type"
        super().__init__(f"{subject} {type_name}", position)
        self.var = var
        self.type_name = type_name


class DuplicateName(KnowledgeBaseError):
    pass


class CyclicHierarchy(KnowledgeBaseError):
    pass


class FreeVariableViolation(KnowledgeBaseError):
    def __init__(self, definition: str, var: str, position: Optional[Position] = None):
        super().__init__(f"?{var} is free in {definition}", position)
        self.definition = definition
        self.var = var


class MalformedAssumption(KnowledgeBaseError):
    pass


class MalformedDefinition(KnowledgeBaseError):
    pass


class UndeclaredParticipant(KnowledgeBaseError):
    pass


class UnknownFeature(KnowledgeBaseError):
    pass


BUILTIN_CLASSES: Tuple[Tuple[str, Optional[str]], ...] = (
    ("variable", None),
    ("stock", "variable"),
    ("flow", "variable"),
    ("population", None),
    ("parameter", None),
    ("phenomenon", None),
)


@dataclass(frozen=True)
class EntityClass:
    name: str
    superclass: Optional[str] = None
    features: Tuple[str, ...] = ()
    builtin: bool = False
    pos: Optional[Position] = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class ParticipantSpec:
    """
    One `(?var :type t [:name hint] [:entity (feature ?p)])` entry

    Attributes:
        var: variable name without the `?`
        type: entity class name
        name_hint: prefix for generated instance names
        entity_anchor: `(feature ?p)` making the instance a feature of ?p
    """
    var: str
    type: str
    name_hint: Optional[str] = None
    entity_anchor: Optional[Compound] = None
    pos: Optional[Position] = field(default=None, compare=False, repr=False)

    @property
    def hint(self) -> str:
        return self.name_hint or self.var


@dataclass(frozen=True)
class ModelFragment:
    """
    A rule: sources, targets, structural conditions, postconditions,
    assumptions and purpose-required properties

    negated_conditions hold the inner terms of `(not t)` conditions; only
    fragments derived from property definitions carry them.
    """
    name: str
    sources: Tuple[ParticipantSpec, ...] = ()
    targets: Tuple[ParticipantSpec, ...] = ()
    structural_conditions: Tuple[Term, ...] = ()
    postconditions: Tuple[Term, ...] = ()
    assumptions: Tuple[Term, ...] = ()
    purpose_required: Tuple[Term, ...] = ()
    negated_conditions: Tuple[Term, ...] = ()
    is_property: bool = False
    pos: Optional[Position] = field(default=None, compare=False, repr=False)

    @property
    def source_vars(self) -> Set[str]:
        return {spec.var for spec in self.sources}


@dataclass(frozen=True)
class PropertyDef:
    """Sources, conditions and the property they establish; a condition term may be `(not t)`"""
    name: str
    sources: Tuple[ParticipantSpec, ...]
    conditions: Tuple[Term, ...]
    property: Term
    pos: Optional[Position] = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Scenario:
    name: str
    participants: Tuple[Tuple[str, str], ...] = ()
    relations: Tuple[Term, ...] = ()
    requirements: Tuple[Term, ...] = ()
    pos: Optional[Position] = field(default=None, compare=False, repr=False)


class Relevance(NamedTuple):
    """`(relevant name subject...)`"""
    name: str
    subjects: Tuple[Term, ...]


class Model(NamedTuple):
    """`(model subject name)`"""
    subject: Term
    name: str


AssumptionForm = Union[Relevance, Model]


def is_negation(term: Term) -> bool:
    return isinstance(term, Compound) and term.head_name == "not" and len(term.items) == 2


def parse_assumption(term: Term) -> AssumptionForm:
    """
    Classify a relevance or model assumption

    Args:
        term: `(relevant name subject...)` or `(model subject name)`

    Returns:
        Relevance(name, subjects) or Model(subject, name)
    """
    if not isinstance(term, Compound) or term.head_name not in ("relevant", "model"):
        raise MalformedAssumption(f"not an assumption: {print_canonical(term)}", term.pos)
    args = term.args
    if term.head_name == "relevant":
        if not args or not isinstance(args[0], Symbol):
            raise MalformedAssumption(f"relevance needs a phenomenon name: {print_canonical(term)}", term.pos)
        return Relevance(args[0].name, tuple(args[1:]))
    if len(args) != 2 or not isinstance(args[1], Symbol):
        raise MalformedAssumption(f"expected (model <subject> <name>): {print_canonical(term)}", term.pos)
    return Model(args[0], args[1].name)


def property_to_fragment(p: PropertyDef) -> ModelFragment:
    """A fragment with the same sources whose only postcondition is the property"""
    positive = tuple(c for c in p.conditions if not is_negation(c))
    negated = tuple(c.items[1] for c in p.conditions if is_negation(c))
    return ModelFragment(
        name=p.name,
        sources=p.sources,
        structural_conditions=positive,
        postconditions=(p.property,),
        negated_conditions=negated,
        is_property=True,
        pos=p.pos,
    )


@dataclass(frozen=True)
class KnowledgeBase:
    """
    Loaded, validated knowledge base

    Attributes:
        classes: every entity class, built-ins first
        declarations: names of the user defEntity forms in file order
        fragments: model fragments in declaration order
        properties: property definitions in declaration order
        scenarios: scenarios by name
        rule_order: fragment and property names interleaved as declared
    """
    classes: Dict[str, EntityClass] = field(default_factory=dict)
    declarations: Tuple[str, ...] = ()
    fragments: Tuple[ModelFragment, ...] = ()
    properties: Tuple[PropertyDef, ...] = ()
    scenarios: Dict[str, Scenario] = field(default_factory=dict)
    rule_order: Tuple[str, ...] = ()

    def entity_class(self, name: str) -> EntityClass:
        try:
            return self.classes[name]
        except KeyError:
            raise UnknownType(None, name) from None

    def ancestors(self, name: str) -> List[str]:
        """The class itself followed by its superclasses, nearest first"""
        chain = []
        current: Optional[str] = name
        while current is not None:
            chain.append(current)
            current = self.entity_class(current).superclass
        return chain

    def is_subtype(self, a: str, b: str) -> bool:
        self.entity_class(b)
        return b in self.ancestors(a)

    def effective_features(self, name: str) -> Tuple[str, ...]:
        features: List[str] = []
        for cls in reversed(self.ancestors(name)):
            features.extend(f for f in self.classes[cls].features if f not in features)
        return tuple(features)

    @cached_property
    def property_fragments(self) -> Dict[str, ModelFragment]:
        return {p.name: property_to_fragment(p) for p in self.properties}

    @cached_property
    def rules(self) -> Tuple[ModelFragment, ...]:
        """Fragments and embedded properties in declaration order"""
        by_name = {f.name: f for f in self.fragments}
        by_name.update(self.property_fragments)
        return tuple(by_name[name] for name in self.rule_order)

    @cached_property
    def property_heads(self) -> Set[str]:
        return {
            p.property.head_name for p in self.properties
            if isinstance(p.property, Compound) and p.property.head_name
        }

    def scenario(self, name: Optional[str] = None) -> Scenario:
        """Scenario by name, or the only one loaded when name is None"""
        if name is None:
            if len(self.scenarios) != 1:
                raise KnowledgeBaseError(f"expected exactly one scenario, found {len(self.scenarios)}")
            return next(iter(self.scenarios.values()))
        try:
            return self.scenarios[name]
        except KeyError:
            raise KnowledgeBaseError(f"unknown scenario {name}") from None
