"""
Knowledge base loader
Reads defEntity, defModelFragment, defproperty, defScenario and require
forms and validates them into a KnowledgeBase
"""
import logging
from dataclasses import replace
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple, Union

from ..terms import (
    Compound, Symbol, Term, Variable, expect_list, expect_symbol, form_head, is_ground,
    parse_file, print_canonical, split_keywords, variables,
)
from .models import (
    BUILTIN_CLASSES, CyclicHierarchy, DuplicateName, EntityClass, FreeVariableViolation,
    KnowledgeBase, MalformedDefinition, ModelFragment, ParticipantSpec, PropertyDef, Scenario,
    UndeclaredParticipant, UnknownDefForm, UnknownFeature, UnknownType, is_negation,
    parse_assumption,
)

logger = logging.getLogger(__name__)

DEF_FORMS = ("defEntity", "defModelFragment", "defproperty", "defScenario", "require")

# Keyword spellings accepted in def-forms, mapped to one canonical slot
FRAGMENT_KEYWORDS = {
    "source-participants": "sources",
    "target-participants": "targets",
    "target-participant": "targets",
    "structural-conditions": "conditions",
    "structural-condition": "conditions",
    "postconditions": "postconditions",
    "assumptions": "assumptions",
    "purpose-required": "purpose",
}
PROPERTY_KEYWORDS = {
    "source-participants": "sources",
    "structural-conditions": "conditions",
    "structural-condition": "conditions",
    "property": "property",
}
SCENARIO_KEYWORDS = {
    "entities": "participants",
    "participants": "participants",
    "relations": "relations",
    "requirements": "requirements",
}

# Scenario relation arguments that mark the open end of a flow
FLOW_ENDPOINTS = frozenset({"source", "sink"})


def normalize(term: Term) -> Term:
    """Rewrite `=` heads to `==` and `(relevant-x ...)` to `(relevant x ...)`"""
    if not isinstance(term, Compound):
        return term
    items = [normalize(item) for item in term.items]
    head = term.head_name
    if head == "=":
        items[0] = Symbol("==", term.items[0].pos)
    elif head is not None and head.startswith("relevant-") and len(head) > len("relevant-"):
        items[0:1] = [Symbol("relevant", term.items[0].pos), Symbol(head[len("relevant-"):], term.items[0].pos)]
    return Compound(tuple(items), term.pos)


def _slots(form: Compound, table: Dict[str, str], what: str) -> Tuple[List[Term], Dict[str, Term]]:
    positionals, keywords = split_keywords(form.args, MalformedDefinition)
    slots: Dict[str, Term] = {}
    for keyword, value in keywords.items():
        slot = table.get(keyword)
        if slot is None:
            raise MalformedDefinition(f"{what} does not accept :{keyword}", value.pos or form.pos)
        if slot in slots:
            raise MalformedDefinition(f"{what} gives :{keyword} twice under different spellings", value.pos)
        slots[slot] = value
    return positionals, slots


def _term_list(slots: Dict[str, Term], slot: str, what: str) -> Tuple[Term, ...]:
    if slot not in slots:
        return ()
    return tuple(normalize(t) for t in expect_list(slots[slot], what, MalformedDefinition))


def _form_name(positionals: List[Term], form: Compound) -> str:
    if len(positionals) != 1:
        raise MalformedDefinition(f"{form.head_name} needs exactly one name", form.pos)
    return expect_symbol(positionals[0], f"{form.head_name} name", MalformedDefinition)


class KnowledgeBaseLoader:
    """Builds a KnowledgeBase from top-level terms in two passes"""

    def __init__(self):
        self.classes: Dict[str, EntityClass] = {
            name: EntityClass(name, superclass, builtin=True) for name, superclass in BUILTIN_CLASSES
        }
        self.declarations: List[str] = []
        self.fragments: List[ModelFragment] = []
        self.properties: List[PropertyDef] = []
        self.scenarios: Dict[str, Scenario] = {}
        self.rule_order: List[str] = []
        self._rule_names: Set[str] = set()

    def load(self, terms: Sequence[Term]) -> KnowledgeBase:
        for term in terms:
            head = form_head(term)
            if head not in DEF_FORMS:
                raise UnknownDefForm(f"unknown top-level form {print_canonical(term)[:60]}", term.pos)
        for term in terms:
            if form_head(term) == "defEntity":
                self._entity(term)
        self._check_hierarchy()
        required: List[Tuple[Optional[str], Compound]] = []
        current: Optional[str] = None
        for term in terms:
            head = form_head(term)
            if head == "defModelFragment":
                self._fragment(term)
            elif head == "defproperty":
                self._property(term)
            elif head == "defScenario":
                current = self._scenario(term)
            elif head == "require":
                required.append((current, term))
        for owner, form in required:
            self._require(owner, form)
        kb = KnowledgeBase(
            classes=dict(self.classes),
            declarations=tuple(self.declarations),
            fragments=tuple(self.fragments),
            properties=tuple(self.properties),
            scenarios=dict(self.scenarios),
            rule_order=tuple(self.rule_order),
        )
        logger.info(
            "knowledge base loaded: %d entity declarations, %d fragments, %d properties, %d scenarios",
            len(kb.declarations), len(kb.fragments), len(kb.properties), len(kb.scenarios),
        )
        return kb

    # Entities

    def _entity(self, form: Compound) -> None:
        positionals, keywords = split_keywords(form.args, MalformedDefinition)
        name = _form_name(positionals, form)
        superclass: Optional[str] = None
        features: Tuple[str, ...] = ()
        for keyword, value in keywords.items():
            if keyword == "subclass-of":
                if isinstance(value, Compound):
                    if len(value.items) != 1:
                        raise MalformedDefinition("a class has one immediate superclass", value.pos)
                    value = value.items[0]
                superclass = expect_symbol(value, "superclass", MalformedDefinition)
            elif keyword in ("participants", "features"):
                features = tuple(
                    expect_symbol(f, "feature", MalformedDefinition)
                    for f in expect_list(value, "participants", MalformedDefinition)
                )
            else:
                raise MalformedDefinition(f"defEntity does not accept :{keyword}", value.pos)
        if name in self.declarations:
            raise DuplicateName(f"entity {name} declared twice", form.pos)
        existing = self.classes.get(name)
        if existing is not None and existing.builtin:
            if superclass is not None and superclass != existing.superclass:
                raise DuplicateName(
                    f"entity {name} conflicts with the built-in class of the same name", form.pos
                )
            superclass = existing.superclass
        self.classes[name] = EntityClass(name, superclass, features, builtin=False, pos=form.pos)
        self.declarations.append(name)

    def _check_hierarchy(self) -> None:
        for cls in self.classes.values():
            if cls.superclass is not None and cls.superclass not in self.classes:
                raise UnknownType(None, cls.superclass, cls.pos)
        for name in self.classes:
            seen = [name]
            current = self.classes[name].superclass
            while current is not None:
                if current in seen:
                    raise CyclicHierarchy(
                        "cyclic subclass chain: " + " -> ".join(seen + [current]), self.classes[name].pos
                    )
                seen.append(current)
                current = self.classes[current].superclass

    def _effective_features(self, name: str) -> Set[str]:
        features: Set[str] = set()
        current: Optional[str] = name
        while current is not None:
            features.update(self.classes[current].features)
            current = self.classes[current].superclass
        return features

    # Participant specifications

    def _spec(self, term: Term) -> ParticipantSpec:
        items = expect_list(term, "participant specification", MalformedDefinition)
        if not items or not isinstance(items[0], Variable):
            raise MalformedDefinition("participant specification must start with a variable", term.pos)
        var = items[0].name
        _, keywords = split_keywords(items[1:], MalformedDefinition)
        unknown = set(keywords) - {"type", "name", "entity"}
        if unknown:
            raise MalformedDefinition(f"unknown participant keyword :{sorted(unknown)[0]}", term.pos)
        if "type" not in keywords:
            raise MalformedDefinition(f"participant ?{var} has no :type", term.pos)
        type_name = expect_symbol(keywords["type"], "participant type", MalformedDefinition)
        if type_name not in self.classes:
            raise UnknownType(var, type_name, keywords["type"].pos)
        hint = None
        if "name" in keywords:
            hint = expect_symbol(keywords["name"], "participant name", MalformedDefinition)
        anchor = keywords.get("entity")
        if anchor is not None:
            if not (
                isinstance(anchor, Compound) and len(anchor.items) == 2
                and isinstance(anchor.items[0], Symbol) and isinstance(anchor.items[1], Variable)
            ):
                raise MalformedDefinition("expected :entity (<feature> ?participant)", anchor.pos)
        return ParticipantSpec(var, type_name, hint, anchor, term.pos)

    def _specs(self, slots: Dict[str, Term], slot: str) -> Tuple[ParticipantSpec, ...]:
        if slot not in slots:
            return ()
        specs = tuple(self._spec(t) for t in expect_list(slots[slot], "participant list", MalformedDefinition))
        return specs

    # Fragments and properties

    def _claim_rule_name(self, name: str, form: Compound) -> None:
        if name in self._rule_names:
            raise DuplicateName(f"rule {name} defined twice", form.pos)
        self._rule_names.add(name)
        self.rule_order.append(name)

    @staticmethod
    def _check_free(terms: Iterable[Term], bound: Set[str], definition: str) -> None:
        for term in terms:
            for var in sorted(variables(term) - bound):
                raise FreeVariableViolation(definition, var, term.pos)

    def _fragment(self, form: Compound) -> None:
        positionals, slots = _slots(form, FRAGMENT_KEYWORDS, "defModelFragment")
        name = _form_name(positionals, form)
        sources = self._specs(slots, "sources")
        targets = self._specs(slots, "targets")
        conditions = _term_list(slots, "conditions", "structural conditions")
        postconditions = _term_list(slots, "postconditions", "postconditions")
        assumptions = _term_list(slots, "assumptions", "assumptions")
        purpose = _term_list(slots, "purpose", "purpose-required properties")

        source_vars = [s.var for s in sources]
        all_vars = source_vars + [t.var for t in targets]
        if len(set(all_vars)) != len(all_vars):
            raise MalformedDefinition(f"fragment {name} declares a participant variable twice", form.pos)
        for condition in conditions:
            if is_negation(condition):
                raise MalformedDefinition(
                    f"negated conditions are only allowed in property definitions ({name})", condition.pos
                )
        bound = set(source_vars)
        self._check_free(conditions, bound, name)
        self._check_free(assumptions, bound, name)
        self._check_free(postconditions, set(all_vars), name)
        self._check_free(purpose, set(all_vars), name)
        for assumption in assumptions:
            parse_assumption(assumption)
        source_types = {s.var: s.type for s in sources}
        for target in targets:
            if target.entity_anchor is None:
                continue
            feature = target.entity_anchor.items[0].name
            owner = target.entity_anchor.items[1].name
            if owner not in source_types:
                raise FreeVariableViolation(name, owner, target.entity_anchor.pos)
            known = self._effective_features(source_types[owner])
            if known and feature not in known:
                raise UnknownFeature(
                    f"{feature} is not a feature of class {source_types[owner]}", target.entity_anchor.pos
                )

        self._claim_rule_name(name, form)
        self.fragments.append(ModelFragment(
            name=name,
            sources=sources,
            targets=targets,
            structural_conditions=conditions,
            postconditions=postconditions,
            assumptions=assumptions,
            purpose_required=purpose,
            pos=form.pos,
        ))

    def _property(self, form: Compound) -> None:
        positionals, slots = _slots(form, PROPERTY_KEYWORDS, "defproperty")
        name = _form_name(positionals, form)
        if "property" not in slots:
            raise MalformedDefinition(f"property {name} has no :property", form.pos)
        sources = self._specs(slots, "sources")
        conditions = _term_list(slots, "conditions", "structural conditions")
        prop = normalize(slots["property"])
        if not isinstance(prop, Compound):
            raise MalformedDefinition(f"property {name} must be a relation", prop.pos)
        bound = {s.var for s in sources}
        self._check_free([prop], bound, name)

        alternatives: List[Tuple[str, Tuple[Term, ...]]]
        if len(conditions) == 1 and form_head(conditions[0]) == "or":
            disjuncts = conditions[0].args
            if not disjuncts:
                raise MalformedDefinition(f"empty disjunction in property {name}", conditions[0].pos)
            alternatives = [
                (f"{name}/{k}", self._conjunction(d)) for k, d in enumerate(disjuncts, start=1)
            ]
        else:
            alternatives = [(name, conditions)]
        for rule_name, conjuncts in alternatives:
            for condition in conjuncts:
                inner = condition.items[1] if is_negation(condition) else condition
                if form_head(inner) in ("or", "not"):
                    raise MalformedDefinition(
                        f"property {name} nests {form_head(inner)} inside a condition", inner.pos
                    )
            self._check_free(conjuncts, bound, name)
            self._claim_rule_name(rule_name, form)
            self.properties.append(PropertyDef(rule_name, sources, conjuncts, prop, form.pos))

    @staticmethod
    def _conjunction(term: Term) -> Tuple[Term, ...]:
        if form_head(term) == "and":
            return tuple(term.args)
        return (term,)

    # Scenarios

    def _scenario(self, form: Compound) -> str:
        positionals, slots = _slots(form, SCENARIO_KEYWORDS, "defScenario")
        name = _form_name(positionals, form)
        if name in self.scenarios:
            raise DuplicateName(f"scenario {name} defined twice", form.pos)
        participants: List[Tuple[str, str]] = []
        declared: Set[str] = set()
        entries = expect_list(slots["participants"], "scenario entities", MalformedDefinition) \
            if "participants" in slots else ()
        for entry in entries:
            items = expect_list(entry, "scenario entity", MalformedDefinition)
            if not items:
                raise MalformedDefinition("empty scenario entity", entry.pos)
            instance = expect_symbol(items[0], "scenario entity name", MalformedDefinition)
            _, keywords = split_keywords(items[1:], MalformedDefinition)
            if set(keywords) != {"type"}:
                raise MalformedDefinition(f"expected ({instance} :type <class>)", entry.pos)
            type_name = expect_symbol(keywords["type"], "entity type", MalformedDefinition)
            if type_name not in self.classes:
                raise UnknownType(instance, type_name, keywords["type"].pos)
            if instance in declared:
                raise DuplicateName(f"scenario entity {instance} declared twice", entry.pos)
            declared.add(instance)
            participants.append((instance, type_name))

        relations = _term_list(slots, "relations", "scenario relations")
        for relation in relations:
            if not isinstance(relation, Compound) or not is_ground(relation):
                raise MalformedDefinition(
                    f"scenario relation must be a ground list: {print_canonical(relation)}", relation.pos
                )
            for arg in relation.args:
                if isinstance(arg, Symbol) and arg.name not in declared and arg.name not in FLOW_ENDPOINTS:
                    raise UndeclaredParticipant(
                        f"{arg.name} in {print_canonical(relation)} is not a scenario entity",
                        arg.pos or relation.pos,
                    )
        requirements = _term_list(slots, "requirements", "scenario requirements")
        for requirement in requirements:
            if not isinstance(requirement, Compound) or not is_ground(requirement):
                raise MalformedDefinition(
                    f"requirement must be a ground relation: {print_canonical(requirement)}", requirement.pos
                )
        self.scenarios[name] = Scenario(name, tuple(participants), relations, requirements, form.pos)
        return name

    def _require(self, owner: Optional[str], form: Compound) -> None:
        """Add a top-level `(require t)` to the nearest scenario before it, else the first one after"""
        if len(form.args) != 1:
            raise MalformedDefinition("require takes exactly one relation", form.pos)
        requirement = normalize(form.args[0])
        if not isinstance(requirement, Compound) or not is_ground(requirement):
            raise MalformedDefinition(
                f"requirement must be a ground relation: {print_canonical(requirement)}", form.pos
            )
        if owner is None:
            if not self.scenarios:
                raise MalformedDefinition("require form without a scenario", form.pos)
            owner = next(iter(self.scenarios))
        scenario = self.scenarios[owner]
        if requirement not in scenario.requirements:
            self.scenarios[owner] = replace(scenario, requirements=scenario.requirements + (requirement,))


def load_kb(terms: Sequence[Term]) -> KnowledgeBase:
    """
    Load and validate a knowledge base

    Args:
        terms: top-level def-forms, from any number of files

    Returns:
        The knowledge base
    """
    return KnowledgeBaseLoader().load(terms)


def load_kb_files(paths: Iterable[Union[str, Path]]) -> KnowledgeBase:
    terms: List[Term] = []
    for path in paths:
        terms.extend(parse_file(path))
    return load_kb(terms)
