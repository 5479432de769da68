"""
Model space construction
Instantiates knowledge base rules against a scenario inside an ATMS
"""
import logging
from dataclasses import dataclass, field
from typing import Dict, Iterable, Iterator, List, Optional, Set, Tuple

from ...config import Settings
from ..atms import ATMS, Env, Literal, minimize, pos
from ..errors import ComposerError
from ..kb import KnowledgeBase, ModelFragment, Relevance, Scenario, parse_assumption
from ..terms import (
    EMPTY, Compound, Substitution, Symbol, Term, Variable, apply_subst, compound,
    match_pattern, print_canonical,
)

logger = logging.getLogger(__name__)


class ModelSpaceError(ComposerError):
    """Base class of model space errors"""


class FixpointBudgetExceeded(ModelSpaceError):
    def __init__(self, limit: int):
        super().__init__(f"model space did not reach a fixpoint within {limit} rule applications")
        self.limit = limit


class StratificationViolation(ModelSpaceError):
    pass


@dataclass
class AssumptionClass:
    """
    Mutually exclusive assumption literals forming one choice

    A relevance class has values yes and no for one relevance assumption;
    a model class has one value per model assumption on the same subject.
    """
    kind: str
    key: Term
    subjects: Tuple[Term, ...]
    values: List[Tuple[str, Literal]] = field(default_factory=list)

    def value_of(self, lit: Literal) -> Optional[str]:
        for name, candidate in self.values:
            if candidate == lit:
                return name
        return None

    def literal(self, value: str) -> Optional[Literal]:
        for name, candidate in self.values:
            if name == value:
                return candidate
        return None


@dataclass
class Application:
    rule: ModelFragment
    subst: Substitution
    node: int


@dataclass(frozen=True)
class Match:
    subst: Substitution
    relations: Tuple[Term, ...]

    def key(self) -> Tuple[str, Tuple[str, ...]]:
        return self.subst.canonical(), tuple(print_canonical(r) for r in self.relations)


class ModelSpace:
    """
    The ATMS of participant, relation, assumption and rule-application
    nodes built for one scenario
    """

    def __init__(self, kb: KnowledgeBase, scenario: Scenario):
        self.kb = kb
        self.scenario = scenario
        self.atms = ATMS()
        self.participant_nodes: Dict[Term, int] = {}
        self.participant_types: Dict[Term, str] = {}
        self.relation_nodes: Dict[Term, int] = {}
        self.relations_by_head: Dict[Optional[str], List[Term]] = {}
        self.assumption_nodes: Dict[Term, int] = {}
        self.application_nodes: Dict[Tuple[str, str], int] = {}
        self.applications: List[Application] = []
        self._applications_by_key: Dict[Tuple[str, str], Application] = {}
        self._justified: Set[Tuple[str, Tuple[str, Tuple[str, ...]]]] = set()
        self.classes: List[AssumptionClass] = []
        self.class_of: Dict[int, AssumptionClass] = {}
        self.premises: Set[Term] = set()
        self.feature_instances: Dict[Tuple[str, Term], Term] = {}
        self.inconsistencies: List[Tuple[str, Env]] = []
        self.goals: List[Term] = []
        self._counters: Dict[str, int] = {}
        self._relevance_classes: Dict[Term, AssumptionClass] = {}
        self._model_classes: Dict[Term, AssumptionClass] = {}
        self._refutations: Dict[Literal, Set[Env]] = {}
        self._refuting: Set[Literal] = set()

    # Node bookkeeping

    def participant(self, instance: Term, type_name: str) -> int:
        node = self.participant_nodes.get(instance)
        if node is None:
            node = self.atms.add_node(instance)
            self.participant_nodes[instance] = node
            self.participant_types[instance] = type_name
        return node

    def relation(self, term: Term) -> int:
        node = self.relation_nodes.get(term)
        if node is None:
            node = self.atms.add_node(term)
            self.relation_nodes[term] = node
            head = term.head_name if isinstance(term, Compound) else None
            self.relations_by_head.setdefault(head, []).append(term)
        return node

    def assumption(self, term: Term) -> int:
        """Assumption node for a ground assumption, registering its class"""
        node = self.assumption_nodes.get(term)
        if node is not None:
            return node
        node = self.atms.add_assumption(term)
        self.assumption_nodes[term] = node
        form = parse_assumption(term)
        if isinstance(form, Relevance):
            cls = AssumptionClass("relevance", term, form.subjects, [("yes", pos(node)), ("no", Literal(node, False))])
            self._relevance_classes[term] = cls
            self.classes.append(cls)
        else:
            cls = self._model_classes.get(form.subject)
            if cls is None:
                cls = AssumptionClass("model", form.subject, (form.subject,))
                self._model_classes[form.subject] = cls
                self.classes.append(cls)
            cls.values.append((form.name, pos(node)))
        self.class_of[node] = cls
        return node

    def node_of(self, term: Term) -> Optional[int]:
        """Participant or relation node denoted by a ground term"""
        node = self.participant_nodes.get(term)
        if node is None:
            node = self.relation_nodes.get(term)
        return node

    def gensym(self, hint: str) -> Symbol:
        k = self._counters.get(hint, 0) + 1
        self._counters[hint] = k
        return Symbol(f"{hint}-{k}")

    def label(self, term: Term) -> Set[Env]:
        node = self.node_of(term)
        if node is None:
            node = self.assumption_nodes.get(term)
        return set() if node is None else self.atms.label(node)

    def assumption_term(self, node: int) -> Term:
        return self.atms.node(node).datum

    def literal_term(self, lit: Literal) -> Term:
        term = self.assumption_term(lit.node)
        return term if lit.positive else compound("not", term)

    def render_class(self, cls: AssumptionClass) -> str:
        if cls.kind == "relevance":
            return print_canonical(cls.key)
        return f"(model {print_canonical(cls.key)} *)"

    @property
    def relevance_classes(self) -> List[AssumptionClass]:
        return [c for c in self.classes if c.kind == "relevance"]

    @property
    def model_classes(self) -> List[AssumptionClass]:
        return [c for c in self.classes if c.kind == "model"]

    # Seeding

    def seed(self) -> None:
        for name, type_name in self.scenario.participants:
            instance = Symbol(name)
            self.atms.add_justification([], self.participant(instance, type_name))
            self.premises.add(instance)
        for term in self.scenario.relations:
            self.atms.add_justification([], self.relation(term))
            self.premises.add(term)
        self.goals.extend(self.scenario.requirements)
        logger.info(
            "scenario %s seeded: %d participants, %d relations",
            self.scenario.name, len(self.scenario.participants), len(self.scenario.relations),
        )

    # Matching

    def _relation_candidates(self, condition: Term) -> List[Term]:
        head = condition.head_name if isinstance(condition, Compound) else None
        if head is not None:
            return self.relations_by_head.get(head, [])
        return [r for terms in self.relations_by_head.values() for r in terms]

    def _join(self, conditions: Tuple[Term, ...], subst: Substitution, matched: Tuple[Term, ...]) -> Iterator[Match]:
        if not conditions:
            yield Match(subst, matched)
            return
        condition, rest = conditions[0], conditions[1:]
        for relation in list(self._relation_candidates(condition)):
            extended = match_pattern(condition, relation, subst)
            if extended is not None:
                yield from self._join(rest, extended, matched + (relation,))

    def _compatible(self, instance: Term, type_name: str) -> bool:
        actual = self.participant_types.get(instance)
        return actual is not None and self.kb.is_subtype(actual, type_name)

    def _bind_sources(self, rule: ModelFragment, match: Match) -> Iterator[Match]:
        def bind(i: int, subst: Substitution, used: Tuple[Term, ...]) -> Iterator[Substitution]:
            if i == len(rule.sources):
                yield subst
                return
            spec = rule.sources[i]
            bound = subst.get(spec.var)
            if bound is not None:
                if bound not in used and self._compatible(bound, spec.type):
                    yield from bind(i + 1, subst, used + (bound,))
                return
            for instance in list(self.participant_nodes):
                if instance not in used and self._compatible(instance, spec.type):
                    yield from bind(i + 1, subst.bind(spec.var, instance), used + (instance,))

        for subst in bind(0, match.subst, ()):
            yield Match(subst, match.relations)

    def matches(self, rule: ModelFragment) -> List[Match]:
        """
        All source bindings and matched condition instances, in canonical order

        A wildcard condition may match several relations under one
        binding; each distinct set of matched relations is its own match.
        """
        found: Dict[Tuple[str, Tuple[str, ...]], Match] = {}
        for joined in self._join(rule.structural_conditions, EMPTY, ()):
            for match in self._bind_sources(rule, joined):
                found.setdefault(match.key(), match)
        return [found[key] for key in sorted(found)]

    # Application

    def _application_datum(self, rule: ModelFragment, subst: Substitution) -> Term:
        bindings = [Compound((Variable(var), value)) for var, value in subst.key()]
        return Compound((Symbol("application"), Symbol(rule.name), *bindings))

    def is_applied(self, rule: ModelFragment, match: Match) -> bool:
        return (rule.name, match.key()) in self._justified

    def apply(self, rule: ModelFragment, match: Match, guards: Optional[Iterable[Env]] = None) -> Application:
        """
        Justify the application node of (rule, binding) by one match

        The first match creates the node and everything it posts; later
        matches under the same binding only add a justification, so target
        instances are created once. Postconditions are justified by the
        application node alone, or, when guards are given, once per guard
        environment added to it.
        """
        subst = match.subst
        antecedents: List[Literal] = [pos(self.participant_nodes[subst[s.var]]) for s in rule.sources]
        antecedents.extend(pos(self.relation_nodes[r]) for r in match.relations)
        for assumption in rule.assumptions:
            antecedents.append(pos(self.assumption(apply_subst(subst, assumption))))
        self._justified.add((rule.name, match.key()))
        key = (rule.name, subst.canonical())
        existing = self._applications_by_key.get(key)
        if existing is not None:
            self.atms.add_justification(antecedents, existing.node)
            logger.debug("justified %s again with %s", rule.name, match.key()[1])
            return existing
        node = self.atms.add_node(self._application_datum(rule, subst))
        self.application_nodes[key] = node
        self.atms.add_justification(antecedents, node)

        extended = subst
        for spec in rule.targets:
            anchor = spec.entity_anchor
            if anchor is not None:
                feature = anchor.items[0].name
                owner = subst[anchor.items[1].name]
                instance = self.feature_instances.get((feature, owner))
                if instance is None:
                    instance = self.gensym(spec.hint)
                    self.feature_instances[(feature, owner)] = instance
                extended = extended.bind(spec.var, instance)
                self.atms.add_justification([pos(node)], self.participant(instance, spec.type))
                self.atms.add_justification([pos(node)], self.relation(compound(feature, instance, owner)))
            else:
                instance = self.gensym(spec.hint)
                extended = extended.bind(spec.var, instance)
                self.atms.add_justification([pos(node)], self.participant(instance, spec.type))
        supports = [[pos(node)]] if guards is None else [
            [pos(node), *sorted(env)] for env in sorted(guards, key=lambda e: (len(e), sorted(e)))
        ]
        for post in rule.postconditions:
            target = self.relation(apply_subst(extended, post))
            for support in supports:
                self.atms.add_justification(support, target)
        application = Application(rule, extended, node)
        self.applications.append(application)
        self._applications_by_key[key] = application
        logger.debug("applied %s with %s", rule.name, subst.canonical())
        return application

    # Class-aware refutation

    def refutations(self, lit: Literal) -> Set[Env]:
        """
        Environments under which the literal cannot hold

        A relevance literal is refuted by its opposite, a model choice by
        another model of the same subject, and any literal by the absence
        of its class's subjects.
        """
        cached = self._refutations.get(lit)
        if cached is not None:
            return cached
        cls = self.class_of[lit.node]
        result: Set[Env] = {frozenset({other}) for _, other in cls.values if other != lit}
        if lit not in self._refuting:
            self._refuting.add(lit)
            try:
                result |= self.complement(self.subject_label(cls))
            finally:
                self._refuting.discard(lit)
            self._refutations[lit] = minimize(result)
        return minimize(result)

    def subject_label(self, cls: AssumptionClass) -> Set[Env]:
        """Environments under which every subject of the class exists"""
        envs: Set[Env] = {frozenset()}
        for subject in cls.subjects:
            node = self.node_of(subject)
            if node is None:
                return set()
            envs = minimize(left | right for left in envs for right in self.atms.label(node))
        return envs

    def class_consistent(self, env: Env) -> bool:
        """No two values of one class and no ⊥ environment inside"""
        chosen: Dict[int, Literal] = {}
        for lit in env:
            cls = self.class_of.get(lit.node)
            key = id(cls) if cls is not None else lit.node
            previous = chosen.get(key)
            if previous is not None and previous != lit:
                return False
            chosen[key] = lit
        return not self.atms.is_inconsistent(env)

    def complement(self, envs: Iterable[Env], base: Env = frozenset()) -> Set[Env]:
        """
        Minimal environments, each consistent with base, that refute every
        environment of the given label

        An empty label is refuted by the empty environment; a label holding
        the empty environment cannot be refuted.
        """
        hits: Set[Env] = {frozenset(base)}
        for env in sorted(envs, key=lambda e: (len(e), sorted(e))):
            grown: Set[Env] = set()
            for hit in hits:
                if self._refutes(hit, env):
                    grown.add(hit)
                    continue
                for lit in sorted(env):
                    for refutation in self.refutations(lit):
                        candidate = hit | refutation
                        if self.class_consistent(candidate):
                            grown.add(candidate)
            hits = minimize(grown)
            if not hits:
                return set()
        return {hit - base for hit in hits} if base else hits

    def _refutes(self, hit: Env, env: Env) -> bool:
        return any(r <= hit for lit in env for r in self.refutations(lit))

    def reset_refutations(self) -> None:
        self._refutations.clear()


def match_fragment(fragment: ModelFragment, space: ModelSpace) -> List[Substitution]:
    """
    Substitutions under which a fragment is instantiable in the space

    Sources bind distinct participants of compatible class and every
    structural condition matches an existing relation node.
    """
    found: Dict[str, Substitution] = {}
    for match in space.matches(fragment):
        found.setdefault(match.subst.canonical(), match.subst)
    return list(found.values())


def _run_fixpoint(space: ModelSpace, limit: int, budget: List[int]) -> int:
    applied = 0
    while True:
        progress = False
        for rule in space.kb.rules:
            if rule.negated_conditions:
                continue
            for match in space.matches(rule):
                if space.is_applied(rule, match):
                    continue
                budget[0] += 1
                if budget[0] > limit:
                    raise FixpointBudgetExceeded(limit)
                space.apply(rule, match)
                applied += 1
                progress = True
        if not progress:
            return applied


def _apply_negated(space: ModelSpace, limit: int, budget: List[int], used: Dict[Term, Set[Env]]) -> int:
    """
    Apply every rule with negated conditions once per fresh match

    The posted property holds under each environment that refutes all
    environments of every negated target.
    """
    applied = 0
    space.reset_refutations()
    for rule in space.kb.rules:
        if not rule.negated_conditions:
            continue
        for match in space.matches(rule):
            if space.is_applied(rule, match):
                continue
            budget[0] += 1
            if budget[0] > limit:
                raise FixpointBudgetExceeded(limit)
            guards: Set[Env] = {frozenset()}
            for negated in rule.negated_conditions:
                target = apply_subst(match.subst, negated)
                label = space.label(target)
                used[target] = label
                refuting = space.complement(label)
                guards = minimize(
                    left | right for left in guards for right in refuting
                    if space.class_consistent(left | right)
                )
            space.apply(rule, match, guards)
            applied += 1
    return applied


def _check_stratified(space: ModelSpace, used: Dict[Term, Set[Env]]) -> None:
    for target, label in used.items():
        if space.label(target) != label:
            raise StratificationViolation(
                f"{print_canonical(target)} gained support after it was used negatively"
            )


def build_space(space: ModelSpace, fixpoint_limit: Optional[int] = None) -> ModelSpace:
    """
    Run rule application to a fixpoint

    Positive rules run first; rules with negated conditions then run on
    the result, and the two alternate until neither applies anything new.
    """
    limit = Settings.FIXPOINT_LIMIT if fixpoint_limit is None else fixpoint_limit
    budget = [0]
    used: Dict[Term, Set[Env]] = {}
    while True:
        _run_fixpoint(space, limit, budget)
        _check_stratified(space, used)
        if not _apply_negated(space, limit, budget, used):
            break
    logger.info(
        "model space reached a fixpoint: %d nodes, %d rule applications, %d assumption classes",
        len(space.atms.nodes), len(space.applications), len(space.classes),
    )
    return space
