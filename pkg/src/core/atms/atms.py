"""
Assumption-based truth maintenance with negated assumption literals
"""
import logging
from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Deque, Dict, FrozenSet, Iterable, List, NamedTuple, Optional, Set, Tuple

from ..errors import ComposerError
from ..terms import print_canonical

logger = logging.getLogger(__name__)


class ATMSError(ComposerError):
    """Base class of truth maintenance errors"""


class UnknownNode(ATMSError):
    def __init__(self, node: int):
        super().__init__(f"no node with id {node}")
        self.node = node


class NegatedDerivedAntecedent(ATMSError):
    def __init__(self, node: int):
        super().__init__(f"node {node} is not an assumption and cannot be negated")
        self.node = node


class InvalidConsequent(ATMSError):
    def __init__(self, node: int):
        super().__init__(f"node {node} is an assumption and cannot be justified")
        self.node = node


class NodeKind(Enum):
    ASSUMPTION = "assumption"
    DERIVED = "derived"
    NOGOOD = "nogood"


class Literal(NamedTuple):
    """A signed reference to a node; only assumptions may be negative"""
    node: int
    positive: bool = True

    def negate(self) -> "Literal":
        return Literal(self.node, not self.positive)


Env = FrozenSet[Literal]
Label = Set[Env]

EMPTY_ENV: Env = frozenset()


def pos(node: int) -> Literal:
    return Literal(node, True)


def neg(node: int) -> Literal:
    return Literal(node, False)


def env_key(env: Env) -> Tuple[Tuple[int, int], ...]:
    """Canonical sort key of an environment: literals by node, positive first"""
    return tuple(sorted((lit.node, 0 if lit.positive else 1) for lit in env))


def sorted_envs(envs: Iterable[Env]) -> List[Env]:
    return sorted(envs, key=lambda e: (len(e), env_key(e)))


def is_complementary(env: Env) -> bool:
    return any(lit.negate() in env for lit in env if lit.positive)


def minimize(envs: Iterable[Env]) -> Set[Env]:
    """Drop every environment that strictly contains another one"""
    result: List[Env] = []
    for env in sorted(set(envs), key=len):
        if not any(kept <= env for kept in result):
            result.append(env)
    return set(result)


@dataclass(frozen=True)
class Justification:
    antecedents: Tuple[Literal, ...]
    consequent: int


@dataclass
class Node:
    id: int
    kind: NodeKind
    datum: Any
    label: Set[Env] = field(default_factory=set)
    justifications: List[Justification] = field(default_factory=list)
    consumers: List[Justification] = field(default_factory=list)


class ATMS:
    """
    Label-maintaining network of assumption, derived and nogood nodes

    Node 0 is the nogood node ⊥. Labels are kept sound, consistent,
    minimal and complete after every mutation.
    """

    BOTTOM = 0

    def __init__(self):
        self.nodes: List[Node] = []
        self.justifications: List[Justification] = []
        self._by_datum: Dict[Any, int] = {}
        self._new_node(NodeKind.NOGOOD, "⊥")

    # Construction

    def _new_node(self, kind: NodeKind, datum: Any) -> int:
        node = Node(len(self.nodes), kind, datum)
        self.nodes.append(node)
        self._by_datum.setdefault(datum, node.id)
        return node.id

    def add_assumption(self, datum: Any = None) -> int:
        """Create an assumption; its label is {{+self}}"""
        node_id = self._new_node(NodeKind.ASSUMPTION, datum if datum is not None else f"a{len(self.nodes)}")
        env = frozenset({pos(node_id)})
        if not self.is_inconsistent(env):
            self.nodes[node_id].label.add(env)
        return node_id

    def add_node(self, datum: Any = None) -> int:
        """Create a derived node with an empty label"""
        return self._new_node(NodeKind.DERIVED, datum if datum is not None else f"n{len(self.nodes)}")

    def node(self, node_id: int) -> Node:
        if not isinstance(node_id, int) or node_id < 0 or node_id >= len(self.nodes):
            raise UnknownNode(node_id)
        return self.nodes[node_id]

    def kind(self, node_id: int) -> NodeKind:
        return self.node(node_id).kind

    def lookup(self, datum: Any) -> Optional[int]:
        """Id of the first node created with this datum"""
        return self._by_datum.get(datum)

    @property
    def assumptions(self) -> List[int]:
        return [n.id for n in self.nodes if n.kind is NodeKind.ASSUMPTION]

    def add_justification(self, antecedents: Iterable[Literal], consequent: int) -> Justification:
        """
        Record antecedents → consequent and propagate labels

        Args:
            antecedents: literals, negative ones over assumptions only
            consequent: a derived node or ⊥

        Returns:
            The stored justification
        """
        target = self.node(consequent)
        if target.kind is NodeKind.ASSUMPTION:
            raise InvalidConsequent(consequent)
        literals = []
        for lit in antecedents:
            lit = Literal(*lit)
            source = self.node(lit.node)
            if not lit.positive and source.kind is not NodeKind.ASSUMPTION:
                raise NegatedDerivedAntecedent(lit.node)
            literals.append(lit)
        justification = Justification(tuple(dict.fromkeys(literals)), consequent)
        self.justifications.append(justification)
        target.justifications.append(justification)
        for lit in justification.antecedents:
            if lit.positive:
                self.nodes[lit.node].consumers.append(justification)
        self._propagate(deque([(justification, None, None)]))
        return justification

    def add_nogood(self, literals: Iterable[Literal]) -> Justification:
        return self.add_justification(literals, self.BOTTOM)

    # Queries

    def label(self, node_id: int) -> Set[Env]:
        return set(self.node(node_id).label)

    def nogoods(self) -> Set[Env]:
        return set(self.nodes[self.BOTTOM].label)

    def is_inconsistent(self, env: Env) -> bool:
        if is_complementary(env):
            return True
        return any(nogood <= env for nogood in self.nodes[self.BOTTOM].label)

    def literal_label(self, lit: Literal) -> Set[Env]:
        if lit.positive:
            return self.nodes[lit.node].label
        env = frozenset({lit})
        return set() if self.is_inconsistent(env) else {env}

    def holds_in(self, node_id: int, env: Env) -> bool:
        """True when some label environment of the node is contained in env"""
        return any(e <= env for e in self.node(node_id).label)

    def consequences(self, literals: Iterable[Literal]) -> Set[int]:
        """
        Forward closure of a literal set under all justifications

        Returns the ids of every node that holds, the given assumptions and
        ⊥ included when derived.
        """
        given = set(Literal(*lit) for lit in literals)
        true_nodes = {lit.node for lit in given if lit.positive}
        changed = True
        while changed:
            changed = False
            for just in self.justifications:
                if just.consequent in true_nodes:
                    continue
                if all(
                    (lit.node in true_nodes) if lit.positive else (lit in given)
                    for lit in just.antecedents
                ):
                    true_nodes.add(just.consequent)
                    changed = True
        return true_nodes

    # Propagation

    def _weave(self, justification: Justification, changed: Optional[Literal], delta: Optional[Set[Env]]) -> Set[Env]:
        envs: Set[Env] = {EMPTY_ENV}
        for lit in justification.antecedents:
            source = delta if lit == changed else self.literal_label(lit)
            combined: Set[Env] = set()
            for left in envs:
                for right in source:
                    env = left | right
                    if not self.is_inconsistent(env):
                        combined.add(env)
            envs = minimize(combined)
            if not envs:
                break
        return envs

    def _propagate(self, queue: Deque[Tuple[Justification, Optional[Literal], Optional[Set[Env]]]]) -> None:
        while queue:
            justification, changed, delta = queue.popleft()
            envs = self._weave(justification, changed, delta)
            if not envs:
                continue
            target = justification.consequent
            if target == self.BOTTOM:
                self._add_nogoods(envs)
                continue
            added = self._update(target, envs)
            if added:
                for consumer in self.nodes[target].consumers:
                    queue.append((consumer, pos(target), added))

    def _update(self, node_id: int, envs: Set[Env]) -> Set[Env]:
        label = self.nodes[node_id].label
        added: Set[Env] = set()
        for env in sorted_envs(envs):
            if self.is_inconsistent(env) or any(old <= env for old in label):
                continue
            superseded = {old for old in label if env < old}
            label.difference_update(superseded)
            added.difference_update(superseded)
            label.add(env)
            added.add(env)
        return added

    def _add_nogoods(self, envs: Set[Env]) -> None:
        bottom = self.nodes[self.BOTTOM].label
        for env in sorted_envs(envs):
            if any(old <= env for old in bottom):
                continue
            bottom.difference_update({old for old in bottom if env < old})
            bottom.add(env)
            logger.debug("nogood recorded: %s", self.render_env(env))
            for node in self.nodes[1:]:
                if node.label:
                    node.label.difference_update({e for e in node.label if env <= e})

    # Rendering

    def render_datum(self, node_id: int) -> str:
        datum = self.nodes[node_id].datum
        return datum if isinstance(datum, str) else print_canonical(datum)

    def render_literal(self, lit: Literal) -> str:
        text = self.render_datum(lit.node)
        return text if lit.positive else f"(not {text})"

    def render_env(self, env: Env) -> str:
        ordered = sorted(env, key=lambda lit: (self.render_datum(lit.node), not lit.positive))
        return "(" + " ".join(self.render_literal(lit) for lit in ordered) + ")"

    def render_label(self, envs: Iterable[Env]) -> str:
        rendered = sorted(self.render_env(env) for env in envs)
        return "{" + " ".join(rendered) + "}"

    def dump(self) -> List[str]:
        """One line per node: `<id> <kind> <datum> :label {env...}`"""
        return [
            f"{node.id} {node.kind.value} {self.render_datum(node.id)} :label {self.render_label(node.label)}"
            for node in self.nodes
        ]
