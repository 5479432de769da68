"""
Scenario model extraction from a chosen assumption set
"""
import logging
from dataclasses import dataclass
from typing import Dict, Iterable, List, Set, Tuple

from ..atms import Literal
from ..kb import is_negation
from ..terms import Compound, Symbol, Term, compound, print_canonical, term_key
from .composition import NonComposable, compose_relations, target_key
from .space import ModelSpace, ModelSpaceError

logger = logging.getLogger(__name__)

FLOW_SOURCE = Symbol("source")
FLOW_SINK = Symbol("sink")


class InconsistentAssumptionSet(ModelSpaceError):
    def __init__(self, witness: str):
        super().__init__(f"assumptions contain the nogood {witness}")
        self.witness = witness


class NonComposableModel(ModelSpaceError):
    def __init__(self, conflict: NonComposable):
        super().__init__(f"relations do not compose: {conflict.describe()}")
        self.conflict = conflict


@dataclass(frozen=True)
class ScenarioModel:
    """Participants and relations with every composable relation composed away"""
    participants: Tuple[Term, ...]
    relations: Tuple[Term, ...]

    def equations(self) -> List[Term]:
        return [r for r in self.relations if target_key(r) is not None]


def _literals(space: ModelSpace, assumptions: Iterable[Term]) -> Set[Literal]:
    literals: Set[Literal] = set()
    for term in assumptions:
        positive = not is_negation(term)
        inner = term if positive else term.items[1]
        node = space.assumption_nodes.get(inner)
        if node is None:
            raise ModelSpaceError(f"no assumption {print_canonical(inner)} in the model space", term.pos)
        literals.add(Literal(node, positive))
    return literals


def flow_relations(flow: Term) -> List[Term]:
    """The d/dt relations a `(flow f from to)` declaration stands for"""
    if not (isinstance(flow, Compound) and flow.head_name == "flow" and len(flow.items) == 4):
        return []
    _, name, origin, destination = flow.items
    relations = []
    if destination != FLOW_SINK:
        relations.append(compound("d/dt", destination, compound("C-add", name)))
    if origin != FLOW_SOURCE:
        relations.append(compound("d/dt", origin, compound("C-sub", name)))
    return relations


def extract_scenario_model(space: ModelSpace, assumptions: Iterable[Term]) -> ScenarioModel:
    """
    Deduce the scenario model that follows from a set of assumptions

    Args:
        space: finished model space
        assumptions: assumption terms; `(not t)` asserts the negative literal

    Returns:
        Participants and relations derived under the assumptions, flows
        translated to d/dt relations and composable groups composed
    """
    env = frozenset(_literals(space, assumptions))
    for nogood in sorted(space.atms.nogoods(), key=len):
        if nogood <= env:
            raise InconsistentAssumptionSet(space.atms.render_env(nogood))
    if space.atms.is_inconsistent(env):
        raise InconsistentAssumptionSet(space.atms.render_env(env))

    closure = space.atms.consequences(env)
    participants = sorted((p for p, n in space.participant_nodes.items() if n in closure), key=term_key)
    derived = [r for r, n in space.relation_nodes.items() if n in closure]
    properties = space.kb.property_heads

    relations: Set[Term] = set()
    for relation in derived:
        if isinstance(relation, Compound) and relation.head_name in properties:
            continue
        relations.add(relation)
        relations.update(flow_relations(relation))

    groups: Dict[Tuple[str, str], List[Term]] = {}
    plain: List[Term] = []
    for relation in relations:
        key = target_key(relation)
        if key is None:
            plain.append(relation)
        else:
            groups.setdefault(key, []).append(relation)
    for key in sorted(groups):
        composed = compose_relations(groups[key])
        if isinstance(composed, NonComposable):
            raise NonComposableModel(composed)
        plain.append(composed)

    logger.info("extracted scenario model: %d participants, %d relations", len(participants), len(plain))
    return ScenarioModel(tuple(participants), tuple(sorted(plain, key=term_key)))
