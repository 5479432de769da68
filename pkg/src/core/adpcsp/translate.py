"""
Translation of a finished model space into an ADPCSP
"""
import logging
from typing import Dict, List, Optional, Set, Tuple

from ..atms import Env, sorted_envs
from ..modelspace import AssumptionClass, ModelSpace
from .problem import ADPCSP, ActivityConstraint, Attribute, CompatibilityConstraint, Pair, UntranslatableLiteral

logger = logging.getLogger(__name__)

ClassPair = Tuple[int, str]


class _Translator:
    """Maps assumption literals to (class, value) pairs"""

    def __init__(self, space: ModelSpace):
        self.space = space
        self.classes = space.relevance_classes + space.model_classes

    def pairs(self, env: Env) -> List[ClassPair]:
        pairs = []
        for lit in sorted(env):
            cls = self.space.class_of.get(lit.node)
            value = cls.value_of(lit) if cls is not None else None
            if value is None:
                raise UntranslatableLiteral(f"no attribute value for {self.space.atms.render_literal(lit)}")
            pairs.append((id(cls), value))
        return pairs

    def triggers(self, cls: AssumptionClass) -> Optional[List[List[ClassPair]]]:
        """Trigger conjunctions from the subject label; None when always active"""
        label = self.space.subject_label(cls)
        if frozenset() in label:
            return None
        if not label:
            logger.warning("assumption class %s has no supported subject", self.space.render_class(cls))
        triggers = []
        for env in sorted_envs(label):
            pairs = self.pairs(env)
            if any(key == id(cls) for key, _ in pairs):
                logger.warning("discarding a trigger of %s that mentions the class itself", self.space.render_class(cls))
                continue
            triggers.append(pairs)
        return triggers


def _reachable(triggers: Dict[int, Optional[List[List[ClassPair]]]]) -> Set[int]:
    """Classes that can become active: always-active ones, then those with a trigger over reachable classes"""
    kept: Set[int] = {key for key, found in triggers.items() if found is None}
    changed = True
    while changed:
        changed = False
        for key, found in triggers.items():
            if key in kept or found is None:
                continue
            if any(all(k in kept for k, _ in trigger) for trigger in found):
                kept.add(key)
                changed = True
    return kept


def build_adcsp(space: ModelSpace) -> ADPCSP:
    """
    One attribute per assumption class, activity from subject labels and
    compatibility from the nogoods

    Relevance classes come first, then model classes, each in creation
    order. A class that can never become active yields no attribute, and
    triggers and nogoods mentioning it are dropped since they cannot fire.
    Nogoods holding two values of one class are vacuous and skipped.
    """
    translator = _Translator(space)
    triggers = {id(cls): translator.triggers(cls) for cls in translator.classes}
    kept = _reachable(triggers)
    for cls in translator.classes:
        if id(cls) not in kept:
            logger.warning("assumption class %s can never become active", space.render_class(cls))

    names: Dict[int, str] = {}
    attributes: List[Attribute] = []
    for cls in translator.classes:
        if id(cls) in kept:
            names[id(cls)] = f"x{len(names) + 1}"
            attributes.append(Attribute(
                names[id(cls)],
                tuple(name for name, _ in cls.values),
                tuple(space.literal_term(lit) for _, lit in cls.values),
                cls.key,
            ))
    position = {name: i for i, name in enumerate(names.values())}

    def named(pairs: List[ClassPair]) -> Optional[Tuple[Pair, ...]]:
        if any(key not in kept for key, _ in pairs):
            return None
        return tuple(sorted(((names[key], value) for key, value in pairs), key=lambda p: position[p[0]]))

    activity: List[ActivityConstraint] = []
    for cls in translator.classes:
        found = triggers[id(cls)]
        if id(cls) not in kept or found is None:
            continue
        for trigger in found:
            pairs = named(trigger)
            if pairs is not None:
                activity.append(ActivityConstraint(names[id(cls)], pairs))

    compatibility: List[CompatibilityConstraint] = []
    seen: Set[Tuple[Pair, ...]] = set()
    for env in sorted_envs(space.atms.nogoods()):
        class_pairs = translator.pairs(env)
        if len({key for key, _ in class_pairs}) != len(class_pairs):
            continue
        forbidden = named(class_pairs)
        if forbidden is not None and forbidden not in seen:
            seen.add(forbidden)
            compatibility.append(CompatibilityConstraint(forbidden))

    csp = ADPCSP(tuple(attributes), tuple(activity), tuple(compatibility))
    logger.info(
        "CSP has %d attributes, %d activity constraints, %d compatibility constraints",
        len(csp.attributes), len(csp.activity), len(csp.compatibility),
    )
    return csp
