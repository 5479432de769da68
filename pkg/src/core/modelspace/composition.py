"""
Composable relations and the rules that compose them

    (== v (C-add f))   (== v (C-sub f))
    (== v (C-mul f))   (== v (C-div f))
    (== v (C-if a f :priority p))   (== v (C-else f))

The same functors may appear under `d/dt`.
"""
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple, Union

from ..terms import Compound, Number, Symbol, Term, compound, print_canonical, split_keywords, term_key
from ..terms.forms import FormError

EQUATION_HEADS = ("==", "d/dt")


class Functor(Enum):
    ADD = "C-add"
    SUB = "C-sub"
    MUL = "C-mul"
    DIV = "C-div"
    ELSE = "C-else"


class IfFunctor(NamedTuple):
    """C-if with its priority"""
    priority: int


FunctorLike = Union[Functor, IfFunctor]

_FAMILY = {
    Functor.ADD: "additive",
    Functor.SUB: "additive",
    Functor.MUL: "multiplicative",
    Functor.DIV: "multiplicative",
    Functor.ELSE: "selection",
}


def family(functor: FunctorLike) -> str:
    if isinstance(functor, IfFunctor):
        return "selection"
    return _FAMILY[functor]


@dataclass(frozen=True)
class ComposableRelation:
    """One `(head target (C-... formula))` relation"""
    head: str
    target: Term
    functor: FunctorLike
    formula: Term
    antecedent: Optional[Term] = None
    source: Optional[Term] = None


class NonComposable(NamedTuple):
    """Two relations on one target that cannot be composed"""
    first: Term
    second: Term
    reason: str

    def describe(self) -> str:
        return f"{print_canonical(self.first)} and {print_canonical(self.second)}: {self.reason}"


def target_key(relation: Term) -> Optional[Tuple[str, str]]:
    """(head, printed target) of an equation relation, else None"""
    if isinstance(relation, Compound) and relation.head_name in EQUATION_HEADS and len(relation.items) == 3:
        return relation.head_name, term_key(relation.items[1])
    return None


def classify(relation: Term) -> Optional[ComposableRelation]:
    """The composable reading of an equation, or None for a plain equation"""
    if target_key(relation) is None:
        return None
    head, target, rhs = relation.items
    if not isinstance(rhs, Compound):
        return None
    name = rhs.head_name
    args = rhs.args
    if name == "C-if":
        try:
            positionals, keywords = split_keywords(args)
        except FormError:
            return None
        priority = keywords.get("priority")
        if len(positionals) != 2 or set(keywords) != {"priority"}:
            return None
        if not isinstance(priority, Number) or priority.value.denominator != 1:
            return None
        return ComposableRelation(
            head.name, target, IfFunctor(int(priority.value)), positionals[1], positionals[0], relation
        )
    try:
        functor = Functor(name)
    except ValueError:
        return None
    if len(args) != 1:
        return None
    return ComposableRelation(head.name, target, functor, args[0], None, relation)


def composable(f1: Optional[FunctorLike], f2: Optional[FunctorLike]) -> bool:
    """
    Whether two relations on the same target can be composed

    None stands for a plain equation, which composes with nothing.
    """
    if f1 is None or f2 is None:
        return False
    if family(f1) != family(f2):
        return False
    if family(f1) != "selection":
        return True
    if isinstance(f1, IfFunctor) and isinstance(f2, IfFunctor):
        return f1.priority != f2.priority
    return isinstance(f1, IfFunctor) or isinstance(f2, IfFunctor)


def _sum(terms: List[Term]) -> Term:
    return terms[0] if len(terms) == 1 else compound("+", *terms)


def _product(terms: List[Term]) -> Term:
    return terms[0] if len(terms) == 1 else compound("*", *terms)


def _ordered(relations: List[ComposableRelation]) -> List[Term]:
    return sorted((r.formula for r in relations), key=term_key)


def _compose_additive(relations: List[ComposableRelation]) -> Term:
    plus = _ordered([r for r in relations if r.functor is Functor.ADD])
    minus = _ordered([r for r in relations if r.functor is Functor.SUB])
    if not minus:
        return _sum(plus)
    if not plus:
        return compound("-", _sum(minus))
    return compound("-", _sum(plus), *minus)


def _compose_multiplicative(relations: List[ComposableRelation]) -> Term:
    numerator = _ordered([r for r in relations if r.functor is Functor.MUL])
    denominator = _ordered([r for r in relations if r.functor is Functor.DIV])
    top = _product(numerator) if numerator else Number(Fraction(1))
    if not denominator:
        return top
    return compound("/", top, _product(denominator))


def _compose_selection(relations: List[ComposableRelation]) -> Union[Term, NonComposable]:
    ifs = [r for r in relations if isinstance(r.functor, IfFunctor)]
    elses = [r for r in relations if r.functor is Functor.ELSE]
    if len(elses) > 1:
        return NonComposable(elses[0].source, elses[1].source, "more than one C-else")
    seen: Dict[int, ComposableRelation] = {}
    for r in ifs:
        if r.functor.priority in seen:
            return NonComposable(seen[r.functor.priority].source, r.source, "two C-if with the same priority")
        seen[r.functor.priority] = r
    if not elses:
        return NonComposable(ifs[0].source, ifs[-1].source, "C-if without a C-else")
    formula = elses[0].formula
    for r in sorted(ifs, key=lambda r: r.functor.priority):
        formula = compound("if", r.antecedent, r.formula, formula)
    return formula


def compose_relations(relations: Sequence[Term]) -> Union[Term, NonComposable]:
    """
    Compose every relation on one target into a single relation

    Args:
        relations: equations sharing head and target, composable or plain

    Returns:
        `(head target formula)`, or NonComposable naming a witness pair
    """
    if not relations:
        raise ValueError("nothing to compose")
    ordered = sorted(set(relations), key=term_key)
    keys = {target_key(r) for r in ordered}
    if len(keys) != 1 or None in keys:
        raise ValueError("relations must be equations on one target")
    if len(ordered) == 1 and classify(ordered[0]) is None:
        return ordered[0]
    readings = [(r, classify(r)) for r in ordered]
    for relation, reading in readings:
        if reading is None:
            other = next(r for r in ordered if r != relation)
            return NonComposable(relation, other, "plain equation alongside another relation")
    composables = [reading for _, reading in readings]
    first = composables[0]
    for other in composables[1:]:
        if family(other.functor) != family(first.functor):
            return NonComposable(first.source, other.source, "functors of different families")
    kind = family(first.functor)
    if kind == "additive":
        formula = _compose_additive(composables)
    elif kind == "multiplicative":
        formula = _compose_multiplicative(composables)
    else:
        formula = _compose_selection(composables)
        if isinstance(formula, NonComposable):
            return formula
    return Compound((Symbol(first.head), first.target, formula))
