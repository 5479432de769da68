"""
Text renderers for solutions, model spaces, labels and knowledge bases

Everything rendered here is sorted or in creation order so that repeated
runs give identical output.
"""
from typing import List

from ..core.atms import ATMS
from ..core.kb import KnowledgeBase
from ..core.modelspace import ModelSpace, ScenarioModel
from ..core.omp import render_omp
from ..core.terms import Compound, Term, print_canonical, term_key
from .pipeline import RunResult, assumption_terms

_PRECEDENCE = {"+": 1, "-": 1, "*": 2, "/": 2}
_UNARY = 3


def infix(term: Term, context: int = 0) -> str:
    """Render a formula with infix arithmetic; other compounds read as calls"""
    if not isinstance(term, Compound):
        return print_canonical(term)
    head, args = term.head_name, term.args
    if head in _PRECEDENCE and args:
        if len(args) == 1:
            if head != "-":
                return infix(args[0], context)
            return "-" + infix(args[0], _UNARY)
        level = _PRECEDENCE[head]
        # right operands of - and / bind tighter
        right = level + 1 if head in ("-", "/") else level
        text = f" {head} ".join([infix(args[0], level)] + [infix(a, right) for a in args[1:]])
        return f"({text})" if level < context else text
    if head is None:
        return print_canonical(term)
    return f"{head}({', '.join(infix(a) for a in args)})"


def render_equation(relation: Term) -> str:
    head, target, formula = relation.items
    lhs = print_canonical(target)
    if head.name == "d/dt":
        lhs = f"d/dt {lhs}"
    return f"{lhs} = {infix(formula)}"


def _block(name: str, lines: List[str]) -> List[str]:
    if not lines:
        return [f"({name})"]
    body = [f"  {line}" for line in lines]
    body[0] = f"({name} {lines[0]}"
    body[-1] += ")"
    return body


def render_model(model: ScenarioModel, output_format: str) -> List[str]:
    if output_format == "ode-text":
        return [render_equation(r) for r in model.equations()]
    lines = _block("participants", [print_canonical(p) for p in model.participants])
    lines.extend(_block("model", [print_canonical(r) for r in model.relations]))
    return lines


def render_result(result: RunResult, output_format: str) -> str:
    """Each solution's assumptions and preference, then its scenario model"""
    lines: List[str] = []
    for number, solution in enumerate(result.solutions, start=1):
        lines.append(f"; solution {number} preference {render_omp(solution.preference)}")
        if result.space is None:
            lines.extend(_block("assignment", [f"({a} {v})" for a, v in solution.assignment]))
            continue
        terms = sorted(assumption_terms(result.csp, solution), key=term_key)
        lines.extend(_block("assumptions", [print_canonical(t) for t in terms]))
        lines.extend(render_model(result.models[number - 1], output_format))
    return "\n".join(lines) + "\n"


def _atms_lines(atms: ATMS) -> List[str]:
    return [line for node, line in zip(atms.nodes, atms.dump()) if node.id != ATMS.BOTTOM]


def render_space(space: ModelSpace) -> str:
    """Header, every node with its label, then the recorded inconsistencies"""
    atms = space.atms
    lines = [
        f"; model space {space.scenario.name}: {len(atms.nodes) - 1} nodes, "
        f"{len(atms.assumptions)} assumptions, {len(atms.nogoods())} nogoods"
    ]
    lines.extend(_atms_lines(atms))
    lines.extend(f"(inconsistency {kind} {atms.render_env(env)})" for kind, env in space.inconsistencies)
    return "\n".join(lines) + "\n"


def render_labels(space: ModelSpace) -> str:
    """Participant and relation labels in canonical term order, then the nogoods"""
    atms = space.atms
    terms = sorted(list(space.participant_nodes) + list(space.relation_nodes), key=term_key)
    lines = [f"{print_canonical(t)} :label {atms.render_label(space.label(t))}" for t in terms]
    lines.append(f"nogood :label {atms.render_label(atms.nogoods())}")
    return "\n".join(lines) + "\n"


def render_kb(kb: KnowledgeBase) -> str:
    lines = [
        f"; knowledge base: {len(kb.declarations)} entities, {len(kb.fragments)} fragments, "
        f"{len(kb.properties)} properties, {len(kb.scenarios)} scenarios"
    ]
    for name in kb.declarations:
        cls = kb.entity_class(name)
        lines.append(f"(entity {name})" if cls.superclass is None else f"(entity {name} :subclass-of {cls.superclass})")
    for rule in kb.rules:
        kind = "property" if rule.is_property else "fragment"
        lines.append(f"({kind} {rule.name})")
    for name in sorted(kb.scenarios):
        lines.append(f"(scenario {name})")
    return "\n".join(lines) + "\n"
