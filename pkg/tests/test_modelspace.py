import pytest

from src.core.kb import load_kb
from src.core.modelspace import (
    FixpointBudgetExceeded, InconsistentAssumptionSet, ModelSpaceError, extract_scenario_model, flow_relations,
    generate_model_space, match_fragment,
)
from src.core.terms import Symbol, compound, parse_one, print_canonical

from .conftest import corpus_terms, kb_from_text

PREDATOR_PREY_CHOICE = [
    parse_one("(relevant growth predator)"),
    parse_one("(relevant growth prey)"),
    parse_one("(relevant predation predator prey)"),
    parse_one("(model size-1 logistic)"),
    parse_one("(model size-2 logistic)"),
    parse_one("(model predation-phen-1 holling)"),
]


def test_frog_space_classes(frog_space):
    relevance, = frog_space.relevance_classes
    assert relevance.key == parse_one("(relevant growth frog)")
    assert [name for name, _ in relevance.values] == ["yes", "no"]
    model, = frog_space.model_classes
    assert model.key == Symbol("size-1")
    assert [name for name, _ in model.values] == ["exponential", "logistic", "other"]
    assert frog_space.render_class(model) == "(model size-1 *)"


def test_frog_space_gensyms_follow_rule_order(frog_space):
    participants = {print_canonical(p) for p in frog_space.participant_nodes}
    assert participants == {
        "frog", "size-1", "births-1", "deaths-1", "birth-rate-1", "death-rate-1",
        "birth-rate-2", "death-rate-2", "total-population-1", "capacity-1",
    }
    assert frog_space.participant_types[Symbol("size-1")] == "stock"
    assert frog_space.participant_types[Symbol("births-1")] == "flow"


def test_frog_space_nogoods(frog_space):
    rendered = sorted(frog_space.atms.render_env(env) for env in frog_space.atms.nogoods())
    assert rendered == [
        "((model size-1 exponential) (model size-1 logistic))",
        "((model size-1 exponential) (model size-1 other))",
        "((model size-1 logistic) (model size-1 other))",
        "((model size-1 other) (relevant growth frog))",
    ]
    assert [kind for kind, _ in frog_space.inconsistencies] == ["exclusion"] * 3 + ["purpose"]


def test_relation_labels(frog_space):
    label = frog_space.label(parse_one("(== births-1 (* birth-rate-2 size-1))"))
    assert {frog_space.atms.render_env(env) for env in label} == {
        "((model size-1 logistic) (relevant growth frog))"
    }
    endogenous = frog_space.label(parse_one("(endogenous size-1)"))
    assert {frog_space.atms.render_env(env) for env in endogenous} == {"((relevant growth frog))"}


def test_frog_extraction(frog_space):
    model = extract_scenario_model(frog_space, [
        parse_one("(relevant growth frog)"), parse_one("(model size-1 logistic)"),
    ])
    assert [print_canonical(e) for e in model.equations()] == [
        "(== births-1 (* birth-rate-2 size-1))",
        "(== deaths-1 (* death-rate-2 size-1 total-population-1))",
        "(== total-population-1 (/ size-1 capacity-1))",
        "(d/dt size-1 (- births-1 deaths-1))",
    ]
    assert Symbol("capacity-1") in model.participants
    assert Symbol("birth-rate-1") not in model.participants
    assert not any(print_canonical(r).startswith("(endogenous") for r in model.relations)


def test_negated_relevance_leaves_the_bare_scenario(frog_space):
    model = extract_scenario_model(frog_space, [compound("not", parse_one("(relevant growth frog)"))])
    assert model.participants == (Symbol("frog"),)
    assert model.relations == ()


def test_inconsistent_assumptions_are_rejected(frog_space):
    with pytest.raises(InconsistentAssumptionSet) as info:
        extract_scenario_model(frog_space, [
            parse_one("(relevant growth frog)"), parse_one("(model size-1 other)"),
        ])
    assert info.value.witness == "((model size-1 other) (relevant growth frog))"
    with pytest.raises(ModelSpaceError):
        extract_scenario_model(frog_space, [parse_one("(model size-9 logistic)")])


def test_predator_prey_extraction(predator_prey_space):
    model = extract_scenario_model(predator_prey_space, PREDATOR_PREY_CHOICE)
    equations = {print_canonical(e) for e in model.equations()}
    assert "(d/dt size-1 (- births-1 deaths-1))" in equations
    assert "(d/dt size-2 (- births-2 deaths-2 predation-1))" in equations
    assert ("(== predation-1 (/ (* search-rate-1 size-2 size-1) (+ 1 (* search-rate-1 size-2 handling-time-1))))"
            in equations)
    assert "(== capacity-1 (* prey-requirement-1 size-2))" in equations
    assert compound("flow", "predation-1", "size-2", "sink") in model.relations
    assert compound("is-model-of", "holling", "predation-phen-1") in model.relations


def test_predation_needs_a_model(predator_prey_space):
    rendered = {predator_prey_space.atms.render_env(env) for env in predator_prey_space.atms.nogoods()}
    assert "((model predation-phen-1 holling) (model predation-phen-1 lotka-volterra))" in rendered
    kinds = {kind for kind, _ in predator_prey_space.inconsistencies}
    assert {"exclusion", "purpose"} <= kinds


def test_pred_prey_prey_classes(pred_prey_prey_space):
    assert [print_canonical(c.key) for c in pred_prey_prey_space.relevance_classes] == [
        "(relevant growth predator)",
        "(relevant growth prey1)",
        "(relevant growth prey2)",
        "(relevant predation predator prey1)",
        "(relevant predation predator prey2)",
        "(relevant competition prey1 prey2)",
    ]
    assert [print_canonical(c.key) for c in pred_prey_prey_space.model_classes] == [
        "size-1", "size-2", "size-3", "predation-phen-1", "predation-phen-2",
    ]


def test_match_fragment(population_kb, frog_space):
    growth = next(f for f in population_kb.fragments if f.name == "population-growth")
    substs = match_fragment(growth, frog_space)
    assert [s.canonical() for s in substs] == ["?population=frog"]


def test_fixpoint_budget():
    kb = load_kb(corpus_terms("population-dynamics.kb", "frog.scenario"))
    with pytest.raises(FixpointBudgetExceeded) as info:
        generate_model_space(kb, kb.scenario("frog-scenario"), fixpoint_limit=1)
    assert info.value.limit == 1


@pytest.mark.parametrize("flow, expected", [
    ("(flow f source x)", ["(d/dt x (C-add f))"]),
    ("(flow f x sink)", ["(d/dt x (C-sub f))"]),
    ("(flow f x y)", ["(d/dt y (C-add f))", "(d/dt x (C-sub f))"]),
    ("(size-of x frog)", []),
])
def test_flow_relations(flow, expected):
    assert [print_canonical(r) for r in flow_relations(parse_one(flow))] == expected


@pytest.mark.parametrize("flow", ["births-1", "deaths-1"])
def test_endogenous_under_every_growth_model(frog_space, flow):
    label = frog_space.label(compound("endogenous", flow))
    assert {frog_space.atms.render_env(env) for env in label} == {
        "((model size-1 exponential) (relevant growth frog))",
        "((model size-1 logistic) (relevant growth frog))",
    }


def test_wildcard_matches_share_one_application(frog_space):
    applications = [
        a for a in frog_space.applications
        if a.rule.name == "endogenous-1" and a.subst.canonical() == "?v=births-1"
    ]
    application, = applications
    assert len(frog_space.atms.node(application.node).justifications) == 2


SWITCHING_KB = """
    (defModelFragment switching
      :source-participants ((?t :type variable))
      :assumptions ((relevant switching ?t))
      :postconditions ((== ?t (C-if (full ?t) 2 :priority 1))))
    (defModelFragment fallback
      :source-participants ((?t :type variable))
      :assumptions ((relevant fallback ?t))
      :postconditions ((== ?t (C-else 0))))
    (defScenario s :entities ((level :type variable)))
"""


def nogood_kinds(space):
    return sorted((kind, space.atms.render_env(env)) for kind, env in space.inconsistencies)


def test_selection_without_else_is_a_nogood():
    kb = kb_from_text(SWITCHING_KB)
    space = generate_model_space(kb, kb.scenario())
    assert nogood_kinds(space) == [
        ("non-composable", "((not (relevant fallback level)) (relevant switching level))"),
    ]
    switching = parse_one("(relevant switching level)")
    with pytest.raises(InconsistentAssumptionSet):
        extract_scenario_model(space, [switching, parse_one("(not (relevant fallback level))")])
    model = extract_scenario_model(space, [switching, parse_one("(relevant fallback level)")])
    assert [print_canonical(r) for r in model.relations] == ["(== level (if (full level) 2 0))"]


def test_selection_with_no_else_anywhere():
    kb = kb_from_text(SWITCHING_KB.replace("(C-else 0)", "(C-add 0)"))
    space = generate_model_space(kb, kb.scenario())
    assert ("non-composable", "((relevant switching level))") in nogood_kinds(space)


def test_flows_are_checked_against_other_equations():
    kb = kb_from_text("""
        (defModelFragment filling
          :source-participants ((?s :type stock) (?f :type flow))
          :assumptions ((relevant filling ?s))
          :postconditions ((flow ?f source ?s)))
        (defModelFragment fixed-rate
          :source-participants ((?s :type stock))
          :assumptions ((relevant fixed-rate ?s))
          :postconditions ((d/dt ?s 3)))
        (defScenario s :entities ((tank :type stock) (tap :type flow)))
    """)
    space = generate_model_space(kb, kb.scenario())
    assert nogood_kinds(space) == [
        ("non-composable", "((relevant filling tank) (relevant fixed-rate tank))"),
    ]
