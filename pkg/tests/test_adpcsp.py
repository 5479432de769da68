import random

import pytest

from src.core.adpcsp import (
    ADPCSP, ActivityConstraint, Attribute, CompatibilityConstraint, MalformedProblem, Status, UnknownAttribute,
    UnknownValue, activated, attach_preferences, brute_force_solve, build_adcsp, dump_problem, evaluate,
    load_problem, solve,
)
from src.core.atms import OracleBoundExceeded
from src.core.omp import OMP, UnknownBPQ, ordering_from_mapping, render_omp
from src.core.terms import Symbol, parse, parse_one

from .conftest import corpus_terms

OPTIMUM = (("x1", "yes"), ("x2", "yes"), ("x3", "yes"), ("x4", "logistic"), ("x5", "logistic"), ("x6", "holling"))


@pytest.fixture(scope="module")
def six_attribute():
    return load_problem(corpus_terms("six-attribute.problem"))


def test_problem_file_is_read(six_attribute):
    assert six_attribute.ids == ("x1", "x2", "x3", "x4", "x5", "x6")
    assert six_attribute.always_active == ("x1", "x2", "x3")
    assert six_attribute.triggers("x6") == [(("x1", "yes"), ("x2", "yes"), ("x3", "yes"))]
    assert len(six_attribute.compatibility) == 4
    assert CompatibilityConstraint((("x4", "other"), ("x6", "holling"))) in six_attribute.compatibility
    assert render_omp(six_attribute.preference("x6", "holling")) == "(p-holling)"
    assert six_attribute.preference("x1", "yes").is_empty()


def test_unique_optimum(six_attribute):
    solutions = solve(six_attribute, max_solutions=3)
    assert [s.assignment for s in solutions] == [OPTIMUM]
    assert render_omp(solutions[0].preference) == "(p-holling p-logistic*2)"


def test_search_agrees_with_enumeration(six_attribute):
    found = {s.assignment for s in solve(six_attribute, max_solutions=100)}
    assert found == {s.assignment for s in brute_force_solve(six_attribute)}


def test_activated(six_attribute):
    assert activated(six_attribute, {"x1": "yes", "x2": "yes", "x3": "yes"}) == {"x1", "x2", "x3", "x4", "x5", "x6"}
    assert activated(six_attribute, {"x1": "no", "x2": "yes", "x3": "yes"}) == {"x1", "x2", "x3", "x5"}


@pytest.mark.parametrize("assignment, status", [
    (dict(OPTIMUM), Status.SOLUTION),
    ({"x1": "yes", "x2": "no", "x3": "no"}, Status.ACTIVITY_VIOLATION),
    ({"x1": "no", "x2": "no", "x3": "no", "x4": "other"}, Status.ACTIVITY_VIOLATION),
    ({**dict(OPTIMUM), "x4": "other"}, Status.COMPATIBILITY_VIOLATION),
    ({"x1": "no", "x2": "no", "x3": "no"}, Status.SOLUTION),
])
def test_evaluate(six_attribute, assignment, status):
    assert evaluate(six_attribute, assignment).status is status


def test_evaluate_rejects_unknown_values(six_attribute):
    with pytest.raises(UnknownValue):
        evaluate(six_attribute, {"x1": "maybe"})
    with pytest.raises(UnknownAttribute):
        evaluate(six_attribute, {"x9": "yes"})


def test_dump_reads_back(six_attribute):
    text = dump_problem(six_attribute)
    lines = text.splitlines()
    assert "(defMagnitudeOrder (growth << predation))" in lines
    assert "(defAttribute x4 :domain (other logistic))" in lines
    assert "(defActivity x6 :when ((x1 yes) (x2 yes) (x3 yes)))" in lines
    assert "(defNogood ((x4 other) (x6 holling)))" in lines
    assert "(defPreference (x6 holling) p-holling)" in lines
    reread = load_problem(parse(text))
    assert [s.assignment for s in solve(reread)] == [OPTIMUM]


@pytest.mark.parametrize("text, error", [
    ("(defAttribute x :domain ())", MalformedProblem),
    ("(defAttribute x :domain (a a))", MalformedProblem),
    ("(defAttribute x :domain (a)) (defAttribute x :domain (b))", MalformedProblem),
    ("(defAttribute x :domain (a)) (defActivity y :when ((x a)))", UnknownAttribute),
    ("(defAttribute x :domain (a)) (defActivity x :when ((x a)))", MalformedProblem),
    ("(defAttribute x :domain (a)) (defNogood ((x b)))", UnknownValue),
    ("(defAttribute x :domain (a)) (defCompatibility (x y) :allowed ((a a)))", UnknownAttribute),
    ("(defAttribute x :domain (a)) (defPreference (x a) p-missing)", UnknownBPQ),
    ("(defWidget x)", MalformedProblem),
])
def test_problem_file_errors(text, error):
    with pytest.raises(error):
        load_problem(parse(text))


def test_unsatisfiable_problem_has_no_solution():
    csp = load_problem(parse("(defAttribute x :domain (a b)) (defNogood ((x a))) (defNogood ((x b)))"))
    assert solve(csp) == []
    assert brute_force_solve(csp) == []


def test_oracle_bound():
    csp = load_problem(parse("(defAttribute x :domain (a b)) (defAttribute y :domain (a b))"))
    with pytest.raises(OracleBoundExceeded):
        brute_force_solve(csp, bound=8)


# Translation from model spaces


def test_frog_translation(frog_space, population_prefs):
    csp = build_adcsp(frog_space)
    x1, x2 = csp.attributes
    assert (x1.id, x1.values) == ("x1", ("yes", "no"))
    assert (x2.id, x2.values) == ("x2", ("exponential", "logistic", "other"))
    assert x1.assumption("no") == parse_one("(not (relevant growth frog))")
    assert x2.assumption("logistic") == parse_one("(model size-1 logistic)")
    assert x2.origin == Symbol("size-1")
    assert csp.activity == (ActivityConstraint("x2", (("x1", "yes"),)),)
    assert csp.compatibility == (CompatibilityConstraint((("x1", "yes"), ("x2", "other"))),)

    ordering, assignments = population_prefs
    csp = attach_preferences(csp, ordering, assignments)
    assert csp.preference("x2", "logistic") == OMP.of(ordering, "p-logistic")
    assert csp.preference("x1", "yes").is_empty()
    solution, = solve(csp, max_solutions=5)
    assert solution.assignment == (("x1", "yes"), ("x2", "logistic"))
    assert render_omp(solution.preference) == "(p-logistic)"


def test_pred_prey_prey_translation(pred_prey_prey_space, population_prefs):
    csp = build_adcsp(pred_prey_prey_space)
    assert csp.ids == tuple(f"x{i}" for i in range(1, 12))
    assert csp.always_active == ("x1", "x2", "x3", "x4", "x5", "x6")
    assert [csp.attribute(f"x{i}").values for i in (7, 8, 9)] == [("exponential", "logistic", "other")] * 3
    assert csp.attribute("x10").values == ("lotka-volterra", "holling")
    assert csp.triggers("x7") == [(("x1", "yes"),)]
    assert csp.triggers("x10") == [(("x1", "yes"), ("x2", "yes"), ("x4", "yes"))]
    assert csp.triggers("x11") == [(("x1", "yes"), ("x3", "yes"), ("x5", "yes"))]

    forbidden = {c.forbidden for c in csp.compatibility}
    predation_on_prey1 = (("x1", "yes"), ("x2", "yes"), ("x4", "yes"))
    for growth in ("exponential", "logistic"):
        assert predation_on_prey1 + (("x7", growth), ("x10", "lotka-volterra")) in forbidden
        assert predation_on_prey1 + (("x8", growth), ("x10", "lotka-volterra")) in forbidden
    assert (("x1", "yes"), ("x2", "yes"), ("x3", "yes"), ("x4", "yes"), ("x5", "yes"),
            ("x10", "lotka-volterra"), ("x11", "lotka-volterra")) in forbidden

    ordering, assignments = population_prefs
    csp = attach_preferences(csp, ordering, assignments)
    assert render_omp(csp.preference("x6", "yes")) == "(p-competition)"
    assert csp.preference("x6", "no").is_empty()


def test_predator_prey_search_agrees_with_enumeration(predator_prey_space, population_prefs):
    ordering, assignments = population_prefs
    csp = attach_preferences(build_adcsp(predator_prey_space), ordering, assignments)
    expected = {s.assignment: s.preference for s in brute_force_solve(csp)}
    found = {s.assignment: s.preference for s in solve(csp, max_solutions=1000)}
    assert found == expected
    assert (("x1", "yes"), ("x2", "yes"), ("x3", "yes"), ("x4", "logistic"), ("x5", "logistic"),
            ("x6", "holling")) in found


def test_attach_rejects_unknown_bpq(frog_space, population_prefs):
    ordering, _ = population_prefs
    with pytest.raises(UnknownBPQ):
        attach_preferences(build_adcsp(frog_space), ordering, [(parse_one("(model * logistic)"), "p-missing")])


# Randomized search against enumeration


def random_problem(rng: random.Random) -> ADPCSP:
    magnitudes = [f"m{i}" for i in range(rng.randint(1, 3))]
    members = {m: [f"{m}b{j}" for j in range(rng.randint(1, 3))] for m in magnitudes}
    magnitude_pairs = [(lo, hi) for i, lo in enumerate(magnitudes) for hi in magnitudes[i + 1:] if rng.random() < 0.5]
    bpq_pairs = [(bpqs[0], bpqs[-1]) for bpqs in members.values() if len(bpqs) > 1 and rng.random() < 0.5]
    ordering = ordering_from_mapping(members, magnitude_pairs, bpq_pairs)
    bpqs = sorted(ordering.bpqs)

    attributes = tuple(
        Attribute(f"x{i + 1}", tuple(f"v{j}" for j in range(rng.randint(1, 3))))
        for i in range(rng.randint(1, 5))
    )

    def random_pairs(exclude=None):
        others = [a for a in attributes if a.id != exclude]
        if not others:
            return ()
        chosen = rng.sample(others, rng.randint(1, min(2, len(others))))
        return tuple((a.id, rng.choice(a.values)) for a in chosen)

    activity = []
    for attribute in attributes:
        if rng.random() < 0.5:
            for _ in range(rng.randint(1, 2)):
                trigger = random_pairs(exclude=attribute.id)
                if trigger:
                    activity.append(ActivityConstraint(attribute.id, trigger))
    compatibility = [CompatibilityConstraint(random_pairs()) for _ in range(rng.randint(0, 3))]
    preferences = {
        (a.id, v): OMP.of(ordering, *(rng.choice(bpqs) for _ in range(rng.randint(1, 2))))
        for a in attributes for v in a.values if rng.random() < 0.6
    }
    return ADPCSP(attributes, tuple(activity), tuple(compatibility), ordering, preferences)


@pytest.mark.parametrize("seed", range(500))
def test_random_search_agrees_with_enumeration(seed):
    csp = random_problem(random.Random(seed))
    expected = {s.assignment: s.preference for s in brute_force_solve(csp)}
    found = {s.assignment: s.preference for s in solve(csp, max_solutions=10_000)}
    assert found == expected
    first = solve(csp, max_solutions=1)
    assert len(first) == min(1, len(expected))
    if first:
        assert first[0].assignment in expected
