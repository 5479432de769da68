import random

import pytest

from src.core.atms import (
    ATMS, InvalidConsequent, NegatedDerivedAntecedent, OracleBoundExceeded, UnknownNode,
    brute_force_label, brute_force_labels, derives, minimize, neg, pos,
)


def env(*literals):
    return frozenset(literals)


def test_assumption_label_is_itself():
    atms = ATMS()
    a = atms.add_assumption("a")
    assert atms.label(a) == {env(pos(a))}


def test_premise_holds_in_empty_environment():
    atms = ATMS()
    n = atms.add_node("fact")
    atms.add_justification([], n)
    assert atms.label(n) == {frozenset()}


def test_labels_are_minimal():
    atms = ATMS()
    a, b = atms.add_assumption("a"), atms.add_assumption("b")
    n = atms.add_node("n")
    atms.add_justification([pos(a), pos(b)], n)
    assert atms.label(n) == {env(pos(a), pos(b))}
    atms.add_justification([pos(a)], n)
    assert atms.label(n) == {env(pos(a))}


def test_nogood_removes_environments():
    atms = ATMS()
    a, b, c = (atms.add_assumption(x) for x in "abc")
    n = atms.add_node("n")
    atms.add_justification([pos(a), pos(b)], n)
    atms.add_justification([pos(c)], n)
    atms.add_nogood([pos(a), pos(b)])
    assert atms.label(n) == {env(pos(c))}
    assert atms.nogoods() == {env(pos(a), pos(b))}
    assert atms.is_inconsistent(env(pos(a), pos(b), pos(c)))


def test_negated_assumption_antecedent():
    atms = ATMS()
    a, b = atms.add_assumption("a"), atms.add_assumption("b")
    n = atms.add_node("n")
    atms.add_justification([pos(a), neg(b)], n)
    assert atms.label(n) == {env(pos(a), neg(b))}
    assert not atms.holds_in(n, env(pos(a), pos(b)))


def test_propagation_through_chains():
    atms = ATMS()
    a, b = atms.add_assumption("a"), atms.add_assumption("b")
    x, y = atms.add_node("x"), atms.add_node("y")
    atms.add_justification([pos(x), pos(b)], y)
    atms.add_justification([pos(a)], x)
    assert atms.label(y) == {env(pos(a), pos(b))}


def test_invalid_justifications():
    atms = ATMS()
    a = atms.add_assumption("a")
    n = atms.add_node("n")
    with pytest.raises(NegatedDerivedAntecedent):
        atms.add_justification([neg(n)], atms.add_node("m"))
    with pytest.raises(InvalidConsequent):
        atms.add_justification([pos(n)], a)
    with pytest.raises(UnknownNode):
        atms.label(99)


def test_dump_is_deterministic():
    def build():
        atms = ATMS()
        a = atms.add_assumption("a")
        n = atms.add_node("n")
        atms.add_justification([pos(a)], n)
        return atms.dump()
    assert build() == build()
    assert build()[2] == "2 derived n :label {(a)}"


def test_oracle_bound():
    atms = ATMS()
    for i in range(4):
        atms.add_assumption(f"a{i}")
    with pytest.raises(OracleBoundExceeded):
        brute_force_labels(atms, bound=3)


def random_network(rng: random.Random):
    """Assumptions, derived nodes, justifications (some to ⊥) in a reproducible order"""
    n_assumptions = rng.randint(1, 6)
    n_derived = rng.randint(1, 6)
    justifications = []
    for _ in range(rng.randint(1, 14)):
        consequent = rng.choice(["bottom"] + [("d", i) for i in range(n_derived)])
        antecedents = []
        for _ in range(rng.randint(0, 3)):
            if rng.random() < 0.6:
                antecedents.append(("a", rng.randrange(n_assumptions), rng.random() < 0.8))
            else:
                antecedents.append(("d", rng.randrange(n_derived), True))
        justifications.append((antecedents, consequent))
    return n_assumptions, n_derived, justifications


def build_network(spec, order):
    n_assumptions, n_derived, justifications = spec
    atms = ATMS()
    assumptions = [atms.add_assumption(f"a{i}") for i in range(n_assumptions)]
    derived = [atms.add_node(f"d{i}") for i in range(n_derived)]
    for index in order:
        antecedents, consequent = justifications[index]
        literals = []
        for kind, i, positive in antecedents:
            node = assumptions[i] if kind == "a" else derived[i]
            literals.append(pos(node) if positive else neg(node))
        if consequent == "bottom":
            if not literals:
                continue
            atms.add_nogood(literals)
        else:
            atms.add_justification(literals, derived[consequent[1]])
    return atms


@pytest.mark.parametrize("seed", range(200))
def test_labels_match_enumeration(seed):
    rng = random.Random(seed)
    spec = random_network(rng)
    atms = build_network(spec, range(len(spec[2])))
    expected = brute_force_labels(atms)
    for node in atms.nodes:
        assert node.label == expected[node.id], atms.render_datum(node.id)


@pytest.mark.parametrize("seed", range(200))
def test_label_properties(seed):
    rng = random.Random(seed)
    spec = random_network(rng)
    atms = build_network(spec, range(len(spec[2])))
    nogoods = atms.nogoods()
    for node in atms.nodes[1:]:
        for e in node.label:
            # sound
            assert derives(atms, e, node.id)
            # consistent
            assert not any(ng <= e for ng in nogoods)
            assert ATMS.BOTTOM not in atms.consequences(e)
        # minimal
        assert minimize(node.label) == node.label


@pytest.mark.parametrize("seed", range(20))
def test_labels_do_not_depend_on_justification_order(seed):
    rng = random.Random(seed)
    spec = random_network(rng)
    reference = [n.label for n in build_network(spec, range(len(spec[2]))).nodes]
    for _ in range(20):
        order = list(range(len(spec[2])))
        rng.shuffle(order)
        assert [n.label for n in build_network(spec, order).nodes] == reference


def test_single_label_oracle():
    atms = ATMS()
    a, b = atms.add_assumption("a"), atms.add_assumption("b")
    n = atms.add_node("n")
    atms.add_justification([pos(a), neg(b)], n)
    atms.add_justification([pos(b)], n)
    assert brute_force_label(atms, n) == atms.label(n) == {env(pos(a), neg(b)), env(pos(b))}
    with pytest.raises(UnknownNode):
        brute_force_label(atms, 99)
