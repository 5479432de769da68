from fractions import Fraction

import pytest

from src.core.errors import Position
from src.core.terms import (
    EMPTY, WILDCARD, Compound, EmptyVariableName, FormError, NonGroundBinding, Number, Substitution,
    Symbol, UnbalancedParenthesis, Variable, Wildcard, apply_subst, compound, is_ground, match_pattern,
    parse, parse_one, print_canonical, split_keywords, variables,
)


def test_parse_atoms_and_lists():
    term = parse_one("(size-of ?size frog 3 -1/2)")
    assert term == compound("size-of", Variable("size"), "frog", 3, Fraction(-1, 2))
    assert isinstance(term.items[3], Number)


def test_comments_and_whitespace_are_skipped():
    terms = parse("; heading\n(a b) ; trailing\n\n  (c)\n")
    assert [print_canonical(t) for t in terms] == ["(a b)", "(c)"]


def test_star_is_a_symbol_only_in_head_position():
    term = parse_one("(* ?a *)")
    assert term.items[0] == Symbol("*")
    assert isinstance(term.items[2], Wildcard)


def test_positions_are_one_based():
    first, second = parse("(a)\n  (b c)", "model.kb")
    assert first.pos == Position("model.kb", 1, 1)
    assert second.pos == Position("model.kb", 2, 3)
    assert second.items[1].pos == Position("model.kb", 2, 6)


@pytest.mark.parametrize("text, line, column", [
    ("(a (b c)", 1, 1),
    ("(a)\n  )", 2, 3),
])
def test_unbalanced_parenthesis_reports_position(text, line, column):
    with pytest.raises(UnbalancedParenthesis) as info:
        parse(text, "broken.kb")
    assert info.value.position == Position("broken.kb", line, column)
    assert info.value.describe().startswith(f"broken.kb:{line}:{column}:")


def test_empty_variable_name():
    with pytest.raises(EmptyVariableName):
        parse("(a ? b)")


@pytest.mark.parametrize("text", [
    "(flow births-1 source size-1)",
    "(== ?v (C-add (* ?r ?s)))",
    "(d/dt x (C-if (> a 1) y :priority 2))",
    "()",
    "(a 1/3 -4)",
])
def test_print_canonical_reads_back(text):
    term = parse_one(text)
    assert print_canonical(term) == text
    assert parse_one(print_canonical(term)) == term


def test_equality_ignores_positions():
    assert parse_one("(a b)", "one") == parse_one("  (a   b)", "two")


def test_ground_and_variables():
    term = parse_one("(model ?subject *)")
    assert variables(term) == {"subject"}
    assert not is_ground(term)
    assert is_ground(parse_one("(model size-1 logistic)"))


def test_match_binds_and_respects_repeats():
    subst = match_pattern(parse_one("(r ?x ?x *)"), parse_one("(r a a (b c))"))
    assert subst == Substitution({"x": Symbol("a")})
    assert match_pattern(parse_one("(r ?x ?x)"), parse_one("(r a b)")) is None


def test_match_extends_seed():
    seed = EMPTY.bind("x", Symbol("a"))
    assert match_pattern(parse_one("(r ?x)"), parse_one("(r b)"), seed) is None
    assert match_pattern(parse_one("(r ?y)"), parse_one("(r b)"), seed) == Substitution(
        {"x": Symbol("a"), "y": Symbol("b")}
    )


def test_wildcard_matches_any_single_term():
    assert match_pattern(compound("model", WILDCARD, "logistic"), parse_one("(model size-1 logistic)")) == EMPTY
    assert match_pattern(parse_one("(r *)"), parse_one("(r a b)")) is None


def test_substitution_rejects_non_ground_binding():
    with pytest.raises(NonGroundBinding):
        EMPTY.bind("x", Variable("y"))


def test_apply_subst_keeps_unbound_variables():
    term = apply_subst({"a": Symbol("frog")}, parse_one("(size-of ?a ?b)"))
    assert term == compound("size-of", "frog", Variable("b"))


def test_canonical_substitution_text_is_sorted():
    subst = Substitution({"prey": Symbol("prey1"), "predator": Symbol("predator")})
    assert subst.canonical() == "?predator=predator ?prey=prey1"


def test_split_keywords():
    positionals, keywords = split_keywords(parse_one("(x1 :domain (yes no))").items)
    assert positionals == [Symbol("x1")]
    assert keywords == {"domain": parse_one("(yes no)")}
    with pytest.raises(FormError):
        split_keywords(parse_one("(x :domain)").items)


def test_compound_head_name():
    assert parse_one("(d/dt x y)").head_name == "d/dt"
    assert Compound(()).head_name is None
