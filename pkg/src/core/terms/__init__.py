"""S-expression terms module"""
from .terms import (
    Compound, Number, Symbol, Term, Variable, Wildcard, WILDCARD,
    compound, is_ground, print_canonical, sym, term_key, variables, walk,
)
from .parser import (
    EmptyVariableName, TermSyntaxError, UnbalancedParenthesis,
    parse, parse_file, parse_one,
)
from .matching import EMPTY, NonGroundBinding, Substitution, apply_subst, match_pattern
from .forms import FormError, expect_list, expect_symbol, form_head, split_keywords

__all__ = [
    'Compound', 'Number', 'Symbol', 'Term', 'Variable', 'Wildcard', 'WILDCARD',
    'compound', 'is_ground', 'print_canonical', 'sym', 'term_key', 'variables', 'walk',
    'EmptyVariableName', 'TermSyntaxError', 'UnbalancedParenthesis',
    'parse', 'parse_file', 'parse_one',
    'EMPTY', 'NonGroundBinding', 'Substitution', 'apply_subst', 'match_pattern',
    'FormError', 'expect_list', 'expect_symbol', 'form_head', 'split_keywords',
]
