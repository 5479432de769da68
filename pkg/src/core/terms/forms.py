"""
Helpers for reading definition forms such as `(defX name :key value ...)`
"""
from typing import Dict, List, Optional, Tuple

from ..errors import ComposerError
from .terms import Compound, Symbol, Term, print_canonical


class FormError(ComposerError):
    """Raised when a definition form does not have the expected shape"""


def form_head(term: Term) -> Optional[str]:
    """Head symbol name of a compound, else None"""
    if isinstance(term, Compound):
        return term.head_name
    return None


def expect_symbol(term: Term, what: str, error=FormError) -> str:
    if not isinstance(term, Symbol):
        raise error(f"{what} must be a symbol, got {print_canonical(term)}", term.pos)
    return term.name


def expect_list(term: Term, what: str, error=FormError) -> Tuple[Term, ...]:
    if not isinstance(term, Compound):
        raise error(f"{what} must be a list, got {print_canonical(term)}", term.pos)
    return term.items


def split_keywords(items: Tuple[Term, ...], error=FormError) -> Tuple[List[Term], Dict[str, Term]]:
    """
    Split form arguments into leading positionals and `:keyword value` pairs

    Args:
        items: the arguments after the form head
        error: exception class to raise on a dangling keyword

    Returns:
        (positionals, {keyword without colon: value})
    """
    positionals: List[Term] = []
    keywords: Dict[str, Term] = {}
    i = 0
    while i < len(items) and not _is_keyword(items[i]):
        positionals.append(items[i])
        i += 1
    while i < len(items):
        key = items[i]
        if not _is_keyword(key):
            raise error(f"expected a keyword, got {print_canonical(key)}", key.pos)
        if i + 1 >= len(items):
            raise error(f"keyword {key.name} has no value", key.pos)
        name = key.name[1:]
        if name in keywords:
            raise error(f"keyword {key.name} given twice", key.pos)
        keywords[name] = items[i + 1]
        i += 2
    return positionals, keywords


def _is_keyword(term: Term) -> bool:
    return isinstance(term, Symbol) and term.name.startswith(":") and len(term.name) > 1
