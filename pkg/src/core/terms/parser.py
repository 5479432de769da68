"""
S-expression reader
"""
import re
from fractions import Fraction
from pathlib import Path
from typing import List, Union

from ..errors import ComposerError, Position
from .terms import Compound, Number, Symbol, Term, Variable, Wildcard

_NUMBER = re.compile(r"[+-]?\d+(?:/0*[1-9]\d*)?\Z")
_DELIMITERS = set("();")


class TermSyntaxError(ComposerError):
    """Raised when s-expression text cannot be read"""


class UnbalancedParenthesis(TermSyntaxError):
    def __init__(self, position: Position, detail: str = "unbalanced parenthesis"):
        super().__init__(detail, position)


class EmptyVariableName(TermSyntaxError):
    def __init__(self, position: Position):
        super().__init__("variable marker `?` without a name", position)


def _atom(token: str, position: Position, in_head: bool) -> Term:
    if token == "*":
        return Symbol("*", position) if in_head else Wildcard(position)
    if token.startswith("?"):
        if len(token) == 1:
            raise EmptyVariableName(position)
        return Variable(token[1:], position)
    if _NUMBER.match(token):
        return Number(Fraction(token), position)
    return Symbol(token, position)


def parse(text: str, source: str = "<string>") -> List[Term]:
    """
    Read every top-level term of an s-expression text

    Args:
        text: source text; `;` starts a comment running to end of line
        source: name used in positions (usually the file path)

    Returns:
        The top-level terms in order
    """
    # Each frame: (items, opening position)
    stack: List[tuple] = []
    top: List[Term] = []
    line, column = 1, 1
    i, n = 0, len(text)

    def emit(term: Term) -> None:
        if stack:
            stack[-1][0].append(term)
        else:
            top.append(term)

    while i < n:
        ch = text[i]
        if ch == "\n":
            line, column = line + 1, 1
            i += 1
            continue
        if ch.isspace():
            i += 1
            column += 1
            continue
        if ch == ";":
            while i < n and text[i] != "\n":
                i += 1
            continue
        position = Position(source, line, column)
        if ch == "(":
            stack.append(([], position))
            i += 1
            column += 1
            continue
        if ch == ")":
            if not stack:
                raise UnbalancedParenthesis(position, "unexpected `)`")
            items, opened = stack.pop()
            emit(Compound(tuple(items), opened))
            i += 1
            column += 1
            continue
        start = i
        while i < n and not text[i].isspace() and text[i] not in _DELIMITERS:
            i += 1
        token = text[start:i]
        column += i - start
        in_head = bool(stack) and not stack[-1][0]
        emit(_atom(token, position, in_head))

    if stack:
        raise UnbalancedParenthesis(stack[-1][1], "`(` is never closed")
    return top


def parse_one(text: str, source: str = "<string>") -> Term:
    """Read exactly one term"""
    terms = parse(text, source)
    if len(terms) != 1:
        raise TermSyntaxError(
            f"expected exactly one term, found {len(terms)}", Position(source, 1, 1)
        )
    return terms[0]


def parse_file(path: Union[str, Path]) -> List[Term]:
    """Read a UTF-8 s-expression file"""
    path = Path(path)
    return parse(path.read_text(encoding="utf-8"), str(path))
