"""
S-expression terms
Symbols, exact numbers, variables, the wildcard and compound lists
"""
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Optional, Set, Tuple, Union

from ..errors import Position


@dataclass(frozen=True)
class Symbol:
    """An atom such as `predation`, `:type` or `d/dt`"""
    name: str
    pos: Optional[Position] = field(default=None, compare=False, repr=False)

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Number:
    """An exact integer or rational"""
    value: Fraction
    pos: Optional[Position] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if not isinstance(self.value, Fraction):
            object.__setattr__(self, "value", Fraction(self.value))

    def __str__(self) -> str:
        if self.value.denominator == 1:
            return str(self.value.numerator)
        return f"{self.value.numerator}/{self.value.denominator}"


@dataclass(frozen=True)
class Variable:
    """A pattern variable, spelled `?name` in source"""
    name: str
    pos: Optional[Position] = field(default=None, compare=False, repr=False)

    def __str__(self) -> str:
        return f"?{self.name}"


@dataclass(frozen=True)
class Wildcard:
    """The anonymous pattern `*`; matches any single ground term"""
    pos: Optional[Position] = field(default=None, compare=False, repr=False)

    def __str__(self) -> str:
        return "*"


@dataclass(frozen=True)
class Compound:
    """A parenthesised list; the first item (if any) is its head"""
    items: Tuple["Term", ...]
    pos: Optional[Position] = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if not isinstance(self.items, tuple):
            object.__setattr__(self, "items", tuple(self.items))

    @property
    def head(self) -> Optional["Term"]:
        return self.items[0] if self.items else None

    @property
    def args(self) -> Tuple["Term", ...]:
        return self.items[1:]

    @property
    def head_name(self) -> Optional[str]:
        """Name of the head when it is a Symbol, else None"""
        head = self.head
        return head.name if isinstance(head, Symbol) else None

    def __len__(self) -> int:
        return len(self.items)

    def __str__(self) -> str:
        return print_canonical(self)


Term = Union[Symbol, Number, Variable, Wildcard, Compound]

WILDCARD = Wildcard()


def sym(name: str) -> Symbol:
    return Symbol(name)


def compound(*items: Union[Term, str, int]) -> Compound:
    """
    Build a Compound, coercing plain strings to Symbols and ints to Numbers

    Args:
        items: head followed by arguments

    Returns:
        The compound term
    """
    converted = []
    for item in items:
        if isinstance(item, str):
            converted.append(Symbol(item))
        elif isinstance(item, (int, Fraction)) and not isinstance(item, bool):
            converted.append(Number(Fraction(item)))
        else:
            converted.append(item)
    return Compound(tuple(converted))


def print_canonical(term: Term) -> str:
    """
    Render a term as single-space separated s-expression text

    A Symbol named `*` in head position prints as `*` and is read back as
    a Symbol; everywhere else `*` reads as the Wildcard.
    """
    if isinstance(term, Compound):
        return "(" + " ".join(print_canonical(item) for item in term.items) + ")"
    return str(term)


def walk(term: Term) -> Iterator[Term]:
    """Yield the term and all its subterms, depth first"""
    yield term
    if isinstance(term, Compound):
        for item in term.items:
            yield from walk(item)


def variables(term: Term) -> Set[str]:
    """Names of every Variable occurring in the term"""
    return {t.name for t in walk(term) if isinstance(t, Variable)}


def is_ground(term: Term) -> bool:
    """True when the term has no Variable and no Wildcard anywhere"""
    return not any(isinstance(t, (Variable, Wildcard)) for t in walk(term))


def term_key(term: Term) -> str:
    """Sort key giving the canonical textual order of terms"""
    return print_canonical(term)
