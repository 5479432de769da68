"""
Substitutions and one-way pattern matching
"""
from typing import Dict, Iterator, Mapping, Optional, Tuple

from ..errors import ComposerError
from .terms import Compound, Term, Variable, Wildcard, is_ground, print_canonical


class NonGroundBinding(ComposerError):
    """Raised when a substitution would bind a variable to a non-ground term"""


class Substitution(Mapping[str, Term]):
    """Immutable map from variable name to ground term"""

    __slots__ = ("_bindings", "_hash")

    def __init__(self, bindings: Optional[Mapping[str, Term]] = None):
        data = dict(bindings or {})
        for name, term in data.items():
            if not is_ground(term):
                raise NonGroundBinding(f"?{name} bound to non-ground {print_canonical(term)}")
        self._bindings: Dict[str, Term] = data
        self._hash: Optional[int] = None

    def __getitem__(self, name: str) -> Term:
        return self._bindings[name]

    def __iter__(self) -> Iterator[str]:
        return iter(self._bindings)

    def __len__(self) -> int:
        return len(self._bindings)

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._bindings.items()))
        return self._hash

    def __eq__(self, other) -> bool:
        if isinstance(other, Substitution):
            return self._bindings == other._bindings
        return NotImplemented

    def __repr__(self) -> str:
        inner = ", ".join(f"?{k}={print_canonical(v)}" for k, v in self.key())
        return f"{{{inner}}}"

    def bind(self, name: str, term: Term) -> "Substitution":
        """Return a new substitution extended with one binding"""
        data = dict(self._bindings)
        data[name] = term
        return Substitution(data)

    def key(self) -> Tuple[Tuple[str, Term], ...]:
        """Bindings sorted by variable name"""
        return tuple(sorted(self._bindings.items(), key=lambda kv: kv[0]))

    def canonical(self) -> str:
        """Deterministic text used to order and identify substitutions"""
        return " ".join(f"?{k}={print_canonical(v)}" for k, v in self.key())


EMPTY = Substitution()


def _match(pattern: Term, instance: Term, bindings: Dict[str, Term]) -> bool:
    if isinstance(pattern, Wildcard):
        return True
    if isinstance(pattern, Variable):
        bound = bindings.get(pattern.name)
        if bound is None:
            bindings[pattern.name] = instance
            return True
        return bound == instance
    if isinstance(pattern, Compound):
        if not isinstance(instance, Compound) or len(pattern.items) != len(instance.items):
            return False
        return all(_match(p, i, bindings) for p, i in zip(pattern.items, instance.items))
    return pattern == instance


def match_pattern(pattern: Term, instance: Term, seed: Substitution = EMPTY) -> Optional[Substitution]:
    """
    Match a pattern against a ground instance

    Args:
        pattern: term that may hold Variables and Wildcards
        instance: ground term
        seed: bindings the match must agree with

    Returns:
        The extended substitution, or None when there is no match
    """
    bindings = dict(seed.items())
    if not _match(pattern, instance, bindings):
        return None
    return Substitution(bindings)


def apply_subst(subst: Mapping[str, Term], term: Term) -> Term:
    """Replace every bound Variable; unbound Variables and Wildcards stay"""
    if not subst:
        return term
    if isinstance(term, Variable):
        return subst.get(term.name, term)
    if isinstance(term, Compound):
        return Compound(tuple(apply_subst(subst, item) for item in term.items), term.pos)
    return term
