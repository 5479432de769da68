"""
Orderings over basic preference quantities (BPQs)
Orders of magnitude ordered by <<, BPQs inside a magnitude ordered by <
"""
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Set, Tuple

from ..errors import ComposerError

Pair = Tuple[str, str]


class OrderingError(ComposerError):
    """Base class of preference ordering errors"""


class CyclicOrder(OrderingError):
    def __init__(self, witness: Sequence[str]):
        super().__init__("cyclic order: " + " -> ".join(witness))
        self.witness = tuple(witness)


class CrossMagnitudePair(OrderingError):
    def __init__(self, lower: str, upper: str):
        super().__init__(f"{lower} < {upper} relates BPQs of different magnitudes")
        self.lower = lower
        self.upper = upper


class UnknownBPQ(OrderingError):
    def __init__(self, name: str, position=None):
        super().__init__(f"unknown BPQ {name}", position)
        self.name = name


class UnknownMagnitude(OrderingError):
    def __init__(self, name: str, position=None):
        super().__init__(f"unknown order of magnitude {name}", position)
        self.name = name


@dataclass(frozen=True)
class BPQOrdering:
    """
    Two-level strict partial order over BPQs

    Build instances through validate_ordering, which closes both relations
    transitively and rejects cycles and cross-magnitude pairs.

    Attributes:
        magnitudes: ordered partition, each entry (magnitude, sorted BPQs)
        mag_order: closed set of (lower, higher) magnitude pairs
        within_order: closed set of (lower, higher) BPQ pairs
    """
    magnitudes: Tuple[Tuple[str, Tuple[str, ...]], ...]
    mag_order: FrozenSet[Pair]
    within_order: FrozenSet[Pair]

    @classmethod
    def empty(cls) -> "BPQOrdering":
        return cls((), frozenset(), frozenset())

    @cached_property
    def magnitude_names(self) -> Tuple[str, ...]:
        return tuple(name for name, _ in self.magnitudes)

    @cached_property
    def magnitude_of(self) -> Dict[str, str]:
        return {b: name for name, members in self.magnitudes for b in members}

    @cached_property
    def bpqs(self) -> FrozenSet[str]:
        return frozenset(self.magnitude_of)

    @cached_property
    def members(self) -> Dict[str, Tuple[str, ...]]:
        return dict(self.magnitudes)

    @cached_property
    def upper_sets(self) -> Dict[str, Tuple[str, ...]]:
        """Strict upper set of every BPQ under <"""
        uppers: Dict[str, List[str]] = {b: [] for b in self.magnitude_of}
        for lower, upper in self.within_order:
            uppers[lower].append(upper)
        return {b: tuple(sorted(u)) for b, u in uppers.items()}

    @cached_property
    def higher_magnitudes(self) -> Dict[str, Tuple[str, ...]]:
        """Magnitudes strictly above each magnitude under <<"""
        above: Dict[str, List[str]] = {m: [] for m in self.magnitude_names}
        for lower, upper in self.mag_order:
            above[lower].append(upper)
        return {m: tuple(sorted(a)) for m, a in above.items()}

    @cached_property
    def levels(self) -> Dict[str, int]:
        """Length of the longest << chain above each magnitude (0 for maximal ones)"""
        levels: Dict[str, int] = {}

        def level(m: str) -> int:
            if m not in levels:
                levels[m] = max((level(h) + 1 for h in self.higher_magnitudes[m]), default=0)
            return levels[m]

        for m in self.magnitude_names:
            level(m)
        return levels

    def less(self, lower: str, upper: str) -> bool:
        return (lower, upper) in self.within_order

    def much_less(self, lower: str, upper: str) -> bool:
        return (lower, upper) in self.mag_order


def _closure(nodes: Iterable[str], pairs: Iterable[Pair]) -> FrozenSet[Pair]:
    """Transitive closure; raises CyclicOrder on any cycle, self-loops included"""
    succ: Dict[str, Set[str]] = {n: set() for n in nodes}
    for lower, upper in pairs:
        succ[lower].add(upper)

    # Cycle detection with a witness path
    state: Dict[str, int] = {}
    path: List[str] = []

    def visit(node: str) -> None:
        state[node] = 1
        path.append(node)
        for nxt in sorted(succ[node]):
            if state.get(nxt) == 1:
                start = path.index(nxt)
                raise CyclicOrder(path[start:] + [nxt])
            if nxt not in state:
                visit(nxt)
        path.pop()
        state[node] = 2

    for node in sorted(succ):
        if node not in state:
            visit(node)

    closed: Set[Pair] = set()
    for node in succ:
        stack = list(succ[node])
        seen: Set[str] = set()
        while stack:
            nxt = stack.pop()
            if nxt in seen:
                continue
            seen.add(nxt)
            closed.add((node, nxt))
            stack.extend(succ[nxt])
    return frozenset(closed)


def validate_ordering(
    bpqs: Iterable[Tuple[str, str]],
    magnitude_pairs: Iterable[Pair] = (),
    bpq_pairs: Iterable[Pair] = (),
    magnitudes: Optional[Sequence[str]] = None,
) -> BPQOrdering:
    """
    Build a closed, validated BPQOrdering from raw declarations

    Args:
        bpqs: (bpq, magnitude) declarations
        magnitude_pairs: (lower, higher) pairs for <<
        bpq_pairs: (lower, higher) pairs for <
        magnitudes: optional explicit magnitude order; defaults to first mention

    Returns:
        The ordering
    """
    magnitude_of: Dict[str, str] = {}
    order: List[str] = list(magnitudes or [])
    for bpq, magnitude in bpqs:
        if bpq in magnitude_of and magnitude_of[bpq] != magnitude:
            raise OrderingError(f"BPQ {bpq} declared in magnitudes {magnitude_of[bpq]} and {magnitude}")
        magnitude_of[bpq] = magnitude
        if magnitude not in order:
            order.append(magnitude)

    magnitude_pairs = list(magnitude_pairs)
    for lower, upper in magnitude_pairs:
        for name in (lower, upper):
            if name not in order:
                raise UnknownMagnitude(name)

    bpq_pairs = list(bpq_pairs)
    for lower, upper in bpq_pairs:
        for name in (lower, upper):
            if name not in magnitude_of:
                raise UnknownBPQ(name)
        if magnitude_of[lower] != magnitude_of[upper]:
            raise CrossMagnitudePair(lower, upper)

    mag_order = _closure(order, magnitude_pairs)
    within_order = _closure(magnitude_of, bpq_pairs)
    partition = tuple(
        (m, tuple(sorted(b for b, owner in magnitude_of.items() if owner == m)))
        for m in order
    )
    return BPQOrdering(partition, mag_order, within_order)


def ordering_from_mapping(
    magnitude_members: Mapping[str, Sequence[str]],
    magnitude_pairs: Iterable[Pair] = (),
    bpq_pairs: Iterable[Pair] = (),
) -> BPQOrdering:
    """Convenience form of validate_ordering taking {magnitude: [bpq, ...]}"""
    declared = [(b, m) for m, members in magnitude_members.items() for b in members]
    return validate_ordering(declared, magnitude_pairs, bpq_pairs, list(magnitude_members))
