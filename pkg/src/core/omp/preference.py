"""
Order-of-magnitude preferences (OMPs)
Multisets of BPQs, their combination and their two-level comparison
"""
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Dict, Iterable, Mapping, Tuple

from ..errors import ComposerError
from .ordering import BPQOrdering, UnknownBPQ, UnknownMagnitude


class MixedOrdering(ComposerError):
    """Raised when OMPs governed by different orderings are combined or compared"""

    def __init__(self):
        super().__init__("preferences are governed by different BPQ orderings")


class PrefCmp(Enum):
    """Outcome of comparing two preferences"""
    EQUAL = "="
    LESS = "<"
    GREATER = ">"
    INCOMPARABLE = "?"

    def inverse(self) -> "PrefCmp":
        if self is PrefCmp.LESS:
            return PrefCmp.GREATER
        if self is PrefCmp.GREATER:
            return PrefCmp.LESS
        return self


def _verdict(leq: bool, geq: bool) -> PrefCmp:
    if leq and geq:
        return PrefCmp.EQUAL
    if leq:
        return PrefCmp.LESS
    if geq:
        return PrefCmp.GREATER
    return PrefCmp.INCOMPARABLE


@dataclass(frozen=True)
class OMP:
    """
    A preference: BPQ multiplicities under a governing ordering

    Absent BPQs have multiplicity 0; the empty OMP is the identity of combine.
    """
    ordering: BPQOrdering
    counts: Tuple[Tuple[str, int], ...] = ()

    def __post_init__(self):
        raw = self.counts
        items = raw.items() if isinstance(raw, Mapping) else raw
        merged: Counter = Counter()
        for bpq, count in items:
            if count < 0:
                raise ValueError(f"negative multiplicity for {bpq}")
            if bpq not in self.ordering.bpqs:
                raise UnknownBPQ(bpq)
            merged[bpq] += count
        normal = tuple(sorted((b, c) for b, c in merged.items() if c > 0))
        object.__setattr__(self, "counts", normal)

    @classmethod
    def empty(cls, ordering: BPQOrdering) -> "OMP":
        return cls(ordering)

    @classmethod
    def of(cls, ordering: BPQOrdering, *bpqs: str) -> "OMP":
        """Combine the BPQs of a list of BPQ names (repeats allowed)"""
        return cls(ordering, tuple(Counter(bpqs).items()))

    @cached_property
    def table(self) -> Dict[str, int]:
        return dict(self.counts)

    def count(self, bpq: str) -> int:
        return self.table.get(bpq, 0)

    def is_empty(self) -> bool:
        return not self.counts

    @cached_property
    def cumulative(self) -> Dict[str, Tuple[int, ...]]:
        """Per magnitude, the cumulative count of each member BPQ in member order"""
        ordering = self.ordering
        table = self.table
        result = {}
        for magnitude, members in ordering.magnitudes:
            result[magnitude] = tuple(
                table.get(b, 0) + sum(table.get(u, 0) for u in ordering.upper_sets[b])
                for b in members
            )
        return result

    def __str__(self) -> str:
        return render_omp(self)


def render_omp(p: OMP) -> str:
    """Render as a BPQ multiset, e.g. `(p-holling*2 p-logistic)`"""
    parts = [b if c == 1 else f"{b}*{c}" for b, c in p.counts]
    return "(" + " ".join(parts) + ")"


def _same_ordering(p1: OMP, p2: OMP) -> BPQOrdering:
    if p1.ordering is not p2.ordering and p1.ordering != p2.ordering:
        raise MixedOrdering()
    return p1.ordering


def combine(p1: OMP, p2: OMP) -> OMP:
    """Pointwise multiplicity sum"""
    ordering = _same_ordering(p1, p2)
    if p2.is_empty():
        return p1
    if p1.is_empty():
        return p2
    merged = Counter(p1.table)
    merged.update(p2.table)
    return OMP(ordering, tuple(merged.items()))


def combine_all(ordering: BPQOrdering, prefs: Iterable[OMP]) -> OMP:
    result = OMP.empty(ordering)
    for p in prefs:
        result = combine(result, p)
    return result


def _check_magnitude(ordering: BPQOrdering, magnitude: str) -> None:
    if magnitude not in ordering.members:
        raise UnknownMagnitude(magnitude)


def cumulative_counts(p: OMP, magnitude: str) -> Dict[str, int]:
    """f_P(b) plus the counts of b's strict upper set, for every b in the magnitude"""
    _check_magnitude(p.ordering, magnitude)
    members = p.ordering.members[magnitude]
    return dict(zip(members, p.cumulative[magnitude]))


def _vec_leq(a: Tuple[int, ...], b: Tuple[int, ...]) -> bool:
    return all(x <= y for x, y in zip(a, b))


def leq_within(p1: OMP, p2: OMP, magnitude: str) -> bool:
    """True iff p1 is less or equally preferred to p2 within the magnitude"""
    ordering = _same_ordering(p1, p2)
    _check_magnitude(ordering, magnitude)
    return _vec_leq(p1.cumulative[magnitude], p2.cumulative[magnitude])


def compare_within(p1: OMP, p2: OMP, magnitude: str) -> PrefCmp:
    return _verdict(leq_within(p1, p2, magnitude), leq_within(p2, p1, magnitude))


def compare(p1: OMP, p2: OMP) -> PrefCmp:
    """
    Two-level comparison

    p1 is at most p2 when every magnitude either has p1 at most p2 or lies
    under a magnitude where p1 is strictly below p2. Both directions are evaluated and mapped to
    the four outcomes.
    """
    ordering = _same_ordering(p1, p2)
    if p1.counts == p2.counts:
        return PrefCmp.EQUAL
    c1, c2 = p1.cumulative, p2.cumulative
    leq12: Dict[str, bool] = {}
    leq21: Dict[str, bool] = {}
    for magnitude in ordering.magnitude_names:
        leq12[magnitude] = _vec_leq(c1[magnitude], c2[magnitude])
        leq21[magnitude] = _vec_leq(c2[magnitude], c1[magnitude])

    def holds(leq: Dict[str, bool], geq: Dict[str, bool]) -> bool:
        for magnitude in ordering.magnitude_names:
            if leq[magnitude]:
                continue
            if not any(leq[h] and not geq[h] for h in ordering.higher_magnitudes[magnitude]):
                return False
        return True

    return _verdict(holds(leq12, leq21), holds(leq21, leq12))


def dominates(p1: OMP, p2: OMP) -> bool:
    """True iff p1 is strictly preferred to p2"""
    return compare(p1, p2) is PrefCmp.GREATER


def topological_rank(p: OMP) -> Tuple[int, ...]:
    """
    Sort key that is a linear extension of the strict preference order

    p1 strictly below p2 implies rank(p1) < rank(p2). Magnitudes are grouped
    by their depth under <<; groups nearer the top are compared first.
    """
    ordering = p.ordering
    levels = ordering.levels
    depth = max(levels.values(), default=-1) + 1
    totals = [0] * depth
    for magnitude, vector in p.cumulative.items():
        totals[levels[magnitude]] += sum(vector)
    return tuple(totals)


def upper_envelope(ordering: BPQOrdering, prefs: Iterable[OMP]) -> OMP:
    """Per-BPQ maximum multiplicity across the given preferences"""
    best: Dict[str, int] = {}
    for p in prefs:
        for bpq, count in p.counts:
            if count > best.get(bpq, 0):
                best[bpq] = count
    return OMP(ordering, tuple(best.items()))


def maximal_bound(ordering: BPQOrdering, prefs: Iterable[OMP]) -> OMP:
    """
    An OMP that no member of prefs exceeds

    The unique maximal element when there is one, otherwise the upper
    envelope of the maximal elements.
    """
    candidates = list(dict.fromkeys(prefs))
    if not candidates:
        return OMP.empty(ordering)
    maxima = [
        p for p in candidates
        if not any(compare(p, q) is PrefCmp.LESS for q in candidates)
    ]
    if len(maxima) == 1:
        return maxima[0]
    return upper_envelope(ordering, maxima)


