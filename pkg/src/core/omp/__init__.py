"""Order-of-magnitude preference module"""
from .ordering import (
    BPQOrdering, CrossMagnitudePair, CyclicOrder, OrderingError, UnknownBPQ, UnknownMagnitude,
    ordering_from_mapping, validate_ordering,
)
from .preference import (
    OMP, MixedOrdering, PrefCmp,
    combine, combine_all, compare, compare_within, cumulative_counts, dominates,
    leq_within, maximal_bound, render_omp, topological_rank, upper_envelope,
)
from .declarations import (
    ORDERING_FORMS, MalformedPreferenceDeclaration, OrderingCollector, collect_ordering,
)

__all__ = [
    'BPQOrdering', 'CrossMagnitudePair', 'CyclicOrder', 'OrderingError', 'UnknownBPQ',
    'UnknownMagnitude', 'ordering_from_mapping', 'validate_ordering',
    'OMP', 'MixedOrdering', 'PrefCmp',
    'combine', 'combine_all', 'compare', 'compare_within', 'cumulative_counts', 'dominates',
    'leq_within', 'maximal_bound', 'render_omp', 'topological_rank', 'upper_envelope',
    'ORDERING_FORMS', 'MalformedPreferenceDeclaration', 'OrderingCollector', 'collect_ordering',
]
