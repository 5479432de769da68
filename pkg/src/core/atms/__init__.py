"""Assumption-based truth maintenance module"""
from .atms import (
    ATMS, ATMSError, EMPTY_ENV, Env, InvalidConsequent, Justification, Label, Literal,
    NegatedDerivedAntecedent, Node, NodeKind, UnknownNode,
    env_key, is_complementary, minimize, neg, pos, sorted_envs,
)
from .oracle import OracleBoundExceeded, all_environments, brute_force_label, brute_force_labels, derives

__all__ = [
    'ATMS', 'ATMSError', 'EMPTY_ENV', 'Env', 'InvalidConsequent', 'Justification', 'Label', 'Literal',
    'NegatedDerivedAntecedent', 'Node', 'NodeKind', 'UnknownNode',
    'env_key', 'is_complementary', 'minimize', 'neg', 'pos', 'sorted_envs',
    'OracleBoundExceeded', 'all_environments', 'brute_force_label', 'brute_force_labels', 'derives',
]
