"""Knowledge base module"""
from .models import (
    BUILTIN_CLASSES, AssumptionForm, CyclicHierarchy, DuplicateName, EntityClass,
    FreeVariableViolation, KnowledgeBase, KnowledgeBaseError, MalformedAssumption,
    MalformedDefinition, Model, ModelFragment, ParticipantSpec, PropertyDef, Relevance, Scenario,
    UndeclaredParticipant, UnknownDefForm, UnknownFeature, UnknownType,
    is_negation, parse_assumption, property_to_fragment,
)
from .loader import DEF_FORMS, KnowledgeBaseLoader, load_kb, load_kb_files, normalize

__all__ = [
    'BUILTIN_CLASSES', 'AssumptionForm', 'CyclicHierarchy', 'DuplicateName', 'EntityClass',
    'FreeVariableViolation', 'KnowledgeBase', 'KnowledgeBaseError', 'MalformedAssumption',
    'MalformedDefinition', 'Model', 'ModelFragment', 'ParticipantSpec', 'PropertyDef', 'Relevance',
    'Scenario', 'UndeclaredParticipant', 'UnknownDefForm', 'UnknownFeature', 'UnknownType',
    'is_negation', 'parse_assumption', 'property_to_fragment',
    'DEF_FORMS', 'KnowledgeBaseLoader', 'load_kb', 'load_kb_files', 'normalize',
]
