from .base_regulation import (
    NO_MEMORY,
    AutomatonStates,
    BaseRegulation,
    Diagnostic,
    LastRule,
    NoMemory,
    RegulationMemory,
    advance_memory,
    init_memory,
    permits,
    transitive_closure,
    validate_regulation,
)
from .concurrent_free_regulation import ConcurrentFreeRegulation
from .conditional_regulation import ConditionalRegulation
from .neutral import NEUTRAL_CLASSES, REGULATION_CLASSES, neutral_regulation
from .ordered_regulation import OrderedRegulation
from .programmed_regulation import EPS_FALLBACK, EPS_STRICT, ProgrammedRegulation
from .regular_regulation import RegularRegulation
from .unregulated import Unregulated

__all__ = [
    "NO_MEMORY",
    "AutomatonStates",
    "BaseRegulation",
    "ConcurrentFreeRegulation",
    "ConditionalRegulation",
    "Diagnostic",
    "EPS_FALLBACK",
    "EPS_STRICT",
    "LastRule",
    "NEUTRAL_CLASSES",
    "NoMemory",
    "OrderedRegulation",
    "ProgrammedRegulation",
    "REGULATION_CLASSES",
    "RegularRegulation",
    "RegulationMemory",
    "Unregulated",
    "advance_memory",
    "init_memory",
    "neutral_regulation",
    "permits",
    "transitive_closure",
    "validate_regulation",
]
