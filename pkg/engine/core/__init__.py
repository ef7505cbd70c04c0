from .multiset import EMPTY, Multiset
from .rewriting import EPS, EPS_RULE, Rule, RuleId, RunPrefix, System, apply, enabled, multiset_enabled_rules

__all__ = [
    "EMPTY",
    "EPS",
    "EPS_RULE",
    "Multiset",
    "Rule",
    "RuleId",
    "RunPrefix",
    "System",
    "apply",
    "enabled",
    "multiset_enabled_rules",
]
