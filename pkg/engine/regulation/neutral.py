from typing import Dict, Type

from core.rewriting import EPS, System
from omega.expression import universal_omega

from .base_regulation import BaseRegulation
from .concurrent_free_regulation import ConcurrentFreeRegulation
from .conditional_regulation import ConditionalRegulation
from .ordered_regulation import OrderedRegulation
from .programmed_regulation import ProgrammedRegulation
from .regular_regulation import RegularRegulation
from .unregulated import Unregulated

REGULATION_CLASSES: Dict[str, Type[BaseRegulation]] = {
    cls.short_name: cls
    for cls in (
        Unregulated,
        RegularRegulation,
        OrderedRegulation,
        ProgrammedRegulation,
        ConditionalRegulation,
        ConcurrentFreeRegulation,
    )
}

NEUTRAL_CLASSES = ("RR", "OR", "PR", "CR", "CFR")


def neutral_regulation(class_name: str, system: System) -> BaseRegulation:
    """何も制限しない規制 ζ₀ を作る

    Args:
        class_name: RR / OR / PR / CR / CFR
        system: 対象の系

    Returns:
        RR: Σ*.(Σ)^w（Σ は全ルールと eps）、OR/CFR: 空関係、
        PR: 全ルールを後続に持つ写像（eps は暗黙）、CR: 禁止文脈なし
    """
    if class_name == "RR":
        return RegularRegulation(universal_omega(system.rule_ids + [EPS]))
    if class_name == "OR":
        return OrderedRegulation(frozenset())
    if class_name == "PR":
        everything = frozenset(system.rule_ids)
        return ProgrammedRegulation({rule_id: everything for rule_id in system.rule_ids})
    if class_name == "CR":
        return ConditionalRegulation({})
    if class_name == "CFR":
        return ConcurrentFreeRegulation(frozenset())
    raise ValueError(f"unknown regulation class: {class_name}")
