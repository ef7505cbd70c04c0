from dataclasses import dataclass, field
from typing import FrozenSet, List, Mapping

from core.multiset import Multiset
from core.rewriting import EPS, RuleId, System

from .base_regulation import BaseRegulation, Diagnostic, RegulationMemory


@dataclass(frozen=True)
class ConditionalRegulation(BaseRegulation):
    """条件規制: 各ルールに禁止文脈（多重集合）の集合を割り当てる

    禁止文脈は適用前の状態に対して判定します。エントリのないルールは ∅ です。
    """

    keyword = "conditional"
    short_name = "CR"

    forbid: Mapping[RuleId, FrozenSet[Multiset]] = field(default_factory=dict)

    def __post_init__(self) -> None:
        # 空のエントリは持たない（等価性を正規形で判定するため）
        object.__setattr__(self, "forbid", {k: frozenset(v) for k, v in self.forbid.items() if v})

    def contexts(self, rule_id: RuleId) -> FrozenSet[Multiset]:
        return self.forbid.get(rule_id, frozenset())

    def validate(self, system: System) -> List[Diagnostic]:
        out = self.unknown_rule_diagnostics(system, self.forbid)
        for rule_id in sorted(self.forbid):
            for context in self.forbid[rule_id]:
                strays = sorted(e for e in context if e not in system.elements)
                if strays:
                    out.append(
                        Diagnostic(
                            code="UnknownElement",
                            message=f"context of {rule_id} mentions " + ", ".join(strays),
                            rules=[rule_id],
                        )
                    )
        return out

    def permits(
        self,
        memory: RegulationMemory,
        state: Multiset,
        candidate: RuleId,
        enabled_now: FrozenSet[RuleId],
    ) -> bool:
        if candidate == EPS:
            return True
        return not any(context.is_subset(state) for context in self.contexts(candidate))
