from dataclasses import dataclass, field
from typing import FrozenSet, List, Tuple

from core.multiset import Multiset
from core.rewriting import EPS, RuleId, System

from .base_regulation import BaseRegulation, Diagnostic, LastRule, RegulationMemory, transitive_closure

RulePair = Tuple[RuleId, RuleId]


@dataclass(frozen=True)
class OrderedRegulation(BaseRegulation):
    """順序規制: (a, b) ∈ ζ は「a < b」、直前が b のとき a を適用できない

    ユーザーは生成関係を与え、許可判定は推移閉包に対して行います。
    """

    keyword = "ordered"
    short_name = "OR"

    pairs: FrozenSet[RulePair] = frozenset()
    closure: FrozenSet[RulePair] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "closure", transitive_closure(self.pairs))

    def validate(self, system: System) -> List[Diagnostic]:
        out = self.unknown_rule_diagnostics(system, [r for pair in self.pairs for r in pair])
        cyclic = sorted(a for (a, b) in self.closure if a == b)
        if cyclic:
            out.append(
                Diagnostic(
                    code="OrderCycle",
                    message="order is not strict: closure relates " + ", ".join(cyclic) + " to itself",
                    rules=cyclic,
                )
            )
        return out

    def init_memory(self) -> RegulationMemory:
        return LastRule(None)

    def permits(
        self,
        memory: RegulationMemory,
        state: Multiset,
        candidate: RuleId,
        enabled_now: FrozenSet[RuleId],
    ) -> bool:
        if candidate == EPS or memory.rule is None:
            return True
        return (candidate, memory.rule) not in self.closure

    def advance_memory(self, memory: RegulationMemory, applied: RuleId) -> RegulationMemory:
        # ε は直前ルールの記憶を更新しない
        if applied == EPS:
            return memory
        return LastRule(applied)
