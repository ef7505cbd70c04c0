from dataclasses import dataclass, field
from typing import FrozenSet, List, Tuple

from core.multiset import Multiset
from core.rewriting import EPS, RuleId, System

from .base_regulation import BaseRegulation, Diagnostic, RegulationMemory, transitive_closure

RulePair = Tuple[RuleId, RuleId]


@dataclass(frozen=True)
class ConcurrentFreeRegulation(BaseRegulation):
    """並行自由規制: (μ, μ′) ∈ ζ なら μ′ が有効な間 μ は適用できない

    許可判定は生の対集合で行い、推移閉包は検証の非循環条件にのみ使います。
    """

    keyword = "concurrent-free"
    short_name = "CFR"

    pairs: FrozenSet[RulePair] = frozenset()
    closure: FrozenSet[RulePair] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "closure", transitive_closure(self.pairs))

    def validate(self, system: System) -> List[Diagnostic]:
        out = self.unknown_rule_diagnostics(system, [r for pair in self.pairs for r in pair])
        if out:
            return out
        for loser, winner in sorted(self.pairs):
            if loser == winner:
                out.append(
                    Diagnostic(code="Reflexive", message=f"{loser} is paired with itself", rules=[loser])
                )
                continue
            if not system.rule(loser).lhs.shares_element(system.rule(winner).lhs):
                out.append(
                    Diagnostic(
                        code="NotConcurrent",
                        message=f"{loser} and {winner} rewrite no common element",
                        rules=[loser, winner],
                    )
                )
            if (winner, loser) in self.closure:
                out.append(
                    Diagnostic(
                        code="PriorityCycle",
                        message=f"{winner} is transitively below {loser}",
                        rules=[loser, winner],
                    )
                )
        return out

    def blockers(self, candidate: RuleId) -> FrozenSet[RuleId]:
        return frozenset(winner for loser, winner in self.pairs if loser == candidate)

    def permits(
        self,
        memory: RegulationMemory,
        state: Multiset,
        candidate: RuleId,
        enabled_now: FrozenSet[RuleId],
    ) -> bool:
        if candidate == EPS:
            return True
        return not (self.blockers(candidate) & enabled_now)
