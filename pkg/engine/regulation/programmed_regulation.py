from dataclasses import dataclass, field
from typing import FrozenSet, List, Mapping

from core.multiset import Multiset
from core.rewriting import EPS, RuleId, System

from .base_regulation import BaseRegulation, Diagnostic, LastRule, RegulationMemory

EPS_FALLBACK = "fallback"
EPS_STRICT = "strict"


@dataclass(frozen=True)
class ProgrammedRegulation(BaseRegulation):
    """プログラム規制: 各ルールに後続ルール集合 ζ(μ) を割り当てる

    ε は全ての後続集合に暗黙に含まれます。eps_policy が strict の場合に限り、
    ζ(last) が空でない間は ε を許可しません（接頭辞は行き止まりになる）。
    """

    keyword = "programmed"
    short_name = "PR"

    succ: Mapping[RuleId, FrozenSet[RuleId]] = field(default_factory=dict)
    eps_policy: str = field(default=EPS_FALLBACK, compare=False)

    def __post_init__(self) -> None:
        if self.eps_policy not in (EPS_FALLBACK, EPS_STRICT):
            raise ValueError(f"unknown eps policy: {self.eps_policy}")
        object.__setattr__(self, "succ", {k: frozenset(v) for k, v in self.succ.items()})

    def successors(self, rule_id: RuleId) -> FrozenSet[RuleId]:
        return self.succ.get(rule_id, frozenset())

    def validate(self, system: System) -> List[Diagnostic]:
        mentioned = list(self.succ) + [r for targets in self.succ.values() for r in targets]
        out = self.unknown_rule_diagnostics(system, mentioned)
        missing = [r for r in system.rule_ids if r not in self.succ]
        if missing:
            out.append(
                Diagnostic(
                    code="MissingSuccessors",
                    message="no successor set for " + ", ".join(missing),
                    rules=missing,
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
        if memory.rule is None:
            return True
        if candidate == EPS:
            return self.eps_policy == EPS_FALLBACK or not self.successors(memory.rule)
        return candidate in self.successors(memory.rule)

    def advance_memory(self, memory: RegulationMemory, applied: RuleId) -> RegulationMemory:
        if applied == EPS:
            return memory
        return LastRule(applied)

    def with_policy(self, eps_policy: str) -> "ProgrammedRegulation":
        if eps_policy == self.eps_policy:
            return self
        return ProgrammedRegulation(dict(self.succ), eps_policy)

