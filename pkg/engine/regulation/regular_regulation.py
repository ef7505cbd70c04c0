from dataclasses import dataclass, field
from typing import FrozenSet, List

from core.multiset import Multiset
from core.rewriting import EPS, RuleId, System
from omega.buchi import BuchiAutomaton, to_buchi
from omega.expression import OmegaExpr

from .base_regulation import AutomatonStates, BaseRegulation, Diagnostic, RegulationMemory


@dataclass(frozen=True)
class RegularRegulation(BaseRegulation):
    """正則規制: ラン・ラベルが ω正則言語 ζ に属することを要求する

    ε も通常のアルファベット記号としてオートマトンを進めます。
    """

    keyword = "regular"
    short_name = "RR"

    expr: OmegaExpr
    automaton: BuchiAutomaton = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "automaton", to_buchi(self.expr))

    def validate(self, system: System) -> List[Diagnostic]:
        strays = sorted(s for s in self.expr.alphabet if s != EPS and not system.has_rule(s))
        if strays:
            return [Diagnostic(code="UnknownSymbol", message="expression mentions " + ", ".join(strays), rules=strays)]
        return []

    def init_memory(self) -> RegulationMemory:
        return AutomatonStates(self.automaton.initial_states())

    def permits(
        self,
        memory: RegulationMemory,
        state: Multiset,
        candidate: RuleId,
        enabled_now: FrozenSet[RuleId],
    ) -> bool:
        return bool(self.automaton.step_states(memory.states, candidate))

    def advance_memory(self, memory: RegulationMemory, applied: RuleId) -> RegulationMemory:
        return AutomatonStates(self.automaton.step_states(memory.states, applied))

    def accepts_eps_tail(self, memory: RegulationMemory) -> bool:
        return self.automaton.accepts_constant_tail(memory.states, EPS)
