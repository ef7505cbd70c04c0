from dataclasses import dataclass
from typing import FrozenSet, List

from core.multiset import Multiset
from core.rewriting import RuleId, System

from .base_regulation import BaseRegulation, Diagnostic, RegulationMemory


@dataclass(frozen=True)
class Unregulated(BaseRegulation):
    """規制なし。全ての多重集合有効ルールを許可する"""

    keyword = "none"
    short_name = "NONE"

    def validate(self, system: System) -> List[Diagnostic]:
        return []

    def permits(
        self,
        memory: RegulationMemory,
        state: Multiset,
        candidate: RuleId,
        enabled_now: FrozenSet[RuleId],
    ) -> bool:
        return True
