import logging
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Sequence, Set, Tuple

from core.errors import TranslationError
from core.multiset import Multiset
from core.rewriting import RuleId, System
from regulation import (
    BaseRegulation,
    ConcurrentFreeRegulation,
    ConditionalRegulation,
    OrderedRegulation,
    ProgrammedRegulation,
    neutral_regulation,
)

logger = logging.getLogger(__name__)


@dataclass
class Translation:
    system: System
    regulation: BaseRegulation
    removed_rules: List[RuleId] = field(default_factory=list)


class TransformService:
    """規制クラス間の構成的変換"""

    def or_to_pr(self, system: System, regulation: BaseRegulation) -> Translation:
        """順序規制をプログラム規制へ変換する

        ζ′(μ) = { μ̄ | (μ̄, μ) ∉ closure(ζ) } 。直前ルールより上位か比較不能なルールだけが続けられる。
        """
        if not isinstance(regulation, OrderedRegulation):
            raise TranslationError(f"--or2pr needs an ordered model, got {regulation.keyword}")
        succ = {
            rule_id: frozenset(r for r in system.rule_ids if (r, rule_id) not in regulation.closure)
            for rule_id in system.rule_ids
        }
        logger.info("translated ordered regulation with %d pairs", len(regulation.pairs))
        return Translation(system, ProgrammedRegulation(succ))

    def cfr_to_cr(
        self,
        system: System,
        regulation: BaseRegulation,
        pair_order: Optional[Sequence[Tuple[RuleId, RuleId]]] = None,
    ) -> Translation:
        """並行自由規制を条件規制へ変換する

        各対 (μ, μ̄) について、•μ ⊇ •μ̄ なら μ は決して使えないので削除し、
        そうでなければ •μ̄ を μ の禁止文脈に加えます。

        Args:
            pair_order: 処理順（省略時はルールIDの辞書順）
        """
        if not isinstance(regulation, ConcurrentFreeRegulation):
            raise TranslationError(f"--cfr2cr needs a concurrent-free model, got {regulation.keyword}")
        pairs = list(pair_order) if pair_order is not None else sorted(regulation.pairs)
        if set(pairs) != set(regulation.pairs):
            raise ValueError("pair_order must list exactly the regulation's pairs")

        removed: List[RuleId] = []
        forbid: Dict[RuleId, Set[Multiset]] = {}
        for loser, winner in pairs:
            if loser in removed:
                continue
            loser_lhs = system.rule(loser).lhs
            winner_lhs = system.rule(winner).lhs
            if winner_lhs.is_subset(loser_lhs):
                removed.append(loser)
                forbid.pop(loser, None)
                logger.warning("rule %s can never fire while %s has priority; removed", loser, winner)
            else:
                forbid.setdefault(loser, set()).add(winner_lhs)

        kept = [rule for rule in system.rules if rule.id not in removed]
        translated = system.with_rules(kept)
        contexts: Dict[RuleId, FrozenSet[Multiset]] = {k: frozenset(v) for k, v in forbid.items()}
        return Translation(translated, ConditionalRegulation(contexts), sorted(removed))

    def attach_neutral(self, system: System, class_name: str) -> Translation:
        return Translation(system, neutral_regulation(class_name, system))
