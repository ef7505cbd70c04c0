from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import ClassVar, FrozenSet, Iterable, List, Optional, Union

from pydantic import BaseModel, Field

from core.errors import UnknownRule
from core.multiset import Multiset
from core.rewriting import EPS, RuleId, System


# ---------- 規制メモリ ----------


@dataclass(frozen=True)
class NoMemory:
    pass


@dataclass(frozen=True)
class LastRule:
    """直前の非εルール（最初の非εステップ前は None）"""

    rule: Optional[RuleId] = None


@dataclass(frozen=True)
class AutomatonStates:
    states: FrozenSet[int]


RegulationMemory = Union[NoMemory, LastRule, AutomatonStates]

NO_MEMORY = NoMemory()


class Diagnostic(BaseModel):
    """規制 ζ の検証結果1件"""

    code: str
    message: str
    rules: List[str] = Field(default_factory=list)

    def text(self) -> str:
        return f"{self.code}: {self.message}"


class BaseRegulation(ABC):
    """規制クラスの抽象基底クラス

    各規制クラス（正則・順序・プログラム・条件・並行自由）はこのクラスを継承し、
    ζ の検証とステップごとの許可判定を実装します。
    実装は不変値とし、permits / advance_memory は副作用を持ちません。
    """

    # モデルファイルの `regulation:` キーワード
    keyword: ClassVar[str]
    # クラスの略称（RR, OR, PR, CR, CFR）
    short_name: ClassVar[str]

    @abstractmethod
    def validate(self, system: System) -> List[Diagnostic]:
        """ζ の整形式性を検証する

        Args:
            system: ζ を所有する系

        Returns:
            診断のリスト（空なら整形式）
        """

    def init_memory(self) -> RegulationMemory:
        return NO_MEMORY

    @abstractmethod
    def permits(
        self,
        memory: RegulationMemory,
        state: Multiset,
        candidate: RuleId,
        enabled_now: FrozenSet[RuleId],
    ) -> bool:
        """現在の構成で candidate の適用を許すか

        Args:
            memory: 規制メモリ
            state: 適用前の状態
            candidate: 多重集合として有効なルール（ε を含む）
            enabled_now: state で多重集合として有効な非εルール

        Returns:
            許可される場合True
        """

    def advance_memory(self, memory: RegulationMemory, applied: RuleId) -> RegulationMemory:
        return memory

    # ---------- 共通ヘルパー ----------
    @staticmethod
    def unknown_rule_diagnostics(system: System, rule_ids: Iterable[RuleId]) -> List[Diagnostic]:
        out: List[Diagnostic] = []
        for rule_id in sorted(set(rule_ids)):
            if rule_id == EPS:
                out.append(Diagnostic(code="EpsNotAllowed", message="eps is implicit and cannot be listed", rules=[EPS]))
            elif not system.has_rule(rule_id):
                out.append(Diagnostic(code="UnknownRule", message=f"unknown rule {rule_id}", rules=[rule_id]))
        return out


def transitive_closure(pairs: Iterable[tuple]) -> FrozenSet[tuple]:
    """関係の推移閉包"""
    closure = set(pairs)
    while True:
        extra = {(a, d) for (a, b) in closure for (c, d) in closure if b == c} - closure
        if not extra:
            return frozenset(closure)
        closure |= extra


# ---------- 関数形式の操作 ----------


def validate_regulation(system: System, regulation: BaseRegulation) -> List[Diagnostic]:
    return regulation.validate(system)


def init_memory(regulation: BaseRegulation) -> RegulationMemory:
    return regulation.init_memory()


def permits(
    regulation: BaseRegulation,
    memory: RegulationMemory,
    state: Multiset,
    candidate: RuleId,
    enabled_now: FrozenSet[RuleId],
    system: Optional[System] = None,
) -> bool:
    """system を渡すと、系にない候補ルールを UnknownRule として拒否する"""
    if system is not None and candidate != EPS and not system.has_rule(candidate):
        raise UnknownRule(candidate)
    return regulation.permits(memory, state, candidate, enabled_now)


def advance_memory(regulation: BaseRegulation, memory: RegulationMemory, applied: RuleId) -> RegulationMemory:
    return regulation.advance_memory(memory, applied)
