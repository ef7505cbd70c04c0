import re
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

from .errors import DuplicateRule, ReservedName, RuleNotEnabled, UnknownElement, UnknownRule
from .multiset import EMPTY, Multiset

RuleId = str

EPS: RuleId = "eps"
TOKEN_RE = re.compile(r"^[A-Za-z0-9_]+$")


@dataclass(frozen=True)
class Rule:
    """書換えルール μ = (•μ, μ•)"""

    id: RuleId
    lhs: Multiset
    rhs: Multiset

    @property
    def is_eps(self) -> bool:
        return self.id == EPS

    def text(self) -> str:
        return f"{self.id}: {self.lhs.literal()} -> {self.rhs.literal()}"


# 空ルール ε。ユーザーは宣言できず、常に暗黙に存在する
EPS_RULE = Rule(EPS, EMPTY, EMPTY)


@dataclass(frozen=True)
class System:
    """多重集合書換え系 (𝒳, M₀) と要素の全体集合 𝒮

    rules は宣言順を保持します（出力の決定性のため。意味論は順序に依存しない）。
    """

    elements: FrozenSet[str]
    rules: Tuple[Rule, ...]
    init: Multiset
    _index: Dict[RuleId, int] = field(default_factory=dict, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        for element in self.elements:
            if element == EPS:
                raise ReservedName(element)
        index: Dict[RuleId, int] = {}
        for position, rule in enumerate(self.rules):
            if rule.id == EPS:
                raise ReservedName(rule.id)
            if rule.id in index:
                raise DuplicateRule(rule.id)
            index[rule.id] = position
            for element in list(rule.lhs) + list(rule.rhs):
                if element not in self.elements:
                    raise UnknownElement(element)
        for element in self.init:
            if element not in self.elements:
                raise UnknownElement(element)
        self._index.update(index)

    @classmethod
    def build(cls, elements: Iterable[str], rules: Iterable[Rule], init: Multiset) -> "System":
        return cls(frozenset(elements), tuple(rules), init)

    # ---------- 参照 ----------
    @property
    def rule_ids(self) -> List[RuleId]:
        return [r.id for r in self.rules]

    def has_rule(self, rule_id: RuleId) -> bool:
        return rule_id in self._index

    def rule(self, rule_id: RuleId) -> Rule:
        """ルールIDからルールを引く（eps は組み込みの空ルール）"""
        if rule_id == EPS:
            return EPS_RULE
        position = self._index.get(rule_id)
        if position is None:
            raise UnknownRule(rule_id)
        return self.rules[position]

    def order_of(self, rule_id: RuleId) -> int:
        """宣言順の位置（eps は末尾扱い）"""
        if rule_id == EPS:
            return len(self.rules)
        return self._index[rule_id]

    def with_init(self, init: Multiset) -> "System":
        return System(self.elements, self.rules, init)

    def with_rules(self, rules: Iterable[Rule]) -> "System":
        return System(self.elements, tuple(rules), self.init)


@dataclass(frozen=True)
class RunPrefix:
    """ランの有限接頭辞（状態列とラベル列）"""

    states: Tuple[Multiset, ...]
    labels: Tuple[RuleId, ...] = ()

    def __post_init__(self) -> None:
        if len(self.labels) != len(self.states) - 1:
            raise ValueError("labels must be exactly one shorter than states")

    @property
    def length(self) -> int:
        return len(self.labels)

    def text(self) -> str:
        """`{} -mu1-> {A} -mu2-> {B}` 形式"""
        parts = [self.states[0].literal()]
        for label, state in zip(self.labels, self.states[1:]):
            parts.append(f"-{label}-> {state.literal()}")
        return " ".join(parts)

    def states_text(self) -> str:
        return " ".join(s.literal() for s in self.states)

    def labels_text(self) -> str:
        return " ".join(self.labels)


def enabled(rule: Rule, state: Multiset) -> bool:
    return rule.lhs.is_subset(state)


def apply(rule: Rule, state: Multiset) -> Multiset:
    """M′ = (M ∖ •μ) ∪ μ•"""
    if not rule.lhs.is_subset(state):
        raise RuleNotEnabled(f"{rule.id} is not enabled at {state.literal()}")
    return state.difference(rule.lhs).sum_union(rule.rhs)


def multiset_enabled_rules(system: System, state: Multiset) -> List[RuleId]:
    """多重集合として有効な非εルール（宣言順）"""
    return [r.id for r in system.rules if r.lhs.is_subset(state)]


def is_token(name: Optional[str]) -> bool:
    return bool(name) and TOKEN_RE.match(name) is not None
