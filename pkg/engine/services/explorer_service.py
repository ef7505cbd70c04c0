import logging
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Literal, Optional, Sequence, Set, Tuple

import numpy as np
from pydantic import BaseModel, Field

from core.errors import ExplosionLimit, NotApplicable
from core.multiset import Multiset
from core.rewriting import EPS, RuleId, RunPrefix, System, apply, multiset_enabled_rules
from regulation import BaseRegulation, ProgrammedRegulation, RegularRegulation, RegulationMemory

logger = logging.getLogger(__name__)

StateSequence = Tuple[Multiset, ...]

NOT_ENABLED = "NotEnabled"
REGULATION_FORBIDS = "RegulationForbids"
EPS_NOT_FALLBACK = "EpsNotFallback"
AUTOMATON_DEAD = "AutomatonDead"


class ExplorationSettings(BaseModel):
    """探索の設定（CLIの --max-configs 等で上書き）"""

    max_configs: int = Field(default=1_000_000, ge=1)
    programmed_eps: Literal["fallback", "strict"] = "fallback"


@dataclass(frozen=True)
class Configuration:
    state: Multiset
    memory: RegulationMemory


class RunVerdict(BaseModel):
    valid: bool
    step: Optional[int] = None
    reason: Optional[str] = None

    def text(self) -> str:
        if self.valid:
            return "Valid"
        return f"Invalid(step {self.step}, {self.reason})"


@dataclass(frozen=True)
class EquivResult:
    equal: bool
    depth: int
    witness: Optional[RunPrefix] = None
    # 証拠ランを持つ側（"a" または "b"）
    witness_side: Optional[str] = None


@dataclass
class TerminalReport:
    values: Set[int] = field(default_factory=set)
    all_terminated: bool = True
    max_branching: int = 0
    terminal_configs: int = 0

    @property
    def max(self) -> Optional[int]:
        return max(self.values) if self.values else None


class ExplorerService:
    """ε-フォールバックと規制を合成したステップ意味論と、有界探索を提供するサービス"""

    def __init__(self, settings: Optional[ExplorationSettings] = None) -> None:
        self.settings = settings or ExplorationSettings()

    # ---------- ステップ意味論 ----------
    def prepare(self, regulation: BaseRegulation) -> BaseRegulation:
        if isinstance(regulation, ProgrammedRegulation):
            return regulation.with_policy(self.settings.programmed_eps)
        return regulation

    def initial(self, system: System, regulation: BaseRegulation) -> Configuration:
        return Configuration(system.init, regulation.init_memory())

    def _permitted(self, system: System, regulation: BaseRegulation, config: Configuration) -> List[RuleId]:
        enabled_now = multiset_enabled_rules(system, config.state)
        frozen = frozenset(enabled_now)
        return [r for r in enabled_now if regulation.permits(config.memory, config.state, r, frozen)]

    def _permits_eps(self, system: System, regulation: BaseRegulation, config: Configuration) -> bool:
        enabled_now = frozenset(multiset_enabled_rules(system, config.state))
        return regulation.permits(config.memory, config.state, EPS, enabled_now)

    def applicable(self, system: System, regulation: BaseRegulation, config: Configuration) -> List[RuleId]:
        """適用可能なルール（宣言順）

        許可された非εルールがあればそれら、なければ許可される場合に限り [eps]、
        どちらでもなければ空（正則規制の行き止まり）。
        """
        regulation = self.prepare(regulation)
        permitted = self._permitted(system, regulation, config)
        if permitted:
            return permitted
        return [EPS] if self._permits_eps(system, regulation, config) else []

    def step(self, system: System, regulation: BaseRegulation, config: Configuration, rule_id: RuleId) -> Configuration:
        rule = system.rule(rule_id)
        if rule_id not in self.applicable(system, regulation, config):
            raise NotApplicable(f"{rule_id} is not applicable at {config.state.literal()}")
        return self._advance(self.prepare(regulation), config, rule_id, rule)

    @staticmethod
    def _advance(regulation: BaseRegulation, config: Configuration, rule_id: RuleId, rule=None) -> Configuration:
        state = config.state if rule_id == EPS else apply(rule, config.state)
        return Configuration(state, regulation.advance_memory(config.memory, rule_id))

    def _expand(self, system: System, regulation: BaseRegulation, config: Configuration) -> List[Tuple[RuleId, Configuration]]:
        out = []
        for rule_id in self.applicable(system, regulation, config):
            out.append((rule_id, self._advance(regulation, config, rule_id, system.rule(rule_id))))
        return out

    # ---------- ラン検証 ----------
    def validate_run(
        self,
        system: System,
        regulation: BaseRegulation,
        labels: Sequence[RuleId],
        omega_eps_tail: bool = False,
    ) -> RunVerdict:
        """ラベル列を初期構成から再生し、最初の違反を1始まりのステップで報告する"""
        regulation = self.prepare(regulation)
        forbidden = AUTOMATON_DEAD if isinstance(regulation, RegularRegulation) else REGULATION_FORBIDS
        config = self.initial(system, regulation)

        for index, label in enumerate(labels, start=1):
            rule = system.rule(label)
            if not rule.lhs.is_subset(config.state):
                return RunVerdict(valid=False, step=index, reason=NOT_ENABLED)
            if label == EPS:
                if self._permitted(system, regulation, config):
                    return RunVerdict(valid=False, step=index, reason=EPS_NOT_FALLBACK)
                if not self._permits_eps(system, regulation, config):
                    return RunVerdict(valid=False, step=index, reason=forbidden)
            else:
                enabled_now = frozenset(multiset_enabled_rules(system, config.state))
                if not regulation.permits(config.memory, config.state, label, enabled_now):
                    return RunVerdict(valid=False, step=index, reason=forbidden)
            config = self._advance(regulation, config, label, rule)

        if omega_eps_tail:
            reason = self._eps_tail_violation(system, regulation, config)
            if reason is not None:
                return RunVerdict(valid=False, step=len(labels) + 1, reason=reason)
        return RunVerdict(valid=True)

    def _eps_tail_violation(self, system: System, regulation: BaseRegulation, config: Configuration) -> Optional[str]:
        forbidden = AUTOMATON_DEAD if isinstance(regulation, RegularRegulation) else REGULATION_FORBIDS
        if isinstance(regulation, RegularRegulation) and not regulation.accepts_eps_tail(config.memory):
            return AUTOMATON_DEAD
        # ε は状態を変えないので、メモリが一巡するまで確認すれば十分
        seen: Set[RegulationMemory] = set()
        while config.memory not in seen:
            seen.add(config.memory)
            if self._permitted(system, regulation, config):
                return EPS_NOT_FALLBACK
            if not self._permits_eps(system, regulation, config):
                return forbidden
            config = self._advance(regulation, config, EPS)
        return None

    # ---------- 有界探索 ----------
    def enumerate(self, system: System, regulation: BaseRegulation, depth: int) -> List[RunPrefix]:
        """長さ depth のラン接頭辞を宣言順（辞書式）で列挙する

        Raises:
            ExplosionLimit: フロンティアの接頭辞数が max_configs を超えた場合
        """
        if depth < 0:
            raise ValueError("depth must be non-negative")
        regulation = self.prepare(regulation)
        frontier: List[Tuple[List[Multiset], List[RuleId], Configuration]] = [
            ([system.init], [], self.initial(system, regulation))
        ]
        for _ in range(depth):
            next_frontier = []
            for states, labels, config in frontier:
                for rule_id, successor in self._expand(system, regulation, config):
                    next_frontier.append((states + [successor.state], labels + [rule_id], successor))
                    if len(next_frontier) > self.settings.max_configs:
                        raise ExplosionLimit(self.settings.max_configs)
            frontier = next_frontier

        prefixes = [RunPrefix(tuple(states), tuple(labels)) for states, labels, _ in frontier]
        logger.info("enumerated %d run prefixes at depth %d", len(prefixes), depth)
        return prefixes

    def state_sequences(self, system: System, regulation: BaseRegulation, depth: int) -> Dict[StateSequence, RunPrefix]:
        """ラベルを消した状態列（重複除去、初出のランを保持）"""
        out: Dict[StateSequence, RunPrefix] = {}
        for prefix in self.enumerate(system, regulation, depth):
            out.setdefault(prefix.states, prefix)
        return out

    def bounded_equiv(
        self,
        a: Tuple[System, BaseRegulation],
        b: Tuple[System, BaseRegulation],
        depth: int,
    ) -> EquivResult:
        """深さ depth までの状態列集合の等価性

        不一致の場合、両者が初めて食い違う打切り長を求め、その長さで相手側に
        存在しない接頭辞を持つ最初のランを証拠として返します（b 側を先に調べる）。
        """
        runs_a = self.state_sequences(*a, depth)
        runs_b = self.state_sequences(*b, depth)
        if runs_a.keys() == runs_b.keys():
            return EquivResult(equal=True, depth=depth)

        for k in range(1, depth + 2):
            cut_a = {seq[:k] for seq in runs_a}
            cut_b = {seq[:k] for seq in runs_b}
            if cut_a == cut_b:
                continue
            for side, runs, other in (("b", runs_b, cut_a), ("a", runs_a, cut_b)):
                for seq, prefix in runs.items():
                    if seq[:k] not in other:
                        logger.info("systems differ at state %d; witness %s", k - 1, prefix.labels_text())
                        return EquivResult(equal=False, depth=depth, witness=prefix, witness_side=side)
        raise AssertionError("state sequence sets differ but no witness was found")

    def terminal_outputs(self, system: System, regulation: BaseRegulation, output: str, depth: int) -> TerminalReport:
        """深さ depth まで探索し、終端構成（適用可能が ε のみ）での output の重複度を集める"""
        regulation = self.prepare(regulation)
        report = TerminalReport()
        frontier: Dict[Configuration, None] = {self.initial(system, regulation): None}
        seen = 1
        for level in range(depth + 1):
            next_frontier: Dict[Configuration, None] = {}
            for config in frontier:
                rules = self.applicable(system, regulation, config)
                if rules == [EPS]:
                    report.values.add(config.state.multiplicity(output))
                    report.terminal_configs += 1
                    continue
                if not rules:
                    continue
                report.max_branching = max(report.max_branching, len(rules))
                if level == depth:
                    report.all_terminated = False
                    continue
                for rule_id in rules:
                    next_frontier[self._advance(regulation, config, rule_id, system.rule(rule_id))] = None
            seen += len(next_frontier)
            if seen > self.settings.max_configs:
                raise ExplosionLimit(self.settings.max_configs)
            frontier = next_frontier
            if not frontier:
                break
        logger.info(
            "terminal outputs for %s: %s (terminated=%s, branching=%d)",
            output,
            sorted(report.values),
            report.all_terminated,
            report.max_branching,
        )
        return report

    # ---------- 補助機能 ----------
    def simulate(self, system: System, regulation: BaseRegulation, steps: int, seed: Optional[int] = None) -> RunPrefix:
        """適用可能ルールから一様に選ぶランダムウォーク（seed で決定的）"""
        regulation = self.prepare(regulation)
        rng = np.random.default_rng(seed)
        config = self.initial(system, regulation)
        states, labels = [config.state], []
        for _ in range(steps):
            rules = self.applicable(system, regulation, config)
            if not rules:
                logger.warning("random walk reached a dead end after %d steps", len(labels))
                break
            rule_id = rules[int(rng.integers(len(rules)))]
            config = self._advance(regulation, config, rule_id, system.rule(rule_id))
            states.append(config.state)
            labels.append(rule_id)
        return RunPrefix(tuple(states), tuple(labels))

    def scan_extra_words(self, system: System, regulation: BaseRegulation, depth: int) -> List[Tuple[RuleId, ...]]:
        """オートマトン上は生存しているが、どのランも実現しない長さ depth のラベル語"""
        if not isinstance(regulation, RegularRegulation):
            return []
        automaton = regulation.automaton
        alphabet = system.rule_ids + [EPS]
        words: List[Tuple[Tuple[RuleId, ...], FrozenSet[int]]] = [((), automaton.initial_states())]
        for _ in range(depth):
            extended = []
            for word, states in words:
                for sym in alphabet:
                    successor = automaton.step_states(states, sym)
                    if successor:
                        extended.append((word + (sym,), successor))
                        if len(extended) > self.settings.max_configs:
                            raise ExplosionLimit(self.settings.max_configs)
            words = extended

        realized = {prefix.labels for prefix in self.enumerate(system, regulation, depth)}
        extra = [word for word, _ in words if word not in realized]
        if extra:
            logger.warning("%d viable label words of length %d are realized by no run", len(extra), depth)
        return extra
