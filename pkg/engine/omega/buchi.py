import logging
from collections import defaultdict, deque
from dataclasses import dataclass
from typing import Dict, FrozenSet, Hashable, Iterable, List, Optional, Sequence, Set, Tuple

from .expression import Concat, EmptyWord, OmegaExpr, RegexExpr, Star, Symbol, Union

logger = logging.getLogger(__name__)

State = int


@dataclass(frozen=True)
class FiniteAutomaton:
    """λ遷移を除去した有限語オートマトン

    現在状態集合は常にλ閉包済みとして扱い、delta[(q, a)] も閉包済みです。
    """

    states: FrozenSet[int]
    initial: FrozenSet[int]
    final: FrozenSet[int]
    delta: Dict[Tuple[int, str], FrozenSet[int]]

    def accepts_empty(self) -> bool:
        return bool(self.initial & self.final)


class _Thompson:
    def __init__(self) -> None:
        self.count = 0
        self.edges: Dict[int, List[Tuple[Optional[str], int]]] = defaultdict(list)

    def new_state(self) -> int:
        state = self.count
        self.count += 1
        return state

    def build(self, expr: RegexExpr) -> Tuple[int, int]:
        if isinstance(expr, Symbol):
            s, t = self.new_state(), self.new_state()
            self.edges[s].append((expr.name, t))
            return s, t
        if isinstance(expr, EmptyWord):
            s, t = self.new_state(), self.new_state()
            self.edges[s].append((None, t))
            return s, t
        if isinstance(expr, Concat):
            start, end = self.build(expr.items[0])
            for item in expr.items[1:]:
                s, t = self.build(item)
                self.edges[end].append((None, s))
                end = t
            return start, end
        if isinstance(expr, Union):
            s, t = self.new_state(), self.new_state()
            for item in expr.items:
                si, ti = self.build(item)
                self.edges[s].append((None, si))
                self.edges[ti].append((None, t))
            return s, t
        if isinstance(expr, Star):
            s, t = self.new_state(), self.new_state()
            si, ti = self.build(expr.inner)
            self.edges[s].extend([(None, si), (None, t)])
            self.edges[ti].extend([(None, si), (None, t)])
            return s, t
        raise TypeError(f"unsupported expression node: {expr!r}")

    def closure(self, states: Iterable[int]) -> FrozenSet[int]:
        seen: Set[int] = set(states)
        stack = list(seen)
        while stack:
            q = stack.pop()
            for label, r in self.edges.get(q, ()):
                if label is None and r not in seen:
                    seen.add(r)
                    stack.append(r)
        return frozenset(seen)


def finite_automaton(expr: RegexExpr) -> FiniteAutomaton:
    builder = _Thompson()
    start, end = builder.build(expr)
    delta: Dict[Tuple[int, str], Set[int]] = defaultdict(set)
    for q, edges in builder.edges.items():
        for label, r in edges:
            if label is not None:
                delta[(q, label)] |= builder.closure([r])
    return FiniteAutomaton(
        states=frozenset(range(builder.count)),
        initial=builder.closure([start]),
        final=frozenset([end]),
        delta={k: frozenset(v) for k, v in delta.items()},
    )


class BuchiAutomaton:
    """非決定性Büchiオートマトン

    状態集合の追跡で前進し、live（非空のω言語を持つ状態）以外は即座に刈り込みます。
    """

    def __init__(
        self,
        states: Iterable[State],
        alphabet: Iterable[str],
        transitions: Iterable[Tuple[State, str, State]],
        initial: Iterable[State],
        accepting: Iterable[State],
    ):
        self.states: FrozenSet[State] = frozenset(states)
        self.alphabet: FrozenSet[str] = frozenset(alphabet)
        self.transitions: FrozenSet[Tuple[State, str, State]] = frozenset(transitions)
        self.initial: FrozenSet[State] = frozenset(initial)
        self.accepting: FrozenSet[State] = frozenset(accepting)

        succ: Dict[Tuple[State, str], Set[State]] = defaultdict(set)
        for q, sym, r in self.transitions:
            succ[(q, sym)].add(r)
        self._succ: Dict[Tuple[State, str], FrozenSet[State]] = {k: frozenset(v) for k, v in succ.items()}
        self.live: FrozenSet[State] = self._compute_live()

    # ---------- 解析 ----------
    def _graph(self, only: Optional[str] = None) -> Dict[State, Set[State]]:
        graph: Dict[State, Set[State]] = defaultdict(set)
        for q, sym, r in self.transitions:
            if only is None or sym == only:
                graph[q].add(r)
        return graph

    @staticmethod
    def _reachable(graph: Dict[Hashable, Set[Hashable]], sources: Iterable[Hashable]) -> Set[Hashable]:
        seen = set(sources)
        queue = deque(seen)
        while queue:
            q = queue.popleft()
            for r in graph.get(q, ()):
                if r not in seen:
                    seen.add(r)
                    queue.append(r)
        return seen

    def _recurrent(self, graph: Dict[State, Set[State]]) -> Set[State]:
        """自分自身に戻れる受理状態"""
        return {a for a in self.accepting if a in self._reachable(graph, graph.get(a, ()))}

    def _compute_live(self) -> FrozenSet[State]:
        graph = self._graph()
        reverse: Dict[State, Set[State]] = defaultdict(set)
        for q, targets in graph.items():
            for r in targets:
                reverse[r].add(q)
        return frozenset(self._reachable(reverse, self._recurrent(graph)))

    # ---------- 前進 ----------
    def initial_states(self) -> FrozenSet[State]:
        return self.initial & self.live

    def step_states(self, qs: Iterable[State], sym: str) -> FrozenSet[State]:
        out: Set[State] = set()
        for q in qs:
            out |= self._succ.get((q, sym), frozenset())
        return frozenset(out) & self.live

    def run(self, word: Sequence[str]) -> FrozenSet[State]:
        current = self.initial_states()
        for sym in word:
            if not current:
                break
            current = self.step_states(current, sym)
        return current

    def prefix_viable(self, word: Sequence[str]) -> bool:
        """受理される無限語の接頭辞になりうるか"""
        return bool(self.run(word))

    def accepts_constant_tail(self, qs: Iterable[State], sym: str) -> bool:
        """qs から sym^w が受理されるか"""
        graph = self._graph(only=sym)
        recurrent = self._recurrent(graph)
        return bool(self._reachable(graph, qs) & recurrent)

    def accepts_lasso(self, prefix: Sequence[str], cycle: Sequence[str]) -> bool:
        """超周期語 prefix.(cycle)^w の受理判定"""
        if not cycle:
            raise ValueError("cycle word must be non-empty")
        k = len(cycle)
        graph: Dict[Tuple[State, int], Set[Tuple[State, int]]] = defaultdict(set)
        for q in self.states:
            for i, sym in enumerate(cycle):
                for r in self._succ.get((q, sym), ()):
                    graph[(q, i)].add((r, (i + 1) % k))
        reachable = self._reachable(graph, [(q, 0) for q in self.run(prefix)])
        for node in reachable:
            if node[0] in self.accepting and node in self._reachable(graph, graph.get(node, ())):
                return True
        return False

    def dump(self) -> str:
        """行指向のテキストダンプ（デバッグ用）"""
        lines = [
            "states: " + " ".join(str(q) for q in sorted(self.states)),
            "initial: " + " ".join(str(q) for q in sorted(self.initial)),
            "accepting: " + " ".join(str(q) for q in sorted(self.accepting)),
            "live: " + " ".join(str(q) for q in sorted(self.live)),
        ]
        for q, sym, r in sorted(self.transitions):
            lines.append(f"{q} -{sym}-> {r}")
        return "\n".join(lines)


def to_buchi(expr: OmegaExpr) -> BuchiAutomaton:
    """ラッソ和からBüchiオートマトンを構成する

    各ラッソ U.V^w について、U の受理に達する遷移とサイクルの受理に達する遷移を
    ハブ状態（受理状態）へ複製し、ハブからは V の初期遷移を出します。
    """
    transitions: Set[Tuple[Hashable, str, Hashable]] = set()
    initial: Set[Hashable] = set()
    accepting: Set[Hashable] = set()
    for index, lasso in enumerate(expr.lassos):
        prefix = finite_automaton(lasso.prefix)
        cycle = finite_automaton(lasso.cycle)
        hub = (index, "hub")
        accepting.add(hub)
        initial |= {(index, "u", q) for q in prefix.initial}
        if prefix.accepts_empty():
            initial.add(hub)
        for (q, sym), targets in prefix.delta.items():
            for r in targets:
                transitions.add(((index, "u", q), sym, (index, "u", r)))
                if r in prefix.final:
                    transitions.add(((index, "u", q), sym, hub))
        for (q, sym), targets in cycle.delta.items():
            sources = [(index, "v", q)]
            if q in cycle.initial:
                sources.append(hub)
            for r in targets:
                for source in sources:
                    transitions.add((source, sym, (index, "v", r)))
                    if r in cycle.final:
                        transitions.add((source, sym, hub))

    # 生存状態だけを残し、初期状態からの幅優先で決定的に番号付けする
    raw_states = set(initial) | {q for q, _, _ in transitions} | {r for _, _, r in transitions}
    live = BuchiAutomaton(raw_states, expr.alphabet, transitions, initial, accepting).live
    graph: Dict[Hashable, List[Tuple[str, Hashable]]] = defaultdict(list)
    for q, sym, r in transitions:
        if q in live and r in live:
            graph[q].append((sym, r))
    numbering: Dict[Hashable, int] = {}
    queue = deque(sorted(set(initial) & live, key=repr))
    for q in queue:
        numbering.setdefault(q, len(numbering))
    while queue:
        q = queue.popleft()
        for sym, r in sorted(graph.get(q, ()), key=repr):
            if r not in numbering:
                numbering[r] = len(numbering)
                queue.append(r)

    automaton = BuchiAutomaton(
        states=numbering.values(),
        alphabet=expr.alphabet,
        transitions=[(numbering[q], sym, numbering[r]) for q, targets in graph.items() if q in numbering for sym, r in targets],
        initial=[numbering[q] for q in initial if q in numbering],
        accepting=[numbering[q] for q in accepting if q in numbering],
    )
    logger.info("built Büchi automaton: %d states, %d transitions", len(automaton.states), len(automaton.transitions))
    return automaton
