"""2カウンタ・レジスタ機械（.rm）の解析・解釈と、条件規制／並行自由規制への翻訳

.rm ファイルの例（恒等関数）:

    l1: if c1 = 0 goto l3 else dec goto l2
    l2: inc c2 goto l1
    l3: halt
"""

import logging
import re
from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Optional, Tuple, Union

from pydantic import BaseModel, Field

from core.errors import BadTarget, BudgetExceeded, MissingHalt, ProgramSyntaxError
from core.multiset import Multiset
from core.rewriting import Rule, System
from regulation import ConcurrentFreeRegulation, ConditionalRegulation

logger = logging.getLogger(__name__)

INPUT_COUNTER = "c1"
OUTPUT_COUNTER = "c2"

_LABEL = r"l(?P<label>\d+)\s*:\s*"
_INC_RE = re.compile(_LABEL + r"inc\s+c(?P<counter>[12])\s+goto\s+l(?P<goto>\d+)$")
_DEC_RE = re.compile(
    _LABEL + r"if\s+c(?P<counter>[12])\s*=\s*0\s+goto\s+l(?P<zero>\d+)\s+else\s+dec\s+goto\s+l(?P<dec>\d+)$"
)
_HALT_RE = re.compile(_LABEL + r"halt$")
_ANY_LABEL_RE = re.compile(r"l(\d+)\s*:")


class MachineSettings(BaseModel):
    budget: int = Field(default=10_000, ge=1)


@dataclass(frozen=True)
class Inc:
    counter: int
    goto: int


@dataclass(frozen=True)
class DecOrJz:
    counter: int
    zero_goto: int
    dec_goto: int


@dataclass(frozen=True)
class Halt:
    pass


Instruction = Union[Inc, DecOrJz, Halt]


@dataclass(frozen=True)
class RegisterProgram:
    """l1 … l(m+1) の命令列。最後の命令だけが halt"""

    instructions: Tuple[Instruction, ...]

    @property
    def size(self) -> int:
        return len(self.instructions)


def counter_name(j: int) -> str:
    return f"c{j}"


def label_name(i: int) -> str:
    return f"l{i}"


class RegisterMachineService:
    """レジスタ機械プログラムの解析・参照解釈・規制付き多重集合書換え系への翻訳"""

    def __init__(self, settings: Optional[MachineSettings] = None) -> None:
        self.settings = settings or MachineSettings()

    # ---------- 解析 ----------
    def parse_rm(self, text: str) -> RegisterProgram:
        """.rm テキストを解析する

        Raises:
            ProgramSyntaxError: 行の形式が不正、またはラベルが1からの連番でない
            BadTarget: goto 先が l1 … l(m+1) の範囲外
            MissingHalt: halt が最後の命令でない、または欠落
        """
        parsed: List[Tuple[int, Instruction]] = []
        for number, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            instruction = self._parse_line(line, number, expected=len(parsed) + 1)
            parsed.append((number, instruction))

        if not parsed:
            raise MissingHalt("program is empty; the last instruction must be halt")
        halts = [i for i, (_, ins) in enumerate(parsed) if isinstance(ins, Halt)]
        if halts != [len(parsed) - 1]:
            raise MissingHalt(f"halt must appear exactly once, as l{len(parsed)}")

        size = len(parsed)
        for number, instruction in parsed:
            targets = []
            if isinstance(instruction, Inc):
                targets = [instruction.goto]
            elif isinstance(instruction, DecOrJz):
                targets = [instruction.zero_goto, instruction.dec_goto]
            for target in targets:
                if not 1 <= target <= size:
                    raise BadTarget(target, number)
        return RegisterProgram(tuple(ins for _, ins in parsed))

    @staticmethod
    def _parse_line(line: str, number: int, expected: int) -> Instruction:
        head = _ANY_LABEL_RE.match(line)
        if head is None:
            raise ProgramSyntaxError("expected 'l<k>:' label", number)
        if int(head.group(1)) != expected:
            raise ProgramSyntaxError(f"expected label l{expected}, found l{head.group(1)}", number)
        match = _INC_RE.match(line)
        if match:
            return Inc(int(match.group("counter")), int(match.group("goto")))
        match = _DEC_RE.match(line)
        if match:
            return DecOrJz(int(match.group("counter")), int(match.group("zero")), int(match.group("dec")))
        if _HALT_RE.match(line):
            return Halt()
        raise ProgramSyntaxError(f"cannot parse instruction '{line}'", number)

    # ---------- 参照解釈 ----------
    def interpret_rm(self, program: RegisterProgram, n: int, budget: Optional[int] = None) -> int:
        """c1 := n, c2 := 0 から実行し、halt 時の c2 を返す

        Raises:
            BudgetExceeded: budget ステップ以内に halt しない
        """
        budget = budget if budget is not None else self.settings.budget
        counters = {1: n, 2: 0}
        pc = 1
        for _ in range(budget + 1):
            instruction = program.instructions[pc - 1]
            if isinstance(instruction, Halt):
                return counters[2]
            if isinstance(instruction, Inc):
                counters[instruction.counter] += 1
                pc = instruction.goto
            elif counters[instruction.counter] == 0:
                pc = instruction.zero_goto
            else:
                counters[instruction.counter] -= 1
                pc = instruction.dec_goto
        raise BudgetExceeded(budget)

    # ---------- 翻訳 ----------
    def _compile_rules(self, program: RegisterProgram) -> Tuple[System, Dict[str, FrozenSet[Multiset]], List[Tuple[str, str]]]:
        rules: List[Rule] = []
        forbid: Dict[str, FrozenSet[Multiset]] = {}
        pairs: List[Tuple[str, str]] = []
        for i, instruction in enumerate(program.instructions, start=1):
            here = Multiset.of([label_name(i)])
            if isinstance(instruction, Inc):
                rhs = Multiset.of([label_name(instruction.goto), counter_name(instruction.counter)])
                rules.append(Rule(f"mu{i}", here, rhs))
            elif isinstance(instruction, DecOrJz):
                counter = Multiset.of([counter_name(instruction.counter)])
                rules.append(Rule(f"mu{i}", here, Multiset.of([label_name(instruction.zero_goto)])))
                rules.append(Rule(f"mub{i}", here + counter, Multiset.of([label_name(instruction.dec_goto)])))
                forbid[f"mu{i}"] = frozenset([counter])
                pairs.append((f"mu{i}", f"mub{i}"))
            # halt は規則を生まない（ε のみが適用可能になる）

        elements = [counter_name(1), counter_name(2)] + [label_name(i) for i in range(1, program.size + 1)]
        system = System.build(elements, rules, Multiset.of([label_name(1)]))
        return system, forbid, pairs

    def compile_to_cr(self, program: RegisterProgram) -> Tuple[System, ConditionalRegulation]:
        system, forbid, _ = self._compile_rules(program)
        logger.info("compiled %d instructions into %d conditional rules", program.size, len(system.rules))
        return system, ConditionalRegulation(forbid)

    def compile_to_cfr(self, program: RegisterProgram) -> Tuple[System, ConcurrentFreeRegulation]:
        system, _, pairs = self._compile_rules(program)
        logger.info("compiled %d instructions into %d concurrent-free rules", program.size, len(system.rules))
        return system, ConcurrentFreeRegulation(frozenset(pairs))

    def compile(self, program: RegisterProgram, target: str) -> Tuple[System, Union[ConditionalRegulation, ConcurrentFreeRegulation]]:
        if target == "cr":
            return self.compile_to_cr(program)
        if target == "cfr":
            return self.compile_to_cfr(program)
        raise ValueError(f"unknown target: {target}")

    @staticmethod
    def with_input(system: System, n: int) -> System:
        """M₀ に c1 を n 個加える"""
        if n < 0:
            raise ValueError("input must be non-negative")
        return system.with_init(system.init + Multiset({INPUT_COUNTER: n}))
