import logging
from typing import Iterable, Optional

import pandas as pd

from core.multiset import Multiset
from core.rewriting import System
from regulation import BaseRegulation
from services.explorer_service import ExplorerService
from services.register_machine_service import OUTPUT_COUNTER, RegisterMachineService, RegisterProgram

logger = logging.getLogger(__name__)

STRONG = "strong"
WEAK = "weak"
UNDETERMINED = "undetermined"


def _values_text(values: Iterable[int]) -> str:
    return ",".join(str(v) for v in sorted(values)) or "-"


class ComputationService:
    """強い計算・弱い計算の有界判定を入力ごとの表にまとめるサービス"""

    def __init__(
        self,
        explorer: Optional[ExplorerService] = None,
        machines: Optional[RegisterMachineService] = None,
    ) -> None:
        self.explorer = explorer or ExplorerService()
        self.machines = machines or RegisterMachineService()

    def computation_profile(
        self,
        system: System,
        regulation: BaseRegulation,
        input_element: str,
        output_element: str,
        inputs: Iterable[int],
        depth: int,
    ) -> pd.DataFrame:
        """入力 n ごとに M₀ へ input_element を n 個加えて終端出力を集計する

        verdict は strong（全ランが同じ値で停止）、weak（全ランが停止し値が複数）、
        undetermined（深さ上限で未停止の構成が残る）のいずれかです。
        """
        for element in (input_element, output_element):
            if element not in system.elements:
                raise ValueError(f"unknown element: {element}")
        rows = []
        for n in inputs:
            seeded = system.with_init(system.init + Multiset({input_element: n}))
            report = self.explorer.terminal_outputs(seeded, regulation, output_element, depth)
            if not report.all_terminated:
                verdict = UNDETERMINED
            elif len(report.values) == 1:
                verdict = STRONG
            else:
                verdict = WEAK
            rows.append(
                {
                    "n": n,
                    "values": _values_text(report.values),
                    "max": report.max,
                    "all_terminated": report.all_terminated,
                    "max_branching": report.max_branching,
                    "verdict": verdict,
                }
            )
        return pd.DataFrame(rows, columns=["n", "values", "max", "all_terminated", "max_branching", "verdict"])

    def verify_program(self, program: RegisterProgram, inputs: Iterable[int], depth: Optional[int] = None) -> pd.DataFrame:
        """参照解釈と、条件規制・並行自由規制への翻訳結果を入力ごとに突き合わせる"""
        depth = depth if depth is not None else self.machines.settings.budget
        compiled = {target: self.machines.compile(program, target) for target in ("cr", "cfr")}
        rows = []
        for n in inputs:
            expected = self.machines.interpret_rm(program, n)
            row = {"n": n, "interpreter": expected}
            agree = True
            for target, (system, regulation) in compiled.items():
                report = self.explorer.terminal_outputs(
                    self.machines.with_input(system, n), regulation, OUTPUT_COUNTER, depth
                )
                deterministic = report.max_branching <= 1
                row[target] = _values_text(report.values)
                row[f"{target}_deterministic"] = deterministic
                agree = agree and report.all_terminated and deterministic and report.values == {expected}
            row["agree"] = agree
            rows.append(row)
        table = pd.DataFrame(
            rows, columns=["n", "interpreter", "cr", "cr_deterministic", "cfr", "cfr_deterministic", "agree"]
        )
        logger.info("verified program on %d inputs: %d agree", len(table), int(table["agree"].sum()))
        return table
