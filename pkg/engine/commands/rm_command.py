import argparse
from typing import List, Literal, Optional

from pydantic import BaseModel, Field, field_validator

from core.errors import BudgetExceeded
from services.computation_service import ComputationService
from services.model_io_service import ModelDocument
from services.register_machine_service import OUTPUT_COUNTER

from .common import EXIT_NEGATIVE, EXIT_OK, CommandContext, parse_inputs

Target = Literal["cr", "cfr"]


class RmRunRequest(BaseModel):
    program: str
    input: int = Field(default=0, ge=0)


class RmCompileRequest(BaseModel):
    program: str
    target: Target = "cr"
    input: Optional[int] = Field(default=None, ge=0)


class RmExecRequest(BaseModel):
    program: str
    target: Target = "cr"
    input: int = Field(default=0, ge=0)


class RmVerifyRequest(BaseModel):
    program: str
    inputs: List[int]

    @field_validator("inputs", mode="before")
    @classmethod
    def split_inputs(cls, value):
        return parse_inputs(value) if isinstance(value, str) else value


def add_parser(subparsers, parents) -> None:
    parser = subparsers.add_parser("rm", help="レジスタ機械プログラムの実行・翻訳")
    actions = parser.add_subparsers(dest="rm_action", required=True)

    run = actions.add_parser("run", parents=parents, help="参照インタプリタで実行し c2 を出力")
    run.add_argument("program")
    run.add_argument("--input", type=int, default=0)
    run.set_defaults(handler=handle_run)

    compile_ = actions.add_parser("compile", parents=parents, help="規制付き多重集合書換え系へ翻訳")
    compile_.add_argument("program")
    compile_.add_argument("--target", choices=["cr", "cfr"], default="cr")
    compile_.add_argument("--input", type=int, default=None, help="M₀ に c1 を n 個加えて出力")
    compile_.set_defaults(handler=handle_compile)

    exec_ = actions.add_parser("exec", parents=parents, help="翻訳した系を探索し終端出力を表示")
    exec_.add_argument("program")
    exec_.add_argument("--target", choices=["cr", "cfr"], default="cr")
    exec_.add_argument("--input", type=int, default=0)
    exec_.set_defaults(handler=handle_exec)

    verify = actions.add_parser("verify", parents=parents, help="インタプリタと両翻訳の結果を突き合わせる")
    verify.add_argument("program")
    verify.add_argument("--inputs", default="0..5")
    verify.set_defaults(handler=handle_verify)


def handle_run(args: argparse.Namespace, context: CommandContext) -> int:
    request = RmRunRequest(program=args.program, input=args.input)
    program = context.machines.parse_rm(_read(request.program))
    print(context.machines.interpret_rm(program, request.input))
    return EXIT_OK


def handle_compile(args: argparse.Namespace, context: CommandContext) -> int:
    request = RmCompileRequest(program=args.program, target=args.target, input=args.input)
    program = context.machines.parse_rm(_read(request.program))
    system, regulation = context.machines.compile(program, request.target)
    if request.input is not None:
        system = context.machines.with_input(system, request.input)
    print(context.model_io.serialize_model(ModelDocument(system, regulation)), end="")
    return EXIT_OK


def handle_exec(args: argparse.Namespace, context: CommandContext) -> int:
    request = RmExecRequest(program=args.program, target=args.target, input=args.input)
    machines = context.machines
    program = machines.parse_rm(_read(request.program))
    system, regulation = machines.compile(program, request.target)
    system = machines.with_input(system, request.input)
    budget = machines.settings.budget
    report = context.explorer.terminal_outputs(system, regulation, OUTPUT_COUNTER, budget)
    if not report.all_terminated:
        raise BudgetExceeded(budget)
    for value in sorted(report.values):
        print(f"{OUTPUT_COUNTER}={value}")
    deterministic = report.max_branching <= 1
    print("deterministic" if deterministic else f"nondeterministic (branching {report.max_branching})")
    return EXIT_OK if deterministic else EXIT_NEGATIVE


def handle_verify(args: argparse.Namespace, context: CommandContext) -> int:
    request = RmVerifyRequest(program=args.program, inputs=args.inputs)
    program = context.machines.parse_rm(_read(request.program))
    table = ComputationService(context.explorer, context.machines).verify_program(program, request.inputs)
    print(table.to_string(index=False))
    return EXIT_OK if bool(table["agree"].all()) else EXIT_NEGATIVE


def _read(path: str) -> str:
    with open(path, "r", encoding="utf-8") as f:
        return f.read()
