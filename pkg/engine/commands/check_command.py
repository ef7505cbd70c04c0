import argparse
import sys
from typing import Optional

from pydantic import BaseModel, Field

from regulation import RegularRegulation

from .common import EXIT_ERROR, EXIT_OK, CommandContext


class CheckRequest(BaseModel):
    model: str
    scan_depth: Optional[int] = Field(default=None, ge=0)
    dump_automaton: bool = False


def add_parser(subparsers, parents) -> None:
    parser = subparsers.add_parser("check", parents=parents, help="モデルを解析し規制を検証する")
    parser.add_argument("model")
    parser.add_argument("--scan-depth", type=int, default=None, help="正則規制の余剰語を深さkまで走査")
    parser.add_argument("--dump-automaton", action="store_true", help="Büchiオートマトンを出力")
    parser.set_defaults(handler=handle)


def handle(args: argparse.Namespace, context: CommandContext) -> int:
    request = CheckRequest(model=args.model, scan_depth=args.scan_depth, dump_automaton=args.dump_automaton)
    document = context.model_io.load_model(request.model)
    system, regulation = document.system, document.regulation

    diagnostics = regulation.validate(system)
    for diagnostic in diagnostics:
        print(diagnostic.text())
    if diagnostics:
        return EXIT_ERROR
    print(f"ok: {len(system.rules)} rules, regulation {regulation.keyword}")

    if request.dump_automaton:
        if isinstance(regulation, RegularRegulation):
            print(regulation.automaton.dump())
        else:
            print(f"no automaton for regulation {regulation.keyword}", file=sys.stderr)
    if request.scan_depth is not None:
        for word in context.explorer.scan_extra_words(system, regulation, request.scan_depth):
            print("warning: unrealized word: " + " ".join(word))
    return EXIT_OK
