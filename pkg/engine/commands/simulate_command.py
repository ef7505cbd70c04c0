import argparse
from typing import Optional

from pydantic import BaseModel, Field

from .common import EXIT_OK, CommandContext, load_document


class SimulateRequest(BaseModel):
    model: str
    steps: int = Field(default=20, ge=0)
    seed: Optional[int] = None


def add_parser(subparsers, parents) -> None:
    parser = subparsers.add_parser("simulate", parents=parents, help="ランダムウォークでランを1本生成する")
    parser.add_argument("model")
    parser.add_argument("--steps", type=int, default=20)
    parser.add_argument("--seed", type=int, default=None)
    parser.set_defaults(handler=handle)


def handle(args: argparse.Namespace, context: CommandContext) -> int:
    request = SimulateRequest(model=args.model, steps=args.steps, seed=args.seed)
    document = load_document(context, request.model)
    prefix = context.explorer.simulate(document.system, document.regulation, request.steps, request.seed)
    print(prefix.text())
    return EXIT_OK
