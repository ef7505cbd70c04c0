import argparse
from typing import Literal

from pydantic import BaseModel, Field

from .common import EXIT_OK, CommandContext, load_document


class EnumerateRequest(BaseModel):
    model: str
    depth: int = Field(ge=0)
    view: Literal["runs", "states", "labels"] = "runs"


def add_parser(subparsers, parents) -> None:
    parser = subparsers.add_parser("enumerate", parents=parents, help="長さkのラン接頭辞を列挙する")
    parser.add_argument("model")
    parser.add_argument("--depth", type=int, required=True)
    view = parser.add_mutually_exclusive_group()
    view.add_argument("--states", dest="view", action="store_const", const="states", help="状態列のみ（重複除去）")
    view.add_argument("--labels", dest="view", action="store_const", const="labels", help="ラベル列のみ")
    parser.set_defaults(handler=handle, view="runs")


def handle(args: argparse.Namespace, context: CommandContext) -> int:
    request = EnumerateRequest(model=args.model, depth=args.depth, view=args.view)
    document = load_document(context, request.model)
    explorer = context.explorer
    if request.view == "states":
        for states in explorer.state_sequences(document.system, document.regulation, request.depth):
            print(" ".join(m.literal() for m in states))
        return EXIT_OK
    for prefix in explorer.enumerate(document.system, document.regulation, request.depth):
        print(prefix.labels_text() if request.view == "labels" else prefix.text())
    return EXIT_OK
