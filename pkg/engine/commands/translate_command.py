import argparse
from typing import Literal

from pydantic import BaseModel

from services.model_io_service import ModelDocument

from .common import EXIT_OK, CommandContext, load_document


class TranslateRequest(BaseModel):
    model: str
    direction: Literal["or2pr", "cfr2cr"]


def add_parser(subparsers, parents) -> None:
    parser = subparsers.add_parser("translate", parents=parents, help="規制クラスを変換する")
    parser.add_argument("model")
    direction = parser.add_mutually_exclusive_group(required=True)
    direction.add_argument("--or2pr", dest="direction", action="store_const", const="or2pr")
    direction.add_argument("--cfr2cr", dest="direction", action="store_const", const="cfr2cr")
    parser.set_defaults(handler=handle)


def handle(args: argparse.Namespace, context: CommandContext) -> int:
    request = TranslateRequest(model=args.model, direction=args.direction)
    document = load_document(context, request.model)
    if request.direction == "or2pr":
        translation = context.transforms.or_to_pr(document.system, document.regulation)
    else:
        translation = context.transforms.cfr_to_cr(document.system, document.regulation)
    print(context.model_io.serialize_model(ModelDocument(translation.system, translation.regulation)), end="")
    return EXIT_OK
