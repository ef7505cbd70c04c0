import argparse

from pydantic import BaseModel, Field

from .common import EXIT_NEGATIVE, EXIT_OK, CommandContext, load_document


class EquivRequest(BaseModel):
    model_a: str
    model_b: str
    depth: int = Field(ge=0)


def add_parser(subparsers, parents) -> None:
    parser = subparsers.add_parser("equiv", parents=parents, help="深さkまでのラン集合の等価性を調べる")
    parser.add_argument("model_a")
    parser.add_argument("model_b")
    parser.add_argument("--depth", type=int, required=True)
    parser.set_defaults(handler=handle)


def handle(args: argparse.Namespace, context: CommandContext) -> int:
    request = EquivRequest(model_a=args.model_a, model_b=args.model_b, depth=args.depth)
    a = load_document(context, request.model_a)
    b = load_document(context, request.model_b)
    result = context.explorer.bounded_equiv((a.system, a.regulation), (b.system, b.regulation), request.depth)
    if result.equal:
        print(f"equal at depth {request.depth}")
        return EXIT_OK
    path = request.model_a if result.witness_side == "a" else request.model_b
    print(f"unequal at depth {request.depth}")
    print(f"witness only in {path}: {result.witness.text()}")
    print(f"labels: {result.witness.labels_text()}")
    return EXIT_NEGATIVE
