import argparse
from typing import List

from pydantic import BaseModel, Field, field_validator

from services.computation_service import ComputationService

from .common import EXIT_OK, CommandContext, load_document, parse_inputs


class ComputeRequest(BaseModel):
    model: str
    input_element: str
    output_element: str
    inputs: List[int]
    depth: int = Field(ge=0)

    @field_validator("inputs", mode="before")
    @classmethod
    def split_inputs(cls, value):
        return parse_inputs(value) if isinstance(value, str) else value


def add_parser(subparsers, parents) -> None:
    parser = subparsers.add_parser("compute", parents=parents, help="入力ごとの強い/弱い計算を判定する")
    parser.add_argument("model")
    parser.add_argument("--input", dest="input_element", required=True, help="入力要素（M₀ に n 個加える）")
    parser.add_argument("--output", dest="output_element", required=True, help="出力要素")
    parser.add_argument("--inputs", default="0..5", help="例: 0..5 または 0,2,4")
    parser.add_argument("--depth", type=int, default=50)
    parser.set_defaults(handler=handle)


def handle(args: argparse.Namespace, context: CommandContext) -> int:
    request = ComputeRequest(
        model=args.model,
        input_element=args.input_element,
        output_element=args.output_element,
        inputs=args.inputs,
        depth=args.depth,
    )
    document = load_document(context, request.model)
    service = ComputationService(context.explorer, context.machines)
    table = service.computation_profile(
        document.system,
        document.regulation,
        request.input_element,
        request.output_element,
        request.inputs,
        request.depth,
    )
    print(table.to_string(index=False))
    return EXIT_OK
