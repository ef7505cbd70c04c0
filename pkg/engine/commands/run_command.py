import argparse

from pydantic import BaseModel

from .common import EXIT_NEGATIVE, EXIT_OK, CommandContext, load_document


class RunRequest(BaseModel):
    model: str
    run: str


def add_parser(subparsers, parents) -> None:
    parser = subparsers.add_parser("run", parents=parents, help="ランファイルを検証する")
    parser.add_argument("model")
    parser.add_argument("run")
    parser.set_defaults(handler=handle)


def handle(args: argparse.Namespace, context: CommandContext) -> int:
    request = RunRequest(model=args.model, run=args.run)
    document = load_document(context, request.model)
    run = context.model_io.load_run(request.run, document.system)
    verdict = context.explorer.validate_run(document.system, document.regulation, run.labels, run.omega_eps_tail)
    print(verdict.text())
    return EXIT_OK if verdict.valid else EXIT_NEGATIVE
