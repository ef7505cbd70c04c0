import argparse
import logging
import sys
from typing import List, Optional

from pydantic import ValidationError

from commands import COMMANDS
from commands.common import EXIT_ERROR, CommandContext, run_guarded
from services.explorer_service import ExplorationSettings
from services.register_machine_service import MachineSettings

logger = logging.getLogger("regulated_mrs")


def build_parser() -> argparse.ArgumentParser:
    # 全サブコマンド共通のオプション
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-configs", type=int, default=1_000_000, help="探索する構成数の上限")
    common.add_argument("--budget", type=int, default=10_000, help="レジスタ機械のステップ予算")
    common.add_argument(
        "--programmed-eps",
        choices=["fallback", "strict"],
        default="fallback",
        help="プログラム規制での ε の扱い",
    )
    common.add_argument(
        "--log-level",
        default="WARNING",
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        help="標準エラーに出すログの水準",
    )

    parser = argparse.ArgumentParser(
        prog="regulated-mrs",
        description="規制付き多重集合書換え系の実行・列挙・検証・変換ツール",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)
    for command in COMMANDS:
        command.add_parser(subparsers, [common])
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """CLIエントリポイント。終了コードを返す"""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse の使い方エラーは 2、--help は 0
        return int(e.code or 0)

    logging.basicConfig(
        level=getattr(logging, args.log_level),
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
        force=True,
    )
    try:
        context = CommandContext(
            exploration=ExplorationSettings(max_configs=args.max_configs, programmed_eps=args.programmed_eps),
            machine=MachineSettings(budget=args.budget),
        )
    except ValidationError as e:
        print(f"error: invalid settings: {e.errors()[0].get('msg')}", file=sys.stderr)
        return EXIT_ERROR

    logger.debug("running %s", args.command)
    return run_guarded(args.handler, args, context)


if __name__ == "__main__":
    sys.exit(main())
