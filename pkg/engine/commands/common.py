import argparse
import logging
import re
import sys
from dataclasses import dataclass, field
from typing import Callable, List

from pydantic import ValidationError

from core.errors import RewritingError
from regulation import Diagnostic
from services.explorer_service import ExplorationSettings, ExplorerService
from services.model_io_service import ModelDocument, ModelIOService
from services.register_machine_service import MachineSettings, RegisterMachineService
from services.transform_service import TransformService

logger = logging.getLogger(__name__)

# 終了コード: 0 成功・妥当・等価、1 意味的な否定、2 使い方・構文・資源のエラー
EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_ERROR = 2

_RANGE_RE = re.compile(r"^(\d+)\.\.(\d+)$")


@dataclass
class CommandContext:
    """サブコマンドが共有する設定とサービス"""

    exploration: ExplorationSettings = field(default_factory=ExplorationSettings)
    machine: MachineSettings = field(default_factory=MachineSettings)

    def __post_init__(self) -> None:
        self.explorer = ExplorerService(self.exploration)
        self.model_io = ModelIOService()
        self.machines = RegisterMachineService(self.machine)
        self.transforms = TransformService()


Handler = Callable[[argparse.Namespace, CommandContext], int]


def parse_inputs(text: str) -> List[int]:
    """`0..5` または `0,2,4` 形式の入力列"""
    text = text.strip()
    match = _RANGE_RE.match(text)
    if match:
        low, high = int(match.group(1)), int(match.group(2))
        if low > high:
            raise ValueError(f"empty input range {text}")
        return list(range(low, high + 1))
    try:
        values = [int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise ValueError(f"bad input list '{text}' (use 0..5 or 0,1,2)") from None
    if not values or any(v < 0 for v in values):
        raise ValueError(f"bad input list '{text}'")
    return values


class InvalidModel(RewritingError):
    def __init__(self, path: str, diagnostics: List[Diagnostic]):
        self.path = path
        self.diagnostics = diagnostics
        super().__init__(f"{path}: " + "; ".join(d.text() for d in diagnostics))


def load_document(context: CommandContext, path: str) -> ModelDocument:
    document = context.model_io.load_model(path)
    diagnostics = document.regulation.validate(document.system)
    if diagnostics:
        raise InvalidModel(path, diagnostics)
    return document


def _validation_message(error: ValidationError) -> str:
    parts = []
    for item in error.errors():
        where = ".".join(str(p) for p in item.get("loc", ()))
        parts.append(f"{where}: {item.get('msg')}" if where else str(item.get("msg")))
    return "; ".join(parts)


def run_guarded(handler: Handler, args: argparse.Namespace, context: CommandContext) -> int:
    """ハンドラを実行し、想定内の例外を終了コード2に変換する"""
    try:
        return handler(args, context)
    except ValidationError as e:
        print(f"error: invalid arguments: {_validation_message(e)}", file=sys.stderr)
    except RewritingError as e:
        print(f"error: {e}", file=sys.stderr)
    except OSError as e:
        print(f"error: {e.filename or ''}: {e.strerror or e}", file=sys.stderr)
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
    logger.debug("command failed", exc_info=True)
    return EXIT_ERROR
