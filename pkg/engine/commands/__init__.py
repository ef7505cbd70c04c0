from . import (
    check_command,
    compute_command,
    enumerate_command,
    equiv_command,
    rm_command,
    run_command,
    simulate_command,
    translate_command,
)

# サブコマンドの登録順（--help の表示順）
COMMANDS = [
    check_command,
    run_command,
    enumerate_command,
    translate_command,
    equiv_command,
    rm_command,
    simulate_command,
    compute_command,
]

__all__ = ["COMMANDS"]
