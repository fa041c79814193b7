# ============================================================
# Commands Package: satu modul per grup subcommand CLI
# ============================================================
from . import eval_commands, train_commands, verify_commands, xd6_commands

COMMAND_MODULES = [train_commands, eval_commands, xd6_commands, verify_commands]

__all__ = [
    "COMMAND_MODULES",
    "eval_commands",
    "train_commands",
    "verify_commands",
    "xd6_commands",
]
