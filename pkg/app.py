import logging
import os
import sys

from config import CONFIG
from commands import COMMAND_MODULES
from commands.common import EXIT_USAGE, UsageError, WidcArgumentParser, error_response, run_command

# logger modul core yang ikut ditulis ke console + widc.log
WIDC_LOGGERS = ["pipeline", "grower", "pruner", "vote_assigner", "submodular", "model", "model_io",
                "dataset", "discretize", "folds", "xd6", "verify"]
TRACE_HEADER = "monomial_index,literal,z"


# ============================================================
# 🔹 Setup Logging
# ============================================================
def setup_logging() -> logging.Logger:
    if logging.getLogger("app").handlers:
        return logging.getLogger("app")

    log_dir = CONFIG["log"]["dir"]
    os.makedirs(log_dir, exist_ok=True)
    log_file = os.path.join(log_dir, "widc.log")
    trace_file = os.path.join(log_dir, "grow-trace.csv")
    level = getattr(logging, str(CONFIG["log"]["level"]).upper(), logging.INFO)

    logger = logging.getLogger("app")
    logger.setLevel(level)
    logger.propagate = False

    console_handler = logging.StreamHandler(sys.stdout)
    file_handler = logging.FileHandler(log_file, encoding="utf-8")
    formatter = logging.Formatter("%(asctime)s [%(levelname)s] %(name)s: %(message)s")
    console_handler.setFormatter(formatter)
    file_handler.setFormatter(formatter)
    logger.addHandler(console_handler)
    logger.addHandler(file_handler)

    for name in WIDC_LOGGERS:
        module_logger = logging.getLogger(name)
        module_logger.setLevel(level)
        module_logger.propagate = False
        module_logger.addHandler(console_handler)
        module_logger.addHandler(file_handler)

    # trace grower: satu baris CSV per langkah yang diterima
    new_trace = not os.path.exists(trace_file) or os.path.getsize(trace_file) == 0
    trace_logger = logging.getLogger("widc.trace")
    trace_logger.setLevel(logging.INFO)
    trace_logger.propagate = False
    trace_handler = logging.FileHandler(trace_file, encoding="utf-8")
    trace_handler.setFormatter(logging.Formatter("%(message)s"))
    trace_logger.addHandler(trace_handler)
    if new_trace:
        trace_logger.info(TRACE_HEADER)

    logger.info(f"✅ Logging initialized (PID={os.getpid()}), app log to widc.log, grow trace to grow-trace.csv")
    return logger


# ============================================================
# 🔹 Register Commands
# ============================================================
def build_parser() -> WidcArgumentParser:
    parser = WidcArgumentParser(prog="widc", description="WIDC decision committees (Grow → Vote → Prune)")
    subparsers = parser.add_subparsers(dest="command", required=True)
    for module in COMMAND_MODULES:
        module.register(subparsers)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        return error_response("usage", str(e), code=EXIT_USAGE)
    setup_logging()
    return run_command(args.handler, args)


# ============================================================
# 🚀 Run CLI
# ============================================================
if __name__ == "__main__":
    sys.exit(main())
