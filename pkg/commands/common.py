import argparse
import json
import logging
import sys

from pydantic import ValidationError

from core.errors import DataError, WidcError
from core.schemas import RunConfig

logger = logging.getLogger("app")

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_VERIFY = 3


class UsageError(Exception):
    """Argumen CLI tidak valid (exit 1)."""


class WidcArgumentParser(argparse.ArgumentParser):
    # argparse default exit 2 untuk usage error, di sini 2 dipakai untuk data error
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def error_response(error_type: str, message: str, detail=None, code: int = EXIT_DATA) -> int:
    """Helper untuk mencetak error ke stderr dan mengembalikan exit code."""
    payload = {"status": "error", "error": {"type": error_type, "message": message}}
    if detail:
        payload["error"]["detail"] = detail
    print(json.dumps(payload, ensure_ascii=False), file=sys.stderr)
    return code


def run_command(handler, args) -> int:
    try:
        return handler(args)
    except UsageError as e:
        return error_response("usage", str(e), code=EXIT_USAGE)
    except ValidationError as e:
        return error_response("usage", "Parameter tidak valid", detail=e.errors(include_url=False), code=EXIT_USAGE)
    except DataError as e:
        logger.error(f"[CLI] Data error: {e}")
        return error_response("data", str(e), detail={"line": e.line} if e.line else None)
    except FileNotFoundError as e:
        logger.error(f"[CLI] File tidak ditemukan: {e}")
        return error_response("data", str(e))
    except WidcError as e:
        logger.error(f"[CLI] {type(e).__name__}: {e}")
        return error_response(type(e).__name__, str(e))
    except Exception as e:
        logger.exception(f"[CLI] Unexpected error: {e}")
        return error_response("internal", str(e))


# ============================================================
# 🔹 Opsi run bersama
# ============================================================
def add_run_options(parser: argparse.ArgumentParser, folds: bool = False):
    """Flag WIDC; default None → nilai dari CONFIG lewat RunConfig."""
    parser.add_argument("--mode", choices=["o", "p", "none"], default=None, help="o=optimistic, p=pessimistic, none")
    parser.add_argument("--delta", type=float, default=None)
    parser.add_argument("--resample", type=int, default=None, dest="resample_target")
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument("--max-rules", type=int, default=None, dest="max_rules")
    parser.add_argument("--max-literals", type=int, default=None, dest="max_literals")
    if folds:
        parser.add_argument("--folds", type=int, default=None)


def run_config_from_args(args: argparse.Namespace) -> RunConfig:
    fields = ("mode", "delta", "resample_target", "seed", "folds", "max_rules", "max_literals")
    overrides = {name: getattr(args, name) for name in fields if getattr(args, name, None) is not None}
    for attr, name in (("data", "data_path"), ("schema", "schema_path"), ("out", "out_path")):
        if getattr(args, attr, None) is not None:
            overrides[name] = str(getattr(args, attr))
    return RunConfig(**overrides)
