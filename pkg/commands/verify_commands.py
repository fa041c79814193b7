import logging

from commands.common import EXIT_OK, EXIT_VERIFY
from core.utils import write_json
from core.verify import format_report, verify

logger = logging.getLogger("app")


def verify_command(args) -> int:
    """Jalankan semua suite oracle; exit 3 bila ada suite gagal."""
    settings = {"seed": args.seed} if args.seed is not None else None
    report = verify(settings)
    print(format_report(report))
    if args.out:
        write_json(args.out, report)
        logger.info(f"[VERIFY] Report → {args.out}")
    return EXIT_OK if report.passed else EXIT_VERIFY


def register(subparsers):
    parser = subparsers.add_parser("verify", help="Suite verifikasi oracle vs brute force")
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument("--out", default=None, help="report JSON")
    parser.set_defaults(handler=verify_command)
