import logging

from commands.common import EXIT_OK
from config import CONFIG
from core.dataset import dump_sample_csv
from core.xd6 import gen_xd6, xd6_bayes_error

logger = logging.getLogger("app")


def gen_xd6_command(args) -> int:
    sample = gen_xd6(args.examples, args.class_noise, args.attr_noise, args.seed)
    dump_sample_csv(sample, args.out, include_weight=False)
    bayes = 100.0 * xd6_bayes_error(args.class_noise, args.attr_noise)
    logger.info(f"[XD6] ✅ {sample.m} example → {args.out} | Bayes error {bayes:.2f}%")
    return EXIT_OK


def register(subparsers):
    parser = subparsers.add_parser("gen-xd6", help="Generate dataset XD6 (CSV)")
    parser.add_argument("--examples", type=int, default=CONFIG["xd6"]["examples"])
    parser.add_argument("--class-noise", type=float, default=0.0, dest="class_noise")
    parser.add_argument("--attr-noise", type=float, default=0.0, dest="attr_noise")
    parser.add_argument("--seed", type=int, default=CONFIG["widc"]["seed"])
    parser.add_argument("--out", default="xd6.csv")
    parser.set_defaults(handler=gen_xd6_command)
