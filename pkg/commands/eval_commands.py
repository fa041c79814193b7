import logging
from pathlib import Path

from commands.common import EXIT_OK, UsageError, add_run_options, run_config_from_args
from config import CONFIG
from core.dataset import load_csv
from core.pipeline import cross_validate, fold_frame, noise_sweep, sweep_frame, write_sweep_csv
from core.utils import write_json

logger = logging.getLogger("app")


def cv_command(args) -> int:
    """Stratified k-fold CV; tulis <out>.csv (per fold) dan <out>.json (ringkasan)."""
    config = run_config_from_args(args)
    sample, _ = load_csv(args.data, args.schema)
    report = cross_validate(sample, config)

    print(fold_frame(report).to_string(index=False))
    print(f"mean: err={report.mean_error_pct:.2f}% r_DC={report.mean_r_dc:.2f} l_DC={report.mean_l_dc:.2f}")

    if args.out:
        prefix = Path(args.out)
        fold_path = prefix.with_suffix(".csv")
        fold_path.parent.mkdir(parents=True, exist_ok=True)
        fold_frame(report).to_csv(fold_path, index=False)
        write_json(prefix.with_suffix(".json"), report)
        logger.info(f"[CV] ✅ Report → {fold_path}, {prefix.with_suffix('.json')}")
    return EXIT_OK


def noise_sweep_command(args) -> int:
    """Sweep class/attribute noise XD6, tulis CSV."""
    config = run_config_from_args(args)
    kinds = tuple(args.kinds.split(","))
    if any(kind not in ("class", "attribute") for kind in kinds):
        raise UsageError(f"--kinds hanya boleh class,attribute: {args.kinds}")

    rows = noise_sweep(config, kinds=kinds, examples=args.examples, step=args.step, limit=args.limit)
    write_sweep_csv(rows, args.out)
    print(sweep_frame(rows).to_string(index=False))
    logger.info(f"[SWEEP] ✅ {len(rows)} baris → {args.out}")
    return EXIT_OK


def register(subparsers):
    parser = subparsers.add_parser("cv", help="Cross validation stratified k-fold")
    parser.add_argument("data", help="CSV dataset")
    parser.add_argument("--schema", default=None)
    parser.add_argument("--out", default=None, help="prefix report (.csv + .json)")
    add_run_options(parser, folds=True)
    parser.set_defaults(handler=cv_command)

    parser = subparsers.add_parser("noise-sweep", help="Sweep noise XD6 (class & attribute)")
    parser.add_argument("--out", default="sweep.csv")
    parser.add_argument("--kinds", default="class,attribute")
    parser.add_argument("--examples", type=int, default=CONFIG["xd6"]["examples"])
    parser.add_argument("--step", type=float, default=CONFIG["xd6"]["noise_step"])
    parser.add_argument("--limit", type=float, default=CONFIG["xd6"]["noise_max"])
    add_run_options(parser, folds=True)
    parser.set_defaults(handler=noise_sweep_command)
