import logging
import sys
from pathlib import Path

import numpy as np
import pandas as pd

from commands.common import EXIT_OK, add_run_options, run_config_from_args
from core.dataset import BinarizationMap, drop_missing, dump_sample_csv, load_csv, read_frame, parse_boolean
from core.errors import DataError
from core.model import predict_batch, size_metrics
from core.model_io import load_committee, save_committee
from core.pipeline import train

logger = logging.getLogger("app")


def train_command(args) -> int:
    """Train WIDC dari CSV, simpan model JSON."""
    config = run_config_from_args(args)
    sample, binarization = load_csv(args.data, args.schema)
    if args.dump_sample:
        dump_sample_csv(sample, args.dump_sample)

    result = train(sample, config)
    save_committee(result.committee, args.out, binarization.to_dict())
    if args.prune_trace and result.prune_trace is not None:
        result.prune_trace.to_csv(args.prune_trace)
        logger.info(f"[TRAIN] PruneTrace → {args.prune_trace}")

    r_dc, l_dc = size_metrics(result.committee)
    print(result.committee.describe())
    print(f"r_DC={r_dc} l_DC={l_dc}")
    return EXIT_OK


def _observations(frame: pd.DataFrame, binarization: dict | None, variable_names) -> tuple[np.ndarray, pd.DataFrame]:
    if binarization is not None:
        mapping = BinarizationMap.from_dict(binarization)
        frame = drop_missing(frame, [column.column for column in mapping.columns])
        return mapping.apply(frame), frame
    # tanpa binarization: kolom CSV = nama variabel model (0/1)
    missing = [name for name in variable_names if name not in frame.columns]
    if missing:
        raise DataError(f"Kolom variabel tidak ada di CSV: {missing}")
    frame = drop_missing(frame, list(variable_names))
    return np.column_stack([parse_boolean(frame[name], name) for name in variable_names]), frame


def predict_command(args) -> int:
    """Klasifikasi baris CSV dengan model JSON."""
    committee, binarization = load_committee(args.model)
    frame = read_frame(args.data)
    variable_names = committee.variable_names or tuple(f"x{i}" for i in range(committee.n))
    X, frame = _observations(frame, binarization, variable_names)
    if X.shape[1] != committee.n:
        raise DataError(f"CSV menghasilkan {X.shape[1]} variabel, model butuh n={committee.n}")

    predictions = predict_batch(committee, X, tie_seed=args.seed or 0)
    output = pd.DataFrame({
        "line": frame.index,
        "prediction": [committee.class_names[p] for p in predictions],
    })

    class_column = (binarization or {}).get("class_column")
    if class_column and class_column in frame.columns:
        correct = frame[class_column].to_numpy() == output["prediction"].to_numpy()
        logger.info(f"[PREDICT] error={100.0 * (1.0 - correct.mean()):.2f}% pada {len(correct)} baris")

    if args.out:
        Path(args.out).parent.mkdir(parents=True, exist_ok=True)
        output.to_csv(args.out, index=False)
        logger.info(f"[PREDICT] ✅ {len(output)} prediksi → {args.out}")
    else:
        output.to_csv(sys.stdout, index=False)
    return EXIT_OK


def register(subparsers):
    parser = subparsers.add_parser("train", help="Grow → Vote → Prune, simpan model JSON")
    parser.add_argument("data", help="CSV training")
    parser.add_argument("--schema", default=None, help="sidecar schema (kolom=kind)")
    parser.add_argument("--out", default="model.json")
    parser.add_argument("--prune-trace", default=None, dest="prune_trace", help="CSV trace pessimistic pruning")
    parser.add_argument("--dump-sample", default=None, dest="dump_sample", help="CSV baris boolean hasil binarisasi")
    add_run_options(parser)
    parser.set_defaults(handler=train_command)

    parser = subparsers.add_parser("predict", help="Klasifikasi CSV dengan model JSON")
    parser.add_argument("model")
    parser.add_argument("data")
    parser.add_argument("--out", default=None)
    parser.add_argument("--seed", type=int, default=None, help="seed tie-break acak")
    parser.set_defaults(handler=predict_command)
