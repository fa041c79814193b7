"""
Pipeline WIDC: Grow → Vote → Prune → Default, plus cross validation
dan noise sweep XD6.
"""
import logging
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

import numpy as np
import pandas as pd
from tqdm import tqdm

from config import CONFIG
from core.errors import PreconditionError
from core.folds import stratified_folds
from core.grower import GrowStep, grow_committee
from core.model import DecisionCommittee, Monomial, Rule, Sample, error_rate, refresh_default, size_metrics
from core.pruner import PruneTrace, prune_optimistic, prune_pessimistic
from core.schemas import EvalReport, FoldResult, RunConfig, SweepRow
from core.utils import banner, derived_seed, noise_levels, perf
from core.vote_assigner import assign_rule_votes
from core.xd6 import contains_target, gen_xd6, xd6_bayes_error

logger = logging.getLogger("pipeline")

# offset seed sampel sweep attribute noise, agar tidak berbagi sampel dengan sweep class noise
ATTRIBUTE_SWEEP_OFFSET = 1000


@dataclass
class TrainResult:
    committee: DecisionCommittee
    grown: list[Monomial] = field(default_factory=list)
    grow_trace: list[GrowStep] = field(default_factory=list)
    unpruned: DecisionCommittee | None = None
    prune_trace: PruneTrace | None = None
    timings: dict[str, float] = field(default_factory=dict)


def assign_votes(sample: Sample, monomials: list[Monomial]) -> list[Rule]:
    """Vote per monomial dari example yang memenuhinya; rule dengan vektor nol dibuang."""
    rules = []
    for monomial in monomials:
        restricted = sample.subset(np.flatnonzero(monomial.covers(sample.X)), normalize=False)
        rule = Rule(monomial, assign_rule_votes(restricted) if restricted.m else (0,) * sample.c)
        if rule.is_zero():
            logger.debug(f"[VOTE] rule {monomial} vektor nol → dibuang")
            continue
        rules.append(rule)
    return rules


# ========================================================
# 🔥 Train: Grow → Vote → Prune → Default
# ========================================================
def train(sample: Sample, config: RunConfig | None = None) -> TrainResult:
    config = config or RunConfig()
    if sample.m == 0:
        raise PreconditionError("train butuh sample tidak kosong")

    start_time = time.time()
    timings: dict[str, float] = {}
    logger.info("=" * 60)
    logger.info(f"[TRAIN] 🚀 Mulai | m={sample.m} n={sample.n} c={sample.c} | mode={config.mode} seed={config.seed}")

    # 1️⃣ Grow
    stage = time.time()
    grow_trace: list[GrowStep] = []
    grown = grow_committee(sample, config.max_rules, config.max_literals, grow_trace)
    timings["grow"] = time.time() - stage

    # 2️⃣ Vote
    stage = time.time()
    rules = assign_votes(sample, grown)
    unpruned = refresh_default(
        DecisionCommittee(sample.n, sample.c, tuple(rules), None, sample.class_names, sample.variable_names),
        sample,
    )
    timings["vote"] = time.time() - stage
    logger.info(f"[VOTE] ✅ {len(rules)}/{len(grown)} rule dengan vote tak nol")

    # 3️⃣ Prune
    stage = time.time()
    prune_trace = None
    if config.mode == "p":
        pruned, prune_trace = prune_pessimistic(unpruned, sample, tie_seed=config.seed)
    elif config.mode == "o":
        pruned = prune_optimistic(unpruned, sample, config.penalty_params(), tie_seed=config.seed)
    else:
        pruned = unpruned
    timings["prune"] = time.time() - stage

    # 4️⃣ Default vector
    committee = refresh_default(pruned, sample)
    timings["total"] = time.time() - start_time

    r_dc, l_dc = size_metrics(committee)
    logger.info(f"[TRAIN] ✅ Selesai | r_DC={r_dc} l_DC={l_dc}")
    logger.info(
        f"[PERF] grow={timings['grow']:.2f}s vote={timings['vote']:.2f}s "
        f"prune={timings['prune']:.2f}s total={timings['total']:.2f}s"
    )
    return TrainResult(committee, grown, grow_trace, unpruned, prune_trace, timings)


# ========================================================
# 🔹 Cross validation
# ========================================================
def cross_validate(
    sample: Sample,
    config: RunConfig | None = None,
    target_check: Callable[[DecisionCommittee], bool] | None = None,
    progress: bool = True,
) -> EvalReport:
    config = config or RunConfig()
    start_time = time.time()
    folds = stratified_folds(sample, config.folds, config.seed)

    results = []
    for index, (train_idx, test_idx) in enumerate(tqdm(folds, desc="CV folds", disable=not progress, leave=False)):
        # tiap fold punya seed sendiri → hasil tidak tergantung urutan/konkurensi
        fold_seed = derived_seed(config.seed, index)
        trained = train(sample.subset(train_idx), config.with_seed(fold_seed))
        error = error_rate(trained.committee, sample.subset(test_idx), tie_seed=fold_seed)
        r_dc, l_dc = size_metrics(trained.committee)
        results.append(FoldResult(
            fold=index,
            error_pct=100.0 * error,
            r_dc=r_dc,
            l_dc=l_dc,
            contains_target=target_check(trained.committee) if target_check else None,
        ))
        logger.debug(f"[CV] fold {index}: err={100.0 * error:.2f}% r_DC={r_dc} l_DC={l_dc}")

    report = EvalReport.from_folds(results, time.time() - start_time, config)
    logger.info(
        f"[CV] ✅ {config.folds}-fold | err={report.mean_error_pct:.2f}% "
        f"r_DC={report.mean_r_dc:.1f} l_DC={report.mean_l_dc:.1f} | waktu {report.wall_time_sec:.2f}s"
    )
    return report


# ========================================================
# 🔹 Noise sweep XD6
# ========================================================
def noise_sweep(
    config: RunConfig | None = None,
    kinds: tuple[str, ...] = ("class", "attribute"),
    examples: int | None = None,
    step: float | None = None,
    limit: float | None = None,
) -> list[SweepRow]:
    config = config or RunConfig()
    examples = examples or CONFIG["xd6"]["examples"]
    step = step or CONFIG["xd6"]["noise_step"]
    limit = CONFIG["xd6"]["noise_max"] if limit is None else limit
    levels = noise_levels(step, limit)

    banner(logger, f"[SWEEP] 🚀 XD6 noise sweep | {examples} example | {len(levels)} level x {len(kinds)} jenis")
    rows: list[SweepRow] = []
    with perf(logger, "noise sweep"):
        for kind in kinds:
            if kind not in ("class", "attribute"):
                raise PreconditionError(f"Jenis noise tidak dikenal: {kind}")
            base = 0 if kind == "class" else ATTRIBUTE_SWEEP_OFFSET
            for index, level in enumerate(tqdm(levels, desc=f"Sweep {kind}", leave=False)):
                class_noise, attr_noise = (level, 0.0) if kind == "class" else (0.0, level)
                sample = gen_xd6(examples, class_noise, attr_noise, seed=derived_seed(config.seed, base + index))
                report = cross_validate(sample, config, target_check=contains_target, progress=False)
                rows.append(SweepRow(
                    noise_kind=kind,
                    level=level,
                    mean_error_pct=report.mean_error_pct,
                    mean_l_dc=report.mean_l_dc,
                    mean_r_dc=report.mean_r_dc,
                    bayes_error_pct=100.0 * xd6_bayes_error(class_noise, attr_noise),
                    target_rate=report.target_rate(),
                ))
                logger.info(
                    f"[SWEEP] {kind}={level:.2f} | err={report.mean_error_pct:.2f}% "
                    f"l_DC={report.mean_l_dc:.1f} r_DC={report.mean_r_dc:.1f}"
                )
    return rows


def sweep_frame(rows: list[SweepRow]) -> pd.DataFrame:
    return pd.DataFrame([row.model_dump() for row in rows], columns=list(SweepRow.model_fields))


def write_sweep_csv(rows: list[SweepRow], path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    sweep_frame(rows).to_csv(path, index=False)
    return path


def fold_frame(report: EvalReport) -> pd.DataFrame:
    return pd.DataFrame([fold.model_dump() for fold in report.folds], columns=list(FoldResult.model_fields))
