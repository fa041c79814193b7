"""
Pruning DC yang sudah punya vote.

- Pessimistic: buang rule satu per satu (yang menghasilkan error LS terendah),
  kembalikan DC terkecil dengan error terendah di sepanjang sekuens.
- Optimistic: satu lintasan, tiap rule diuji sekali pada sample lokal
  (example yang memenuhi monomialnya), dengan penalti
  sqrt(((Set + 2) ln n + ln(1/delta)) / |LS_local|).
"""
import logging
import math
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
import pandas as pd

from core.errors import PreconditionError
from core.model import (
    DecisionCommittee,
    Sample,
    ambiguous_mask,
    correct_mask,
    refresh_default,
    size_metrics,
)
from core.schemas import PenaltyParams

logger = logging.getLogger("pruner")

ERROR_TOL = 1e-12


@dataclass(frozen=True)
class PruneStep:
    step: int
    rule_id: int
    error: float
    r_dc: int
    l_dc: int


@dataclass
class PruneTrace:
    initial_error: float = 0.0
    steps: list[PruneStep] = field(default_factory=list)

    def __len__(self):
        return len(self.steps)

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            [(s.step, s.rule_id, s.error, s.r_dc, s.l_dc) for s in self.steps],
            columns=["step", "rule_id", "error", "r_DC", "l_DC"],
        )

    def to_csv(self, path: str | Path) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        self.to_frame().to_csv(path, index=False)
        return path


# ============================================================
# 🔹 Evaluasi error dengan matriks cover yang sudah dihitung
# ============================================================
class _CommitteeEvaluator:
    """Error DC (default dihitung ulang) untuk subset rule, cover dihitung sekali."""

    def __init__(self, dc: DecisionCommittee, sample: Sample, tie_seed: int):
        self.dc = dc
        self.sample = sample
        self.tie_seed = tie_seed
        self.covers = dc.cover_matrix(sample.X).astype(np.int64)
        self.votes = dc.vote_matrix()

    def votes_for(self, active: list[int]) -> np.ndarray:
        if not active:
            return np.zeros((self.sample.m, self.dc.c), dtype=np.int64)
        return self.covers[:, active] @ self.votes[active]

    def default_for(self, votes: np.ndarray) -> np.ndarray:
        ambiguous = ambiguous_mask(votes)
        distribution = self.sample.class_distribution(ambiguous)
        if distribution.sum() <= 0:
            distribution = self.sample.class_distribution()
        return distribution / distribution.sum()

    def predictions(self, votes: np.ndarray, default: np.ndarray, rows: np.ndarray) -> np.ndarray:
        local = votes[rows]
        predictions = local.argmax(axis=1) if local.shape[0] else np.zeros(0, dtype=np.int64)
        ties = np.flatnonzero(ambiguous_mask(local))
        if ties.size:
            rng = np.random.default_rng(self.tie_seed)
            for row in ties:
                tied = np.flatnonzero(local[row] == local[row].max())
                remaining = tied[default[tied] == default[tied].max()]
                predictions[row] = remaining[0] if remaining.size == 1 else rng.choice(remaining)
        return predictions

    def error(self, active: list[int], rows: np.ndarray | None = None) -> float:
        rows = np.arange(self.sample.m) if rows is None else rows
        if rows.size == 0:
            return 0.0
        votes = self.votes_for(active)
        default = self.default_for(votes)
        predictions = self.predictions(votes, default, rows)
        local = self.sample.subset(rows, normalize=False)
        wrong = ~correct_mask(predictions, local)
        return float(local.w[wrong].sum() / local.w.sum())


def _literal_count(dc: DecisionCommittee, index: int) -> int:
    return dc.rules[index].monomial.literal_count()


# ============================================================
# 🔹 Pessimistic pruning
# ============================================================
def prune_pessimistic(dc: DecisionCommittee, sample: Sample, tie_seed: int = 0) -> tuple[DecisionCommittee, PruneTrace]:
    if not dc.rules:
        initial = _CommitteeEvaluator(dc, sample, tie_seed).error([]) if sample.m else 0.0
        return dc, PruneTrace(initial_error=initial)

    start_time = time.time()
    evaluator = _CommitteeEvaluator(dc, sample, tie_seed)
    active = list(range(len(dc.rules)))
    trace = PruneTrace(initial_error=evaluator.error(active))
    best_active, best_error = list(active), trace.initial_error

    step = 0
    while active:
        candidates = []
        for index in active:
            remaining = [i for i in active if i != index]
            candidates.append((evaluator.error(remaining), index))
        lowest = min(error for error, _ in candidates)
        # tie-break: rule dengan literal terbanyak, lalu urutan pembuatan
        tied = [index for error, index in candidates if error <= lowest + ERROR_TOL]
        removed = min(tied, key=lambda i: (-_literal_count(dc, i), i))
        active.remove(removed)
        step += 1
        l_dc = sum(_literal_count(dc, i) for i in active)
        trace.steps.append(PruneStep(step, removed, lowest, len(active), l_dc))
        # <= : sekuens terus mengecil, jadi anggota berikutnya selalu lebih kecil
        if lowest <= best_error + ERROR_TOL:
            best_active, best_error = list(active), min(lowest, best_error)

    pruned = refresh_default(dc.with_rules([dc.rules[i] for i in sorted(best_active)]), sample)
    r_dc, l_dc = size_metrics(pruned)
    logger.info(
        f"[PRUNE-P] ✅ {len(dc.rules)} → {r_dc} rules (l_DC={l_dc}) | error LS={best_error:.4f} "
        f"| waktu {time.time() - start_time:.2f}s"
    )
    return pruned, trace


# ============================================================
# 🔹 Optimistic pruning
# ============================================================
def set_bound(dc: DecisionCommittee, excluded_rule: int, sample: Sample) -> int:
    """Maks (empiris) total literal rule lain yang dipenuhi satu observasi."""
    if not 0 <= excluded_rule < len(dc.rules):
        raise PreconditionError(f"Rule #{excluded_rule} tidak ada di committee")
    others = [i for i in range(len(dc.rules)) if i != excluded_rule]
    if not others or sample.m == 0:
        return 0
    covers = dc.cover_matrix(sample.X)[:, others]
    lengths = np.array([_literal_count(dc, i) for i in others], dtype=np.int64)
    return int((covers.astype(np.int64) @ lengths).max())


def penalty(set_value: int, n: int, delta: float, local_count: int) -> float:
    if local_count < 1 or n < 1:
        raise PreconditionError("local_count dan n harus >= 1")
    if not 0 < delta < 1:
        raise PreconditionError("delta harus di (0,1)")
    if set_value < 0:
        raise PreconditionError("Set harus non-negatif")
    return math.sqrt(((set_value + 2) * math.log(n) + math.log(1.0 / delta)) / local_count)


def resample_for_pruning(sample: Sample, params: PenaltyParams) -> Sample:
    if sample.m >= params.resample_target:
        return sample
    rng = np.random.default_rng(params.seed)
    indices = rng.integers(0, sample.m, size=params.resample_target)
    resampled = sample.subset(indices)
    resampled.w = np.full(params.resample_target, 1.0 / params.resample_target)
    logger.info(f"[PRUNE-O] Resample LS {sample.m} → {params.resample_target} example")
    return resampled


def optimistic_order(dc: DecisionCommittee) -> list[int]:
    """Literal terbanyak dulu, seri diurutkan sesuai urutan pembuatan."""
    return sorted(range(len(dc.rules)), key=lambda i: (-_literal_count(dc, i), i))


def prune_optimistic(
    dc: DecisionCommittee,
    sample: Sample,
    params: PenaltyParams | None = None,
    tie_seed: int = 0,
) -> DecisionCommittee:
    params = params or PenaltyParams()
    if not dc.rules:
        return refresh_default(dc, sample) if sample.m else dc

    start_time = time.time()
    working = resample_for_pruning(sample, params)
    evaluator = _CommitteeEvaluator(dc, working, tie_seed)
    active = list(range(len(dc.rules)))

    for index in optimistic_order(dc):
        local_rows = np.flatnonzero(evaluator.covers[:, index])
        if local_rows.size == 0:
            active.remove(index)
            logger.debug(f"[PRUNE-O] rule #{index} tanpa support lokal → dibuang")
            continue
        current = dc.with_rules([dc.rules[i] for i in active])
        set_value = set_bound(current, active.index(index), working)
        alpha = penalty(set_value, dc.n, params.delta, int(local_rows.size))
        error_with = evaluator.error(active, local_rows)
        remaining = [i for i in active if i != index]
        error_without = evaluator.error(remaining, local_rows)
        if error_with + alpha >= error_without:
            active = remaining
            logger.debug(
                f"[PRUNE-O] rule #{index} dibuang | eps={error_with:.4f} + a'={alpha:.4f} >= eps0={error_without:.4f}"
            )

    pruned = refresh_default(dc.with_rules([dc.rules[i] for i in active]), sample)
    r_dc, l_dc = size_metrics(pruned)
    logger.info(
        f"[PRUNE-O] ✅ {len(dc.rules)} → {r_dc} rules (l_DC={l_dc}) | waktu {time.time() - start_time:.2f}s"
    )
    return pruned
