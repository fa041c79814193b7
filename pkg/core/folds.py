import logging

import numpy as np
from sklearn.model_selection import StratifiedKFold

from core.errors import PreconditionError
from core.model import Sample

logger = logging.getLogger("folds")


def _round_robin(labels: np.ndarray, k: int, seed: int) -> list[np.ndarray]:
    # urutkan per kelas (acak di dalam kelas) lalu bagikan bergiliran ke fold
    rng = np.random.default_rng(seed)
    shuffled = rng.permutation(labels.shape[0])
    ordered = shuffled[np.argsort(labels[shuffled], kind="stable")]
    return [np.sort(ordered[i::k]) for i in range(k)]


def stratified_folds(sample: Sample, k: int, seed: int = 0) -> list[tuple[np.ndarray, np.ndarray]]:
    """
    k partisi (train, test) berstrata pada label primer.
    Hitungan per kelas antar fold berbeda paling banyak 1.
    """
    if k < 2:
        raise PreconditionError(f"Jumlah fold harus >= 2, dapat {k}")
    if k > sample.m:
        raise PreconditionError(f"Jumlah fold k={k} > jumlah example {sample.m}")

    labels = sample.primary_labels()
    counts = np.bincount(labels, minlength=sample.c)
    indices = np.arange(sample.m)

    if counts.max() >= k:
        splitter = StratifiedKFold(n_splits=k, shuffle=True, random_state=seed)
        tests = [test for _, test in splitter.split(np.zeros((sample.m, 1)), labels)]
    else:
        # StratifiedKFold menolak kasus semua kelas < k example
        logger.warning(f"[FOLDS] Semua kelas < {k} example, fold dibagi round-robin")
        tests = _round_robin(labels, k, seed)

    return [(np.setdiff1d(indices, test), np.sort(test)) for test in tests]
