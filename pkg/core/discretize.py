"""
Diskretisasi atribut kontinu: split biner rekursif yang meminimalkan
entropi kelas di titik tengah antar nilai berurutan, berhenti lewat
kriteria MDL (gaya Fayyad–Irani) atau batas jumlah threshold.
"""
import logging
import math
from typing import Sequence

import numpy as np
from scipy.stats import entropy

from core.errors import DimensionError

logger = logging.getLogger("discretize")


def class_entropy(counts: np.ndarray) -> float:
    counts = np.asarray(counts, dtype=float)
    if counts.sum() <= 0:
        return 0.0
    return float(entropy(counts, base=2))


def _one_hot(labels: np.ndarray) -> np.ndarray:
    classes = int(labels.max()) + 1 if labels.size else 0
    return np.eye(classes, dtype=float)[labels]


def best_cut(values: np.ndarray, labels: np.ndarray):
    """
    Cut terbaik untuk values yang sudah terurut.
    Return (posisi, entropi tertimbang, hitungan kiri, hitungan kanan) atau None
    bila semua nilai sama.
    """
    boundaries = np.flatnonzero(values[:-1] != values[1:])
    if boundaries.size == 0:
        return None
    cumulative = np.cumsum(_one_hot(labels), axis=0)
    total = cumulative[-1]
    left = cumulative[boundaries]
    right = total - left
    sizes = boundaries + 1
    m = values.shape[0]
    weighted = (sizes * entropy(left.T, base=2) + (m - sizes) * entropy(right.T, base=2)) / m
    # seri -> cut paling kiri
    pick = int(np.argmin(weighted))
    return int(boundaries[pick]), float(weighted[pick]), left[pick], right[pick]


def mdl_accepts(total: np.ndarray, left: np.ndarray, right: np.ndarray, split_entropy: float) -> bool:
    m = float(total.sum())
    gain = class_entropy(total) - split_entropy
    k, k1, k2 = (int((counts > 0).sum()) for counts in (total, left, right))
    delta = math.log2(3 ** k - 2) - (
        k * class_entropy(total) - k1 * class_entropy(left) - k2 * class_entropy(right)
    )
    return gain > (math.log2(m - 1) + delta) / m


def _split(values: np.ndarray, labels: np.ndarray, thresholds: list[float], max_thresholds: int | None):
    if values.shape[0] < 2 or (max_thresholds is not None and len(thresholds) >= max_thresholds):
        return
    found = best_cut(values, labels)
    if found is None:
        return
    position, split_entropy, left, right = found
    if not mdl_accepts(left + right, left, right, split_entropy):
        return
    thresholds.append(float((values[position] + values[position + 1]) / 2.0))
    _split(values[:position + 1], labels[:position + 1], thresholds, max_thresholds)
    _split(values[position + 1:], labels[position + 1:], thresholds, max_thresholds)


def discretize(values: Sequence[float], labels: Sequence[int], max_thresholds: int | None = None) -> list[float]:
    values = np.asarray(values, dtype=float).reshape(-1)
    labels = np.asarray(labels, dtype=int).reshape(-1)
    if values.shape[0] != labels.shape[0]:
        raise DimensionError(f"Panjang values ({values.shape[0]}) != labels ({labels.shape[0]})")
    if np.unique(values).size < 2:
        logger.warning("[DISC] Kolom konstan, tidak ada threshold")
        return []

    order = np.argsort(values, kind="stable")
    thresholds: list[float] = []
    _split(values[order], labels[order], thresholds, max_thresholds)
    return sorted(thresholds)
