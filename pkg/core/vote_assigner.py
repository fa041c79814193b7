"""
Vote assignment: vektor {-1,0,+1}^c per rule yang meminimalkan
ranking-loss Z = sum_{j,k} M[j][k] * exp(-(v[j] - v[k]) / 2).

- Kasus single-label: cukup enumerasi vektor monoton (urut W_j naik),
  (c+1)(c+2)/2 kandidat, optimal.
- Kasus multilabel: example dipecah per bit kelas (bobot dibagi rata),
  lalu diselesaikan seperti single-label (aproksimasi dengan batas
  Z(v) < Z(v*) * (1 + e / (c - k))).
"""
import itertools
import logging
import math
from typing import Sequence

import numpy as np

from core.errors import DimensionError, GuardError, PreconditionError
from core.model import Example, Sample, make_votes

logger = logging.getLogger("vote_assigner")

Z_TIE_TOL = 1e-12
BRUTE_FORCE_MAX_C = 12
VOTE_ORDER = (-1, 0, 1)

# batas rasio W_+/W_- untuk dua kelas: Δ = +2, +1, 0, -1, -2
TWO_CLASS_CUTS = (math.exp(1.5), math.exp(0.5), math.exp(-0.5), math.exp(-1.5))
DELTA_TO_VOTES = {2: (-1, 1), 1: (-1, 0), 0: (0, 0), -1: (0, -1), -2: (1, -1)}


# ============================================================
# 🔹 Bobot pasangan ranking
# ============================================================
def rankloss_pair_weights(restricted_sample: Sample) -> np.ndarray:
    """M[j][k] = total bobot pasangan (kelas benar j, bukan kelas k)."""
    c = restricted_sample.c
    pairs = np.zeros((c, c))
    counts = restricted_sample.label_counts
    full = counts >= c
    if full.any():
        logger.warning(f"[VOTE] {int(full.sum())} example anggota semua kelas dilewati (tanpa pasangan)")
    for i in np.flatnonzero(~full):
        member = restricted_sample.Y[i]
        share = restricted_sample.w[i] / (counts[i] * (c - counts[i]))
        pairs[np.ix_(member, ~member)] += share
    return pairs


def pair_weights_from_class_weights(weights: Sequence[float]) -> np.ndarray:
    """Bentuk M untuk single-label: M[j][k] = W_j / (c - 1), j != k."""
    weights = np.asarray(weights, dtype=float)
    c = weights.shape[0]
    if c < 2:
        return np.zeros((c, c))
    pairs = np.repeat(weights[:, None] / (c - 1), c, axis=1)
    np.fill_diagonal(pairs, 0.0)
    return pairs


def class_weights(restricted_sample: Sample) -> np.ndarray:
    """W_j^+ per kelas; example multilabel dibagi rata ke bit-bitnya."""
    return restricted_sample.class_distribution()


def z_ranking(pairs: np.ndarray, votes: Sequence[int]) -> float:
    pairs = np.asarray(pairs, dtype=float)
    v = np.asarray(votes, dtype=float)
    if pairs.shape != (v.shape[0], v.shape[0]):
        raise DimensionError(f"Dimensi M {pairs.shape} tidak cocok dengan vektor {v.shape[0]}")
    return float((pairs * np.exp(-0.5 * (v[:, None] - v[None, :]))).sum())


def _canonical_key(votes: tuple[int, ...]):
    return abs(sum(votes)), votes


def _pick_canonical(scored: list[tuple[float, tuple[int, ...]]]) -> tuple[tuple[int, ...], float]:
    best_z = min(z for z, _ in scored)
    tol = Z_TIE_TOL * max(1.0, abs(best_z))
    tied = [votes for z, votes in scored if z <= best_z + tol]
    chosen = min(tied, key=_canonical_key)
    return chosen, best_z


# ============================================================
# 🔹 Assignment
# ============================================================
def monotone_candidates(c: int):
    """Semua (-1 x a, 0 x b, +1 x sisa) dalam urutan terurut."""
    for a in range(c + 1):
        for b in range(c - a + 1):
            yield (-1,) * a + (0,) * b + (1,) * (c - a - b)


def assign_vector(weights: Sequence[float]) -> tuple[int, ...]:
    weights = np.asarray(weights, dtype=float)
    c = weights.shape[0]
    if (weights < 0).any():
        raise PreconditionError("Bobot kelas harus non-negatif")
    if c < 2 or not (weights > 0).any():
        return (0,) * c

    pairs = pair_weights_from_class_weights(weights)
    order = np.argsort(weights, kind="stable")
    scored = []
    for sorted_votes in monotone_candidates(c):
        votes = [0] * c
        for position, cls in enumerate(order):
            votes[cls] = sorted_votes[position]
        votes = tuple(votes)
        scored.append((z_ranking(pairs, votes), votes))
    chosen, _ = _pick_canonical(scored)
    return chosen


def assign_vector_two_class(W_minus: float, W_plus: float, cuts: Sequence[float] = TWO_CLASS_CUTS) -> tuple[int, int]:
    if W_minus < 0 or W_plus < 0 or W_minus + W_plus <= 0:
        raise PreconditionError("W_minus + W_plus harus > 0 (keduanya non-negatif)")
    if W_minus == 0:
        return DELTA_TO_VOTES[2]
    if W_plus == 0:
        return DELTA_TO_VOTES[-2]
    ratio = W_plus / W_minus
    for delta, cut in zip((2, 1, 0, -1), cuts):
        if ratio >= cut:
            return DELTA_TO_VOTES[delta]
    return DELTA_TO_VOTES[-2]


def vote_delta(votes: Sequence[int]) -> int:
    return int(votes[1]) - int(votes[0])


def multilabel_split(example: Example) -> list[Example]:
    count = example.label_count
    if count == 0:
        raise PreconditionError("Example tanpa bit kelas tidak bisa dipecah")
    if count == 1:
        return [example]
    share = example.weight / count
    split = []
    for cls, member in enumerate(example.classes):
        if member:
            classes = tuple(j == cls for j in range(len(example.classes)))
            split.append(Example(example.observation, classes, share))
    return split


def split_sample(sample: Sample) -> Sample:
    """multilabel_split untuk seluruh sample (bobot tidak dinormalisasi ulang)."""
    if not sample.is_multilabel():
        return sample
    examples = [part for example in sample.examples for part in multilabel_split(example)]
    return Sample.from_examples(examples, sample.n, sample.c, normalize=False)


def assign_rule_votes(restricted_sample: Sample) -> tuple[int, ...]:
    """Vektor vote untuk satu monomial dari example yang memenuhinya."""
    if restricted_sample.m == 0:
        return (0,) * restricted_sample.c
    return make_votes(assign_vector(class_weights(split_sample(restricted_sample))), restricted_sample.c)


# ============================================================
# 🔹 Oracle verifikasi
# ============================================================
def all_vote_vectors(c: int) -> np.ndarray:
    if c > BRUTE_FORCE_MAX_C:
        raise GuardError(f"c={c} terlalu besar untuk brute force (maks {BRUTE_FORCE_MAX_C})")
    return np.array(list(itertools.product(VOTE_ORDER, repeat=c)), dtype=float).reshape(-1, c)


def brute_force_vector(pairs: np.ndarray, chunk: int = 4096) -> tuple[tuple[int, ...], float]:
    pairs = np.asarray(pairs, dtype=float)
    c = pairs.shape[0]
    vectors = all_vote_vectors(c)
    values = np.empty(vectors.shape[0])
    for start in range(0, vectors.shape[0], chunk):
        block = vectors[start:start + chunk]
        diff = block[:, :, None] - block[:, None, :]
        values[start:start + chunk] = (pairs[None] * np.exp(-0.5 * diff)).sum(axis=(1, 2))
    best_z = values.min()
    tol = Z_TIE_TOL * max(1.0, abs(best_z))
    tied = [tuple(int(x) for x in vectors[i]) for i in np.flatnonzero(values <= best_z + tol)]
    return min(tied, key=_canonical_key), float(best_z)


def max_label_count(sample: Sample) -> int:
    return int(sample.label_counts.max()) if sample.m else 0


def approximation_bound_check(pairs_original: np.ndarray, v_approx: Sequence[int], c: int, k: int) -> bool:
    """
    Z(v_approx) < Z(v*) * (1 + e / (c - k)) dengan v* dari brute force.
    Jika Z(v*) = 0 (M nol, mis. semua example anggota semua kelas) cukup Z(v_approx) = 0.
    """
    if k >= c:
        raise PreconditionError(f"k={k} harus < c={c}")
    _, z_star = brute_force_vector(pairs_original)
    z_approx = z_ranking(pairs_original, v_approx)
    if z_star <= 0.0:
        return z_approx <= 0.0
    return z_approx < z_star * (1.0 + math.e / (c - k))
