"""
Oracle setting ±1: fungsi himpunan f[A] atas kelas, ukuran simetris
Z = W0 + 2 sqrt(W+ W-) pada alpha optimal, brute force, dan minimisasi
pendant-pair (Queyranne) untuk fungsi himpunan simetris.

A adalah himpunan kelas yang mendapat vote +1 (sisanya -1).
"""
import itertools
import logging
import math
from dataclasses import dataclass
from typing import Callable, Iterable

import numpy as np

from core.errors import GuardError, PreconditionError

logger = logging.getLogger("submodular")

SUBMODULAR_TOL = 1e-9
ALPHA_EPS = 1e-12
ALPHA_CLAMP = math.log(1.0 / ALPHA_EPS)
BRUTE_FORCE_MAX_C = 16


@dataclass(frozen=True)
class SetFunctionInstance:
    pairs: np.ndarray
    alpha: float = 0.0

    def __post_init__(self):
        pairs = np.array(self.pairs, dtype=float)
        if pairs.ndim != 2 or pairs.shape[0] != pairs.shape[1]:
            raise PreconditionError("Matriks pasangan harus persegi")
        if (pairs < 0).any():
            raise PreconditionError("Bobot pasangan harus non-negatif")
        if np.any(np.diag(pairs) != 0):
            raise PreconditionError("Diagonal matriks pasangan harus nol")
        if not math.isfinite(self.alpha):
            raise PreconditionError("alpha harus finite")
        pairs.setflags(write=False)
        object.__setattr__(self, "pairs", pairs)

    @property
    def c(self) -> int:
        return self.pairs.shape[0]

    @property
    def total(self) -> float:
        return float(self.pairs.sum())


def _membership(c: int, subset: Iterable[int]) -> np.ndarray:
    member = np.zeros(c, dtype=bool)
    for cls in subset:
        if not 0 <= cls < c:
            raise PreconditionError(f"Kelas {cls} di luar 0..{c - 1}")
        member[cls] = True
    return member


def crossing_masses(pairs: np.ndarray, subset: Iterable[int]) -> tuple[float, float, float]:
    """(W+, W-, W0) untuk vektor ±1 dengan +1 tepat di subset."""
    member = _membership(pairs.shape[0], subset)
    w_plus = float(pairs[np.ix_(member, ~member)].sum())
    w_minus = float(pairs[np.ix_(~member, member)].sum())
    return w_plus, w_minus, float(pairs.sum()) - w_plus - w_minus


# ============================================================
# 🔹 f[A] dan cek submodular
# ============================================================
def f_eval(instance: SetFunctionInstance, subset: Iterable[int]) -> float:
    w_plus, w_minus, w_zero = crossing_masses(instance.pairs, subset)
    # pasangan (j di A, k di luar A) punya selisih vote +2 -> faktor e^-alpha
    return w_zero + math.exp(-instance.alpha) * w_plus + math.exp(instance.alpha) * w_minus


def check_submodular(instance: SetFunctionInstance, A: Iterable[int], B: Iterable[int]) -> bool:
    A, B = set(A), set(B)
    lhs = f_eval(instance, A | B) + f_eval(instance, A & B)
    rhs = f_eval(instance, A) + f_eval(instance, B)
    return lhs <= rhs + SUBMODULAR_TOL


def submodular_gap(instance: SetFunctionInstance, A: Iterable[int], B: Iterable[int]) -> float:
    """(2 - e^a - e^-a) x bobot silang antara A\\B dan B\\A (selalu <= 0)."""
    A, B = set(A), set(B)
    c = instance.c
    only_a = _membership(c, A - B)
    only_b = _membership(c, B - A)
    crossing = instance.pairs[np.ix_(only_a, only_b)].sum() + instance.pairs[np.ix_(only_b, only_a)].sum()
    return float((2.0 - math.exp(instance.alpha) - math.exp(-instance.alpha)) * crossing)


# ============================================================
# 🔹 alpha optimal & bentuk simetris
# ============================================================
def alpha_opt(W_plus: float, W_minus: float) -> float:
    if W_plus < 0 or W_minus < 0:
        raise PreconditionError("Massa silang harus non-negatif")
    if W_plus == 0 and W_minus == 0:
        return 0.0
    # nol -> alpha tak hingga, di-clamp ke ±ln(1/eps)
    if W_minus == 0:
        return ALPHA_CLAMP
    if W_plus == 0:
        return -ALPHA_CLAMP
    return 0.5 * math.log(W_plus / W_minus)


def z_symmetric(instance: SetFunctionInstance, subset: Iterable[int]) -> float:
    w_plus, w_minus, w_zero = crossing_masses(instance.pairs, subset)
    return w_zero + 2.0 * math.sqrt(w_plus * w_minus)


def constant_vector_value(instance: SetFunctionInstance) -> float:
    """Nilai untuk A kosong / penuh (vektor konstan): total massa."""
    return instance.total


def proper_subsets(c: int):
    for size in range(1, c):
        for subset in itertools.combinations(range(c), size):
            yield frozenset(subset)


def _guard(c: int):
    if c > BRUTE_FORCE_MAX_C:
        raise GuardError(f"c={c} terlalu besar untuk brute force (maks {BRUTE_FORCE_MAX_C})")
    if c < 2:
        raise PreconditionError("Butuh minimal dua kelas")


def brute_force_min_set(func: Callable[[frozenset], float], c: int) -> tuple[frozenset, float]:
    """Minimum fungsi himpunan sembarang atas subset proper tak kosong (enumerasi)."""
    _guard(c)
    return min(((subset, func(subset)) for subset in proper_subsets(c)), key=lambda item: item[1])


def brute_force_min(instance: SetFunctionInstance) -> tuple[frozenset, float]:
    return brute_force_min_set(lambda subset: z_symmetric(instance, subset), instance.c)


def brute_force_max(instance: SetFunctionInstance) -> tuple[frozenset, float]:
    """Maksimisasi hanya lewat enumerasi (demo, c kecil)."""
    _guard(instance.c)
    return max(((subset, z_symmetric(instance, subset)) for subset in proper_subsets(instance.c)), key=lambda item: item[1])


# ============================================================
# 🔹 Pendant pair (Queyranne)
# ============================================================
def pendant_pair_minimize(func: Callable[[frozenset], float], c: int) -> tuple[frozenset, float]:
    """
    Minimisasi fungsi himpunan simetris atas subset proper tak kosong
    dari {0..c-1} dengan ordering maximum-adjacency dan kontraksi.
    Eksak untuk fungsi simetris submodular (mis. cut graf) dan untuk
    fungsi simetris apa pun saat c = 3; O(c^3) evaluasi.

    z_symmetric sendiri tidak submodular (z(∅) = total massa adalah
    maksimum), jadi untuk c >= 4 hasilnya hanya batas atas minimum.
    """
    if c < 2:
        raise PreconditionError("Butuh minimal dua elemen")
    cache: dict[frozenset, float] = {}

    def evaluate(subset: frozenset) -> float:
        if subset not in cache:
            cache[subset] = func(subset)
        return cache[subset]

    nodes = [frozenset({i}) for i in range(c)]
    best_set, best_value = None, math.inf
    while len(nodes) > 1:
        ordered = [nodes[0]]
        prefix = nodes[0]
        remaining = nodes[1:]
        while remaining:
            scores = [evaluate(prefix | node) - evaluate(node) for node in remaining]
            pick = int(np.argmin(scores))
            node = remaining.pop(pick)
            ordered.append(node)
            prefix = prefix | node
        last, before_last = ordered[-1], ordered[-2]
        value = evaluate(last)
        if value < best_value:
            best_set, best_value = last, value
        nodes = [node for node in nodes if node is not last and node is not before_last]
        nodes.append(last | before_last)
    return best_set, best_value


def queyranne_min(instance: SetFunctionInstance) -> tuple[frozenset, float]:
    if instance.c < 2:
        raise PreconditionError("Butuh minimal dua kelas")
    return pendant_pair_minimize(lambda subset: z_symmetric(instance, subset), instance.c)


def cut_function(weights: np.ndarray) -> Callable[[frozenset], float]:
    """Fungsi cut graf tak berarah (simetris submodular) untuk uji pendant pair."""
    weights = np.asarray(weights, dtype=float)
    symmetric = weights + weights.T
    c = symmetric.shape[0]

    def cut(subset: frozenset) -> float:
        member = _membership(c, subset)
        return float(symmetric[np.ix_(member, ~member)].sum())

    return cut
