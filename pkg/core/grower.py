"""
Growth stage: membangun DC besar (vote belum diisi) dengan menumbuhkan
monomial top-down, memilih literal yang meminimalkan kriteria Z
pada partisi sample yang diinduksi oleh himpunan monomial.

Dua example berada di grup yang sama jika dan hanya jika mereka memenuhi
himpunan monomial yang sama (signature identik).
"""
import logging
from dataclasses import dataclass

import numpy as np

from core.errors import InternalConsistencyError, PreconditionError
from core.model import Literal, Monomial, Sample

logger = logging.getLogger("grower")
trace_logger = logging.getLogger("widc.trace")

# langkah diterima hanya jika Z_baru < Z_lama - Z_DECREASE_EPS
Z_DECREASE_EPS = 1e-12
TALLY_TOL = 1e-12


@dataclass(frozen=True)
class GrowStep:
    monomial_index: int
    literal: Literal
    z: float

    def csv_line(self) -> str:
        return f"{self.monomial_index},{self.literal},{self.z:.17g}"


# ============================================================
# 🔹 Partisi & kriteria Z
# ============================================================
def group_ids_from_covers(covers: np.ndarray) -> tuple[np.ndarray, int]:
    """Grup per example dari matriks signature (m x t)."""
    m = covers.shape[0]
    if covers.shape[1] == 0 or m == 0:
        return np.zeros(m, dtype=np.int64), 1 if m else 0
    _, inverse = np.unique(covers, axis=0, return_inverse=True)
    inverse = np.asarray(inverse).reshape(-1)
    return inverse.astype(np.int64), int(inverse.max()) + 1


def class_tallies(group_ids: np.ndarray, n_groups: int, Y: np.ndarray, w: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """W_+ per (grup, kelas) dan total bobot per grup."""
    weighted = w[:, None] * Y
    tallies = np.column_stack([
        np.bincount(group_ids, weights=weighted[:, l], minlength=n_groups) for l in range(Y.shape[1])
    ]) if n_groups else np.zeros((0, Y.shape[1]))
    totals = np.bincount(group_ids, weights=w, minlength=n_groups) if n_groups else np.zeros(0)
    return tallies, totals


def z_from_tallies(tallies: np.ndarray, totals: np.ndarray) -> float:
    tallies = np.asarray(tallies, dtype=float)
    totals = np.asarray(totals, dtype=float)
    complement = totals[:, None] - tallies
    if (tallies < -TALLY_TOL).any() or (complement < -TALLY_TOL).any():
        raise InternalConsistencyError("Tally partisi negatif")
    product = np.clip(tallies, 0.0, None) * np.clip(complement, 0.0, None)
    return float(2.0 * np.sqrt(product).sum())


def _z_for_keys(keys: np.ndarray, n_keys: int, weighted_Y: np.ndarray, w: np.ndarray) -> float:
    totals = np.bincount(keys, weights=w, minlength=n_keys)
    z = 0.0
    for l in range(weighted_Y.shape[1]):
        plus = np.bincount(keys, weights=weighted_Y[:, l], minlength=n_keys)
        z += np.sqrt(np.clip(plus * (totals - plus), 0.0, None)).sum()
    return float(2.0 * z)


@dataclass(frozen=True)
class PartitionState:
    sample: Sample
    monomials: tuple[Monomial, ...]
    covers: np.ndarray
    group_ids: np.ndarray
    tallies: np.ndarray
    totals: np.ndarray

    @classmethod
    def build(cls, sample: Sample, monomials=()) -> "PartitionState":
        monomials = tuple(monomials)
        if monomials:
            covers = np.column_stack([monomial.covers(sample.X) for monomial in monomials])
        else:
            covers = np.zeros((sample.m, 0), dtype=bool)
        return cls._from_covers(sample, monomials, covers)

    @classmethod
    def _from_covers(cls, sample: Sample, monomials, covers: np.ndarray) -> "PartitionState":
        group_ids, n_groups = group_ids_from_covers(covers)
        tallies, totals = class_tallies(group_ids, n_groups, sample.Y, sample.w)
        return cls(sample, tuple(monomials), covers, group_ids, tallies, totals)

    @property
    def n_groups(self) -> int:
        return self.tallies.shape[0]

    def signatures(self) -> list[int]:
        """Signature tiap example sebagai bit-set indeks monomial."""
        weights = [1 << i for i in range(self.covers.shape[1])]
        return [sum(bit for bit, hit in zip(weights, row) if hit) for row in self.covers]

    def groups(self) -> dict[int, list[int]]:
        grouped: dict[int, list[int]] = {}
        for index, signature in enumerate(self.signatures()):
            grouped.setdefault(signature, []).append(index)
        return grouped


def partition_z(state: PartitionState) -> float:
    return z_from_tallies(state.tallies, state.totals)


def refine_with_literal(state: PartitionState, monomial_index: int, literal: Literal) -> PartitionState:
    """
    Tambah satu literal ke monomial #monomial_index.

    Hanya example yang kehilangan cover monomial itu yang pindah grup:
    tiap grup tersentuh dipecah, bagian yang lepas digabung ke grup dengan
    signature yang sama (atau jadi grup baru). Id grup lalu diurutkan ulang
    per signature supaya identik dengan PartitionState.build.
    """
    monomial = state.monomials[monomial_index]
    if monomial.has_variable(literal.var):
        raise PreconditionError(f"Variabel x{literal.var} sudah ada di monomial #{monomial_index}")
    refined = monomial.with_literal(literal)
    column = state.sample.X[:, literal.var]
    if not literal.positive:
        column = ~column
    covers = state.covers.copy()
    moved = covers[:, monomial_index] & ~column
    covers[:, monomial_index] &= column
    monomials = state.monomials[:monomial_index] + (refined,) + state.monomials[monomial_index + 1:]
    if not moved.any():
        return PartitionState(state.sample, monomials, covers, state.group_ids, state.tallies, state.totals)

    reps = np.zeros((state.n_groups, covers.shape[1]), dtype=bool)
    reps[state.group_ids] = state.covers
    reps = list(reps)
    index = {row.tobytes(): g for g, row in enumerate(reps)}
    group_ids = state.group_ids.copy()
    for g in np.unique(state.group_ids[moved]):
        signature = reps[g].copy()
        signature[monomial_index] = False
        target = index.setdefault(signature.tobytes(), len(reps))
        if target == len(reps):
            reps.append(signature)
        group_ids[moved & (state.group_ids == g)] = target

    occupied = np.bincount(group_ids, minlength=len(reps)) > 0
    _, order = np.unique(np.array(reps)[occupied], axis=0, return_inverse=True)
    relabel = np.full(len(reps), -1, dtype=np.int64)
    relabel[occupied] = np.asarray(order).reshape(-1)
    group_ids = relabel[group_ids]
    n_groups = int(occupied.sum())
    tallies, totals = class_tallies(group_ids, n_groups, state.sample.Y, state.sample.w)
    return PartitionState(state.sample, monomials, covers, group_ids, tallies, totals)


# ============================================================
# 🔹 Growth
# ============================================================
def grow_monomial(
    sample: Sample,
    existing_monomials=(),
    max_literals: int = 32,
    trace: list | None = None,
    monomial_index: int | None = None,
) -> Monomial | None:
    existing = list(existing_monomials)
    existing_set = set(existing)
    index = len(existing) if monomial_index is None else monomial_index
    base = PartitionState.build(sample, existing)
    base_ids = base.group_ids * 2
    n_keys = max(base.n_groups, 1) * 2
    weighted_Y = sample.w[:, None] * sample.Y

    z_without = partition_z(base)
    current = Monomial()
    current_cover = np.ones(sample.m, dtype=bool)
    current_z = z_without

    while current.literal_count() < max_literals:
        best = None
        best_z = np.inf
        # tie-break: indeks variabel terkecil, literal positif dulu
        for var in range(sample.n):
            if current.has_variable(var):
                continue
            for positive in (True, False):
                literal = Literal(var, positive)
                candidate = current.with_literal(literal)
                if candidate in existing_set:
                    continue
                column = sample.X[:, var] if positive else ~sample.X[:, var]
                cover = current_cover & column
                z = _z_for_keys(base_ids + cover, n_keys, weighted_Y, sample.w)
                if z < best_z:
                    best, best_z, best_cover = (literal, candidate), z, cover
        if best is None or not best_z < current_z - Z_DECREASE_EPS:
            break
        literal, current = best
        current_cover, current_z = best_cover, best_z
        step = GrowStep(index, literal, current_z)
        if trace is not None:
            trace.append(step)
        trace_logger.info(step.csv_line())

    if current in existing_set or not current_z < z_without - Z_DECREASE_EPS:
        return None
    return current


def grow_committee(
    sample: Sample,
    max_rules: int = 256,
    max_literals: int = 32,
    trace: list | None = None,
) -> list[Monomial]:
    if sample.m == 0:
        raise PreconditionError("grow_committee butuh sample tidak kosong")

    monomials: list[Monomial] = []
    while len(monomials) < max_rules:
        monomial = grow_monomial(sample, monomials, max_literals, trace, len(monomials))
        if monomial is None:
            break
        monomials.append(monomial)
        logger.debug(f"[GROW] monomial #{len(monomials) - 1}: {monomial}")

    if len(monomials) >= max_rules:
        logger.warning(f"[GROW] Batas max_rules={max_rules} tercapai")
    logger.info(f"[GROW] ✅ Growth selesai | {len(monomials)} monomial")
    return monomials
