"""
Suite verifikasi oracle: membandingkan algoritma cepat dengan brute force.

- vector-optimality : assign_vector vs enumerasi 3^c (single-label)
- two-class-table   : tabel rasio W+/W- dua kelas
- approximation-bound : batas Z(v) < Z(v*)(1 + e/(c-k)) multilabel
- submodularity     : f[A∪B] + f[A∩B] <= f[A] + f[B]
- queyranne-cut / queyranne-z-c3 : pendant pair vs brute force
Diagnostik (tidak menggagalkan): pendant pair pada z_symmetric untuk c >= 4.
"""
import logging
import math
from typing import Sequence

import numpy as np
from tqdm import tqdm

from config import CONFIG
from core.model import Sample
from core.schemas import SuiteResult, VerifyReport
from core.submodular import (
    SUBMODULAR_TOL,
    SetFunctionInstance,
    brute_force_min,
    brute_force_min_set,
    check_submodular,
    constant_vector_value,
    cut_function,
    f_eval,
    pendant_pair_minimize,
    queyranne_min,
    z_symmetric,
)
from core.utils import banner, perf
from core.vote_assigner import (
    TWO_CLASS_CUTS,
    approximation_bound_check,
    assign_rule_votes,
    assign_vector,
    assign_vector_two_class,
    brute_force_vector,
    max_label_count,
    pair_weights_from_class_weights,
    rankloss_pair_weights,
    vote_delta,
    z_ranking,
)

logger = logging.getLogger("verify")

Z_MATCH_TOL = 1e-9
THRESHOLD_NEIGHBOURHOOD = 1e-6
# offset relatif deterministik di kedua sisi tiap cut
CUT_OFFSETS = (1e-3, 1e-2, 5e-2)
# Δ di atas masing-masing cut pada TWO_CLASS_CUTS
DELTAS_ABOVE = (2, 1, 0, -1)


def _relative_gap(value: float, reference: float) -> float:
    return abs(value - reference) / max(1.0, abs(reference))


# ============================================================
# 🔹 Suite 1: optimalitas vektor single-label
# ============================================================
def _random_class_weights(rng: np.random.Generator, c: int) -> np.ndarray:
    weights = rng.random(c)
    weights[rng.random(c) < 0.2] = 0.0
    if not weights.any():
        weights[rng.integers(c)] = 1.0
    return weights / weights.sum()


def _monotone_up_to_ties(weights: np.ndarray, votes: Sequence[int]) -> bool:
    votes = np.asarray(votes)
    strictly_less = weights[:, None] < weights[None, :]
    return bool((votes[:, None] <= votes[None, :])[strictly_less].all())


def suite_vector_optimality(rng: np.random.Generator, count: int) -> SuiteResult:
    failures, worst = 0, 0.0
    for _ in range(count):
        c = int(rng.integers(2, 7))
        weights = _random_class_weights(rng, c)
        votes = assign_vector(weights)
        pairs = pair_weights_from_class_weights(weights)
        _, z_star = brute_force_vector(pairs)
        gap = _relative_gap(z_ranking(pairs, votes), z_star)
        worst = max(worst, gap)
        if gap > Z_MATCH_TOL or not _monotone_up_to_ties(weights, votes):
            failures += 1
    return SuiteResult(name="vector-optimality", count=count, failures=failures, max_deviation=worst)


# ============================================================
# 🔹 Suite 2: tabel dua kelas
# ============================================================
def expected_two_class_deltas(ratio: float) -> set[int]:
    """Δ sesuai tabel; tepat di cut kedua Δ yang bersebelahan diterima (Z sama)."""
    for position, cut in enumerate(TWO_CLASS_CUTS):
        if ratio == cut:
            return {DELTAS_ABOVE[position], DELTAS_ABOVE[position] - 1}
        if ratio > cut:
            return {DELTAS_ABOVE[position]}
    return {-2}


def two_class_ratios(rng: np.random.Generator, count: int) -> list[float]:
    """Rasio yang mencakup kelima baris tabel, termasuk titik dekat dan tepat di tiap cut."""
    near = []
    for cut in TWO_CLASS_CUTS:
        near.append(cut)
        near.extend(cut * (1.0 + sign * offset) for offset in CUT_OFFSETS for sign in (-1.0, 1.0))
        for _ in range(max(1, count // 20)):
            near.append(cut * (1.0 + THRESHOLD_NEIGHBOURHOOD * rng.uniform(-1.0, 1.0)))
    spread = np.exp(rng.uniform(-3.0, 3.0, size=max(0, count - len(near))))
    return (near + list(spread))[:count]


def suite_two_class(rng: np.random.Generator, count: int, cuts: Sequence[float] = TWO_CLASS_CUTS) -> SuiteResult:
    failures, worst = 0, 0.0
    for ratio in two_class_ratios(rng, count):
        w_plus, w_minus = ratio, 1.0
        votes = assign_vector_two_class(w_minus, w_plus, cuts=cuts)
        pairs = np.array([[0.0, w_minus], [w_plus, 0.0]])
        _, z_star = brute_force_vector(pairs)
        worst = max(worst, _relative_gap(z_ranking(pairs, votes), z_star))
        if vote_delta(votes) not in expected_two_class_deltas(ratio):
            failures += 1
    return SuiteResult(name="two-class-table", count=count, failures=failures, max_deviation=worst)


# ============================================================
# 🔹 Suite 3: batas aproksimasi multilabel
# ============================================================
def random_multilabel_sample(rng: np.random.Generator, c: int, k_max: int) -> Sample:
    m = int(rng.integers(3, 13))
    Y = np.zeros((m, c), dtype=bool)
    for row in range(m):
        size = int(rng.integers(1, k_max + 1))
        Y[row, rng.choice(c, size=size, replace=False)] = True
    return Sample(np.zeros((m, 1), dtype=bool), Y, rng.random(m) + 0.05)


def suite_approximation_bound(rng: np.random.Generator, count: int) -> SuiteResult:
    failures, worst = 0, 0.0
    for _ in range(count):
        c = int(rng.integers(4, 9))
        sample = random_multilabel_sample(rng, c, int(rng.integers(1, c // 2 + 1)))
        k = max_label_count(sample)
        pairs = rankloss_pair_weights(sample)
        votes = assign_rule_votes(sample)
        _, z_star = brute_force_vector(pairs)
        ratio = z_ranking(pairs, votes) / z_star if z_star > 0 else 1.0
        worst = max(worst, ratio - 1.0)
        if not approximation_bound_check(pairs, votes, c, k):
            failures += 1
    return SuiteResult(
        name="approximation-bound", count=count, failures=failures, max_deviation=worst,
        note="deviasi = Z(v)/Z(v*) - 1",
    )


# ============================================================
# 🔹 Suite 4: submodularitas f[A]
# ============================================================
def random_pairs(rng: np.random.Generator, c: int) -> np.ndarray:
    pairs = rng.random((c, c))
    pairs[rng.random((c, c)) < 0.3] = 0.0
    np.fill_diagonal(pairs, 0.0)
    return pairs


def _random_subset(rng: np.random.Generator, c: int) -> frozenset:
    return frozenset(int(i) for i in np.flatnonzero(rng.random(c) < 0.5))


def suite_submodularity(rng: np.random.Generator, count: int) -> SuiteResult:
    failures, worst = 0, 0.0
    for _ in range(count):
        c = int(rng.integers(2, 11))
        instance = SetFunctionInstance(random_pairs(rng, c), alpha=float(rng.uniform(-3.0, 3.0)))
        A, B = _random_subset(rng, c), _random_subset(rng, c)
        excess = (f_eval(instance, A | B) + f_eval(instance, A & B)) - (f_eval(instance, A) + f_eval(instance, B))
        worst = max(worst, excess)
        if not check_submodular(instance, A, B):
            failures += 1
    return SuiteResult(
        name="submodularity", count=count, failures=failures, max_deviation=max(worst, 0.0),
        note=f"toleransi {SUBMODULAR_TOL:g}",
    )


# ============================================================
# 🔹 Suite 5: pendant pair vs brute force
# ============================================================
def suite_queyranne_cut(rng: np.random.Generator, count: int) -> SuiteResult:
    failures, worst = 0, 0.0
    for _ in range(count):
        c = int(rng.integers(3, 11))
        cut = cut_function(random_pairs(rng, c))
        _, found = pendant_pair_minimize(cut, c)
        _, best = brute_force_min_set(cut, c)
        gap = _relative_gap(found, best)
        worst = max(worst, gap)
        if gap > Z_MATCH_TOL:
            failures += 1
    return SuiteResult(name="queyranne-cut", count=count, failures=failures, max_deviation=worst)


def _queyranne_z(rng: np.random.Generator, count: int, low: int, high: int, name: str, note: str) -> SuiteResult:
    failures, worst = 0, 0.0
    constant_values, best_values = [], []
    for _ in range(count):
        c = int(rng.integers(low, high + 1))
        instance = SetFunctionInstance(random_pairs(rng, c))
        subset, found = queyranne_min(instance)
        _, best = brute_force_min(instance)
        constant_values.append(constant_vector_value(instance))
        best_values.append(best)
        gap = _relative_gap(found, best)
        worst = max(worst, gap)
        if gap > Z_MATCH_TOL or found < best - Z_MATCH_TOL or not math.isclose(found, z_symmetric(instance, subset)):
            failures += 1
    # nilai vektor konstan (A kosong / penuh) dilaporkan terpisah dari minimum subset proper
    constant_note = (
        f"vektor konstan rata-rata {np.mean(constant_values):.4f} vs min subset proper "
        f"rata-rata {np.mean(best_values):.4f}" if count else ""
    )
    note = "; ".join(part for part in (note, constant_note) if part)
    return SuiteResult(name=name, count=count, failures=failures, max_deviation=worst, note=note)


def suite_queyranne_z_c3(rng: np.random.Generator, count: int) -> SuiteResult:
    return _queyranne_z(rng, count, 3, 3, "queyranne-z-c3", "")


def diagnostic_queyranne_z(rng: np.random.Generator, count: int) -> SuiteResult:
    return _queyranne_z(
        rng, count, 4, 10, "queyranne-z-c4plus",
        "diagnostik: z_symmetric tidak submodular, failures = jumlah selisih dengan brute force",
    )


# ============================================================
# 🔥 Runner
# ============================================================
def verify(
    settings: dict | None = None,
    two_class_cuts: Sequence[float] = TWO_CLASS_CUTS,
    progress: bool = True,
) -> VerifyReport:
    """
    Jalankan semua suite. `two_class_cuts` hanya untuk uji mutasi:
    cut yang digeser harus membuat suite two-class-table gagal.
    """
    settings = {**CONFIG["verify"], **(settings or {})}
    seed = int(settings["seed"])
    rng = np.random.default_rng(seed)

    suites = [
        ("vector-optimality", lambda: suite_vector_optimality(rng, settings["vector_instances"])),
        ("two-class-table", lambda: suite_two_class(rng, settings["two_class_points"], two_class_cuts)),
        ("approximation-bound", lambda: suite_approximation_bound(rng, settings["bound_instances"])),
        ("submodularity", lambda: suite_submodularity(rng, settings["submodular_instances"])),
        ("queyranne-cut", lambda: suite_queyranne_cut(rng, settings["queyranne_instances"])),
        ("queyranne-z-c3", lambda: suite_queyranne_z_c3(rng, settings["queyranne_instances"])),
    ]

    banner(logger, f"[VERIFY] 🚀 {len(suites)} suite | seed={seed}")
    results = []
    for name, run in tqdm(suites, desc="Verify suites", disable=not progress):
        with perf(logger, name):
            result = run()
        status = "✅" if result.passed else "❌"
        logger.info(f"[VERIFY] {status} {name}: {result.count} instance, {result.failures} gagal, max dev {result.max_deviation:.3g}")
        results.append(result)

    diagnostic = diagnostic_queyranne_z(rng, settings["queyranne_instances"])
    logger.info(
        f"[VERIFY] diagnostik {diagnostic.name}: {diagnostic.count - diagnostic.failures}/{diagnostic.count} sama dengan brute force"
    )
    return VerifyReport(seed=seed, suites=results, diagnostics=[diagnostic])


def format_report(report: VerifyReport) -> str:
    lines = [f"{'suite':<22} {'count':>6} {'fail':>6} {'max_dev':>12}  status"]
    for suite in report.suites:
        lines.append(
            f"{suite.name:<22} {suite.count:>6} {suite.failures:>6} {suite.max_deviation:>12.3e}  "
            f"{'PASS' if suite.passed else 'FAIL'}"
        )
    for suite in report.diagnostics:
        lines.append(
            f"{suite.name:<22} {suite.count:>6} {suite.failures:>6} {suite.max_deviation:>12.3e}  INFO"
        )
    for suite in [*report.suites, *report.diagnostics]:
        if suite.note:
            lines.append(f"  {suite.name}: {suite.note}")
    lines.append("HASIL: " + ("PASS" if report.passed else "FAIL"))
    return "\n".join(lines)
