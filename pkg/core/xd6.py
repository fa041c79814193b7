"""
Domain sintetis XD6: 10 variabel boolean, target
(x0 ∧ x1 ∧ x2) ∨ (x3 ∧ x4 ∧ x5) ∨ (x6 ∧ x7 ∧ x8), x9 tidak relevan.

Class noise membalik label, attribute noise membalik bit atribut
(setelah label dihitung).
"""
import logging
from functools import lru_cache

import numpy as np

from core.errors import PreconditionError
from core.model import DecisionCommittee, Monomial, Sample

logger = logging.getLogger("xd6")

XD6_N = 10
XD6_TERMS = ((0, 1, 2), (3, 4, 5), (6, 7, 8))
XD6_IRRELEVANT = 9
XD6_CLASS_NAMES = ("negative", "positive")
XD6_VARIABLE_NAMES = tuple(f"x{i}" for i in range(XD6_N))


def _check_rate(name: str, value: float):
    if not 0.0 <= value <= 1.0:
        raise PreconditionError(f"{name} harus di [0,1], dapat {value}")


def xd6_target(X: np.ndarray) -> np.ndarray:
    X = np.asarray(X, dtype=bool)
    return np.any([X[:, list(term)].all(axis=1) for term in XD6_TERMS], axis=0)


def xd6_target_monomials() -> tuple[Monomial, ...]:
    return tuple(Monomial.from_indices(pos=term) for term in XD6_TERMS)


def contains_target(dc: DecisionCommittee) -> bool:
    """True bila ketiga term target muncul (sintaktis) sebagai monomial rule."""
    monomials = {rule.monomial for rule in dc.rules}
    return all(term in monomials for term in xd6_target_monomials())


def gen_xd6(n_examples: int, class_noise: float = 0.0, attr_noise: float = 0.0, seed: int = 0) -> Sample:
    if n_examples <= 0:
        raise PreconditionError("n_examples harus > 0")
    _check_rate("class_noise", class_noise)
    _check_rate("attr_noise", attr_noise)

    rng = np.random.default_rng(seed)
    X = rng.integers(0, 2, size=(n_examples, XD6_N)).astype(bool)
    labels = xd6_target(X)
    # urutan draw tetap (label dulu, lalu atribut) supaya seed reproducible
    labels ^= rng.random(n_examples) < class_noise
    X ^= rng.random((n_examples, XD6_N)) < attr_noise

    logger.debug(f"[XD6] {n_examples} example | class_noise={class_noise} attr_noise={attr_noise} seed={seed}")
    return Sample.from_labels(
        X, labels.astype(int), 2,
        class_names=XD6_CLASS_NAMES, variable_names=XD6_VARIABLE_NAMES,
    )


@lru_cache(maxsize=1)
def _all_observations() -> np.ndarray:
    codes = np.arange(1 << XD6_N)
    return ((codes[:, None] >> np.arange(XD6_N)) & 1).astype(bool)


def xd6_bayes_error(class_noise: float = 0.0, attr_noise: float = 0.0) -> float:
    """Error aturan Bayes pada domain ber-noise, dihitung eksak atas 2^10 observasi."""
    _check_rate("class_noise", class_noise)
    _check_rate("attr_noise", attr_noise)
    observations = _all_observations()
    positive = xd6_target(observations)
    p_positive = np.where(positive, 1.0 - class_noise, class_noise)

    codes = np.arange(1 << XD6_N)
    distance = np.array([int(x).bit_count() for x in range(1 << XD6_N)])[codes[:, None] ^ codes[None, :]]
    transition = attr_noise ** distance * (1.0 - attr_noise) ** (XD6_N - distance)

    joint_positive = (p_positive @ transition) / (1 << XD6_N)
    joint_negative = ((1.0 - p_positive) @ transition) / (1 << XD6_N)
    return float(np.minimum(joint_positive, joint_negative).sum())
