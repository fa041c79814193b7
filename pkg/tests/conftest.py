import logging

import numpy as np
import pytest

from config import CONFIG
from core.model import DecisionCommittee, Monomial, Rule, Sample
from core.xd6 import gen_xd6


@pytest.fixture(autouse=True, scope="session")
def _log_dir(tmp_path_factory):
    CONFIG["log"]["dir"] = str(tmp_path_factory.mktemp("logs"))


@pytest.fixture
def figure3_dc() -> DecisionCommittee:
    """Committee contoh pertanian: 2 rule, default (0.32, 0.68, 0)."""
    return DecisionCommittee(
        n=4,
        c=3,
        rules=(
            Rule(Monomial.from_indices(pos=[0, 1]), (-1, -1, 1)),
            Rule(Monomial.from_indices(pos=[0, 2, 3]), (1, -1, 1)),
        ),
        default=(0.32, 0.68, 0.0),
        class_names=("adhere", "?", "¬adhere"),
    )


@pytest.fixture
def separable_sample() -> Sample:
    """Kelas = x0, x1 tidak relevan; 40 example."""
    X = np.array([[a, b] for a in (0, 1) for b in (0, 1)] * 10, dtype=bool)
    return Sample.from_labels(X, X[:, 0].astype(int), 2)


@pytest.fixture
def single_class_sample() -> Sample:
    X = np.array([[0, 1], [1, 0], [1, 1], [0, 0]], dtype=bool)
    return Sample.from_labels(X, [1, 1, 1, 1], 3)


@pytest.fixture(scope="session")
def xd6_clean() -> Sample:
    return gen_xd6(512, 0.0, 0.0, seed=0)


@pytest.fixture
def reset_cli_logging():
    yield
    from app import WIDC_LOGGERS

    for name in ["app", "widc.trace", *WIDC_LOGGERS]:
        target = logging.getLogger(name)
        for handler in list(target.handlers):
            handler.close()
            target.removeHandler(handler)
        target.propagate = True
