"""
Model data decision committee (DC) dengan vote {-1, 0, +1}.

Monomial disimpan sebagai dua bitmask (literal positif / literal negatif),
sehingga konjungsi kontradiktif tidak bisa direpresentasikan. Observasi
tunggal dicek lewat operasi bit, batch observasi lewat numpy.
"""
import logging
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np

from core.errors import DimensionError, PreconditionError

logger = logging.getLogger("model")

WEIGHT_TOL = 1e-9
VOTE_VALUES = (-1, 0, 1)


# ============================================================
# 🔹 Literal & Monomial
# ============================================================
class Literal(NamedTuple):
    var: int
    positive: bool = True

    def __str__(self):
        return f"x{self.var}" if self.positive else f"¬x{self.var}"


def _mask_indices(mask: int) -> list[int]:
    indices = []
    var = 0
    while mask:
        if mask & 1:
            indices.append(var)
        mask >>= 1
        var += 1
    return indices


@dataclass(frozen=True)
class Monomial:
    pos: int = 0
    neg: int = 0

    def __post_init__(self):
        if self.pos < 0 or self.neg < 0:
            raise PreconditionError("Mask monomial harus non-negatif")
        if self.pos & self.neg:
            raise PreconditionError("Variabel tidak boleh positif dan negatif sekaligus")

    @classmethod
    def from_literals(cls, literals: Sequence[Literal] = ()) -> "Monomial":
        monomial = cls()
        for literal in literals:
            monomial = monomial.with_literal(literal)
        return monomial

    @classmethod
    def from_indices(cls, pos: Sequence[int] = (), neg: Sequence[int] = ()) -> "Monomial":
        pos_mask = 0
        neg_mask = 0
        for var in pos:
            pos_mask |= 1 << int(var)
        for var in neg:
            neg_mask |= 1 << int(var)
        return cls(pos_mask, neg_mask)

    @property
    def pos_indices(self) -> list[int]:
        return _mask_indices(self.pos)

    @property
    def neg_indices(self) -> list[int]:
        return _mask_indices(self.neg)

    @property
    def literals(self) -> list[Literal]:
        found = [Literal(var, True) for var in self.pos_indices]
        found += [Literal(var, False) for var in self.neg_indices]
        return sorted(found, key=lambda literal: (literal.var, not literal.positive))

    def literal_count(self) -> int:
        return (self.pos | self.neg).bit_count()

    def is_empty(self) -> bool:
        return not (self.pos | self.neg)

    def has_variable(self, var: int) -> bool:
        return bool((self.pos | self.neg) >> var & 1)

    def max_variable(self) -> int:
        """Indeks variabel terbesar yang dipakai, -1 untuk monomial kosong."""
        return (self.pos | self.neg).bit_length() - 1

    def with_literal(self, literal: Literal) -> "Monomial":
        if self.has_variable(literal.var):
            raise PreconditionError(f"Variabel x{literal.var} sudah ada di monomial {self}")
        bit = 1 << literal.var
        if literal.positive:
            return Monomial(self.pos | bit, self.neg)
        return Monomial(self.pos, self.neg | bit)

    def covers(self, X: np.ndarray) -> np.ndarray:
        """Vektor boolean: baris X mana yang memenuhi monomial ini."""
        X = np.asarray(X, dtype=bool)
        if X.ndim != 2:
            raise DimensionError("X harus matriks 2 dimensi")
        if self.max_variable() >= X.shape[1]:
            raise DimensionError(f"Monomial {self} memakai variabel di luar n={X.shape[1]}")
        covered = np.ones(X.shape[0], dtype=bool)
        pos_idx = self.pos_indices
        neg_idx = self.neg_indices
        if pos_idx:
            covered &= X[:, pos_idx].all(axis=1)
        if neg_idx:
            covered &= ~X[:, neg_idx].any(axis=1)
        return covered

    def render(self, names: Sequence[str] | None = None) -> str:
        if self.is_empty():
            return "∅"
        parts = []
        for literal in self.literals:
            name = names[literal.var] if names else f"x{literal.var}"
            parts.append(name if literal.positive else f"¬{name}")
        return " ∧ ".join(parts)

    def __str__(self):
        return self.render()


def as_observation(observation, n: int | None = None) -> np.ndarray:
    """Normalisasi observasi ("1100", list bit, atau array) ke array boolean."""
    if isinstance(observation, str):
        observation = [ch == "1" for ch in observation.strip()]
    obs = np.asarray(observation, dtype=bool).reshape(-1)
    if n is not None and obs.shape[0] != n:
        raise DimensionError(f"Panjang observasi {obs.shape[0]} != n={n}")
    return obs


def observation_mask(observation) -> int:
    obs = as_observation(observation)
    mask = 0
    for var in np.flatnonzero(obs):
        mask |= 1 << int(var)
    return mask


def satisfies(observation, monomial: Monomial, n: int | None = None) -> bool:
    obs = as_observation(observation, n)
    if monomial.max_variable() >= obs.shape[0]:
        raise DimensionError(f"Monomial {monomial} memakai variabel di luar panjang observasi {obs.shape[0]}")
    obs_mask = observation_mask(obs)
    return (obs_mask & monomial.pos) == monomial.pos and not (obs_mask & monomial.neg)


# ============================================================
# 🔹 Rule & Decision Committee
# ============================================================
def make_votes(values: Sequence[int], c: int | None = None) -> tuple[int, ...]:
    votes = tuple(int(v) for v in values)
    if c is not None and len(votes) != c:
        raise DimensionError(f"Vote vector harus {c} komponen, dapat {len(votes)}")
    if any(v not in VOTE_VALUES for v in votes):
        raise PreconditionError(f"Komponen vote harus di {{-1,0,+1}}: {votes}")
    return votes


@dataclass(frozen=True)
class Rule:
    monomial: Monomial
    votes: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "votes", make_votes(self.votes))

    def is_zero(self) -> bool:
        return not any(self.votes)


def make_default(values: Sequence[float], c: int) -> tuple[float, ...]:
    default = tuple(float(v) for v in values)
    if len(default) != c:
        raise DimensionError(f"Default vector harus {c} komponen, dapat {len(default)}")
    if any(not (0.0 <= v <= 1.0) for v in default):
        raise PreconditionError(f"Komponen default harus di [0,1]: {default}")
    return default


@dataclass(frozen=True)
class DecisionCommittee:
    n: int
    c: int
    rules: tuple[Rule, ...] = ()
    default: tuple[float, ...] | None = None
    class_names: tuple[str, ...] | None = None
    variable_names: tuple[str, ...] | None = None

    def __post_init__(self):
        if self.n < 0 or self.c < 1:
            raise PreconditionError(f"n/c tidak valid: n={self.n}, c={self.c}")
        rules = tuple(self.rules)
        seen = set()
        for rule in rules:
            if len(rule.votes) != self.c:
                raise DimensionError(f"Rule {rule.monomial} punya {len(rule.votes)} vote, c={self.c}")
            if rule.monomial.max_variable() >= self.n:
                raise DimensionError(f"Rule {rule.monomial} memakai variabel di luar n={self.n}")
            if rule.monomial in seen:
                raise PreconditionError(f"Monomial duplikat di committee: {rule.monomial}")
            seen.add(rule.monomial)
        default = self.default if self.default is not None else [1.0 / self.c] * self.c
        class_names = tuple(self.class_names) if self.class_names else tuple(str(j) for j in range(self.c))
        if len(class_names) != self.c:
            raise DimensionError(f"class_names harus {self.c} nama")
        object.__setattr__(self, "rules", rules)
        object.__setattr__(self, "default", make_default(default, self.c))
        object.__setattr__(self, "class_names", class_names)
        if self.variable_names is not None:
            object.__setattr__(self, "variable_names", tuple(self.variable_names))

    def with_rules(self, rules: Sequence[Rule]) -> "DecisionCommittee":
        return DecisionCommittee(self.n, self.c, tuple(rules), self.default, self.class_names, self.variable_names)

    def with_default(self, default: Sequence[float]) -> "DecisionCommittee":
        return DecisionCommittee(self.n, self.c, self.rules, tuple(default), self.class_names, self.variable_names)

    def without_rule(self, index: int) -> "DecisionCommittee":
        return self.with_rules(self.rules[:index] + self.rules[index + 1:])

    def vote_matrix(self) -> np.ndarray:
        if not self.rules:
            return np.zeros((0, self.c), dtype=np.int64)
        return np.array([rule.votes for rule in self.rules], dtype=np.int64)

    def cover_matrix(self, X: np.ndarray) -> np.ndarray:
        X = np.asarray(X, dtype=bool)
        if X.ndim != 2 or X.shape[1] != self.n:
            raise DimensionError(f"X harus berdimensi (m, {self.n})")
        if not self.rules:
            return np.zeros((X.shape[0], 0), dtype=bool)
        return np.column_stack([rule.monomial.covers(X) for rule in self.rules])

    def describe(self) -> str:
        """Tabel rule | vote per kelas, diakhiri baris default."""
        names = self.variable_names
        rows = [(rule.monomial.render(names), [f"{v:+d}" if v else "0" for v in rule.votes]) for rule in self.rules]
        rows.append(("default D", [f"{d:.2f}" for d in self.default]))
        head_width = max(len(label) for label, _ in rows)
        col_width = max(6, *(len(name) for name in self.class_names))
        lines = [" " * head_width + " | " + " ".join(name.rjust(col_width) for name in self.class_names)]
        for label, cells in rows:
            lines.append(label.ljust(head_width) + " | " + " ".join(cell.rjust(col_width) for cell in cells))
        return "\n".join(lines)


# ============================================================
# 🔹 Example & Sample
# ============================================================
@dataclass(frozen=True)
class Example:
    observation: tuple[bool, ...]
    classes: tuple[bool, ...]
    weight: float

    def __post_init__(self):
        object.__setattr__(self, "observation", tuple(bool(b) for b in self.observation))
        object.__setattr__(self, "classes", tuple(bool(b) for b in self.classes))
        if not any(self.classes):
            raise PreconditionError("Example harus punya minimal satu bit kelas")
        if not self.weight > 0:
            raise PreconditionError(f"Bobot example harus > 0, dapat {self.weight}")

    @property
    def label_count(self) -> int:
        return sum(self.classes)


@dataclass
class Sample:
    X: np.ndarray
    Y: np.ndarray
    w: np.ndarray | None = None
    class_names: tuple[str, ...] | None = None
    variable_names: tuple[str, ...] | None = None
    normalize: bool = field(default=True, repr=False)

    def __post_init__(self):
        self.X = np.asarray(self.X, dtype=bool)
        self.Y = np.asarray(self.Y, dtype=bool)
        if self.X.ndim != 2 or self.Y.ndim != 2:
            raise DimensionError("X dan Y harus matriks 2 dimensi")
        if self.X.shape[0] != self.Y.shape[0]:
            raise DimensionError(f"Jumlah baris X ({self.X.shape[0]}) != Y ({self.Y.shape[0]})")
        m = self.X.shape[0]
        if self.w is None:
            self.w = np.full(m, 1.0 / m) if m else np.zeros(0)
        self.w = np.asarray(self.w, dtype=float).reshape(-1)
        if self.w.shape[0] != m:
            raise DimensionError("Panjang bobot != jumlah example")
        if m and not (self.w > 0).all():
            raise PreconditionError("Semua bobot example harus > 0")
        if m and not self.Y.any(axis=1).all():
            raise PreconditionError("Setiap example harus punya minimal satu bit kelas")
        if self.normalize and m:
            self.w = self.w / self.w.sum()
        if self.class_names is not None:
            self.class_names = tuple(self.class_names)
            if len(self.class_names) != self.c:
                raise DimensionError("class_names tidak cocok dengan c")
        if self.variable_names is not None:
            self.variable_names = tuple(self.variable_names)
            if len(self.variable_names) != self.n:
                raise DimensionError("variable_names tidak cocok dengan n")

    @classmethod
    def from_examples(cls, examples: Sequence[Example], n: int, c: int, **names) -> "Sample":
        for example in examples:
            if len(example.observation) != n or len(example.classes) != c:
                raise DimensionError("Semua example harus berbagi n dan c yang sama")
        X = np.array([e.observation for e in examples], dtype=bool).reshape(len(examples), n)
        Y = np.array([e.classes for e in examples], dtype=bool).reshape(len(examples), c)
        w = np.array([e.weight for e in examples], dtype=float)
        return cls(X, Y, w, **names)

    @classmethod
    def from_labels(cls, X, labels: Sequence[int], c: int, w=None, **names) -> "Sample":
        labels = np.asarray(labels, dtype=int)
        Y = np.zeros((labels.shape[0], c), dtype=bool)
        Y[np.arange(labels.shape[0]), labels] = True
        return cls(X, Y, w, **names)

    @property
    def m(self) -> int:
        return self.X.shape[0]

    @property
    def n(self) -> int:
        return self.X.shape[1]

    @property
    def c(self) -> int:
        return self.Y.shape[1]

    def __len__(self):
        return self.m

    @property
    def examples(self) -> list[Example]:
        return [Example(tuple(self.X[i]), tuple(self.Y[i]), float(self.w[i])) for i in range(self.m)]

    @property
    def label_counts(self) -> np.ndarray:
        return self.Y.sum(axis=1)

    def is_multilabel(self) -> bool:
        return bool(self.m and (self.label_counts > 1).any())

    def primary_labels(self) -> np.ndarray:
        """Bit kelas pertama yang aktif per example (label untuk kasus single-label)."""
        return self.Y.argmax(axis=1)

    def class_distribution(self, mask: np.ndarray | None = None) -> np.ndarray:
        """Distribusi kelas berbobot; example multilabel dibagi rata ke bit-bitnya."""
        rows = np.ones(self.m, dtype=bool) if mask is None else np.asarray(mask, dtype=bool)
        shares = self.Y[rows] / self.label_counts[rows][:, None]
        return (self.w[rows][:, None] * shares).sum(axis=0)

    def subset(self, indices, normalize: bool = True) -> "Sample":
        indices = np.asarray(indices)
        return Sample(
            self.X[indices], self.Y[indices], self.w[indices],
            class_names=self.class_names, variable_names=self.variable_names,
            normalize=normalize,
        )

    def empty_committee(self) -> DecisionCommittee:
        return DecisionCommittee(self.n, self.c, (), None, self.class_names, self.variable_names)


# ============================================================
# 🔹 Voting & klasifikasi
# ============================================================
def vote(dc: DecisionCommittee, observation) -> np.ndarray:
    obs = as_observation(observation, dc.n)
    total = np.zeros(dc.c)
    for rule in dc.rules:
        if satisfies(obs, rule.monomial):
            total += rule.votes
    return total


def _resolve_tie(votes_row: np.ndarray, default: np.ndarray, rng: np.random.Generator) -> int:
    tied = np.flatnonzero(votes_row == votes_row.max())
    if tied.size == 1:
        return int(tied[0])
    restricted = default[tied]
    remaining = tied[restricted == restricted.max()]
    if remaining.size == 1:
        return int(remaining[0])
    return int(rng.choice(remaining))


def classify(dc: DecisionCommittee, observation, tie_seed: int = 0) -> int:
    votes_row = vote(dc, observation)
    return _resolve_tie(votes_row, np.asarray(dc.default), np.random.default_rng(tie_seed))


def vote_batch(dc: DecisionCommittee, X: np.ndarray) -> np.ndarray:
    return dc.cover_matrix(X).astype(np.int64) @ dc.vote_matrix()


def ambiguous_mask(votes: np.ndarray) -> np.ndarray:
    """Baris dengan arg max tidak unik (termasuk vote nol semua)."""
    if votes.shape[0] == 0:
        return np.zeros(0, dtype=bool)
    return (votes == votes.max(axis=1, keepdims=True)).sum(axis=1) > 1


def predict_batch(dc: DecisionCommittee, X: np.ndarray, tie_seed: int = 0) -> np.ndarray:
    """Klasifikasi seluruh baris X; tie sisa diundi berurutan dengan satu generator."""
    votes = vote_batch(dc, X)
    predictions = votes.argmax(axis=1) if votes.shape[0] else np.zeros(0, dtype=np.int64)
    ties = np.flatnonzero(ambiguous_mask(votes))
    if ties.size:
        rng = np.random.default_rng(tie_seed)
        default = np.asarray(dc.default)
        for row in ties:
            predictions[row] = _resolve_tie(votes[row], default, rng)
    return predictions


def compute_default_vector(dc: DecisionCommittee, sample: Sample) -> tuple[float, ...]:
    if sample.m == 0:
        raise PreconditionError("Tidak bisa menghitung default vector dari sample kosong")
    ambiguous = ambiguous_mask(vote_batch(dc, sample.X))
    distribution = sample.class_distribution(ambiguous)
    if distribution.sum() <= 0:
        distribution = sample.class_distribution()
    distribution = distribution / distribution.sum()
    return tuple(float(np.clip(v, 0.0, 1.0)) for v in distribution)


def refresh_default(dc: DecisionCommittee, sample: Sample) -> DecisionCommittee:
    return dc.with_default(compute_default_vector(dc, sample))


def size_metrics(dc: DecisionCommittee) -> tuple[int, int]:
    return len(dc.rules), sum(rule.monomial.literal_count() for rule in dc.rules)


def correct_mask(predictions: np.ndarray, sample: Sample) -> np.ndarray:
    """Prediksi benar bila bit kelas yang diprediksi aktif (single & multilabel)."""
    return sample.Y[np.arange(sample.m), predictions]


def error_rate(dc: DecisionCommittee, sample: Sample, tie_seed: int = 0) -> float:
    if sample.m == 0:
        raise PreconditionError("error_rate butuh sample tidak kosong")
    predictions = predict_batch(dc, sample.X, tie_seed)
    wrong = ~correct_mask(predictions, sample)
    return float(sample.w[wrong].sum() / sample.w.sum())
