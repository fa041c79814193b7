"""
Ingestion dataset CSV → Sample boolean.

- boolean      : lewat langsung (0/1, true/false, yes/no, t/f)
- categorical  : one-hot, satu variabel per nilai
- continuous   : didiskretisasi (MDL) lalu jadi indikator "kolom>t"
- class        : kolom kelas (single-label)
- label        : kolom bit kelas (multilabel, satu kolom per kelas)
- ignore       : dilewati

Schema sidecar: baris `kolom=kind`, opsional `kolom=categorical(a,b,c)`
atau `kolom=class(a,b)` untuk daftar nilai eksplisit. `#` = komentar.
"""
import logging
import re
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
import pandas as pd

from core.discretize import discretize
from core.errors import DataError
from core.model import Sample

logger = logging.getLogger("dataset")

MISSING = "?"
KINDS = ("boolean", "categorical", "continuous", "class", "label", "ignore")
TRUE_VALUES = {"1", "true", "t", "yes", "y"}
FALSE_VALUES = {"0", "false", "f", "no", "n"}

_SCHEMA_LINE = re.compile(r"^\s*(?P<column>[^=]+?)\s*=\s*(?P<kind>[a-z]+)\s*(?:\((?P<values>[^)]*)\))?\s*$")


# ============================================================
# 🔹 Schema
# ============================================================
@dataclass
class DatasetSchema:
    kinds: dict[str, str]
    values: dict[str, tuple[str, ...]] = field(default_factory=dict)

    def __post_init__(self):
        unknown = {kind for kind in self.kinds.values() if kind not in KINDS}
        if unknown:
            raise DataError(f"Kind kolom tidak dikenal: {sorted(unknown)}")
        if bool(self.class_column) == bool(self.label_columns):
            raise DataError("Schema harus punya tepat satu spesifikasi kelas (satu kolom class ATAU kolom label)")
        if len([c for c, kind in self.kinds.items() if kind == "class"]) > 1:
            raise DataError("Schema hanya boleh punya satu kolom class")

    @property
    def class_column(self) -> str | None:
        return next((column for column, kind in self.kinds.items() if kind == "class"), None)

    @property
    def label_columns(self) -> list[str]:
        return [column for column, kind in self.kinds.items() if kind == "label"]

    def used_columns(self) -> list[str]:
        return [column for column, kind in self.kinds.items() if kind != "ignore"]

    def feature_columns(self) -> list[str]:
        return [column for column, kind in self.kinds.items() if kind in ("boolean", "categorical", "continuous")]

    def check_covers(self, columns):
        missing = [column for column in columns if column not in self.kinds]
        if missing:
            raise DataError(f"Kolom tanpa kind di schema: {missing}")
        absent = [column for column in self.kinds if column not in columns]
        if absent:
            raise DataError(f"Kolom schema tidak ada di CSV: {absent}")


def parse_schema(text: str) -> DatasetSchema:
    kinds: dict[str, str] = {}
    values: dict[str, tuple[str, ...]] = {}
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        match = _SCHEMA_LINE.match(line)
        if not match:
            raise DataError(f"Baris schema tidak valid: {raw!r}", line=number)
        column, kind = match.group("column"), match.group("kind")
        if kind not in KINDS:
            raise DataError(f"Kind '{kind}' tidak dikenal", line=number)
        if column in kinds:
            raise DataError(f"Kolom '{column}' didefinisikan dua kali", line=number)
        kinds[column] = kind
        if match.group("values") is not None:
            values[column] = tuple(v.strip() for v in match.group("values").split(",") if v.strip())
    return DatasetSchema(kinds, values)


def load_schema(path: str | Path) -> DatasetSchema:
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"Schema tidak ditemukan: {path}")
    return parse_schema(path.read_text(encoding="utf-8"))


def _is_boolean_column(series: pd.Series) -> bool:
    return set(series.str.lower().unique()) <= TRUE_VALUES | FALSE_VALUES and series.nunique() <= 2


def _is_numeric_column(series: pd.Series) -> bool:
    return pd.to_numeric(series, errors="coerce").notna().all()


def infer_schema(frame: pd.DataFrame) -> DatasetSchema:
    """Kolom terakhir = kelas; 0/1 → boolean; numerik > 2 nilai → continuous; sisanya categorical."""
    kinds: dict[str, str] = {}
    columns = list(frame.columns)
    for column in columns[:-1]:
        series = frame[column][frame[column] != MISSING]
        if _is_boolean_column(series):
            kinds[column] = "boolean"
        elif _is_numeric_column(series) and series.nunique() > 2:
            kinds[column] = "continuous"
        else:
            kinds[column] = "categorical"
    kinds[columns[-1]] = "class"
    logger.info(f"[DATA] Schema diinfer: {kinds}")
    return DatasetSchema(kinds)


# ============================================================
# 🔹 Binarization map
# ============================================================
def parse_boolean(series: pd.Series, column: str) -> np.ndarray:
    lowered = series.str.lower()
    bad = ~lowered.isin(TRUE_VALUES | FALSE_VALUES)
    if bad.any():
        line = bad.idxmax()
        raise DataError(f"Nilai boolean tidak valid di kolom '{column}': {series[line]!r}", line=line)
    return lowered.isin(TRUE_VALUES).to_numpy()


def _parse_numeric(series: pd.Series, column: str) -> np.ndarray:
    numbers = pd.to_numeric(series, errors="coerce")
    if numbers.isna().any():
        line = numbers.isna().idxmax()
        raise DataError(f"Nilai numerik tidak valid di kolom '{column}': {series[line]!r}", line=line)
    return numbers.to_numpy(dtype=float)


@dataclass
class ColumnBinarization:
    column: str
    kind: str
    categories: tuple[str, ...] = ()
    thresholds: tuple[float, ...] = ()

    def __post_init__(self):
        self.categories = tuple(self.categories)
        self.thresholds = tuple(float(t) for t in self.thresholds)
        if any(b <= a for a, b in zip(self.thresholds, self.thresholds[1:])):
            raise DataError(f"Threshold kolom '{self.column}' harus naik tegas")

    def variable_names(self) -> list[str]:
        if self.kind == "boolean":
            return [self.column]
        if self.kind == "categorical":
            return [f"{self.column}={value}" for value in self.categories]
        return [f"{self.column}>{threshold:g}" for threshold in self.thresholds]

    def apply(self, series: pd.Series) -> np.ndarray:
        if self.kind == "boolean":
            return parse_boolean(series, self.column)[:, None]
        if self.kind == "categorical":
            unknown = ~series.isin(self.categories)
            if unknown.any():
                line = unknown.idxmax()
                raise DataError(f"Nilai '{series[line]}' tidak dikenal di kolom '{self.column}'", line=line)
            return (series.to_numpy()[:, None] == np.array(self.categories, dtype=object)[None, :])
        numbers = _parse_numeric(series, self.column)
        return numbers[:, None] > np.array(self.thresholds, dtype=float)[None, :]

    def to_dict(self) -> dict:
        return {"column": self.column, "kind": self.kind,
                "categories": list(self.categories), "thresholds": list(self.thresholds)}


@dataclass
class BinarizationMap:
    columns: list[ColumnBinarization]
    class_names: tuple[str, ...]
    class_column: str | None = None
    label_columns: tuple[str, ...] = ()

    def __post_init__(self):
        self.class_names = tuple(self.class_names)
        self.label_columns = tuple(self.label_columns)
        names = self.variable_names()
        if len(names) != len(set(names)):
            raise DataError("Nama variabel turunan harus unik")

    def variable_names(self) -> list[str]:
        return [name for column in self.columns for name in column.variable_names()]

    @property
    def n(self) -> int:
        return len(self.variable_names())

    def apply(self, frame: pd.DataFrame) -> np.ndarray:
        """Baris mentah → matriks boolean (m, n)."""
        absent = [column.column for column in self.columns if column.column not in frame.columns]
        if absent:
            raise DataError(f"Kolom tidak ada di CSV: {absent}")
        blocks = [column.apply(frame[column.column]) for column in self.columns]
        if not blocks:
            return np.zeros((len(frame), 0), dtype=bool)
        return np.hstack(blocks).astype(bool)

    def encode_classes(self, frame: pd.DataFrame) -> np.ndarray:
        if self.class_column is not None:
            series = frame[self.class_column]
            unknown = ~series.isin(self.class_names)
            if unknown.any():
                line = unknown.idxmax()
                raise DataError(f"Label kelas tidak dikenal: {series[line]!r}", line=line)
            return series.to_numpy()[:, None] == np.array(self.class_names, dtype=object)[None, :]
        Y = np.column_stack([parse_boolean(frame[column], column) for column in self.label_columns])
        empty = ~Y.any(axis=1)
        if empty.any():
            raise DataError("Example tanpa bit kelas", line=frame.index[int(np.argmax(empty))])
        return Y

    def to_sample(self, frame: pd.DataFrame) -> Sample:
        return Sample(
            self.apply(frame), self.encode_classes(frame),
            class_names=self.class_names, variable_names=tuple(self.variable_names()),
        )

    def to_dict(self) -> dict:
        return {
            "columns": [column.to_dict() for column in self.columns],
            "class_names": list(self.class_names),
            "class_column": self.class_column,
            "label_columns": list(self.label_columns),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "BinarizationMap":
        try:
            return cls(
                [ColumnBinarization(**column) for column in data["columns"]],
                tuple(data["class_names"]),
                data.get("class_column"),
                tuple(data.get("label_columns", ())),
            )
        except (KeyError, TypeError) as e:
            raise DataError(f"Binarization map tidak valid: {e}") from e


# ============================================================
# 🔹 CSV
# ============================================================
def read_frame(path: str | Path) -> pd.DataFrame:
    """CSV sebagai string; index = nomor baris file (header = baris 1)."""
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"CSV tidak ditemukan: {path}")
    try:
        frame = pd.read_csv(path, dtype=str, keep_default_na=False, skipinitialspace=True)
    except (pd.errors.ParserError, pd.errors.EmptyDataError, UnicodeDecodeError) as e:
        raise DataError(f"CSV tidak bisa diparse: {e}") from e
    frame.columns = [str(column).strip() for column in frame.columns]
    frame = frame.apply(lambda series: series.str.strip())
    frame.index = pd.RangeIndex(2, len(frame) + 2)
    return frame


def drop_missing(frame: pd.DataFrame, columns: list[str]) -> pd.DataFrame:
    present = [column for column in columns if column in frame.columns]
    missing = (frame[present] == MISSING).any(axis=1) if present else pd.Series(False, index=frame.index)
    if missing.any():
        logger.warning(f"[DATA] {int(missing.sum())} baris dengan nilai hilang '?' dibuang")
    return frame[~missing]


def fit_binarization(frame: pd.DataFrame, schema: DatasetSchema, max_thresholds: int | None = None) -> BinarizationMap:
    class_column = schema.class_column
    if class_column is not None:
        observed = sorted(frame[class_column].unique())
        declared = schema.values.get(class_column)
        if declared:
            unknown = ~frame[class_column].isin(declared)
            if unknown.any():
                line = unknown.idxmax()
                raise DataError(f"Label kelas tidak dikenal: {frame[class_column][line]!r}", line=line)
        class_names = tuple(declared) if declared else tuple(observed)
        labels = frame[class_column].map({name: j for j, name in enumerate(class_names)}).to_numpy(dtype=int)
    else:
        class_names = tuple(schema.label_columns)
        Y = np.column_stack([parse_boolean(frame[column], column) for column in schema.label_columns])
        labels = Y.argmax(axis=1)

    columns: list[ColumnBinarization] = []
    for column in schema.feature_columns():
        kind = schema.kinds[column]
        if kind == "boolean":
            columns.append(ColumnBinarization(column, kind))
        elif kind == "categorical":
            categories = schema.values.get(column) or tuple(sorted(frame[column].unique()))
            columns.append(ColumnBinarization(column, kind, categories=categories))
        else:
            values = _parse_numeric(frame[column], column)
            thresholds = discretize(values, labels, max_thresholds) if np.unique(values).size >= 2 else []
            if not thresholds:
                logger.warning(f"[DATA] Kolom kontinu '{column}' tanpa threshold, tidak menghasilkan variabel")
            columns.append(ColumnBinarization(column, kind, thresholds=thresholds))

    return BinarizationMap(columns, class_names, class_column, tuple(schema.label_columns))


def load_csv(
    path: str | Path,
    schema: DatasetSchema | str | Path | None = None,
    max_thresholds: int | None = None,
) -> tuple[Sample, BinarizationMap]:
    frame = read_frame(path)
    if schema is None:
        schema = infer_schema(frame)
    elif not isinstance(schema, DatasetSchema):
        schema = load_schema(schema)
    schema.check_covers(list(frame.columns))

    frame = drop_missing(frame, schema.used_columns())
    if frame.empty:
        raise DataError("Tidak ada baris tersisa setelah membuang nilai hilang")

    binarization = fit_binarization(frame, schema, max_thresholds)
    sample = binarization.to_sample(frame)
    logger.info(f"[DATA] ✅ {path} → m={sample.m}, n={sample.n}, c={sample.c}")
    return sample, binarization


def dump_sample_csv(sample: Sample, path: str | Path, include_weight: bool = True) -> Path:
    """Tulis baris boolean (0/1) + kelas (multilabel digabung dengan "|")."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    names = sample.variable_names or tuple(f"x{i}" for i in range(sample.n))
    class_names = sample.class_names or tuple(str(j) for j in range(sample.c))
    frame = pd.DataFrame(sample.X.astype(int), columns=list(names))
    frame["class"] = ["|".join(class_names[j] for j in np.flatnonzero(row)) for row in sample.Y]
    if include_weight:
        frame["weight"] = sample.w
    frame.to_csv(path, index=False)
    return path
