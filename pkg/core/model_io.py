import json
import logging
from pathlib import Path

from pydantic import BaseModel, Field, ValidationError

from core.errors import DataError
from core.model import DecisionCommittee, Monomial, Rule

logger = logging.getLogger("model_io")


class RuleDocument(BaseModel):
    pos_literals: list[int] = Field(default_factory=list)
    neg_literals: list[int] = Field(default_factory=list)
    votes: list[int]


class CommitteeDocument(BaseModel):
    n: int
    c: int
    class_names: list[str]
    rules: list[RuleDocument]
    default: list[float]
    variable_names: list[str] | None = None
    binarization: dict | None = None


def to_document(dc: DecisionCommittee, binarization: dict | None = None) -> CommitteeDocument:
    return CommitteeDocument(
        n=dc.n,
        c=dc.c,
        class_names=list(dc.class_names),
        rules=[
            RuleDocument(
                pos_literals=rule.monomial.pos_indices,
                neg_literals=rule.monomial.neg_indices,
                votes=list(rule.votes),
            )
            for rule in dc.rules
        ],
        default=list(dc.default),
        variable_names=list(dc.variable_names) if dc.variable_names else None,
        binarization=binarization,
    )


def from_document(doc: CommitteeDocument) -> DecisionCommittee:
    rules = [
        Rule(Monomial.from_indices(rule.pos_literals, rule.neg_literals), tuple(rule.votes))
        for rule in doc.rules
    ]
    # default tidak harus distribusi saat dimuat, cukup di [0,1]^c
    return DecisionCommittee(
        n=doc.n,
        c=doc.c,
        rules=tuple(rules),
        default=tuple(doc.default),
        class_names=tuple(doc.class_names),
        variable_names=tuple(doc.variable_names) if doc.variable_names else None,
    )


def dumps_committee(dc: DecisionCommittee, binarization: dict | None = None) -> str:
    # json stdlib memakai repr float -> round-trip lossless
    payload = to_document(dc, binarization).model_dump(exclude_none=True)
    return json.dumps(payload, indent=2, ensure_ascii=False)


def loads_committee(text: str) -> tuple[DecisionCommittee, dict | None]:
    try:
        doc = CommitteeDocument.model_validate(json.loads(text))
        return from_document(doc), doc.binarization
    except (json.JSONDecodeError, ValidationError, ValueError) as e:
        raise DataError(f"Model JSON tidak valid: {e}") from e


def save_committee(dc: DecisionCommittee, path: str | Path, binarization: dict | None = None) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(dumps_committee(dc, binarization) + "\n", encoding="utf-8")
    logger.info(f"[MODEL] ✅ Model disimpan → {path} ({len(dc.rules)} rules)")
    return path


def load_committee(path: str | Path) -> tuple[DecisionCommittee, dict | None]:
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"File model tidak ditemukan: {path}")
    return loads_committee(path.read_text(encoding="utf-8"))
