from typing import Literal

from pydantic import BaseModel, Field, field_validator, model_validator

from config import CONFIG

PruningMode = Literal["o", "p", "none"]

_WIDC = CONFIG["widc"]


class PenaltyParams(BaseModel):
    delta: float = Field(default=_WIDC["delta"], gt=0.0, lt=1.0)
    resample_target: int = Field(default=_WIDC["resample_target"], gt=0)
    seed: int = _WIDC["seed"]


class RunConfig(BaseModel):
    mode: PruningMode = _WIDC["mode"]
    delta: float = Field(default=_WIDC["delta"], gt=0.0, lt=1.0)
    resample_target: int = Field(default=_WIDC["resample_target"], gt=0)
    seed: int = _WIDC["seed"]
    folds: int = Field(default=_WIDC["folds"], ge=2)
    max_rules: int = Field(default=_WIDC["max_rules"], ge=1)
    max_literals: int = Field(default=_WIDC["max_literals"], ge=1)
    data_path: str | None = None
    schema_path: str | None = None
    out_path: str | None = None

    @field_validator("mode", mode="before")
    @classmethod
    def _normalize_mode(cls, value):
        # alias panjang juga diterima: optimistic / pessimistic / ∅
        aliases = {"optimistic": "o", "pessimistic": "p", "∅": "none", "": "none"}
        return aliases.get(str(value).strip().lower(), str(value).strip().lower())

    def penalty_params(self, offset: int = 0) -> PenaltyParams:
        return PenaltyParams(delta=self.delta, resample_target=self.resample_target, seed=self.seed + offset)

    def with_seed(self, seed: int) -> "RunConfig":
        return self.model_copy(update={"seed": seed})


class FoldResult(BaseModel):
    fold: int
    error_pct: float
    r_dc: int
    l_dc: int
    contains_target: bool | None = None


class EvalReport(BaseModel):
    folds: list[FoldResult]
    mean_error_pct: float
    mean_r_dc: float
    mean_l_dc: float
    wall_time_sec: float
    seed: int
    config: RunConfig

    @classmethod
    def from_folds(cls, folds: list[FoldResult], wall_time_sec: float, config: RunConfig) -> "EvalReport":
        count = len(folds)
        return cls(
            folds=folds,
            mean_error_pct=sum(f.error_pct for f in folds) / count,
            mean_r_dc=sum(f.r_dc for f in folds) / count,
            mean_l_dc=sum(f.l_dc for f in folds) / count,
            wall_time_sec=wall_time_sec,
            seed=config.seed,
            config=config,
        )

    @model_validator(mode="after")
    def _means_match_folds(self):
        if not self.folds:
            raise ValueError("EvalReport butuh minimal satu fold")
        count = len(self.folds)
        checks = (
            (self.mean_error_pct, sum(f.error_pct for f in self.folds) / count),
            (self.mean_r_dc, sum(f.r_dc for f in self.folds) / count),
            (self.mean_l_dc, sum(f.l_dc for f in self.folds) / count),
        )
        if any(abs(reported - expected) > 1e-9 for reported, expected in checks):
            raise ValueError("Rata-rata report tidak sama dengan rata-rata fold")
        return self

    def target_rate(self) -> float | None:
        flags = [f.contains_target for f in self.folds if f.contains_target is not None]
        return sum(flags) / len(flags) if flags else None


class SweepRow(BaseModel):
    noise_kind: Literal["class", "attribute"]
    level: float
    mean_error_pct: float
    mean_l_dc: float
    mean_r_dc: float
    bayes_error_pct: float
    target_rate: float | None = None


class SuiteResult(BaseModel):
    name: str
    count: int
    failures: int
    max_deviation: float
    note: str = ""

    @property
    def passed(self) -> bool:
        return self.failures == 0


class VerifyReport(BaseModel):
    seed: int
    suites: list[SuiteResult]
    diagnostics: list[SuiteResult] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(suite.passed for suite in self.suites)
