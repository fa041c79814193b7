import json
import logging
import time
from contextlib import contextmanager
from pathlib import Path

from pydantic import BaseModel


def banner(logger: logging.Logger, title: str):
    logger.info("=" * 60)
    logger.info(title)
    logger.info("=" * 60)


@contextmanager
def perf(logger: logging.Logger, label: str):
    start = time.time()
    yield
    logger.info(f"[PERF] {label}: {time.time() - start:.2f}s")


def derived_seed(seed: int, offset: int) -> int:
    """Seed turunan yang stabil (seed + offset), tidak tergantung urutan eksekusi."""
    return int(seed) + int(offset)


def noise_levels(step: float, limit: float) -> list[float]:
    count = int(round(limit / step)) + 1
    return [round(i * step, 10) for i in range(count)]


def write_json(path: str | Path, model: BaseModel) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(model.model_dump(mode="json"), indent=2, ensure_ascii=False) + "\n", encoding="utf-8")
    return path
