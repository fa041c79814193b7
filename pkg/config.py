import os
from dotenv import load_dotenv

# load .env jika ada
load_dotenv()

def _env(key, default=None, cast=str):
    val = os.getenv(key, default)
    if cast is int or cast is float:
        try:
            return cast(val)
        except Exception:
            return cast(default) if default is not None else None
    return val

CONFIG = {
    "widc": {
        # o = optimistic, p = pessimistic, none = tanpa pruning
        "mode": _env("WIDC_MODE", "p"),
        "delta": _env("WIDC_DELTA", 0.05, float),
        "resample_target": _env("WIDC_RESAMPLE", 5000, int),
        "seed": _env("WIDC_SEED", 0, int),
        "folds": _env("WIDC_FOLDS", 10, int),
        "max_rules": _env("WIDC_MAX_RULES", 256, int),
        "max_literals": _env("WIDC_MAX_LITERALS", 32, int)
    },
    "xd6": {
        "examples": _env("XD6_EXAMPLES", 512, int),
        "noise_step": _env("XD6_NOISE_STEP", 0.02, float),
        "noise_max": _env("XD6_NOISE_MAX", 0.40, float)
    },
    "verify": {
        "seed": _env("VERIFY_SEED", 2024, int),
        "vector_instances": _env("VERIFY_VECTOR_INSTANCES", 500, int),
        "two_class_points": _env("VERIFY_TWO_CLASS_POINTS", 1000, int),
        "bound_instances": _env("VERIFY_BOUND_INSTANCES", 200, int),
        "submodular_instances": _env("VERIFY_SUBMODULAR_INSTANCES", 1000, int),
        "queyranne_instances": _env("VERIFY_QUEYRANNE_INSTANCES", 100, int)
    },
    "log": {
        "dir": _env("LOG_DIR", os.path.join(os.path.dirname(__file__), "logs")),
        "level": _env("LOG_LEVEL", "INFO")
    }
}
