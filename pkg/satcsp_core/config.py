from __future__ import annotations
import os, json, pathlib, logging

DEFAULTS = {
    "TUPLE_BUDGET": 10**6,
    "MAX_ORACLE_VARS": 24,
    "MAX_ORACLE_PRODUCT": 2**24,
    "MODEL_CAP": 1000,
    "FAMILY_CAP": 10**7,
    "WITNESS_CAP": 5,
    "LOG_LEVEL": "WARNING",
    "SEED": None,
}
_INT_KEYS = ("TUPLE_BUDGET","MAX_ORACLE_VARS","MAX_ORACLE_PRODUCT","MODEL_CAP","FAMILY_CAP","WITNESS_CAP","SEED")

def _as_int(v, fallback):
    try: return int(v)
    except (TypeError, ValueError): return fallback

def load_config(path: str = "config.json") -> dict:
    cfg = dict(DEFAULTS)
    p = pathlib.Path(path)
    if p.exists():
        try: cfg.update(json.loads(p.read_text(encoding="utf-8")))
        except Exception: pass
    e = os.environ
    for k in DEFAULTS:
        v = e.get(f"SATCSP_{k}")
        if v: cfg[k] = v
    for k in _INT_KEYS:
        if cfg.get(k) is not None:
            cfg[k] = _as_int(cfg[k], DEFAULTS[k])
    cfg["LOG_LEVEL"] = str(cfg.get("LOG_LEVEL") or "WARNING").upper()
    return cfg

def setup_logging(cfg: dict, verbose: bool = False) -> None:
    level = logging.DEBUG if verbose else getattr(logging, cfg.get("LOG_LEVEL", "WARNING"), logging.WARNING)
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")
