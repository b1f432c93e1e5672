"""Run configuration: defaults, optional key=value file, flag overrides.

Precedence, lowest to highest: built-in defaults, the file named by the
EFRAC_CONFIG environment variable, explicit overrides (CLI flags).
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import Mapping

from .errors import ConfigError

CONFIG_ENV_VAR = "EFRAC_CONFIG"
MIN_MEMORY_BUDGET = 1 << 20
MIN_PRECISION_BITS = 64


def default_cache_dir() -> Path:
    root = os.environ.get("XDG_CACHE_HOME") or os.path.join(
        os.path.expanduser("~"), ".cache"
    )
    return Path(root) / "efrac"


@dataclass(frozen=True)
class RunConfig:
    memory_budget_bytes: int = 8 << 30
    cache_dir: Path = field(default_factory=default_cache_dir)
    log_precision_bits: int = 64
    output_format: str = "csv"


_COERCERS = {
    "memory_budget_bytes": int,
    "cache_dir": Path,
    "log_precision_bits": int,
    "output_format": str,
}


def _parse_config_file(path: str) -> dict:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    values: dict = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, val = line.partition("=")
        if not sep:
            raise ConfigError(f"{path}:{lineno}: expected key=value, got {line!r}")
        key = key.strip()
        val = val.strip()
        coerce = _COERCERS.get(key)
        if coerce is None:
            raise ConfigError(f"{path}:{lineno}: unknown config key {key!r}")
        try:
            values[key] = coerce(val)
        except ValueError as exc:
            raise ConfigError(f"{path}:{lineno}: bad value for {key}: {val!r}") from exc
    return values


def _validate(cfg: RunConfig) -> RunConfig:
    if cfg.memory_budget_bytes < MIN_MEMORY_BUDGET:
        raise ConfigError(
            f"memory budget must be at least {MIN_MEMORY_BUDGET} bytes, "
            f"got {cfg.memory_budget_bytes}"
        )
    if cfg.log_precision_bits < MIN_PRECISION_BITS:
        raise ConfigError(
            f"log precision must be at least {MIN_PRECISION_BITS} bits, "
            f"got {cfg.log_precision_bits}"
        )
    if cfg.output_format not in ("csv", "json"):
        raise ConfigError(f"output format must be csv or json, got {cfg.output_format!r}")
    return cfg


def load_config(
    overrides: Mapping | None = None, env: Mapping[str, str] = os.environ
) -> RunConfig:
    """Resolve the effective configuration; None-valued overrides are skipped."""
    data = {f.name: getattr(RunConfig(), f.name) for f in fields(RunConfig)}
    path = env.get(CONFIG_ENV_VAR)
    if path:
        data.update(_parse_config_file(path))
    if overrides:
        for key, val in overrides.items():
            if key not in data:
                raise ConfigError(f"unknown config key {key!r}")
            if val is not None:
                data[key] = _COERCERS[key](val)
    return _validate(RunConfig(**data))
