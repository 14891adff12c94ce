"""Run configuration: defaults, optional key = value file, environment overrides."""

from __future__ import annotations

import os
from dataclasses import dataclass, fields, replace
from pathlib import Path
from typing import Optional

from .diffcalc import DEFAULT_K_BUDGET
from .norms import FLOAT_TOL
from .search import DEFAULT_D_BUDGET
from .verify import DEFAULT_CROSSOVER_BUDGET

FORMATS = ("human", "json", "csv")
ENV_PREFIX = "DISCREG_"


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    float_tol: float = FLOAT_TOL
    quad_tol: float = 1e-9
    k_budget: int = DEFAULT_K_BUDGET
    d_budget: int = DEFAULT_D_BUDGET
    crossover_budget: int = DEFAULT_CROSSOVER_BUDGET
    workers: int = 1
    format: str = "human"
    seed: int = 0
    be_c: float = 1.0
    timing: bool = False

    def __post_init__(self):
        for name in ("k_budget", "d_budget", "crossover_budget", "workers"):
            if getattr(self, name) < 1:
                raise ConfigError(f"{name} must be positive")
        if self.float_tol <= 0 or self.quad_tol <= 0:
            raise ConfigError("tolerances must be positive")
        if self.format not in FORMATS:
            raise ConfigError(f"format must be one of {', '.join(FORMATS)}")
        if self.be_c < 1:
            raise ConfigError("be_c must be >= 1")

    def with_overrides(self, **kw) -> "RunConfig":
        return replace(self, **{k: v for k, v in kw.items() if v is not None})


def _coerce(name: str, text: str):
    kind = {f.name: f.type for f in fields(RunConfig)}[name]
    text = text.strip()
    try:
        if kind == "bool":
            if text.lower() not in ("true", "false", "1", "0", "yes", "no"):
                raise ValueError(text)
            return text.lower() in ("true", "1", "yes")
        if kind == "int":
            return int(text)
        if kind == "float":
            return float(text)
    except ValueError:
        raise ConfigError(f"bad value for {name}: {text!r}") from None
    return text


def parse_config_text(text: str) -> dict:
    known = {f.name for f in fields(RunConfig)}
    out = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected key = value")
        key, val = (s.strip() for s in line.split("=", 1))
        if key not in known:
            raise ConfigError(f"line {lineno}: unknown key {key!r}")
        out[key] = _coerce(key, val)
    return out


def env_overrides(environ=None) -> dict:
    environ = os.environ if environ is None else environ
    out = {}
    for f in fields(RunConfig):
        key = ENV_PREFIX + f.name.upper()
        if key in environ:
            out[f.name] = _coerce(f.name, environ[key])
    return out


def load_config(path: Optional[str] = None, environ=None) -> RunConfig:
    """Defaults, then the config file, then DISCREG_* environment variables."""
    values = {}
    if path is not None:
        values.update(parse_config_text(Path(path).read_text()))
    values.update(env_overrides(environ))
    return RunConfig(**values)
