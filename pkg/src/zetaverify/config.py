"""Run configuration: defaults, key=value config files, CLI overrides."""

from __future__ import annotations

import os
from dataclasses import dataclass, field, fields

CACHE_DIR_ENV = "ZETAVERIFY_CACHE_DIR"


class ConfigError(Exception):
    pass


@dataclass
class RunConfig:
    t_max: float | None = None
    n_max: int | None = None
    tol: float = 1e-9
    oversample: int = 8
    em_terms: int = 50
    em_order: int = 8
    quad_nodes: int = 12
    xi_floor: float = 1e-8
    cache_path: str | None = None
    report_format: str = "json"
    injected_zero: complex | None = None  # test-only fault fixture

    def validate(self, need: str | None = None) -> "RunConfig":
        if need == "t_max" and (self.t_max is None or self.n_max is not None):
            raise ConfigError("this command needs t_max (and not n_max)")
        if need == "n_max" and (self.n_max is None or self.t_max is not None):
            raise ConfigError("this command needs n_max (and not t_max)")
        if self.t_max is not None and self.n_max is not None:
            raise ConfigError("set exactly one of t_max / n_max")
        if self.tol < 1e-12:
            raise ConfigError("tol must be >= 1e-12")
        if self.oversample < 4:
            raise ConfigError("oversample must be >= 4")
        if self.em_terms < 10:
            raise ConfigError("em_terms must be >= 10")
        if not 0 <= self.em_order <= 12:
            raise ConfigError("em_order must be in [0, 12]")
        if self.quad_nodes < 2:
            raise ConfigError("quad_nodes must be >= 2")
        if self.xi_floor <= 0:
            raise ConfigError("xi_floor must be positive")
        if self.report_format not in ("json", "csv"):
            raise ConfigError("report_format must be json or csv")
        return self

    def resolved_cache_path(self) -> str:
        if self.cache_path:
            return self.cache_path
        base = os.environ.get(CACHE_DIR_ENV, ".")
        return os.path.join(base, "zeros.csv")

    def snapshot(self) -> dict:
        out = {}
        for f in fields(self):
            v = getattr(self, f.name)
            if isinstance(v, complex):
                v = f"{v.real}:{v.imag}"
            out[f.name] = v
        return out


_FLOAT_KEYS = {"t_max", "tol", "xi_floor"}
_INT_KEYS = {"n_max", "oversample", "em_terms", "em_order", "quad_nodes"}
_STR_KEYS = {"cache_path", "report_format"}


def apply_config_file(cfg: RunConfig, path: str) -> RunConfig:
    """Load key=value defaults (one per line, # comments) into cfg."""
    try:
        with open(path) as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    for lineno, line in enumerate(lines, 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected key=value")
        key, _, raw = line.partition("=")
        key, raw = key.strip(), raw.strip()
        try:
            if key in _FLOAT_KEYS:
                setattr(cfg, key, float(raw))
            elif key in _INT_KEYS:
                setattr(cfg, key, int(raw))
            elif key in _STR_KEYS:
                setattr(cfg, key, raw)
            else:
                raise ConfigError(f"{path}:{lineno}: unknown key {key!r}")
        except ValueError as exc:
            raise ConfigError(f"{path}:{lineno}: bad value for {key}: {raw}") from exc
    return cfg
