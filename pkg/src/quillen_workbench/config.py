"""Run configuration: defaults, overridden by environment variables, overridden by flags."""

from __future__ import annotations

import os
from dataclasses import dataclass, replace

FORMATS = ("json", "csv", "ascii")
MODES = ("skeleton", "full")

ENV_MAX_DEGREE = "WORKBENCH_MAX_DEGREE"
ENV_MAX_ORDER = "WORKBENCH_MAX_ORDER"
ENV_MAX_RANK = "WORKBENCH_MAX_RANK"


@dataclass(frozen=True)
class RunConfig:
    max_degree: int = 12
    max_group_order: int = 32768
    max_ea_rank: int = 6
    mode: str = "skeleton"
    output_format: str = "json"
    seed: int = 0

    def __post_init__(self) -> None:
        for name in ("max_degree", "max_group_order", "max_ea_rank"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if self.output_format not in FORMATS:
            raise ValueError(f"format must be one of {FORMATS}")
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}")

    @classmethod
    def from_env(cls, environ: dict[str, str] | None = None) -> RunConfig:
        env = os.environ if environ is None else environ
        kwargs = {}
        for var, name in ((ENV_MAX_DEGREE, "max_degree"), (ENV_MAX_ORDER, "max_group_order"), (ENV_MAX_RANK, "max_ea_rank")):
            if env.get(var):
                try:
                    kwargs[name] = int(env[var])
                except ValueError as exc:
                    raise ValueError(f"{var} must be an integer, got {env[var]!r}") from exc
        return cls(**kwargs)

    def with_overrides(self, **overrides) -> RunConfig:
        return replace(self, **{k: v for k, v in overrides.items() if v is not None})
