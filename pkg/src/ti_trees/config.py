"""Runtime knobs shared by the service and the CLI.

Environment overrides (all optional):

    TI_TREES_FORMAT        default output format, "text" or "json"
    TI_TREES_JOBS          worker threads for enumeration/certification
    TI_TREES_MAX_ORACLE_N  largest order the BFS oracle will accept
    TI_TREES_MAX_BOX       largest box the brute-force solver will scan
"""

from __future__ import annotations

import os
from dataclasses import dataclass

from .diophantine import DEFAULT_BOX_CAP

DEFAULT_ORACLE_CAP = 400


@dataclass(frozen=True)
class RunConfig:
    output_format: str = "text"
    jobs: int = 1
    max_oracle_n: int = DEFAULT_ORACLE_CAP
    max_box: int = DEFAULT_BOX_CAP

    def __post_init__(self) -> None:
        if self.output_format not in ("text", "json"):
            raise ValueError("output format must be 'text' or 'json'")
        if self.jobs < 1 or self.max_oracle_n < 1 or self.max_box < 1:
            raise ValueError("all caps must be positive")

    @classmethod
    def from_env(cls, **overrides: object) -> "RunConfig":
        values: dict[str, object] = {}
        env = os.environ
        if "TI_TREES_FORMAT" in env:
            values["output_format"] = env["TI_TREES_FORMAT"]
        for key, name in (
            ("TI_TREES_JOBS", "jobs"),
            ("TI_TREES_MAX_ORACLE_N", "max_oracle_n"),
            ("TI_TREES_MAX_BOX", "max_box"),
        ):
            if key in env:
                values[name] = int(env[key])
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)  # type: ignore[arg-type]
