"""Search budgets, overridable through ``BIASMAT_BUDGET``.

The variable holds ``ELEMENTS[,NODES]`` or ``elements=..,nodes=..``, e.g.
``BIASMAT_BUDGET=16`` or ``BIASMAT_BUDGET=elements=14,nodes=2e6``.
"""
from __future__ import annotations

import os
from dataclasses import dataclass

from .errors import InputError

ENV_VAR = "BIASMAT_BUDGET"


@dataclass(frozen=True)
class Budget:
    elements: int = 14
    nodes: int = 10**7

    @classmethod
    def from_env(cls) -> "Budget":
        raw = os.environ.get(ENV_VAR, "").strip()
        if not raw:
            return cls()
        return cls.parse(raw)

    @classmethod
    def parse(cls, raw: str) -> "Budget":
        fields = {}
        positional = ["elements", "nodes"]
        for i, tok in enumerate(t.strip() for t in raw.replace(":", ",").split(",") if t.strip()):
            if "=" in tok:
                key, _, val = tok.partition("=")
                key = key.strip().lower()
            elif i < len(positional):
                key, val = positional[i], tok
            else:
                raise InputError(f"cannot parse budget {raw!r}")
            if key not in ("elements", "nodes"):
                raise InputError(f"unknown budget field {key!r}")
            try:
                fields[key] = int(float(val))
            except ValueError:
                raise InputError(f"budget field {key} must be a number, got {val!r}") from None
        return cls(**fields)


def resolve(budget: Budget | None) -> Budget:
    return budget if budget is not None else Budget.from_env()
