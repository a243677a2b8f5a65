"""Resource limits, overridable through ``COUNTERSIGN_*`` environment variables."""
from __future__ import annotations

import os
from dataclasses import dataclass, fields, replace


@dataclass(frozen=True)
class Limits:
    max_worlds: int = 64
    bound: int = 6               # saturation rounds
    recursion_limit: int = 10_000
    max_letters: int = 20        # truth-table letters for propositional instances
    chain_cap: int = 64          # derivation steps behind one assent fact

    @classmethod
    def from_env(cls, environ=None) -> "Limits":
        environ = os.environ if environ is None else environ
        out = cls()
        for f in fields(cls):
            raw = environ.get("COUNTERSIGN_" + f.name.upper())
            if raw is not None:
                try:
                    value = int(raw)
                except ValueError:
                    raise ValueError(f"COUNTERSIGN_{f.name.upper()} must be an integer") from None
                if value < 1:
                    raise ValueError(f"COUNTERSIGN_{f.name.upper()} must be positive")
                out = replace(out, **{f.name: value})
        return out
