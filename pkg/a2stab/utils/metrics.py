"""
In-process counters for a2stab.

One process runs one CLI command, so the counters describe the work that command
did: quadrature evaluations and node doublings, rule-cache traffic, continuation
steps of the conformal maps, heart tilts, and errors keyed by command and code.
``a2stab --metrics`` prints :meth:`_Metrics.to_dict` to stderr.
"""

from collections import Counter
from dataclasses import dataclass, field
from time import monotonic
from typing import Any


@dataclass
class _Metrics:
    started: float = field(default_factory=monotonic)
    work: Counter[str] = field(default_factory=Counter)
    commands_total: dict[str, int] = field(default_factory=dict)
    errors_total: dict[str, int] = field(default_factory=dict)

    def record_command(self, name: str) -> None:
        self.commands_total[name] = self.commands_total.get(name, 0) + 1

    def record_error(self, name: str, code: str) -> None:
        key = f"{name}.{code}"
        self.errors_total[key] = self.errors_total.get(key, 0) + 1

    def record_cache_hit(self) -> None:
        self.work["cache_hits"] += 1

    def record_cache_miss(self) -> None:
        self.work["cache_misses"] += 1

    def record_quadrature(self, doublings: int = 0) -> None:
        self.work.update(quadratures=1, doublings=doublings)

    def record_step(self, bisections: int = 0) -> None:
        self.work.update(steps=1, bisections=bisections)

    def record_tilt(self) -> None:
        self.work["tilts"] += 1

    def reset(self) -> None:
        self.started = monotonic()
        self.work.clear()
        self.commands_total.clear()
        self.errors_total.clear()

    def to_dict(self) -> dict[str, Any]:
        hits, misses = self.work["cache_hits"], self.work["cache_misses"]
        lookups = hits + misses
        return {
            "uptime_seconds": round(monotonic() - self.started, 2),
            "cache": {
                "hits": hits,
                "misses": misses,
                "hit_rate": round(hits / lookups, 4) if lookups else None,
            },
            "quadrature": {
                "evaluations": self.work["quadratures"],
                "doublings": self.work["doublings"],
            },
            "continuation": {"steps": self.work["steps"], "bisections": self.work["bisections"]},
            "tilts": self.work["tilts"],
            "commands_total": dict(self.commands_total),
            "errors_total": dict(self.errors_total),
        }


metrics = _Metrics()
