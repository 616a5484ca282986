"""Shared mining-run plumbing: configuration, budgets, per-length reports."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Optional

from .graph import DirectedGraph

REPAIRED = "repaired"
LITERAL = "literal"


@dataclass(frozen=True)
class MiningConfig:
    """Limits and behaviour switches for a mining run.

    ``fidelity`` selects between the corrected backward search (default) and
    a literal transcription of its uncorrected form, kept for comparison.
    """

    max_len: int
    max_programs: Optional[int] = None
    max_triples: Optional[int] = None
    time_budget: Optional[float] = None
    fidelity: str = REPAIRED

    def __post_init__(self):
        if self.max_len < 0:
            raise ValueError("max_len must be non-negative")
        if self.fidelity not in (REPAIRED, LITERAL):
            raise ValueError(f"unknown fidelity {self.fidelity!r}")
        for name in ("max_programs", "max_triples"):
            value = getattr(self, name)
            if value is not None and value < 1:
                raise ValueError(f"{name} must be positive")


class Budget:
    """Mutable resource meter shared across the levels of one mining run."""

    def __init__(self, config: MiningConfig):
        self._max_programs = config.max_programs
        self._max_triples = config.max_triples
        self._deadline = None
        if config.time_budget is not None:
            self._deadline = time.monotonic() + config.time_budget
        self.triples = 0
        self.programs = 0
        self.tripped = False

    def charge_triple(self) -> bool:
        """Account for one expanded search state; False once over budget."""
        if self.tripped:
            return False
        self.triples += 1
        if self._max_triples is not None and self.triples > self._max_triples:
            self.tripped = True
        elif self._deadline is not None and time.monotonic() > self._deadline:
            self.tripped = True
        return not self.tripped

    def charge_program(self) -> bool:
        if self.tripped:
            return False
        self.programs += 1
        if self._max_programs is not None and self.programs >= self._max_programs:
            self.tripped = True
        return True


@dataclass
class MiningReport:
    """Result of mining one program length."""

    engine: str
    mode: str
    length: int
    programs: list
    exhausted: bool
    stats: dict = field(default_factory=dict)

    def to_dict(self, g: DirectedGraph) -> dict:
        rendered = []
        for p in self.programs:
            if isinstance(p, tuple):
                rendered.append([g.color_names[c] for c in p])
            else:
                rendered.append(p.to_dict(g))
        return {
            "engine": self.engine,
            "mode": self.mode,
            "length": self.length,
            "exhausted": self.exhausted,
            "programs": rendered,
            "stats": dict(self.stats),
        }
