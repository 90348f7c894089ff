"""Verdict records and deterministic per-trial randomness."""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass, field
from typing import Any, Dict, Optional

STRUCTURAL = "structural"
RANDOMIZED = "randomized"
EXHAUSTIVE = "exhaustive"


@dataclass
class CheckReport:
    """Outcome of one decision procedure.

    A false verdict for a universally quantified property carries a concrete
    witness; a true verdict from a randomized method only means no
    counterexample turned up in ``trials`` draws under ``seed``.
    """

    verdict: bool
    witness: Any = None
    trials: int = 0
    seed: Optional[int] = None
    method: str = STRUCTURAL
    note: str = ""
    details: Dict[str, Any] = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.verdict

    def describe(self) -> str:
        if self.method == RANDOMIZED and self.verdict:
            return f"no counterexample in {self.trials} trials, seed {self.seed}"
        return f"{self.method} verdict {str(self.verdict).lower()}"


def derive_seed(seed: int, *keys: int) -> int:
    """Stable 64-bit seed for ``(seed, *keys)``, independent of hash randomization."""
    h = hashlib.sha256(repr((int(seed),) + tuple(int(k) for k in keys)).encode())
    return int.from_bytes(h.digest()[:8], "big")


def trial_rng(seed: int, *keys: int) -> random.Random:
    return random.Random(derive_seed(seed, *keys))
