# cli/models.py
"""Scan requests and their summaries."""

from dataclasses import dataclass, field
from typing import Optional, Tuple

SIGNS = ('any', '+', '-')
FORMATS = ('json', 'csv')

# exit codes of the batch commands
EXIT_VERIFIED = 0
EXIT_FAILURE = 1
EXIT_UNMET = 2
EXIT_VIOLATED = 3


@dataclass(frozen=True)
class ScanSpec:
    theorem_id: str
    # corpus label; None scans the theorem's default family
    label: Optional[str] = None
    sign: str = 'any'
    max_primes: int = 1
    prime_bound: int = 50
    # '+'-joined prime predicate, see cli._services.primes
    predicate: Optional[str] = None
    M_bound: Optional[int] = None
    output: str = 'json'
    parallelism: int = 1


@dataclass(frozen=True)
class ScanSummary:
    theorem_id: str
    curves: Tuple[str, ...]
    total: int = 0
    hypotheses_met: int = 0
    conclusions_held: int = 0
    violations: Tuple[str, ...] = field(default=(), compare=False)

    @property
    def exit_code(self) -> int:
        if self.violations:
            return EXIT_VIOLATED
        if self.hypotheses_met < self.total:
            return EXIT_UNMET
        return EXIT_VERIFIED
