# analytic/models.py
"""Floating-point results. Values are mpmath numbers at the working precision they were computed with."""

from dataclasses import dataclass
from typing import Any, Optional


@dataclass(frozen=True)
class PeriodData:
    omega_plus: Any
    omega_minus: Any
    lattice_type: int
    # decimal digits the AGM was run at
    precision: int

    @property
    def area(self):
        if self.lattice_type == 1:
            return self.omega_plus * self.omega_minus
        return self.omega_plus * self.omega_minus / 2


@dataclass(frozen=True)
class LSeriesValue:
    value: Any
    nterms: int
    tail_bound: Any
    conductor: int

    def __float__(self) -> float:
        return float(self.value)


@dataclass(frozen=True)
class CrossValidation:
    """Outcome of comparing an exact L-value against the series."""
    label: str
    M: Optional[int]
    exact: Any
    numeric: Any
    discrepancy: float
    tolerance: float
    passed: bool

    def __bool__(self) -> bool:
        return self.passed

    def __str__(self) -> str:
        verdict = "pass" if self.passed else "FAIL"
        twist = f" twisted by {self.M}" if self.M is not None else ""
        return (f"{self.label}{twist}: exact {float(self.exact):.12g}, numeric {float(self.numeric):.12g}, "
                f"discrepancy {self.discrepancy:.3g} (tolerance {self.tolerance:g}) {verdict}")
