# lvalues/models.py
"""Exact central values, S-sums and theorem verdicts."""

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Optional, Tuple

from twistlab.apps.curves.models import CurveModel, TwistDescriptor
from twistlab.apps.modsym.models import SymbolPair
from twistlab.utils.arith import ord2


@dataclass(frozen=True)
class AlgLValue:
    """L(E,1)/Omega as an exact rational; ord2 is math.inf at 0."""
    value: Fraction
    ord2: float
    # prime used in the Hecke relation, or the bridge factor for twists
    auxiliary_prime: Optional[int] = None
    bridge: Optional[Fraction] = None

    @classmethod
    def of(cls, value, **extra) -> "AlgLValue":
        value = Fraction(value)
        return cls(value=value, ord2=ord2(value), **extra)

    @property
    def is_zero(self) -> bool:
        return self.value == 0

    def __str__(self) -> str:
        ord_text = "inf" if self.ord2 == math.inf else str(int(self.ord2))
        return f"{self.value} (ord2 {ord_text})"


@dataclass(frozen=True)
class SumTriple:
    m: int
    S: SymbolPair
    S_prime: SymbolPair
    # weighted by the Kronecker character of the +-m that is 1 mod 4
    S_chi: SymbolPair


@dataclass(frozen=True)
class Verdict:
    theorem_id: str
    hypotheses_met: bool
    conclusion_holds: Optional[bool]
    observed_ord2: Optional[float] = None
    expected: str = ""
    reasons: Tuple[str, ...] = ()

    def __bool__(self) -> bool:
        return self.hypotheses_met and bool(self.conclusion_holds)

    @property
    def status(self) -> str:
        if not self.hypotheses_met:
            return "hypotheses-unmet"
        return "verified" if self.conclusion_holds else "violated"


@dataclass(frozen=True)
class LemmaVerdict:
    lemma_id: str
    m: int
    hypotheses_met: bool
    holds: bool
    detail: str = ""

    def __bool__(self) -> bool:
        return self.holds


@dataclass(frozen=True)
class TwistReport:
    curve: CurveModel
    twist: TwistDescriptor
    lalg: AlgLValue
    sums: SumTriple
    root_number: int
    tamagawa_ord2: int
    # sum over k = 1..(m-1)/2 of chi(k) s_k (M > 0) or chi(k) t_k (M < 0)
    half_range_sum: Fraction
    theorem_verdicts: Dict[str, Verdict] = field(default_factory=dict)
