# descent/models.py
"""Neumann-Setzer pairs, Selmer groups and BSD ledgers."""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Optional, Tuple

from twistlab.apps.curves.models import CurveModel
from twistlab.utils.arith import ord2

# None is the point at infinity
Point = Optional[Tuple[Fraction, Fraction]]

KINDS = ('phi', 'phihat', 'two(A)', "two(A')")


@dataclass(frozen=True)
class NSPair:
    u: int
    p: int
    A: CurveModel
    A_prime: CurveModel
    # radicands of the 2-division fields: Q(i) for A, Q(sqrt p) for A'
    field_A: int
    field_A_prime: int

    def model(self, which: str, M: int) -> Tuple[int, int]:
        """(a, b) of the twisted model y^2 = x^3 + a x^2 + b x."""
        if which == 'A':
            return -2 * self.u * M, self.p * M * M
        return 4 * self.u * M, -256 * M * M

    def __str__(self) -> str:
        return f"Neumann-Setzer pair p={self.p} (u={self.u})"


@dataclass(frozen=True)
class NSTwistClass:
    M: int
    epsilon: int
    R_plus: Tuple[int, ...]
    R_minus: Tuple[int, ...]
    N_plus: Tuple[int, ...]
    N_minus: Tuple[int, ...]

    @staticmethod
    def _prod(primes: Tuple[int, ...]) -> int:
        out = 1
        for q in primes:
            out *= q
        return out

    @property
    def R(self) -> int:
        return self._prod(self.R_plus + self.R_minus)

    @property
    def N(self) -> int:
        return self._prod(self.N_plus + self.N_minus)

    @property
    def M_plus(self) -> int:
        return self._prod(self.R_plus + self.N_plus)

    @property
    def counts(self) -> Dict[str, int]:
        return {
            'r': len(self.R_plus) + len(self.R_minus),
            'k': len(self.N_plus) + len(self.N_minus),
            'r_plus': len(self.R_plus),
            'r_minus': len(self.R_minus),
            'k_plus': len(self.N_plus),
            'k_minus': len(self.N_minus),
        }


@dataclass(frozen=True)
class SelmerDescriptor:
    kind: str
    M: int
    # square-free representatives in Q(2, M); empty for the two(.) kinds
    elements: Tuple[int, ...]
    # None when the exact sequence and parity leave more than one order
    order: Optional[int]
    quotient_order: Optional[int]
    bounds: Tuple[int, int]
    witnesses: Dict[int, int] = field(default_factory=dict, hash=False, compare=False)

    @property
    def pinned(self) -> bool:
        return self.order is not None

    def __contains__(self, d: int) -> bool:
        return d in self.elements


@dataclass(frozen=True)
class TamagawaData:
    M: int
    which: str
    factors: Dict[int, int] = field(hash=False, compare=False)
    real_components: int = 1

    @property
    def ord2_total(self) -> int:
        return sum(int(ord2(c)) for c in self.factors.values())


@dataclass(frozen=True)
class AqVerdict:
    p: int
    q: int
    a_q: int
    predicted: str
    holds: bool


@dataclass(frozen=True)
class BSDLedger:
    p: int
    M: int
    lalg_ord2: int
    tamagawa: Dict[int, int] = field(hash=False, compare=False)
    tamagawa_ord2_total: int = 0
    torsion_order: int = 1
    sha2_prediction: int = 0
    # 0 when the 2-Selmer quotient is trivial; None when the descent does not decide
    descent_sha2: Optional[int] = None
    rank_zero: bool = False
    passed: bool = False
    cited: Tuple[str, ...] = ()

    def __bool__(self) -> bool:
        return self.passed


@dataclass(frozen=True)
class DenominatorCheck:
    p: int
    lalg: Fraction
    a_2: int
    x_plus_half: Fraction
    x_minus_half: Fraction
    passed: bool


@dataclass(frozen=True)
class ConjectureRow:
    M: int
    primes: Tuple[int, ...]
    ord2_S_chi: float
    ord2_S_prime: float
    ord2_lalg: float
    hypothesis: bool
    conclusion: bool


@dataclass(frozen=True)
class ConjectureReport:
    p: int
    r: int
    bound: int
    base_ord2: float
    rows: Tuple[ConjectureRow, ...] = ()
