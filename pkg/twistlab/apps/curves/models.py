# curves/models.py
"""Value types for elliptic curves over Q. Nothing here touches the database."""

from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple

from twistlab.utils.arith import is_squarefree, kronecker
from twistlab.utils.exceptions import PreconditionError


def weierstrass_invariants(a1: int, a2: int, a3: int, a4: int, a6: int) -> Dict[str, int]:
    b2 = a1 * a1 + 4 * a2
    b4 = 2 * a4 + a1 * a3
    b6 = a3 * a3 + 4 * a6
    b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4
    c4 = b2 * b2 - 24 * b4
    c6 = -b2 ** 3 + 36 * b2 * b4 - 216 * b6
    disc = -b2 * b2 * b8 - 8 * b4 ** 3 - 27 * b6 * b6 + 9 * b2 * b4 * b6
    return {'b2': b2, 'b4': b4, 'b6': b6, 'b8': b8, 'c4': c4, 'c6': c6, 'disc': disc}


@dataclass(frozen=True)
class CurveModel:
    """Globally minimal integral Weierstrass model. Build through services.minimalize."""
    a1: int
    a2: int
    a3: int
    a4: int
    a6: int
    conductor: int
    disc: int
    label: Optional[str] = None
    root_number: Optional[int] = None
    optimal: bool = False

    @property
    def coefficients(self) -> Tuple[int, int, int, int, int]:
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    @property
    def invariants(self) -> Dict[str, int]:
        return weierstrass_invariants(*self.coefficients)

    @property
    def lattice_type(self) -> int:
        # one real component (type 2) iff disc < 0
        return 1 if self.disc > 0 else 2

    @property
    def name(self) -> str:
        return self.label or "[" + ",".join(str(a) for a in self.coefficients) + "]"

    def is_good(self, q: int) -> bool:
        return self.disc % q != 0

    def __str__(self) -> str:
        return f"{self.name} (conductor {self.conductor})"


@dataclass(frozen=True)
class TwoDivisionData:
    # monic integer cubic, leading coefficient first: x^3 + b2 x^2 + 8 b4 x + 16 b6
    cubic: Tuple[int, int, int, int]
    cubic_disc: int
    is_irreducible: bool
    field_disc: Optional[int] = None

    def evaluate(self, x: int) -> int:
        c3, c2, c1, c0 = self.cubic
        return ((c3 * x + c2) * x + c1) * x + c0


@dataclass(frozen=True)
class PrimeClass:
    q: int
    a_q: int
    N_q: int
    inert_in_F: Optional[bool]
    q_mod4: int
    kronecker_flags: Dict[int, int] = field(default_factory=dict, hash=False, compare=False)


@dataclass(frozen=True)
class TwistDescriptor:
    """Square-free M = epsilon * q_1 ... q_r with M = 1 mod 4 and the character k -> (M/k)."""
    M: int
    epsilon: int
    primes: Tuple[int, ...]
    r: int

    def __post_init__(self) -> None:
        if self.M in (0, 1) or not is_squarefree(self.M):
            raise PreconditionError(f"twist M={self.M} must be square-free and different from 0, 1")
        if self.M % 4 != 1:
            raise PreconditionError(f"twist M={self.M} must be 1 mod 4")
        product = self.epsilon
        for q in self.primes:
            product *= q
        if product != self.M or list(self.primes) != sorted(set(self.primes)) or self.r != len(self.primes):
            raise PreconditionError(f"inconsistent twist descriptor for M={self.M}")

    @property
    def m(self) -> int:
        return abs(self.M)

    def chi(self, k: int) -> int:
        return kronecker(self.M, k)

    def __str__(self) -> str:
        return f"M={self.M}"
