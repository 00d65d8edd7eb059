"""
2-division cubic and the cubic field F it cuts out.

The cubic is 16*g(x/4) where g(x) = 4x^3 + b2 x^2 + 2 b4 x + b6 is the
right-hand side of (2y + a1 x + a3)^2 = g(x). Its roots are 4 times the
x-coordinates of the 2-torsion points and its discriminant is 2^8 * disc.
"""

from functools import lru_cache
from typing import Tuple

import numpy as np
from sympy import Poly, ZZ, divisors
from sympy.abc import x
from sympy.polys.numberfields.basis import round_two

from twistlab.apps.curves.models import CurveModel, TwoDivisionData
from twistlab.utils.exceptions import PreconditionError


def two_division_cubic(curve: CurveModel) -> Tuple[int, int, int, int]:
    inv = curve.invariants
    return (1, inv['b2'], 8 * inv['b4'], 16 * inv['b6'])


def _has_rational_root(cubic: Tuple[int, int, int, int]) -> bool:
    # monic, so rational roots are integers dividing the constant term
    c0 = cubic[3]
    if c0 == 0:
        return True
    for d in divisors(abs(c0)):
        for r in (d, -d):
            if ((r + cubic[1]) * r + cubic[2]) * r + c0 == 0:
                return True
    return False


@lru_cache(maxsize=256)
def two_division_data(curve: CurveModel) -> TwoDivisionData:
    cubic = two_division_cubic(curve)
    irreducible = not _has_rational_root(cubic)
    field_disc = None
    if irreducible:
        _, field_disc = round_two(Poly(list(cubic), x, domain=ZZ))
        field_disc = int(field_disc)
    return TwoDivisionData(cubic=cubic, cubic_disc=2 ** 8 * curve.disc,
                           is_irreducible=irreducible, field_disc=field_disc)


def roots_mod(cubic: Tuple[int, int, int, int], q: int) -> np.ndarray:
    xs = np.arange(q, dtype=np.int64)
    c3, c2, c1, c0 = (c % q for c in cubic)
    values = (((c3 * xs + c2) % q * xs + c1) % q * xs + c0) % q
    return xs[values == 0]


def is_inert_in_F(curve: CurveModel, q: int) -> bool:
    """A cubic unramified at q has a unique prime above q iff it has no root mod q."""
    data = two_division_data(curve)
    if not data.is_irreducible:
        raise PreconditionError(f"{curve.name}: 2-division cubic is reducible, F is not a field")
    if q == 2 or data.cubic_disc % q == 0 or curve.conductor % q == 0:
        raise PreconditionError(f"{curve.name}: q={q} is 2, bad, or divides the cubic discriminant")
    return roots_mod(data.cubic, q).size == 0
