"""
Rational torsion.

Torsion points are found exhaustively on the integral short model
Y^2 = X^3 + A X + B (A = -27 c4, B = -54 c6): by Lutz-Nagell they are
integral with Y = 0 or Y^2 dividing 4A^3 + 27B^2. The gcd of #E(F_q) over
good primes is an independent upper bound that must be divisible by the
count found.
"""

import math
from fractions import Fraction
from functools import lru_cache
from typing import List, Optional, Tuple

from sympy import Poly, divisors, factorint
from sympy.abc import x as X
from sympy.ntheory import primerange

from twistlab.apps.curves._services.reduction import count_points
from twistlab.apps.curves.models import CurveModel
from twistlab.utils.exceptions import TorsionError
from twistlab.utils.logger import TwistLogger

logger = TwistLogger(__name__)

Point = Optional[Tuple[Fraction, Fraction]]
BOUND_PRIMES = 20
MAX_TORSION_ORDER = 12


def _add(P: Point, Q: Point, A: int) -> Point:
    if P is None:
        return Q
    if Q is None:
        return P
    x1, y1 = P
    x2, y2 = Q
    if x1 == x2:
        if y1 + y2 == 0:
            return None
        slope = (3 * x1 * x1 + A) / (2 * y1)
    else:
        slope = (y2 - y1) / (x2 - x1)
    x3 = slope * slope - x1 - x2
    return (x3, slope * (x1 - x3) - y1)


def _has_finite_order(P: Point, A: int) -> bool:
    Q = P
    for _ in range(MAX_TORSION_ORDER):
        if Q is None:
            return True
        if Q[0].denominator != 1 or Q[1].denominator != 1:
            # torsion multiples stay integral
            return False
        Q = _add(Q, P, A)
    return Q is None


def _integer_roots(coeffs: List[int]) -> List[int]:
    roots = Poly(coeffs, X).ground_roots()
    return sorted(int(r) for r in roots if r.is_integer)


def torsion_points(curve: CurveModel) -> List[Tuple[int, int]]:
    """Affine torsion points on the short model, sorted."""
    inv = curve.invariants
    A, B = -27 * inv['c4'], -54 * inv['c6']
    D = 4 * A ** 3 + 27 * B ** 2
    candidates = set()
    for x0 in _integer_roots([1, 0, A, B]):
        candidates.add((x0, 0))
    square_part = 1
    for p, e in factorint(abs(D)).items():
        square_part *= p ** (e // 2)
    for y in divisors(square_part):
        for x0 in _integer_roots([1, 0, A, B - y * y]):
            candidates.add((x0, y))
            candidates.add((x0, -y))
    return sorted(pt for pt in candidates
                  if _has_finite_order((Fraction(pt[0]), Fraction(pt[1])), A))


def torsion_bound(curve: CurveModel, count: int = BOUND_PRIMES) -> int:
    bound = 0
    found = 0
    for q in primerange(3, 10 ** 6):
        if not curve.is_good(q):
            continue
        bound = math.gcd(bound, count_points(curve, q))
        found += 1
        if found == count:
            break
    return bound


@lru_cache(maxsize=256)
def torsion_order(curve: CurveModel) -> int:
    order = 1 + len(torsion_points(curve))
    bound = torsion_bound(curve)
    if bound % order:
        raise TorsionError(
            f"{curve.name}: {order} torsion points found but #E(F_q) gcd bound is {bound}"
        )
    if bound != order:
        logger.debug(f"{curve.name}: torsion {order}, reduction gcd bound {bound}")
    return order
