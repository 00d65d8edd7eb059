"""
The Neumann-Setzer curves of prime conductor p = u^2 + 64 and the
2-isogenies between their twists.

For the descent the twists are taken on the non-minimal models
    A^(M):  y^2 = x^3 - 2uM x^2 + pM^2 x
    A'^(M): y^2 = x^3 + 4uM x^2 - 256M^2 x
with phi: A^(M) -> A'^(M) the quotient by (0, 0).
"""

import dataclasses
import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, List, Tuple

from sympy.ntheory import isprime, jacobi_symbol, primerange

from twistlab.apps.curves.services import a_p, minimalize, torsion_order
from twistlab.apps.descent.models import NSPair, NSTwistClass, Point
from twistlab.utils.arith import is_squarefree, odd_prime_factors, squarefree_part
from twistlab.utils.exceptions import PreconditionError
from twistlab.utils.logger import TwistLogger

logger = TwistLogger(__name__)

DIRECTIONS = ('phi', 'phihat')


@lru_cache(maxsize=64)
def ns_curves(u: int) -> NSPair:
    if u % 4 != 1:
        raise PreconditionError(f"u={u} must be 1 mod 4")
    p = u * u + 64
    if not isprime(p):
        raise PreconditionError(f"u={u} gives p={p}, which is not prime")

    A = minimalize((1, (u - 1) // 4, 0, 4, u), conductor=p, root_number=1)
    A_prime = minimalize((1, -(u - 1) // 4, 0, -1, 0), conductor=p, root_number=1)
    # A is the optimal curve of the class; the corpus only knows p = 73
    A = dataclasses.replace(A, label=A.label or f"NS{p}", optimal=True)
    A_prime = dataclasses.replace(A_prime, label=f"NS{p}'")
    if A.disc != -p * p or A_prime.disc != p:
        raise PreconditionError(f"u={u}: discriminants {A.disc}, {A_prime.disc} are not -p^2, p")

    # 2-division fields from x^2 - 2u x + p and x^2 + 4u x - 256
    field_A = squarefree_part(4 * u * u - 4 * p)
    field_A_prime = squarefree_part(16 * u * u + 1024)
    if (field_A, field_A_prime) != (-1, p):
        raise PreconditionError(f"u={u}: 2-division fields Q(sqrt {field_A}), Q(sqrt {field_A_prime})")
    for curve in (A, A_prime):
        if torsion_order(curve) != 2:
            raise PreconditionError(f"{curve.name}: torsion is not Z/2Z")
    for q in primerange(3, 50):
        if q != p and a_p(A, q) != a_p(A_prime, q):
            raise PreconditionError(f"u={u}: a_{q} differs between A and A', not isogenous")
    logger.debug(f"built {A.name} and {A_prime.name}")
    return NSPair(u=u, p=p, A=A, A_prime=A_prime, field_A=field_A, field_A_prime=field_A_prime)


def ns_parameters(bound: int) -> Iterator[int]:
    """u = 1 mod 4 with |u| <= bound and u^2 + 64 prime, by |u|."""
    for size in range(1, bound + 1):
        for u in (-size, size):
            if u % 4 == 1 and isprime(u * u + 64):
                yield u


def splits_in_Qp(pair: NSPair, q: int) -> bool:
    return jacobi_symbol(pair.p % q, q) == 1


def classify_twist(pair: NSPair, M: int) -> NSTwistClass:
    if M % 2 == 0 or M in (0, 1) or not is_squarefree(M) or M % pair.p == 0:
        raise PreconditionError(f"M={M} must be odd, square-free, different from 1 and prime to {pair.p}")
    parts = {('R', 1): [], ('R', 3): [], ('N', 1): [], ('N', 3): []}
    for q in odd_prime_factors(M):
        parts[('N' if splits_in_Qp(pair, q) else 'R', q % 4)].append(q)
    return NSTwistClass(
        M=M,
        epsilon=1 if M > 0 else -1,
        R_plus=tuple(parts[('R', 1)]),
        R_minus=tuple(parts[('R', 3)]),
        N_plus=tuple(parts[('N', 1)]),
        N_minus=tuple(parts[('N', 3)]),
    )


def on_curve(coeffs: Tuple[int, int], point: Point) -> bool:
    if point is None:
        return True
    a, b = coeffs
    x, y = point
    return y * y == x ** 3 + a * x * x + b * x


def isogeny_apply(pair: NSPair, direction: str, point: Point, M: int) -> Point:
    """phi on A^(M) or phihat on A'^(M); the kernel point (0, 0) goes to infinity."""
    if direction not in DIRECTIONS:
        raise PreconditionError(f"direction must be one of {DIRECTIONS}, got {direction!r}")
    source = pair.model('A' if direction == 'phi' else "A'", M)
    if not on_curve(source, point):
        raise PreconditionError(f"{point} is not on y^2 = x^3 + {source[0]} x^2 + {source[1]} x")
    if point is None:
        return None
    x, y = Fraction(point[0]), Fraction(point[1])
    if x == 0:
        return None
    if direction == 'phi':
        return y * y / (x * x), y * (pair.p * M * M - x * x) / (x * x)
    return y * y / (4 * x * x), y * (-256 * M * M - x * x) / (8 * x * x)


def add_points(coeffs: Tuple[int, int], P: Point, Q: Point) -> Point:
    if P is None:
        return Q
    if Q is None:
        return P
    a, b = coeffs
    x1, y1 = Fraction(P[0]), Fraction(P[1])
    x2, y2 = Fraction(Q[0]), Fraction(Q[1])
    if x1 == x2 and y1 == -y2:
        return None
    if (x1, y1) == (x2, y2):
        slope = (3 * x1 * x1 + 2 * a * x1 + b) / (2 * y1)
    else:
        slope = (y2 - y1) / (x2 - x1)
    x3 = slope * slope - a - x1 - x2
    return x3, -(y1 + slope * (x3 - x1))


def search_points(pair: NSPair, M: int, bound: int, which: str = 'A') -> List[Point]:
    """Rational points with integral x in [-bound, bound], y > 0, on the twisted model."""
    a, b = pair.model(which, M)
    found = []
    for x in range(-bound, bound + 1):
        rhs = x ** 3 + a * x * x + b * x
        if rhs <= 0:
            continue
        y = math.isqrt(rhs)
        if y * y == rhs:
            found.append((Fraction(x), Fraction(y)))
    return found