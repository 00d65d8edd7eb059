"""
Reduction mod q: point counts, traces of Frobenius and 2-torsion over Q_q.
"""

from functools import lru_cache
from typing import Dict, Iterable, List, Optional

import numpy as np
from sympy.ntheory import isprime

from twistlab.apps.curves.models import CurveModel, PrimeClass
from twistlab.utils.arith import kronecker
from twistlab.utils.config import setting
from twistlab.utils.exceptions import CapacityError, PreconditionError, TwistLabError

HENSEL_DEPTH = 20


def _check_prime(q: int) -> None:
    if not isprime(q):
        raise PreconditionError(f"{q} is not prime")
    bound = setting('POINT_COUNT_BOUND')
    if q > bound:
        raise CapacityError(f"point counting refused for q={q} > {bound}")


def quadratic_character_table(q: int) -> np.ndarray:
    """chi[x] = Legendre symbol (x/q) for x in [0, q)."""
    xs = np.arange(q, dtype=np.int64)
    table = -np.ones(q, dtype=np.int64)
    table[(xs * xs) % q] = 1
    table[0] = 0
    return table


@lru_cache(maxsize=1 << 16)
def count_points(curve: CurveModel, q: int) -> int:
    """#E(F_q) of the reduction of the minimal model, point at infinity included."""
    _check_prime(q)
    a1, a2, a3, a4, a6 = curve.coefficients
    if q == 2:
        total = 1
        for x in range(2):
            for y in range(2):
                if (y * y + a1 * x * y + a3 * y - x ** 3 - a2 * x * x - a4 * x - a6) % 2 == 0:
                    total += 1
        return total
    inv = curve.invariants
    b2, b4, b6 = inv['b2'] % q, (2 * inv['b4']) % q, inv['b6'] % q
    xs = np.arange(q, dtype=np.int64)
    # (2y + a1 x + a3)^2 = 4x^3 + b2 x^2 + 2 b4 x + b6
    g = ((((4 * xs + b2) % q) * xs + b4) % q * xs + b6) % q
    return q + 1 + int(quadratic_character_table(q)[g].sum())


def a_p(curve: CurveModel, q: int) -> int:
    """
    Trace of Frobenius a_q = q + 1 - #E(F_q).

    At bad q this is the usual 0 / +1 / -1 according to additive, split or
    non-split multiplicative reduction, since the count includes the
    singular point.
    """
    return q + 1 - count_points(curve, q)


def N_q(curve: CurveModel, q: int) -> int:
    return q + 1 - a_p(curve, q)


def _poly_eval(coeffs: List[int], x: int) -> int:
    value = 0
    for c in coeffs:
        value = value * x + c
    return value


def _derivative(coeffs: List[int]) -> List[int]:
    n = len(coeffs) - 1
    return [c * (n - i) for i, c in enumerate(coeffs[:-1])]


def _taylor_shift(coeffs: List[int], r: int, scale: int) -> List[int]:
    """Coefficients of f(r + scale*x), leading first."""
    result = [0]
    for c in coeffs:
        # result = result * (r + scale x) + c
        shifted = [0] * (len(result) + 1)
        for i, a in enumerate(result):
            shifted[i] += a * scale
            shifted[i + 1] += a * r
        shifted[-1] += c
        result = shifted
    while len(result) > 1 and result[0] == 0:
        result.pop(0)
    return result


def _strip_content(coeffs: List[int], q: int) -> List[int]:
    while all(c % q == 0 for c in coeffs) and any(coeffs):
        coeffs = [c // q for c in coeffs]
    return coeffs


def count_qadic_roots(coeffs: List[int], q: int, depth: int = HENSEL_DEPTH) -> int:
    """Number of roots in Z_q of a separable integer polynomial (leading coefficient first)."""
    coeffs = _strip_content(list(coeffs), q)
    deriv = _derivative(coeffs)
    count = 0
    for r in range(q):
        if _poly_eval(coeffs, r) % q:
            continue
        if deriv and _poly_eval(deriv, r) % q:
            count += 1
            continue
        if depth == 0:
            raise TwistLabError(f"root lifting at q={q} did not separate within {HENSEL_DEPTH} steps")
        count += count_qadic_roots(_taylor_shift(coeffs, r, q), q, depth - 1)
    return count


def local_two_torsion_order(curve: CurveModel, q: int) -> int:
    """#E(Q_q)[2] = 1 + number of roots of the 2-division cubic in Q_q."""
    from twistlab.apps.curves._services.two_division import two_division_cubic

    if q == 2 or not isprime(q):
        raise PreconditionError(f"local 2-torsion needs an odd prime, got {q}")
    return 1 + count_qadic_roots(list(two_division_cubic(curve)), q)


def prime_class(curve: CurveModel, q: int, auxiliary: Iterable[int] = ()) -> PrimeClass:
    from twistlab.apps.curves._services.two_division import two_division_data, is_inert_in_F

    if q == 2:
        raise PreconditionError("prime classes are defined for odd q")
    aq = a_p(curve, q)
    inert: Optional[bool] = None
    if curve.is_good(q) and two_division_data(curve).is_irreducible:
        inert = is_inert_in_F(curve, q)
    flags: Dict[int, int] = {D: kronecker(D, q) for D in auxiliary}
    return PrimeClass(q=q, a_q=aq, N_q=q + 1 - aq, inert_in_F=inert, q_mod4=q % 4,
                      kronecker_flags=flags)
