"""
Local solubility of the homogeneous spaces

    C_d:  d w^2 = 4p - (M/d z^2 - 2u)^2
    C'_d: d w^2 = 64p^3 + p (M/d z^2 - up)^2

Clearing d^2 turns either into d W^2 = H(z) with H an even integral
quartic, so a Q_v-point exists iff d H(z) is a square in Q_v for some z in
P^1(Q_v). The finite part searches residues and lifts only along roots of
H mod v; points at infinity are the finite points of the reversed quartic
on v Z_v.
"""

from fractions import Fraction
from typing import List, Optional, Union

from sympy import Poly, symbols

from twistlab.apps.descent.models import NSPair
from twistlab.utils.arith import is_squarefree, kronecker, odd_prime_factors, ord_p
from twistlab.utils.exceptions import PreconditionError, UndecidedError
from twistlab.utils.logger import TwistLogger

logger = TwistLogger(__name__)

Place = Union[int, str]
REAL = 'inf'
MAX_PRECISION = 40

z = symbols('z')


class _PrecisionExhausted(Exception):
    pass


def is_square_in_Qv(x, v: int) -> bool:
    x = Fraction(x)
    if x == 0:
        return True
    e = ord_p(x, v)
    if e % 2:
        return False
    unit = x / Fraction(v) ** e
    n = unit.numerator * unit.denominator
    if v == 2:
        return n % 8 == 1
    return kronecker(n, v) == 1


def homogeneous_quartic(pair: NSPair, M: int, d: int, kind: str) -> Poly:
    """d * H(z), where d W^2 = H(z) is C_d (kind 'phi') or C'_d (kind 'phihat') times d^2."""
    p, u = pair.p, pair.u
    if kind == 'phi':
        H = 4 * p * d * d - (M * z ** 2 - 2 * u * d) ** 2
    elif kind == 'phihat':
        H = 64 * p ** 3 * d * d + p * (M * z ** 2 - u * p * d) ** 2
    else:
        raise PreconditionError(f"kind must be 'phi' or 'phihat', got {kind!r}")
    return Poly(d * H, z, domain='ZZ')


def places(pair: NSPair, M: int) -> List[Place]:
    return [REAL, 2, pair.p] + odd_prime_factors(M)


def _real_point(G: Poly) -> bool:
    c4, c3, c2, c1, c0 = (int(c) for c in G.all_coeffs())
    if c3 or c1:
        raise PreconditionError("real solubility is only implemented for even quartics")
    # A w^2 + B w + C >= 0 for some w = z^2 >= 0, or a point at infinity
    A, B, C = c4, c2, c0
    if A > 0 or C >= 0:
        return True
    if A == 0:
        return B > 0
    return B > 0 and 4 * -A * C + B * B >= 0


def _reduce_multiplier(c: int, v: int) -> int:
    e = int(ord_p(c, v))
    unit = (c // v ** e) % (8 * v)
    return v ** (e % 2) * unit


def _finite_point(F: Poly, v: int, c: int, depth: int) -> bool:
    """Is c F(t) a square in Q_v for some t in Z_v?"""
    if depth < 0:
        raise _PrecisionExhausted
    k = int(ord_p(int(F.content()), v))
    if k:
        F = F.exquo_ground(v ** k)
        c = _reduce_multiplier(c * v ** k, v)
    for x in range(8 if v == 2 else v):
        value = int(F.eval(x))
        if value == 0 or is_square_in_Qv(c * value, v):
            return True
    for x in range(v):
        if int(F.eval(x)) % v == 0:
            if _finite_point(F.compose(Poly(x + v * z, z)), v, c, depth - 1):
                return True
    return False


def has_point(G: Poly, v: int, depth: int) -> bool:
    if _finite_point(G, v, 1, depth):
        return True
    reversed_quartic = Poly(list(reversed(G.all_coeffs())), z, domain='ZZ')
    return _finite_point(reversed_quartic.compose(Poly(v * z, z)), v, 1, depth)


def local_points_oracle(pair: NSPair, M: int, d: int, v: Place,
                        precision: Optional[int] = None, kind: str = 'phi') -> bool:
    """
    Decide whether C_d (or C'_d) has a Q_v-point. Without an explicit
    precision the search goes 12 levels deep (16 at v = 2), then 40.
    """
    if not is_squarefree(d):
        raise PreconditionError(f"d={d} is not a square-free integer")
    if v not in places(pair, M):
        raise PreconditionError(f"place {v} does not divide 2pM for p={pair.p}, M={M}")
    G = homogeneous_quartic(pair, M, d, kind)
    if v == REAL:
        return _real_point(G)
    if precision is not None and precision > MAX_PRECISION:
        raise PreconditionError(f"precision {precision} exceeds {MAX_PRECISION}")
    schedule = [precision] if precision is not None else [16 if v == 2 else 12, MAX_PRECISION]
    for depth in schedule:
        try:
            return has_point(G, v, depth)
        except _PrecisionExhausted:
            logger.debug(f"p={pair.p}, M={M}, d={d}, {kind}: undecided at v={v} depth {depth}")
    raise UndecidedError(f"solubility of the {kind} space for d={d}, M={M} at v={v} undecided "
                         f"at precision {schedule[-1]}")


def soluble_everywhere(pair: NSPair, M: int, d: int, kind: str) -> bool:
    return all(local_points_oracle(pair, M, d, v, kind=kind) for v in places(pair, M))
