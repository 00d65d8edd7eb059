"""
Direct evaluation of L(E, 1) and of period integrals from the q-expansion.

    L(E, 1) = 2 * sum_n (a_n / n) exp(-2 pi n / sqrt(N))     (root number +1)

The tail after T terms is at most 4 x^(T+1) / (1 - x) with x = exp(-2 pi / sqrt(N)),
using |a_n| <= n.
"""

import math
from functools import lru_cache
from typing import List, Optional, Tuple

from sympy.ntheory import primerange

from twistlab.apps.analytic.models import LSeriesValue
from twistlab.apps.curves.models import CurveModel
from twistlab.apps.curves.services import a_p
from twistlab.utils.exceptions import InsufficientTermsError, PreconditionError
from twistlab.utils.logger import TwistLogger
from twistlab.utils.precision import working_context

logger = TwistLogger(__name__)

DEFAULT_TOLERANCE = 1e-15


def _smallest_prime_factors(n: int) -> List[int]:
    spf = list(range(n + 1))
    for p in primerange(2, math.isqrt(n) + 1):
        if spf[p] == p:
            for k in range(p * p, n + 1, p):
                if spf[k] == k:
                    spf[k] = p
    return spf


@lru_cache(maxsize=64)
def an_table(curve: CurveModel, n: int) -> Tuple[int, ...]:
    """(a_0, a_1, ..., a_n) with a_0 = 0, from a_p and the Hecke recurrences."""
    a = [0] * (n + 1)
    if n >= 1:
        a[1] = 1
    spf = _smallest_prime_factors(n)
    for k in range(2, n + 1):
        p = spf[k]
        m, e = k, 0
        while m % p == 0:
            m //= p
            e += 1
        if m > 1:
            a[k] = a[m] * a[k // m]
            continue
        ap = a_p(curve, p)
        if e == 1:
            a[k] = ap
        elif curve.conductor % p == 0:
            a[k] = ap * a[k // p]
        else:
            a[k] = ap * a[k // p] - p * a[k // (p * p)]
    return tuple(a)


def required_terms(conductor: int, tolerance: float) -> int:
    x = math.exp(-2 * math.pi / math.sqrt(conductor))
    # 4 x^(T+1) / (1 - x) <= tolerance
    return max(1, math.ceil(math.log(tolerance * (1 - x) / 4) / math.log(x)) - 1)


def tail_bound(conductor: int, nterms: int, ctx=None):
    if ctx is None:
        ctx = working_context()
    x = ctx.exp(-2 * ctx.pi / ctx.sqrt(conductor))
    return 4 * x ** (nterms + 1) / (1 - x)


def lseries_numeric(curve: CurveModel, nterms: Optional[int] = None,
                    tolerance: float = DEFAULT_TOLERANCE, precision: Optional[int] = None) -> LSeriesValue:
    if curve.root_number is None:
        raise PreconditionError(f"{curve.name}: root number unknown, the series needs root number +1")
    if curve.root_number != 1:
        raise PreconditionError(f"{curve.name}: root number {curve.root_number}, the series needs +1")
    N = curve.conductor
    needed = required_terms(N, tolerance)
    if nterms is None:
        nterms = needed
    elif nterms < needed:
        raise InsufficientTermsError(
            f"{curve.name}: {nterms} terms leave a tail above {tolerance:g}; need {needed}",
            required_terms=needed,
        )
    a = an_table(curve, nterms)
    ctx = working_context(precision)
    x = ctx.exp(-2 * ctx.pi / ctx.sqrt(N))
    total = ctx.mpf(0)
    power = ctx.mpf(1)
    for n in range(1, nterms + 1):
        power *= x
        if a[n]:
            total += ctx.mpf(a[n]) / n * power
    result = LSeriesValue(value=2 * total, nterms=nterms, tail_bound=tail_bound(N, nterms, ctx), conductor=N)
    logger.debug(f"{curve.name}: L(E,1) ~ {ctx.nstr(result.value, 15)} from {nterms} terms")
    return result


def _q_series(ctx, a: Tuple[int, ...], z):
    q = ctx.expjpi(2 * z)
    total = ctx.mpc(0)
    power = ctx.mpc(1)
    for n in range(1, len(a)):
        power *= q
        if a[n]:
            total += ctx.mpf(a[n]) / n * power
    return total


def period_integral(curve: CurveModel, k: int, m: int, tolerance: float = 1e-12,
                    precision: Optional[int] = None):
    """
    <{0, k/m}, f> = 2 pi i * integral from 0 to k/m of f(z) dz, for gcd(m, N) = 1.

    With g = [[a, k'], [N c', m']] in Gamma_0(N) sending 0 to k'/m', the value is
    F(g z0) - F(z0) for F = sum (a_n / n) q^n and any z0; z0 = -m'/c + i/|c|
    puts both ends at height 1/|c|.
    """
    N = curve.conductor
    if m <= 0 or math.gcd(m, N) != 1:
        raise PreconditionError(f"period integral needs m > 0 coprime to {N}; got m={m}")
    g = math.gcd(k % m, m)
    kk, mm = (k % m) // g, m // g
    ctx = working_context(precision)
    if kk == 0:
        return ctx.mpc(0)
    cp = (-pow(N * kk, -1, mm)) % mm
    if cp > mm // 2:
        cp -= mm
    a = (1 + kk * N * cp) // mm
    c = N * cp
    height = 1 / abs(c)
    # |q| = exp(-2 pi height)
    nterms = max(10, math.ceil(-math.log(tolerance) / (2 * math.pi * height)) + 1)
    coeffs = an_table(curve, nterms)
    z0 = ctx.mpc(ctx.mpf(-mm) / c, ctx.mpf(1) / abs(c))
    gz0 = (a * z0 + kk) / (c * z0 + mm)
    value = _q_series(ctx, coeffs, gz0) - _q_series(ctx, coeffs, z0)
    return value
