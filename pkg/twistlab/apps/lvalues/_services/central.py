"""
Exact central values from modular symbols.

    (l + 1 - a_l) L(E,1) / Omega+ = - sum_{k mod l} x_plus(k/l)
    L(E^(M), 1) = Omega+- / sqrt|M| * sum_{k mod |M|} chi(k) x+-(k/|M|)

The second line gives L over the periods of E; converting to the least
real period of the minimal twist uses the factor
u = Omega+-(E) / (sqrt|M| Omega_oo(E^(M))), which must be a signed power
of two and is snapped to it.
"""

import dataclasses
import math
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Tuple

from sympy.ntheory import divisors, primerange

from twistlab.apps.analytic.services import agm_periods, period_integral
from twistlab.apps.curves.models import CurveModel, TwistDescriptor
from twistlab.apps.curves.services import a_p, twist_model
from twistlab.apps.lvalues.models import AlgLValue, SumTriple
from twistlab.apps.modsym.models import EigenData, ModSymSpace, SymbolPair, ZERO_PAIR
from twistlab.apps.modsym.services import get_eigen, get_space, symbol
from twistlab.utils.arith import is_squarefree, kronecker, odd_prime_factors
from twistlab.utils.config import setting
from twistlab.utils.exceptions import NormalizationError, PeriodBridgeError, PreconditionError
from twistlab.utils.logger import TwistLogger
from twistlab.utils.precision import working_context

logger = TwistLogger(__name__)

MAX_BRIDGE_EXPONENT = 4
ORIENTATION_MODULI = 13


def _orient_minus(curve: CurveModel, space: ModSymSpace, eig: EigenData) -> EigenData:
    """Fix the sign of the minus functional against the numeric period integral."""
    best: Optional[Tuple[int, int, SymbolPair]] = None
    for m in primerange(3, ORIENTATION_MODULI + 1):
        if curve.conductor % m == 0:
            continue
        for k in range(1, m):
            pair = symbol(space, eig, k, m)
            if best is None or abs(pair.x_minus) > abs(best[2].x_minus):
                best = (k, m, pair)
    if best is None or best[2].x_minus == 0:
        return dataclasses.replace(eig, minus_oriented=True)
    k, m, pair = best
    periods = agm_periods(curve)
    numeric = period_integral(curve, k, m)
    tolerance = setting('NUMERIC_TOLERANCE')
    expected_re = float(pair.x_plus) * float(periods.omega_plus)
    if abs(float(numeric.real) - expected_re) > tolerance * max(1.0, abs(expected_re)):
        raise NormalizationError(
            f"{curve.name}: real part of <{{0,{k}/{m}}}, f> is {float(numeric.real):.12g}, "
            f"modular symbols give {expected_re:.12g}"
        )
    expected_im = float(pair.x_minus) * float(periods.omega_minus)
    observed_im = float(numeric.imag)
    if abs(abs(observed_im) - abs(expected_im)) > tolerance * abs(expected_im):
        raise NormalizationError(
            f"{curve.name}: imaginary part of <{{0,{k}/{m}}}, f> is {observed_im:.12g}, "
            f"modular symbols give +-{abs(expected_im):.12g}"
        )
    if (observed_im > 0) != (expected_im > 0):
        logger.debug(f"{curve.name}: flipping the minus functional")
        eig = dataclasses.replace(
            eig,
            minus_dual=tuple(-x for x in eig.minus_dual),
            minus_values=tuple(-x for x in eig.minus_values),
        )
    return dataclasses.replace(eig, minus_oriented=True)


@lru_cache(maxsize=128)
def modular_data(curve: CurveModel) -> Tuple[ModSymSpace, EigenData]:
    """Space and oriented eigen data for an optimal curve."""
    if not curve.optimal:
        raise PreconditionError(f"{curve.name} is not known to be optimal; modular symbols need the optimal curve")
    space = get_space(curve.conductor)
    eig = get_eigen(curve)
    if not eig.minus_oriented:
        eig = _orient_minus(curve, space, eig)
    return space, eig


def x_pair(curve: CurveModel, k: int, m: int) -> SymbolPair:
    space, eig = modular_data(curve)
    return symbol(space, eig, k, m)


def _auxiliary_prime(curve: CurveModel) -> int:
    for l in primerange(3, 10 ** 4):
        if curve.is_good(l) and l + 1 - a_p(curve, l) != 0:
            return l
    raise PreconditionError(f"{curve.name}: no auxiliary prime found")


def lalg(curve: CurveModel, l: Optional[int] = None) -> AlgLValue:
    l = l or _auxiliary_prime(curve)
    if not curve.is_good(l):
        raise PreconditionError(f"auxiliary prime {l} is bad for {curve.name}")
    factor = l + 1 - a_p(curve, l)
    if factor == 0:
        raise PreconditionError(f"l + 1 - a_l vanishes at l={l} for {curve.name}")
    total = sum((x_pair(curve, k, l).x_plus for k in range(l)), Fraction(0))
    return AlgLValue.of(-total / factor, auxiliary_prime=l)


def _check_modulus(curve: CurveModel, m: int) -> None:
    if m <= 1 or m % 2 == 0 or not is_squarefree(m):
        raise PreconditionError(f"m={m} must be an odd square-free integer > 1")
    if math.gcd(m, curve.conductor) != 1:
        raise PreconditionError(f"m={m} is not coprime to the conductor {curve.conductor}")


def signed_modulus(m: int) -> int:
    """The one of +-m that is 1 mod 4."""
    return m if m % 4 == 1 else -m


def sum_triple(curve: CurveModel, m: int) -> SumTriple:
    _check_modulus(curve, m)
    M = signed_modulus(m)
    S = S_prime = S_chi = ZERO_PAIR
    for k in range(1, m + 1):
        pair = x_pair(curve, k % m, m)
        S = S + pair
        chi = kronecker(M, k)
        if chi:
            S_prime = S_prime + pair
            S_chi = S_chi + pair.scale(chi)
    return SumTriple(m=m, S=S, S_prime=S_prime, S_chi=S_chi)


def _snap_power_of_two(ratio: float, M: int) -> Fraction:
    if ratio == 0 or not math.isfinite(ratio):
        raise PeriodBridgeError(ratio, M)
    j = round(math.log2(abs(ratio)))
    target = math.copysign(2.0 ** j, ratio)
    if abs(j) > MAX_BRIDGE_EXPONENT or abs(ratio - target) > setting('BRIDGE_TOLERANCE') * abs(target):
        raise PeriodBridgeError(ratio, M)
    value = Fraction(2) ** j
    return value if ratio > 0 else -value


@lru_cache(maxsize=1024)
def period_bridge(curve: CurveModel, M: int) -> Fraction:
    periods = agm_periods(curve)
    twisted = agm_periods(twist_model(curve, M))
    omega = periods.omega_plus if M > 0 else periods.omega_minus
    ctx = working_context(periods.precision)
    ratio = ctx.mpf(omega) / (ctx.sqrt(abs(M)) * ctx.mpf(twisted.omega_plus))
    u = _snap_power_of_two(float(ratio), M)
    logger.debug(f"{curve.name}, M={M}: period bridge {u} (ratio {ctx.nstr(ratio, 15)})")
    return u


def chi_sum(curve: CurveModel, twist: TwistDescriptor) -> Fraction:
    """sum_{k mod |M|} chi(k) x+(k/|M|) for M > 0, with x- for M < 0."""
    m = twist.m
    total = Fraction(0)
    for k in range(1, m):
        chi = twist.chi(k)
        if chi:
            pair = x_pair(curve, k, m)
            total += chi * (pair.x_plus if twist.M > 0 else pair.x_minus)
    return total


def half_range_sum(curve: CurveModel, twist: TwistDescriptor) -> Fraction:
    """sum_{k=1}^{(m-1)/2} chi(k) s_k (M > 0) or chi(k) t_k (M < 0), in lattice coordinates."""
    space, eig = modular_data(curve)
    scale = 2 if eig.lattice_type == 2 else 1
    total = Fraction(0)
    for k in range(1, (twist.m - 1) // 2 + 1):
        chi = twist.chi(k)
        if chi:
            pair = x_pair(curve, k, twist.m)
            total += chi * scale * (pair.x_plus if twist.M > 0 else pair.x_minus)
    return total


def lalg_twist(curve: CurveModel, twist: TwistDescriptor) -> AlgLValue:
    if math.gcd(twist.M, curve.conductor) != 1:
        raise PreconditionError(f"M={twist.M} is not coprime to the conductor {curve.conductor}")
    total = chi_sum(curve, twist)
    if total == 0:
        return AlgLValue.of(0)
    u = period_bridge(curve, twist.M)
    return AlgLValue.of(total * u, bridge=u)


def hecke_relation_sum(curve: CurveModel, m: int) -> Tuple[Fraction, Fraction]:
    """Both sides of (prod (1 + q) - prod a_q) lalg = - sum_{l | m} S_l, plus parts."""
    _check_modulus(curve, m)
    primes = odd_prime_factors(m)
    factor = math.prod(1 + q for q in primes) - math.prod(a_p(curve, q) for q in primes)
    left = factor * lalg(curve).value
    right = -sum((sum_triple(curve, l).S.x_plus for l in divisors(m) if l > 1), Fraction(0))
    return left, right
