"""
Local factors of the Neumann-Setzer twists and the 2-part of the BSD
formula for A^(-q).
"""

import math
from itertools import combinations
from typing import List

from sympy.ntheory import isprime, primerange

from twistlab.apps.curves.services import a_p, local_two_torsion_order, make_twist, torsion_order, twist_model
from twistlab.apps.descent._services.neumann_setzer import classify_twist, splits_in_Qp
from twistlab.apps.descent._services.selmer import selmer2
from twistlab.apps.descent.models import (
    AqVerdict, BSDLedger, ConjectureReport, ConjectureRow, DenominatorCheck, NSPair, TamagawaData,
)
from twistlab.apps.lvalues.services import lalg, lalg_twist, sum_triple, x_pair
from twistlab.utils.arith import odd_prime_factors, ord2
from twistlab.utils.exceptions import PreconditionError, TheoremViolation
from twistlab.utils.logger import TwistLogger

logger = TwistLogger(__name__)

CITED = (
    "Sha(A^(M)) is finite (Kolyvagin, analytic rank 0)",
    "the Manin constant of the optimal curve is 1",
)


def _fail(message: str) -> None:
    logger.error(message)
    raise TheoremViolation(message)


def tamagawa_ns(pair: NSPair, M: int, which: str = 'A') -> TamagawaData:
    """c_p and c_q for q | M, cross-checked against #E(Q_q)[2] of the untwisted curve."""
    if which not in ('A', "A'"):
        raise PreconditionError(f"which must be 'A' or \"A'\", got {which!r}")
    classify_twist(pair, M)
    curve = pair.A if which == 'A' else pair.A_prime
    factors = {pair.p: 2 if which == 'A' else 1}
    for q in odd_prime_factors(M):
        if which == 'A':
            factors[q] = 2 if q % 4 == 3 else 4
        else:
            factors[q] = 4 if splits_in_Qp(pair, q) else 2
        local = local_two_torsion_order(curve, q)
        if local != factors[q]:
            _fail(f"{curve.name}, q={q}: c_q = {factors[q]} but #E(Q_q)[2] = {local}")
    return TamagawaData(M=M, which=which, factors=factors, real_components=1 if which == 'A' else 2)


def aq_ns(pair: NSPair, q: int) -> AqVerdict:
    if not isprime(q):
        raise PreconditionError(f"{q} is not prime")
    a = a_p(pair.A, q)
    if q == pair.p:
        predicted, holds = "= 1", a == 1
    elif q == 2:
        expected = -1 if pair.p % 16 == 1 else 1
        predicted, holds = f"= {expected}", a == expected
    elif q % 4 == 1 or not splits_in_Qp(pair, q):
        predicted, holds = "2 mod 4", a % 4 == 2
    else:
        predicted, holds = "0 mod 4", a % 4 == 0
    if not holds:
        _fail(f"p={pair.p}: a_{q} = {a}, expected {predicted}")
    return AqVerdict(p=pair.p, q=q, a_q=a, predicted=predicted, holds=holds)


def qualifying_primes(pair: NSPair, bound: int) -> List[int]:
    """q <= bound with q = 3 mod 4 and q inert in Q(sqrt p)."""
    return [q for q in primerange(3, bound + 1)
            if q % 4 == 3 and q != pair.p and not splits_in_Qp(pair, q)]


def lalg_denominator_check(pair: NSPair) -> DenominatorCheck:
    """L^alg(A) has exact denominator 2, through (1 + 2 - a_2) L^alg(A) = -x+(1/2)."""
    if pair.u % 8 != 5:
        raise PreconditionError(f"u={pair.u} is not 5 mod 8")
    value = lalg(pair.A).value
    a2 = a_p(pair.A, 2)
    half = x_pair(pair.A, 1, 2)
    checks = [
        (ord2(value) == -1, f"ord2 L^alg(A) = {ord2(value)}, expected -1"),
        ((2 * value).denominator == 1 and value.denominator != 1, f"2 L^alg(A) = {2 * value} is not an odd integer"),
        ((3 - a2) * value == -half.x_plus, f"(3 - a_2) L^alg = {(3 - a2) * value} but -x+(1/2) = {-half.x_plus}"),
        (half.x_plus.denominator == 1 and half.x_plus.numerator % 2 == 1, f"x+(1/2) = {half.x_plus} is not odd"),
        (half.x_minus == 0, f"x-(1/2) = {half.x_minus} is not 0"),
    ]
    for ok, message in checks:
        if not ok:
            _fail(f"p={pair.p}: {message}")
    return DenominatorCheck(p=pair.p, lalg=value, a_2=a2, x_plus_half=half.x_plus,
                            x_minus_half=half.x_minus, passed=True)


def verify_thm_A(pair: NSPair, q: int) -> BSDLedger:
    """BSD 2-part for A^(-q): 0 = ord2 #Sha + ord2 prod c_v - 2 ord2 #tors."""
    if pair.u % 8 != 5:
        raise PreconditionError(f"u={pair.u} is not 5 mod 8")
    if not isprime(q) or q % 4 != 3 or q == pair.p or splits_in_Qp(pair, q):
        raise PreconditionError(f"q={q} must be a prime = 3 mod 4 inert in Q(sqrt {pair.p})")
    M = -q
    base = lalg(pair.A)
    if base.ord2 != -1:
        _fail(f"p={pair.p}: ord2 L^alg(A) = {base.ord2}, expected -1")
    twisted = lalg_twist(pair.A, make_twist(pair.A, M))
    if twisted.ord2 != 0:
        _fail(f"p={pair.p}, M={M}: ord2 L^alg = {twisted.ord2}, expected 0")

    two_A, _ = selmer2(pair, M)
    if two_A.order != 1:
        _fail(f"p={pair.p}, M={M}: 2-Selmer quotient of A^(M) has order {two_A.order}, expected trivial")
    tamagawa = tamagawa_ns(pair, M, 'A')
    if tamagawa.factors != {pair.p: 2, q: 2}:
        _fail(f"p={pair.p}, M={M}: Tamagawa factors {tamagawa.factors}")
    torsion = torsion_order(twist_model(pair.A, M))
    if torsion != 2:
        _fail(f"p={pair.p}, M={M}: torsion order {torsion}, expected 2")

    lalg_ord2 = int(twisted.ord2)
    tam_ord2 = tamagawa.ord2_total
    tors_ord2 = int(ord2(torsion))
    sha2_prediction = lalg_ord2 - tam_ord2 + 2 * tors_ord2
    descent_sha2 = 0
    passed = sha2_prediction == descent_sha2
    if not passed:
        _fail(f"p={pair.p}, M={M}: {lalg_ord2} != {descent_sha2} + {tam_ord2} - 2*{tors_ord2}")
    logger.info(f"p={pair.p}, M={M}: {lalg_ord2} = {descent_sha2} + {tam_ord2} - {2 * tors_ord2}")
    return BSDLedger(
        p=pair.p, M=M, lalg_ord2=lalg_ord2, tamagawa=dict(tamagawa.factors),
        tamagawa_ord2_total=tam_ord2, torsion_order=torsion, sha2_prediction=sha2_prediction,
        descent_sha2=descent_sha2, rank_zero=True, passed=passed, cited=CITED,
    )


def conjecture_scan(pair: NSPair, r: int, bound: int) -> ConjectureReport:
    """
    Tabulate ord2 of S''_M, S'_M and L^alg(A^(M)) for M a product of 2r
    primes = 3 mod 4 inert in Q(sqrt p), M <= bound. Nothing is asserted.
    """
    if r < 1:
        raise PreconditionError(f"r must be >= 1, got {r}")
    base = lalg(pair.A)
    primes = qualifying_primes(pair, bound)
    rows = []
    for combo in combinations(primes, 2 * r):
        M = math.prod(combo)
        if M > bound:
            continue
        sums = sum_triple(pair.A, M)
        twisted = lalg_twist(pair.A, make_twist(pair.A, M))
        s_chi, s_prime = ord2(sums.S_chi.x_plus), ord2(sums.S_prime.x_plus)
        rows.append(ConjectureRow(
            M=M, primes=combo, ord2_S_chi=s_chi, ord2_S_prime=s_prime, ord2_lalg=twisted.ord2,
            hypothesis=s_chi == s_prime, conclusion=twisted.ord2 == 2 * r - 1,
        ))
    rows.sort(key=lambda row: row.M)
    return ConjectureReport(p=pair.p, r=r, bound=bound, base_ord2=base.ord2, rows=tuple(rows))
