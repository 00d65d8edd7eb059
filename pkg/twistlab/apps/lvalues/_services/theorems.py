"""
Hypothesis checks and conclusions for the twist non-vanishing theorems,
and the S-sum lemmas they rest on.

Theorem ids:
    T1    disc < 0, E[2](Q) = 0, ord2 L^alg(E) = 0, all q | M inert in F  => ord2 = 0
    T1-1  disc > 0, E[2](Q) = 0, ord2 L^alg(E) = 1, M > 0, all q inert => ord2 = 1
    T2    disc < 0, M = +-q, L(E,1) != 0, ord2 N_q = -ord2 L^alg(E) != 0   => ord2 = 0
    T2-1  disc > 0, M = q = 1 mod 4, L(E,1) != 0, ord2 N_q = 1 - ord2 L^alg(E) != 0 => ord2 = 1
    T3    disc < 0, L(E,1) != 0, some q | M with ord2 N_q > -ord2 L^alg(E) => ord2 >= 1
    T3-1  disc > 0, L(E,1) != 0                                         => ord2 >= 1
"""

from typing import Callable, Dict, Iterable, List, Optional, Tuple

from sympy.ntheory import divisors

from twistlab.apps.curves.models import CurveModel, TwistDescriptor
from twistlab.apps.curves.services import (
    N_q, is_inert_in_F, local_two_torsion_order, make_twist, twisted_root_number,
    two_division_data,
)
from twistlab.apps.lvalues._services.central import (
    _check_modulus, half_range_sum, hecke_relation_sum, lalg, lalg_twist, sum_triple,
)
from twistlab.apps.lvalues.models import AlgLValue, LemmaVerdict, TwistReport, Verdict
from twistlab.apps.modsym.models import ZERO_PAIR
from twistlab.utils.arith import ord2, odd_prime_factors
from twistlab.utils.exceptions import PreconditionError
from twistlab.utils.logger import TwistLogger

logger = TwistLogger(__name__)

THEOREM_IDS = ('T1', 'T1-1', 'T2', 'T2-1', 'T3', 'T3-1')
LEMMA_IDS = ('L2.2', 'L2.3', 'L2.4', 'L2.5')


def root_number_twist(curve: CurveModel, twist: TwistDescriptor) -> int:
    if curve.root_number is None:
        raise PreconditionError(f"{curve.name}: root number of E is unknown")
    w = twisted_root_number(curve, twist.M)
    if w is None:
        raise PreconditionError(f"M={twist.M} must be 1 mod 4 and coprime to {curve.conductor}")
    return w


def tamagawa_ord2_twist(curve: CurveModel, twist: TwistDescriptor) -> int:
    return sum(int(ord2(local_two_torsion_order(curve, q))) for q in twist.primes)


def _two_torsion_trivial(curve: CurveModel) -> bool:
    return two_division_data(curve).is_irreducible


def _all_inert(curve: CurveModel, primes: Iterable[int]) -> bool:
    return all(is_inert_in_F(curve, q) for q in primes)


def _hypotheses(theorem_id: str, curve: CurveModel, twist: TwistDescriptor,
                base: AlgLValue) -> List[Tuple[bool, str]]:
    negative = curve.disc < 0
    nonzero = not base.is_zero
    checks = [(curve.optimal, "curve is Gamma_0(C)-optimal")]
    if theorem_id in ('T1', 'T1-1'):
        trivial = _two_torsion_trivial(curve)
        checks.append((trivial, "E[2](Q) = 0"))
        if theorem_id == 'T1':
            checks += [(negative, "disc < 0"), (base.ord2 == 0, "ord2 L^alg(E) = 0")]
        else:
            checks += [(not negative, "disc > 0"), (base.ord2 == 1, "ord2 L^alg(E) = 1"),
                       (twist.M > 0, "M > 0")]
        checks.append((trivial and _all_inert(curve, twist.primes), "every q | M inert in F"))
    elif theorem_id in ('T2', 'T2-1'):
        checks += [(twist.r == 1, "M has one prime factor"), (nonzero, "L(E,1) != 0")]
        if twist.r == 1 and nonzero:
            v = ord2(N_q(curve, twist.primes[0]))
            if theorem_id == 'T2':
                checks += [(negative, "disc < 0"), (v == -base.ord2 != 0, "ord2 N_q = -ord2 L^alg(E) != 0")]
            else:
                checks += [(not negative, "disc > 0"), (twist.M > 0, "M = q = 1 mod 4"),
                           (v == 1 - base.ord2 != 0, "ord2 N_q = 1 - ord2 L^alg(E) != 0")]
    elif theorem_id == 'T3':
        checks += [(negative, "disc < 0"), (nonzero, "L(E,1) != 0")]
        if nonzero:
            some = any(ord2(N_q(curve, q)) > -base.ord2 for q in twist.primes)
            checks.append((some, "some q | M has ord2 N_q > -ord2 L^alg(E)"))
    elif theorem_id == 'T3-1':
        checks += [(not negative, "disc > 0"), (nonzero, "L(E,1) != 0")]
    else:
        raise PreconditionError(f"unknown theorem id {theorem_id!r}; expected one of {', '.join(THEOREM_IDS)}")
    return checks


_CONCLUSIONS: Dict[str, Tuple[str, Callable[[float], bool]]] = {
    'T1': ("ord2 = 0", lambda v: v == 0),
    'T1-1': ("ord2 = 1", lambda v: v == 1),
    'T2': ("ord2 = 0", lambda v: v == 0),
    'T2-1': ("ord2 = 1", lambda v: v == 1),
    'T3': ("ord2 >= 1", lambda v: v >= 1),
    'T3-1': ("ord2 >= 1", lambda v: v >= 1),
}


def verify_theorem(theorem_id: str, curve: CurveModel, twist: TwistDescriptor,
                   twisted: Optional[AlgLValue] = None) -> Verdict:
    base = lalg(curve)
    checks = _hypotheses(theorem_id, curve, twist, base)
    failed = tuple(text for ok, text in checks if not ok)
    expected, conclusion = _CONCLUSIONS[theorem_id]
    if failed:
        return Verdict(theorem_id, False, None, expected=expected, reasons=failed)
    twisted = twisted or lalg_twist(curve, twist)
    holds = conclusion(twisted.ord2)
    if not holds:
        logger.error(f"{theorem_id} fails for {curve.name}, M={twist.M}: observed {twisted}, expected {expected}")
    return Verdict(theorem_id, True, holds, observed_ord2=twisted.ord2, expected=expected)


def _lemma_22(curve: CurveModel, m: int) -> LemmaVerdict:
    r = len(odd_prime_factors(m))
    left = sum((sum_triple(curve, l).S for l in divisors(m) if l > 1), ZERO_PAIR)
    right = ZERO_PAIR
    for n in divisors(m):
        if n == 1:
            continue
        d = len(odd_prime_factors(n))
        right = right + sum_triple(curve, n).S_prime.scale(2 ** (r - d))
    return LemmaVerdict('L2.2', m, True, left == right, f"{left} vs {right}")


def check_lemma(lemma_id: str, curve: CurveModel, m: int) -> LemmaVerdict:
    _check_modulus(curve, m)
    if lemma_id == 'L2.2':
        return _lemma_22(curve, m)
    if lemma_id not in LEMMA_IDS:
        raise PreconditionError(f"unknown lemma id {lemma_id!r}; expected one of {', '.join(LEMMA_IDS)}")
    base = lalg(curve)
    primes = odd_prime_factors(m)
    if lemma_id == 'L2.3':
        met = (not base.is_zero and _two_torsion_trivial(curve)
               and all(N_q(curve, q) % 2 == 1 for q in primes))
        target = lambda v: v == base.ord2
        claim = f"ord2 S'_m = ord2 L^alg = {base.ord2}"
    elif lemma_id == 'L2.4':
        met = base.ord2 == -1 and all(q % 4 == 3 and N_q(curve, q) % 4 == 2 for q in primes)
        target = lambda v: v == len(primes) - 1
        claim = f"ord2 S'_m = r(m) - 1 = {len(primes) - 1}"
    else:
        met = not base.is_zero and any(ord2(N_q(curve, q)) + base.ord2 > 0 for q in primes)
        target = lambda v: v >= 1
        claim = "ord2 S'_m >= 1"
    if not met:
        return LemmaVerdict(lemma_id, m, False, False, "hypotheses not met")
    observed = ord2(sum_triple(curve, m).S_prime.x_plus)
    return LemmaVerdict(lemma_id, m, True, target(observed), f"{claim}; observed {observed}")


def twist_report(curve: CurveModel, M: int, theorem_ids: Iterable[str] = THEOREM_IDS) -> TwistReport:
    twist = make_twist(curve, M)
    twisted = lalg_twist(curve, twist)
    w = root_number_twist(curve, twist)
    if w == -1 and not twisted.is_zero:
        logger.error(f"{curve.name}, M={M}: root number -1 but L^alg = {twisted.value}")
    verdicts = {tid: verify_theorem(tid, curve, twist, twisted) for tid in theorem_ids}
    return TwistReport(
        curve=curve,
        twist=twist,
        lalg=twisted,
        sums=sum_triple(curve, twist.m),
        root_number=w,
        tamagawa_ord2=tamagawa_ord2_twist(curve, twist),
        half_range_sum=half_range_sum(curve, twist),
        theorem_verdicts=verdicts,
    )


def identity_holds(curve: CurveModel, m: int) -> bool:
    left, right = hecke_relation_sum(curve, m)
    return left == right
