"""
Twist family scans: enumerate M = eps q1...qr over filtered primes, run the
twist report for each, and reduce the results in M order.
"""

import dataclasses
import math
from concurrent.futures import ThreadPoolExecutor
from itertools import combinations
from typing import Dict, Iterator, List, Optional, Tuple

from sympy.ntheory import primerange

from twistlab.apps.cli._services.primes import prime_list
from twistlab.apps.cli.models import SIGNS, ScanSpec, ScanSummary
from twistlab.apps.curves import corpus
from twistlab.apps.curves.models import CurveModel
from twistlab.apps.curves.services import curve_from_label
from twistlab.apps.lvalues.models import TwistReport
from twistlab.apps.lvalues.services import THEOREM_IDS, lalg, modular_data, twist_report
from twistlab.utils.exceptions import CapacityError, PreconditionError
from twistlab.utils.logger import TwistLogger

logger = TwistLogger(__name__)

MAX_FAMILY = 20000

DEFAULT_PREDICATES: Dict[str, Optional[str]] = {
    'T1': 'inert-F',
    'T1-1': 'inert-F',
    'T2': None,
    'T2-1': None,
    'T3': None,
    'T3-1': None,
}
DEFAULT_SIGNS = {'T1-1': '+', 'T2-1': '+'}


def scan_curves(spec: ScanSpec) -> List[CurveModel]:
    if spec.theorem_id not in THEOREM_IDS:
        raise PreconditionError(f"unknown theorem id {spec.theorem_id!r}; expected one of {', '.join(THEOREM_IDS)}")
    if spec.label:
        return [curve_from_label(spec.label)]
    return [curve_from_label(entry.label) for entry in corpus.family(spec.theorem_id)]


def _signed(m: int, sign: str) -> Optional[int]:
    for M in (m, -m):
        if M % 4 == 1 and (sign == 'any' or (sign == '+') == (M > 0)):
            return M
    return None


def family_moduli(curve: CurveModel, spec: ScanSpec) -> List[int]:
    """Square-free M = 1 mod 4 prime to the conductor, sorted by |M| then sign."""
    if spec.sign not in SIGNS:
        raise PreconditionError(f"sign must be one of {SIGNS}, got {spec.sign!r}")
    if spec.max_primes < 1:
        raise PreconditionError(f"max_primes must be >= 1, got {spec.max_primes}")
    predicate = spec.predicate or DEFAULT_PREDICATES[spec.theorem_id]
    primes = prime_list(curve, predicate, spec.prime_bound) if predicate else _plain_primes(curve, spec.prime_bound)
    moduli = set()
    for r in range(1, spec.max_primes + 1):
        for combo in combinations(primes, r):
            m = math.prod(combo)
            if spec.M_bound is not None and m > spec.M_bound:
                continue
            M = _signed(m, spec.sign)
            if M is not None:
                moduli.add(M)
            if len(moduli) > MAX_FAMILY:
                raise CapacityError(f"family has more than {MAX_FAMILY} members; lower the bounds")
    return sorted(moduli, key=lambda M: (abs(M), M))


def _plain_primes(curve: CurveModel, bound: int) -> List[int]:
    return [q for q in primerange(3, bound + 1) if curve.conductor % q]


def _report(args: Tuple[CurveModel, int, str]) -> TwistReport:
    curve, M, theorem_id = args
    return twist_report(curve, M, (theorem_id,))


def run_scan(spec: ScanSpec) -> Iterator[TwistReport]:
    """Reports in (curve, |M|, M) order whatever the pool size."""
    for curve in scan_curves(spec):
        if spec.sign == 'any' and spec.theorem_id in DEFAULT_SIGNS:
            spec = dataclasses.replace(spec, sign=DEFAULT_SIGNS[spec.theorem_id])
        moduli = family_moduli(curve, spec)
        logger.info(f"{spec.theorem_id} on {curve.name}: {len(moduli)} twists")
        if not moduli:
            continue
        # build the space and eigen data once, before the workers share it
        modular_data(curve)
        lalg(curve)
        work = [(curve, M, spec.theorem_id) for M in moduli]
        if spec.parallelism <= 1:
            yield from map(_report, work)
        else:
            with ThreadPoolExecutor(max_workers=spec.parallelism) as pool:
                yield from pool.map(_report, work)


def summarize(spec: ScanSpec, reports: List[TwistReport]) -> ScanSummary:
    met = held = 0
    violations = []
    for report in reports:
        verdict = report.theorem_verdicts[spec.theorem_id]
        if verdict.hypotheses_met:
            met += 1
            if verdict.conclusion_holds:
                held += 1
            else:
                violations.append(f"{report.curve.name} M={report.twist.M}")
    curves = tuple(dict.fromkeys(report.curve.name for report in reports))
    return ScanSummary(theorem_id=spec.theorem_id, curves=curves, total=len(reports),
                       hypotheses_met=met, conclusions_held=held, violations=tuple(violations))
