"""
Evaluation of {0, k/m} against a normalized eigenform.

The path from 0 to k/m is split along the continued-fraction convergents
p_j/q_j of k/m; each piece {p_(j-1)/q_(j-1), p_j/q_j} is the image of
{0, oo} under a matrix with bottom row ((-1)^(j-1) q_j, q_(j-1)), that is,
one Manin symbol.
"""

import math
from fractions import Fraction
from typing import Dict, List, Tuple

from twistlab.apps.curves.models import CurveModel
from twistlab.apps.modsym._services.space import symbol_index
from twistlab.apps.modsym.models import EigenData, ModSymSpace, PeriodPair, SymbolPair, ZERO_PAIR
from twistlab.utils.exceptions import NormalizationError, PreconditionError


def convergent_denominators(k: int, m: int) -> List[int]:
    """q_(-2), q_(-1), q_0, ..., q_n for the reduced fraction k/m."""
    qs = [1, 0]
    a, b = k, m
    while b:
        t = a // b
        a, b = b, a - t * b
        qs.append(t * qs[-1] + qs[-2])
    return qs


def manin_path(k: int, m: int) -> List[Tuple[int, int]]:
    """Manin symbols (c, d), as integer pairs, whose sum is {0, k/m}."""
    g = math.gcd(k, m)
    k, m = k // g, m // g
    if k == 0:
        return []
    qs = convergent_denominators(k, m)
    path = []
    # qs[j + 2] is q_j
    for j in range(-1, len(qs) - 2):
        sign = 1 if (j - 1) % 2 == 0 else -1
        path.append((sign * qs[j + 2], qs[j + 1]))
    return path


def path_symbols(space: ModSymSpace, k: int, m: int) -> Dict[int, int]:
    terms: Dict[int, int] = {}
    for c, d in manin_path(k, m):
        i = symbol_index(space, c, d)
        terms[i] = terms.get(i, 0) + 1
    return terms


def _check_denominator(space: ModSymSpace, m: int) -> None:
    if m <= 0 or math.gcd(m, space.level) != 1:
        raise PreconditionError(f"symbol {{0, k/{m}}} needs m > 0 coprime to the level {space.level}")


def symbol(space: ModSymSpace, eig: EigenData, k: int, m: int) -> SymbolPair:
    _check_denominator(space, m)
    if eig.level != space.level:
        raise PreconditionError(f"eigen data is for level {eig.level}, space is level {space.level}")
    terms = path_symbols(space, k % m, m)
    if not terms:
        return ZERO_PAIR
    x_plus = sum((eig.plus_values[i] * n for i, n in terms.items()), Fraction(0))
    x_minus = sum((eig.minus_values[i] * n for i, n in terms.items()), Fraction(0))
    if eig.lattice_type == 2:
        x_plus, x_minus = x_plus / 2, x_minus / 2
    return SymbolPair(x_plus, x_minus)


def period_pair(curve: CurveModel, space: ModSymSpace, eig: EigenData, k: int, m: int) -> PeriodPair:
    if not curve.optimal:
        raise PreconditionError(f"{curve.name} is not the optimal curve in its class")
    pair = symbol(space, eig, k, m)
    lattice_type = curve.lattice_type
    if lattice_type == 2:
        s, t = 2 * pair.x_plus, 2 * pair.x_minus
    else:
        s, t = pair.x_plus, pair.x_minus
    if s.denominator != 1 or t.denominator != 1:
        raise NormalizationError(f"{curve.name}: {{0, {k}/{m}}} has non-integral lattice coordinates ({s}, {t})")
    if lattice_type == 2 and (s - t) % 2:
        raise NormalizationError(f"{curve.name}: {{0, {k}/{m}}} coordinates ({s}, {t}) differ in parity")
    return PeriodPair(s=s, t=t, lattice_type=lattice_type)
