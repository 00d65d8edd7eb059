"""
Small number theory helpers shared by the apps.

Thin wrappers over sympy that pin the conventions the rest of the code
relies on: 2-adic order of rationals with an infinite value at 0, gcd
cofactors in (g, x, y) order, signed square-free parts.
"""

import math
from fractions import Fraction
from functools import reduce
from typing import Iterable, List, Tuple, Union

from sympy import multiplicity
from sympy.core.intfunc import igcdex
from sympy.functions.combinatorial.numbers import kronecker_symbol
from sympy.ntheory import factorint, sqrt_mod

from twistlab.utils.exceptions import PreconditionError

Rational = Union[int, Fraction]


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a/n) for arbitrary integers."""
    return int(kronecker_symbol(a, n))


def ord_p(x: Rational, p: int) -> float:
    """p-adic valuation; math.inf at 0."""
    x = Fraction(x)
    if x == 0:
        return math.inf
    return int(multiplicity(p, abs(x.numerator))) - int(multiplicity(p, x.denominator))


def ord2(x: Rational) -> float:
    return ord_p(x, 2)


def is_squarefree(n: int) -> bool:
    if n == 0:
        return False
    return all(e == 1 for e in factorint(abs(n)).values())


def squarefree_part(x: Rational) -> int:
    """Signed square-free integer in the square class of a nonzero rational."""
    x = Fraction(x)
    if x == 0:
        raise PreconditionError("zero has no square class")
    n = x.numerator * x.denominator
    sign = -1 if n < 0 else 1
    part = 1
    for p, e in factorint(abs(n)).items():
        if e % 2:
            part *= p
    return sign * part


def odd_prime_factors(n: int) -> List[int]:
    return sorted(p for p in factorint(abs(n)) if p != 2)


def prime_factors(n: int) -> List[int]:
    return sorted(factorint(abs(n)))


def square_roots_mod(a: int, q: int) -> List[int]:
    """All square roots of a modulo the odd prime q, ascending."""
    roots = sqrt_mod(a % q, q, all_roots=True) or []
    return sorted(set(int(r) for r in roots))


def xgcd(a: int, b: int) -> Tuple[int, int, int]:
    """(g, x, y) with a*x + b*y = g = gcd(a, b) >= 0."""
    x, y, g = igcdex(a, b)
    return int(g), int(x), int(y)


def round_half_away(num: int, den: int) -> int:
    """Nearest integer to num/den, ties away from zero."""
    if den < 0:
        num, den = -num, -den
    q, r = divmod(2 * abs(num) + den, 2 * den)
    return q if num >= 0 else -q


def lcm_all(values: Iterable[int]) -> int:
    return reduce(lambda a, b: a * b // math.gcd(a, b), values, 1)


def gcd_all(values: Iterable[int]) -> int:
    return reduce(math.gcd, values, 0)


def format_rational(x: Rational) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def format_ord(v: float) -> Union[int, str]:
    return "inf" if v == math.inf else int(v)
