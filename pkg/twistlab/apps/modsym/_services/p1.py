"""
P^1(Z/N): canonical representatives of pairs (c:d) with gcd(c, d, N) = 1
modulo scaling by units.

Canonical form: c is replaced by g = gcd(c, N) (stored as 0 when g = N),
then d is the smallest value reachable by the units that fix g.
"""

import math
from typing import Dict, List, Tuple

from sympy.ntheory import divisors, primefactors

Pair = Tuple[int, int]


def p1_count(N: int) -> int:
    count = N
    for p in primefactors(N):
        count = count // p * (p + 1)
    return count


class P1Normalizer:
    def __init__(self, N: int) -> None:
        self.N = N
        self._memo: Dict[Pair, Pair] = {}

    def _unit_lift(self, c: int, g: int) -> int:
        """A unit u mod N with u*c = g mod N."""
        N = self.N
        step = N // g
        u = pow(c // g, -1, step) if step > 1 else 1
        while math.gcd(u, N) != 1:
            u += step
        return u % N

    def normalize(self, c: int, d: int) -> Pair:
        N = self.N
        key = (c % N, d % N)
        cached = self._memo.get(key)
        if cached is not None:
            return cached
        c, d = key
        g = math.gcd(c, N)
        if math.gcd(g, d) != 1:
            raise ValueError(f"({c}:{d}) is not a point of P1(Z/{N})")
        u = self._unit_lift(c, g)
        d = (u * d) % N
        step = N // g
        best = d
        for k in range(g):
            lam = 1 + k * step
            if math.gcd(lam, N) == 1:
                best = min(best, (lam * d) % N)
        result = (g % N, best)
        self._memo[key] = result
        return result

    def enumerate(self) -> List[Pair]:
        found = set()
        for g in divisors(self.N):
            for d in range(self.N):
                if math.gcd(math.gcd(g, d), self.N) == 1:
                    found.add(self.normalize(g, d))
        return sorted(found)
