"""
Manin symbol presentation of weight 2 modular symbols for Gamma_0(N).

Generators are the Manin symbols (c:d) in P^1(Z/N), subject to
    x + x sigma = 0,            sigma: (c:d) -> (-d:c)
    x + x tau + x tau^2 = 0,    tau:   (c:d) -> (d:-c-d)
The 2-term relations are solved by hand (pairing symbols, killing fixed
points); the 3-term relations are reduced with a sparse rref over QQ.
"""

import math
from fractions import Fraction
from typing import Dict, List, Tuple

from twistlab.apps.modsym._services.p1 import P1Normalizer, p1_count
from twistlab.apps.modsym.models import ModSymSpace, SparseVector
from twistlab.utils.arith import kronecker, xgcd
from twistlab.utils.config import setting
from twistlab.utils.exceptions import CapacityError, PreconditionError
from twistlab.utils.linalg import left_nullspace, rref
from twistlab.utils.logger import TwistLogger

from sympy.ntheory import divisors, primefactors, totient

logger = TwistLogger(__name__)

MIN_LEVEL = 11


def genus_x0(N: int) -> int:
    mu = p1_count(N)
    nu2 = 0 if N % 4 == 0 else math.prod(1 + kronecker(-4, p) for p in primefactors(N))
    nu3 = 0 if N % 9 == 0 else math.prod(1 + kronecker(-3, p) for p in primefactors(N))
    nu_inf = sum(int(totient(math.gcd(d, N // d))) for d in divisors(N))
    genus = 1 + Fraction(mu, 12) - Fraction(nu2, 4) - Fraction(nu3, 3) - Fraction(nu_inf, 2)
    return int(genus)


def cusp_count(N: int) -> int:
    return sum(int(totient(math.gcd(d, N // d))) for d in divisors(N))


def _normalize_cusp(a: int, c: int) -> Tuple[int, int]:
    g = math.gcd(a, c)
    a, c = a // g, c // g
    if c < 0 or (c == 0 and a < 0):
        a, c = -a, -c
    return a, c


def cusps_equivalent(cusp1: Tuple[int, int], cusp2: Tuple[int, int], N: int) -> bool:
    """p1/q1 ~ p2/q2 under Gamma_0(N) iff s1 q2 = s2 q1 mod gcd(q1 q2, N), s_j = p_j^-1 mod q_j."""
    (p1, q1), (p2, q2) = cusp1, cusp2
    s1 = pow(p1, -1, q1) if q1 else 1
    s2 = pow(p2, -1, q2) if q2 else 1
    return (s1 * q2 - s2 * q1) % math.gcd(q1 * q2, N) == 0


class CuspTable:
    def __init__(self, N: int) -> None:
        self.N = N
        self.reps: List[Tuple[int, int]] = []

    def index(self, a: int, c: int) -> int:
        cusp = _normalize_cusp(a, c)
        for i, rep in enumerate(self.reps):
            if cusps_equivalent(cusp, rep, self.N):
                return i
        self.reps.append(cusp)
        return len(self.reps) - 1


def manin_matrix(c: int, d: int, N: int) -> Tuple[int, int, int, int]:
    """An SL_2(Z) matrix [[a, b], [c', d']] whose bottom row lifts (c:d)."""
    c %= N
    d %= N
    if c == 0:
        c = N
    while math.gcd(c, d) != 1:
        d += N
    _, x, y = xgcd(d, c)
    # x*d + y*c = 1, so a = x, b = -y gives a*d - b*c = 1
    return x, -y, c, d


def symbol_boundary(c: int, d: int, N: int, cusps: CuspTable) -> Dict[int, int]:
    """delta(g{0, oo}) = [g oo] - [g 0] = [a/c] - [b/d]."""
    a, b, c, d = manin_matrix(c, d, N)
    result: Dict[int, int] = {}
    for cusp, sign in ((cusps.index(a, c), 1), (cusps.index(b, d), -1)):
        result[cusp] = result.get(cusp, 0) + sign
    return {k: v for k, v in result.items() if v}


def build_space(N: int) -> ModSymSpace:
    if N < MIN_LEVEL:
        raise PreconditionError(f"level {N} has no weight 2 cusp forms of interest (need N >= {MIN_LEVEL})")
    max_level = setting('MAX_LEVEL')
    if N > max_level:
        raise CapacityError(f"level {N} exceeds the modular symbol capacity {max_level}")

    p1 = P1Normalizer(N)
    symbols = p1.enumerate()
    if len(symbols) != p1_count(N):
        raise AssertionError(f"P1({N}) enumeration gave {len(symbols)} points, expected {p1_count(N)}")
    index = {s: i for i, s in enumerate(symbols)}
    n = len(symbols)

    def idx(c: int, d: int) -> int:
        return index[p1.normalize(c, d)]

    sigma = [idx(-d, c) for (c, d) in symbols]
    tau = [idx(d, -c - d) for (c, d) in symbols]

    # 2-term relations: each symbol is +-(representative) or 0
    rep_of: List[int] = [-1] * n
    sign_of: List[int] = [0] * n
    reps: List[int] = []
    for i in range(n):
        if rep_of[i] != -1 or sign_of[i] != 0:
            continue
        j = sigma[i]
        if j == i:
            rep_of[i] = i
            sign_of[i] = 0
            continue
        reps.append(i)
        rep_of[i], sign_of[i] = i, 1
        rep_of[j], sign_of[j] = i, -1
    column = {r: k for k, r in enumerate(reps)}

    # 3-term relations over the representatives
    rows: List[Dict[int, Fraction]] = []
    seen = set()
    triples = []
    for i in range(n):
        orbit = (i, tau[i], tau[tau[i]])
        key = frozenset(orbit)
        if key in seen:
            continue
        seen.add(key)
        triples.append(orbit)
        row: Dict[int, Fraction] = {}
        for s in orbit:
            if sign_of[s]:
                col = column[rep_of[s]]
                row[col] = row.get(col, Fraction(0)) + sign_of[s]
        row = {k: v for k, v in row.items() if v}
        if row:
            rows.append(row)

    reduced, pivots = rref(rows, len(reps))
    pivot_row = {col: r for r, col in enumerate(pivots)}
    free_cols = [k for k in range(len(reps)) if k not in pivot_row]
    position = {col: pos for pos, col in enumerate(free_cols)}

    rep_coords: List[SparseVector] = []
    for col in range(len(reps)):
        if col in position:
            rep_coords.append({position[col]: Fraction(1)})
        else:
            row = reduced.get(pivot_row[col], {})
            rep_coords.append({position[f]: -v for f, v in row.items() if f in position and v})

    coords: List[SparseVector] = []
    for i in range(n):
        if sign_of[i] == 0:
            coords.append({})
        else:
            base = rep_coords[column[rep_of[i]]]
            coords.append({k: sign_of[i] * v for k, v in base.items()})

    basis = tuple(reps[col] for col in free_cols)
    cusps = CuspTable(N)
    boundary = tuple(symbol_boundary(*symbols[s], N, cusps) for s in basis)
    n_cusps = len(cusps.reps)
    delta_rows = [[boundary[j].get(k, 0) for k in range(n_cusps)] for j in range(len(basis))]
    cuspidal = left_nullspace(delta_rows, n_cusps)
    if n_cusps != cusp_count(N) or len(cuspidal) != 2 * genus_x0(N):
        raise AssertionError(
            f"level {N}: {n_cusps} cusps and cuspidal rank {len(cuspidal)}, "
            f"expected {cusp_count(N)} and {2 * genus_x0(N)}"
        )

    space = ModSymSpace(
        level=N,
        symbols=tuple(symbols),
        basis=basis,
        coords=tuple(coords),
        sigma_pairs=tuple((i, sigma[i]) for i in range(n) if i <= sigma[i]),
        tau_triples=tuple(triples),
        cusps=tuple(cusps.reps),
        boundary=boundary,
        cuspidal_basis=tuple(tuple(v) for v in cuspidal),
        index=index,
    )
    logger.info(f"built {space}")
    return space


def symbol_index(space: ModSymSpace, c: int, d: int) -> int:
    return space.index[P1Normalizer(space.level).normalize(c, d)]


def vector_of(space: ModSymSpace, terms: Dict[int, int]) -> SparseVector:
    """Coordinates of a Z-combination of Manin symbols given as {symbol index: multiplicity}."""
    total: SparseVector = {}
    for i, mult in terms.items():
        for k, v in space.coords[i].items():
            total[k] = total.get(k, Fraction(0)) + mult * v
    return {k: v for k, v in total.items() if v}


def boundary_of(space: ModSymSpace, vector: SparseVector) -> Dict[int, Fraction]:
    result: Dict[int, Fraction] = {}
    for j, v in vector.items():
        for cusp, mult in space.boundary[j].items():
            result[cusp] = result.get(cusp, Fraction(0)) + v * mult
    return {k: v for k, v in result.items() if v}
