"""
Hecke operators and rational eigen-functionals.

T_p acts on Manin symbols through Heilbronn matrices; an eigen-functional
is cut out by intersecting kernels of (T_p - a_p) for good p up to pmax,
then split into star-involution halves and scaled so that its values on
integral cuspidal homology are exactly Z.
"""

from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Sequence, Tuple

from sympy.ntheory import primerange

from twistlab.apps.curves.models import CurveModel
from twistlab.apps.curves.services import a_p
from twistlab.apps.modsym._services.space import boundary_of, symbol_index, vector_of
from twistlab.apps.modsym.models import EigenData, ModSymSpace, SparseVector
from twistlab.utils.arith import gcd_all, lcm_all, round_half_away
from twistlab.utils.exceptions import (
    AmbiguousEigenspaceError, CurveNotFoundError, NormalizationError, PreconditionError,
)
from twistlab.utils.linalg import integer_echelon, left_nullspace
from twistlab.utils.logger import TwistLogger

logger = TwistLogger(__name__)

Heilbronn = Tuple[int, int, int, int]


@lru_cache(maxsize=64)
def heilbronn(p: int) -> Tuple[Heilbronn, ...]:
    """Heilbronn matrices (x1, x2, y1, y2) of determinant p."""
    if p == 2:
        return ((1, 0, 0, 2), (2, 0, 0, 1), (2, 1, 0, 1), (1, 0, 1, 2))
    mats = [(1, 0, 0, p)]
    for r in range(-(p // 2), p // 2 + 1):
        x1, x2, y1, y2, a, b = p, -r, 0, 1, -p, r
        mats.append((x1, x2, y1, y2))
        while b:
            q = round_half_away(a, b)
            c = a - b * q
            a, b = -b, c
            x1, x2 = x2, q * x2 - x1
            y1, y2 = y2, q * y2 - y1
            mats.append((x1, x2, y1, y2))
    return tuple(mats)


def apply_hecke(space: ModSymSpace, p: int, symbol: int) -> SparseVector:
    N = space.level
    if N % p == 0:
        raise PreconditionError(f"T_{p} is only implemented for p not dividing {N}")
    c, d = space.symbols[symbol]
    terms: Dict[int, int] = {}
    for x1, x2, y1, y2 in heilbronn(p):
        j = symbol_index(space, c * x1 + d * y1, c * x2 + d * y2)
        terms[j] = terms.get(j, 0) + 1
    return vector_of(space, terms)


def hecke_matrix(space: ModSymSpace, p: int) -> List[List[Fraction]]:
    """Row j holds the coordinates of T_p applied to basis element j."""
    n = space.dimension
    rows = []
    for s in space.basis:
        image = apply_hecke(space, p, s)
        rows.append([image.get(k, Fraction(0)) for k in range(n)])
    return rows


def star_matrix(space: ModSymSpace) -> List[List[Fraction]]:
    n = space.dimension
    rows = []
    for s in space.basis:
        c, d = space.symbols[s]
        image = space.coords[symbol_index(space, -c, d)]
        rows.append([image.get(k, Fraction(0)) for k in range(n)])
    return rows


def _apply(matrix: Sequence[Sequence[Fraction]], v: Sequence[Fraction]) -> List[Fraction]:
    return [sum((a * b for a, b in zip(row, v)), Fraction(0)) for row in matrix]


def _combine(coeffs: Sequence[Fraction], vectors: Sequence[Sequence[Fraction]]) -> List[Fraction]:
    n = len(vectors[0])
    return [sum((c * v[k] for c, v in zip(coeffs, vectors)), Fraction(0)) for k in range(n)]


def _eigen_space(space: ModSymSpace, curve: CurveModel, pmax: int
                 ) -> Tuple[List[List[Fraction]], Dict[int, int]]:
    n = space.dimension
    candidates = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    eigenvalues = {}
    for p in primerange(2, pmax + 1):
        if space.level % p == 0:
            continue
        ap = a_p(curve, p)
        eigenvalues[p] = ap
        T = hecke_matrix(space, p)
        images = []
        for v in candidates:
            Tv = _apply(T, v)
            images.append([t - ap * x for t, x in zip(Tv, v)])
        kernel = left_nullspace(images, n)
        candidates = [_combine(k, candidates) for k in kernel]
        logger.debug(f"level {space.level}: after T_{p} eigenspace dimension {len(candidates)}")
        if len(candidates) < 2:
            raise CurveNotFoundError(
                f"{curve.name}: no 2-dimensional Hecke eigenspace at level {space.level} "
                f"(dimension {len(candidates)} after T_{p})"
            )
    if len(candidates) > 2:
        raise AmbiguousEigenspaceError(space.level, len(candidates), pmax)
    return candidates, eigenvalues


def _split(candidates: List[List[Fraction]], S: List[List[Fraction]], sign: int) -> List[Fraction]:
    for v in candidates:
        Sv = _apply(S, v)
        w = [a + sign * b for a, b in zip(v, Sv)]
        if any(w):
            return w
    raise AssertionError("eigenspace has no component of sign %+d" % sign)


def _rational_gcd(values: Sequence[Fraction]) -> Fraction:
    den = lcm_all(v.denominator for v in values)
    return Fraction(gcd_all(int(v * den) for v in values), den)


def integral_cycles(space: ModSymSpace) -> List[SparseVector]:
    """A Z-basis of the integral cuspidal homology, in basis coordinates."""
    n = space.dimension
    den = lcm_all(v.denominator for coords in space.coords for v in coords.values())
    lattice_rows = []
    for coords in space.coords:
        if coords:
            lattice_rows.append([int(coords.get(k, 0) * den) for k in range(n)])
    echelon, _, rank = integer_echelon(lattice_rows)
    lattice = echelon[:rank]
    vectors = [{k: Fraction(v, den) for k, v in enumerate(row) if v} for row in lattice]
    ncusps = len(space.cusps)
    boundaries = []
    for vec in vectors:
        b = boundary_of(space, vec)
        boundaries.append([int(b.get(c, 0) * den) for c in range(ncusps)])
    _, transform, brank = integer_echelon(boundaries, track=True)
    cycles = []
    for combo in transform[brank:]:
        total: SparseVector = {}
        for coeff, vec in zip(combo, vectors):
            for k, v in vec.items():
                total[k] = total.get(k, Fraction(0)) + coeff * v
        cycles.append({k: v for k, v in total.items() if v})
    if len(cycles) != space.cuspidal_rank:
        raise AssertionError(f"level {space.level}: {len(cycles)} integral cycles, "
                             f"expected {space.cuspidal_rank}")
    return cycles


def _normalize(w: List[Fraction], cycles: List[SparseVector], level: int, sign: str) -> List[Fraction]:
    values = [sum((v * w[k] for k, v in cycle.items()), Fraction(0)) for cycle in cycles]
    g = _rational_gcd(values)
    if g == 0:
        raise NormalizationError(f"level {level}: {sign} functional vanishes on integral homology")
    return [x / g for x in w]


def symbol_values(space: ModSymSpace, w: Sequence[Fraction]) -> Tuple[Fraction, ...]:
    return tuple(sum((v * w[k] for k, v in coords.items()), Fraction(0)) for coords in space.coords)


def _first_nonzero_lalg_prime(space: ModSymSpace, eigenvalues: Dict[int, int]) -> int:
    for l, al in sorted(eigenvalues.items()):
        if l % 2 and l + 1 - al != 0:
            return l
    raise NormalizationError(f"level {space.level}: no odd good prime with l + 1 - a_l != 0")


def hecke_eigen(space: ModSymSpace, curve: CurveModel, pmax: int) -> EigenData:
    if curve.conductor != space.level:
        raise PreconditionError(f"{curve.name} has conductor {curve.conductor}, space level is {space.level}")
    candidates, eigenvalues = _eigen_space(space, curve, pmax)
    S = star_matrix(space)
    cycles = integral_cycles(space)
    w_plus = _normalize(_split(candidates, S, 1), cycles, space.level, 'plus')
    w_minus = _normalize(_split(candidates, S, -1), cycles, space.level, 'minus')
    plus_values = symbol_values(space, w_plus)
    minus_values = symbol_values(space, w_minus)

    # orient the plus functional so that L(E,1)/Omega is non-negative
    l = _first_nonzero_lalg_prime(space, eigenvalues)
    total = sum((_zero_to_cusp(space, plus_values, k, l) for k in range(l)), Fraction(0))
    if total * (l + 1 - eigenvalues[l]) > 0:
        w_plus = [-x for x in w_plus]
        plus_values = tuple(-x for x in plus_values)

    data = EigenData(
        level=space.level,
        curve_coefficients=curve.coefficients,
        lattice_type=curve.lattice_type,
        plus_dual=tuple(w_plus),
        minus_dual=tuple(w_minus),
        plus_values=plus_values,
        minus_values=minus_values,
        eigenvalues=eigenvalues,
        pmax=pmax,
    )
    logger.info(f"eigen data for {curve.name} at level {space.level} from primes up to {pmax}")
    return data


def _zero_to_cusp(space: ModSymSpace, values: Sequence[Fraction], k: int, m: int) -> Fraction:
    from twistlab.apps.modsym._services.symbols import path_symbols

    return sum((values[i] * mult for i, mult in path_symbols(space, k, m).items()), Fraction(0))
