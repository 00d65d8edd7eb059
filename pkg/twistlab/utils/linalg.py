"""
Exact linear algebra glue.

Rational work goes through sympy's DomainMatrix over QQ (sparse rref and
nullspaces). Integer lattices are handled by a small unimodular row
echelon routine, since the lattice steps need the transform as well as the
reduced rows.
"""

from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix

from twistlab.utils.arith import xgcd

SparseRow = Dict[int, Fraction]


def to_qq(x) -> "QQ.dtype":
    x = Fraction(x)
    return QQ(x.numerator, x.denominator)


def from_qq(x) -> Fraction:
    return Fraction(int(QQ.numer(x)), int(QQ.denom(x)))


def sparse_matrix(rows: Sequence[SparseRow], ncols: int) -> DomainMatrix:
    data = {}
    for i, row in enumerate(rows):
        entries = {j: to_qq(v) for j, v in row.items() if v}
        if entries:
            data[i] = entries
    return DomainMatrix(data, (len(rows), ncols), QQ)


def dense_matrix(rows: Sequence[Sequence], ncols: int) -> DomainMatrix:
    return DomainMatrix([[to_qq(v) for v in row] for row in rows], (len(rows), ncols), QQ)


def dense_rows(dm: DomainMatrix) -> List[List[Fraction]]:
    return [[from_qq(v) for v in row] for row in dm.rep.to_ddm()]


def sparse_rows(dm: DomainMatrix) -> Dict[int, SparseRow]:
    sdm = dm.rep.to_sdm()
    return {i: {j: from_qq(v) for j, v in row.items()} for i, row in sdm.items()}


def rref(rows: Sequence[SparseRow], ncols: int) -> Tuple[Dict[int, SparseRow], Tuple[int, ...]]:
    """Reduced row echelon form of a sparse rational matrix."""
    if not rows:
        return {}, ()
    reduced, pivots = sparse_matrix(rows, ncols).rref()
    return sparse_rows(reduced), tuple(pivots)


def left_nullspace(rows: Sequence[Sequence], ncols: int) -> List[List[Fraction]]:
    """Basis of {c : c . rows = 0}, as dense rational vectors."""
    if not rows:
        return []
    null = dense_matrix(rows, ncols).transpose().nullspace()
    if null.shape[0] == 0:
        return []
    return dense_rows(null)


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> List[List[Fraction]]:
    if not a or not b:
        return []
    product = dense_matrix(a, len(a[0])).matmul(dense_matrix(b, len(b[0])))
    return dense_rows(product)


def integer_echelon(rows: Sequence[Sequence[int]], track: bool = False
                    ) -> Tuple[List[List[int]], Optional[List[List[int]]], int]:
    """
    Row echelon form over Z by unimodular row operations.

    Returns (echelon, transform, rank). The first `rank` rows of `echelon`
    are a Z-basis of the row lattice; when `track` is set, transform[i]
    writes echelon row i in terms of the input rows, so the transform rows
    from `rank` on are a Z-basis of the integer left kernel.
    """
    m = [list(r) for r in rows]
    n_rows = len(m)
    n_cols = len(m[0]) if m else 0
    t = [[int(i == j) for j in range(n_rows)] for i in range(n_rows)] if track else None
    piv_r = 0
    for piv_c in range(n_cols):
        if piv_r == n_rows:
            break
        for r in range(piv_r + 1, n_rows):
            b = m[r][piv_c]
            if b == 0:
                continue
            a = m[piv_r][piv_c]
            g, x, y = xgcd(a, b)
            ka, kb = a // g, b // g
            top, bottom = m[piv_r], m[r]
            m[piv_r] = [x * u + y * v for u, v in zip(top, bottom)]
            m[r] = [ka * v - kb * u for u, v in zip(top, bottom)]
            if t is not None:
                top, bottom = t[piv_r], t[r]
                t[piv_r] = [x * u + y * v for u, v in zip(top, bottom)]
                t[r] = [ka * v - kb * u for u, v in zip(top, bottom)]
        if m[piv_r][piv_c] != 0:
            piv_r += 1
    return m, t, piv_r
