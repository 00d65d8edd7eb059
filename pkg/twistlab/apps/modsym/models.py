# modsym/models.py
"""
Value types for weight 2 modular symbols on Gamma_0(C).

Manin symbols (c:d) are identified with their index in `ModSymSpace.symbols`,
the sorted list of canonical P^1(Z/C) representatives.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Tuple

SparseVector = Dict[int, Fraction]


@dataclass(frozen=True, eq=False)
class ModSymSpace:
    level: int
    symbols: Tuple[Tuple[int, int], ...]
    # free generators, as symbol indices
    basis: Tuple[int, ...]
    # coordinates of every Manin symbol in the basis
    coords: Tuple[SparseVector, ...]
    # relation data: symbol index pairs (x, x sigma) and triples (x, x tau, x tau^2)
    sigma_pairs: Tuple[Tuple[int, int], ...]
    tau_triples: Tuple[Tuple[int, int, int], ...]
    cusps: Tuple[Tuple[int, int], ...]
    # boundary of each basis element, as {cusp index: multiplicity}
    boundary: Tuple[Dict[int, int], ...]
    cuspidal_basis: Tuple[Tuple[Fraction, ...], ...]
    index: Dict[Tuple[int, int], int] = field(default_factory=dict, repr=False)

    @property
    def dimension(self) -> int:
        return len(self.basis)

    @property
    def cuspidal_rank(self) -> int:
        return len(self.cuspidal_basis)

    def __str__(self) -> str:
        return f"ModSym(Gamma_0({self.level})): dim {self.dimension}, cuspidal {self.cuspidal_rank}"


@dataclass(frozen=True, eq=False)
class EigenData:
    """
    Plus and minus eigen-functionals of one rational newform.

    Each dual vector is normalized so that its values on integral cuspidal
    homology are exactly the integers. `plus_values[i]` is the value on
    Manin symbol i.
    """
    level: int
    curve_coefficients: Tuple[int, int, int, int, int]
    lattice_type: int
    plus_dual: Tuple[Fraction, ...]
    minus_dual: Tuple[Fraction, ...]
    plus_values: Tuple[Fraction, ...]
    minus_values: Tuple[Fraction, ...]
    eigenvalues: Dict[int, int]
    pmax: int
    minus_oriented: bool = False


@dataclass(frozen=True)
class SymbolPair:
    x_plus: Fraction
    x_minus: Fraction

    def __add__(self, other: "SymbolPair") -> "SymbolPair":
        return SymbolPair(self.x_plus + other.x_plus, self.x_minus + other.x_minus)

    def scale(self, factor) -> "SymbolPair":
        return SymbolPair(self.x_plus * factor, self.x_minus * factor)


ZERO_PAIR = SymbolPair(Fraction(0), Fraction(0))


@dataclass(frozen=True)
class PeriodPair:
    s: Fraction
    t: Fraction
    lattice_type: int
