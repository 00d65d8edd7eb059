"""
Prime filters for twist families.

A predicate is a '+'-joined list of atoms:

    inert-F   q inert in the 2-division field of the curve
    mod4=1    q = 1 mod 4 (likewise mod4=3)
    inert=D   q inert in Q(sqrt D)
    split=D   q splits in Q(sqrt D)

Primes dividing 2, the conductor or any D named are never returned.
"""

import re
from typing import Callable, List, Tuple

from sympy.ntheory import primerange

from twistlab.apps.curves.models import CurveModel
from twistlab.apps.curves.services import is_inert_in_F, two_division_data
from twistlab.utils.arith import kronecker
from twistlab.utils.config import setting
from twistlab.utils.exceptions import CapacityError, PreconditionError

ATOM = re.compile(r'^(inert-F|mod4=[13]|(?:inert|split)=-?\d+)$')

Test = Callable[[int], bool]


def _atom(curve: CurveModel, text: str) -> Tuple[Test, int]:
    """The test for one atom and the integer whose primes it excludes."""
    if not ATOM.match(text):
        raise PreconditionError(f"unknown prime predicate '{text}'")
    if text == 'inert-F':
        data = two_division_data(curve)
        if not data.is_irreducible:
            raise PreconditionError(f"inert-F needs an irreducible 2-division cubic; {curve.name} has a rational root")
        return (lambda q: is_inert_in_F(curve, q)), data.cubic_disc
    name, value = text.split('=')
    if name == 'mod4':
        residue = int(value)
        return (lambda q: q % 4 == residue), 1
    D = int(value)
    if D in (0, 1):
        raise PreconditionError(f"Q(sqrt {D}) is not a quadratic field")
    sign = -1 if name == 'inert' else 1
    return (lambda q: kronecker(D, q) == sign), D


def parse_predicate(curve: CurveModel, predicate: str) -> Test:
    atoms = [_atom(curve, part.strip()) for part in predicate.split('+') if part.strip()]
    if not atoms:
        raise PreconditionError("empty prime predicate")
    excluded = 2 * curve.conductor
    for _, bad in atoms:
        excluded *= bad

    def test(q: int) -> bool:
        return excluded % q != 0 and all(t(q) for t, _ in atoms)

    return test


def prime_list(curve: CurveModel, predicate: str, bound: int) -> List[int]:
    if bound > setting('POINT_COUNT_BOUND'):
        raise CapacityError(f"prime bound {bound} exceeds {setting('POINT_COUNT_BOUND')}")
    test = parse_predicate(curve, predicate)
    return [q for q in primerange(3, bound + 1) if test(q)]
