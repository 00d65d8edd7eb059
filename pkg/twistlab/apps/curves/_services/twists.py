"""Quadratic twists."""

import math
from typing import Optional

from twistlab.apps.curves._services.weierstrass import minimalize
from twistlab.apps.curves.models import CurveModel, TwistDescriptor
from twistlab.utils.arith import is_squarefree, kronecker, odd_prime_factors
from twistlab.utils.exceptions import PreconditionError


def twisted_root_number(curve: CurveModel, M: int) -> Optional[int]:
    """w(E^(M)) = (M / -C) * w(E) for M = 1 mod 4 coprime to C; None when unknown."""
    if curve.root_number is None or M % 4 != 1 or math.gcd(M, curve.conductor) != 1:
        return None
    return kronecker(M, -curve.conductor) * curve.root_number


def twist_model(curve: CurveModel, M: int) -> CurveModel:
    """
    Minimal model of E^(M), from y^2 = x^3 - 27 c4 M^2 x - 54 c6 M^3.

    For M = 1 mod 4 coprime to the conductor C the twisted conductor is
    C * M^2; otherwise it is read off the twisted model.
    """
    if M in (0, 1) or not is_squarefree(M):
        raise PreconditionError(f"twist needs square-free M other than 0, 1; got {M}")
    inv = curve.invariants
    hint = None
    if M % 4 == 1 and math.gcd(M, curve.conductor) == 1:
        hint = curve.conductor * M * M
    label = f"{curve.label}^({M})" if curve.label else None
    return minimalize(
        (0, 0, 0, -27 * inv['c4'] * M * M, -54 * inv['c6'] * M ** 3),
        label=label,
        conductor=hint,
        root_number=twisted_root_number(curve, M),
    )


def make_twist(curve: CurveModel, M: int) -> TwistDescriptor:
    """Validated descriptor for a twist of `curve` by M (square-free, 1 mod 4, coprime to C)."""
    if M in (0, 1) or not is_squarefree(M) or M % 4 != 1:
        raise PreconditionError(f"M={M} must be square-free, 1 mod 4 and different from 1")
    if math.gcd(M, curve.conductor) != 1:
        raise PreconditionError(f"M={M} is not coprime to the conductor {curve.conductor}")
    primes = tuple(odd_prime_factors(M))
    return TwistDescriptor(M=M, epsilon=1 if M > 0 else -1, primes=primes, r=len(primes))
