"""
Minimal models and conductors.

Minimalization works on the (c4, c6) invariants: divide by p^4, p^6 while
p^12 divides the discriminant and an integral model with the smaller
invariants still exists, then rebuild the reduced model (a1, a3 in {0, 1},
a2 in {-1, 0, 1}) from the final pair.
"""

from typing import Iterable, Optional, Tuple

from sympy.ntheory import factorint

from twistlab.apps.curves import corpus
from twistlab.apps.curves.models import CurveModel, weierstrass_invariants
from twistlab.utils.exceptions import PreconditionError
from twistlab.utils.logger import TwistLogger

logger = TwistLogger(__name__)


def model_from_c_invariants(c4: int, c6: int) -> Optional[Tuple[int, int, int, int, int]]:
    """Reduced integral model with invariants (c4, c6), or None if there is none."""
    b2 = (-c6) % 12
    if b2 > 6:
        b2 -= 12
    num4 = b2 * b2 - c4
    if num4 % 24:
        return None
    b4 = num4 // 24
    num6 = -b2 ** 3 + 36 * b2 * b4 - c6
    if num6 % 216:
        return None
    b6 = num6 // 216
    a1 = b2 % 2
    a3 = b6 % 2
    if (b2 - a1) % 4 or (b4 - a1 * a3) % 2 or (b6 - a3) % 4:
        return None
    a2 = (b2 - a1) // 4
    a4 = (b4 - a1 * a3) // 2
    a6 = (b6 - a3) // 4
    inv = weierstrass_invariants(a1, a2, a3, a4, a6)
    if inv['c4'] != c4 or inv['c6'] != c6:
        return None
    return (a1, a2, a3, a4, a6)


def _reduce_at(c4: int, c6: int, p: int) -> Optional[Tuple[int, int]]:
    if c4 % p ** 4 or c6 % p ** 6:
        return None
    c4p, c6p = c4 // p ** 4, c6 // p ** 6
    if model_from_c_invariants(c4p, c6p) is None:
        return None
    return c4p, c6p


def local_conductor_exponent(p: int, c4: int, disc: int) -> int:
    if disc % p:
        return 0
    if c4 % p:
        return 1
    if p >= 5:
        return 2
    raise PreconditionError(
        f"additive reduction at {p} needs Tate's algorithm; supply the conductor or use a corpus curve"
    )


def conductor_from_model(c4: int, disc: int) -> int:
    conductor = 1
    for p in factorint(abs(disc)):
        conductor *= p ** local_conductor_exponent(p, c4, disc)
    return conductor


def minimalize(raw: Iterable[int], label: Optional[str] = None,
               conductor: Optional[int] = None,
               root_number: Optional[int] = None) -> CurveModel:
    """
    Globally minimal reduced model of the curve given by raw a-invariants.

    The conductor is taken from the corpus when the minimal model is a
    corpus curve, else from `conductor` when supplied, else from local
    reduction types (which refuses additive reduction at 2 and 3).
    """
    coeffs = tuple(int(a) for a in raw)
    if len(coeffs) != 5:
        raise PreconditionError(f"expected five Weierstrass coefficients, got {len(coeffs)}")
    inv = weierstrass_invariants(*coeffs)
    if inv['disc'] == 0:
        raise PreconditionError(f"singular model {list(coeffs)}: discriminant is 0")

    c4, c6, disc = inv['c4'], inv['c6'], inv['disc']
    primes = [p for p, e in factorint(abs(disc)).items() if e >= 12]
    changed = True
    while changed:
        changed = False
        for p in primes:
            while disc % p ** 12 == 0:
                reduced = _reduce_at(c4, c6, p)
                if reduced is None:
                    break
                c4, c6 = reduced
                disc //= p ** 12
                changed = True

    minimal = model_from_c_invariants(c4, c6)
    if minimal is None:
        # the input itself is integral, so reconstruction from its own pair cannot fail
        raise PreconditionError(f"no integral model for c4={c4}, c6={c6}")
    if minimal != coeffs:
        logger.debug(f"minimalized {list(coeffs)} -> {list(minimal)}")

    entry = corpus.by_coefficients(minimal)
    if entry is not None:
        conductor = entry.conductor
        label = entry.label
        root_number = entry.root_number if root_number is None else root_number
        optimal = entry.optimal
    else:
        optimal = False
        if conductor is None:
            conductor = conductor_from_model(c4, disc)
        elif any(disc % p for p in factorint(conductor)):
            raise PreconditionError(f"conductor {conductor} has a prime not dividing disc {disc}")

    return CurveModel(*minimal, conductor=conductor, disc=disc, label=label,
                      root_number=root_number, optimal=optimal)


def curve_from_label(label: str) -> CurveModel:
    entry = corpus.lookup(label)
    return minimalize(entry.coefficients, label=entry.label)


def parse_curve(text: str) -> CurveModel:
    """A corpus label such as '11a1', or five comma-separated coefficients."""
    text = text.strip()
    if ',' in text:
        body = text.strip('[]() ')
        try:
            coeffs = [int(part) for part in body.split(',')]
        except ValueError as exc:
            raise PreconditionError(f"cannot parse coefficients '{text}'") from exc
        return minimalize(coeffs)
    return curve_from_label(text)
