"""
phi- and phihat-Selmer groups of the Neumann-Setzer twists from their
closed-form descriptions, the same groups from local solubility, and the
bounds on the 2-Selmer quotients they give.
"""

from itertools import combinations
from typing import Dict, List, Tuple

from sympy.ntheory import divisors, jacobi_symbol

from twistlab.apps.descent._services.local import soluble_everywhere
from twistlab.apps.descent._services.neumann_setzer import classify_twist
from twistlab.apps.descent.models import NSPair, SelmerDescriptor
from twistlab.utils.arith import odd_prime_factors, square_roots_mod, squarefree_part
from twistlab.utils.exceptions import PreconditionError, TheoremViolation
from twistlab.utils.logger import TwistLogger

logger = TwistLogger(__name__)


def q2m_generators(pair: NSPair, M: int) -> List[int]:
    return [-1, 2, pair.p] + odd_prime_factors(M)


def q2m_elements(pair: NSPair, M: int) -> List[int]:
    """Square-free representatives of Q(2, M), by subsets of the generators."""
    gens = q2m_generators(pair, M)
    elements = []
    for size in range(len(gens) + 1):
        for subset in combinations(gens, size):
            d = 1
            for g in subset:
                d *= g
            elements.append(d)
    return elements


def _symbol(a: int, q: int) -> int:
    return jacobi_symbol(a % q, q)


def _root_symbol(q: int, roots: List[int], value) -> Tuple[int, int]:
    """Symbol of value(r) mod q, the same for every square root r; (symbol, smallest root)."""
    symbols = {_symbol(value(r), q) for r in roots}
    if len(symbols) != 1:
        raise TheoremViolation(f"q={q}: symbol depends on the choice of square root ({sorted(symbols)})")
    return symbols.pop(), roots[0]


def _class_key(d: int) -> Tuple[int, int]:
    return abs(d), d < 0


def _phi_members(pair: NSPair, M: int) -> Tuple[List[int], Dict[int, int]]:
    cls = classify_twist(pair, M)
    witnesses = {}
    members = []
    for d in divisors(cls.N):
        ok = all(_symbol(d, q) == 1 for q in odd_prime_factors(cls.M_plus) if d % q)
        for q in cls.N_plus:
            if not ok or d % q:
                continue
            symbol, witnesses[q] = _root_symbol(q, square_roots_mod(pair.p, q), lambda a: 2 * pair.u + 2 * a)
            ok = _symbol(M // d, q) == symbol
        if ok:
            members += [d, -d]
    return members, witnesses


def _phihat_members(pair: NSPair, M: int) -> Tuple[List[int], Dict[int, int]]:
    cls = classify_twist(pair, M)
    witnesses = {}
    members = []
    for d in divisors(cls.M_plus):
        if M % 4 == 1 and d % 4 != 1 or M % 4 == 3 and d % 8 != 1:
            continue
        ok = all(_symbol(d, q) == 1 for q in odd_prime_factors(cls.N) if d % q)
        for q in cls.N_plus:
            if not ok or d % q:
                continue
            symbol, witnesses[q] = _root_symbol(q, square_roots_mod(-1, q), lambda b: pair.u + 8 * b)
            ok = _symbol(M // d, q) == symbol
        if ok:
            members += [d, pair.p * d]
    return members, witnesses


def _descriptor(kind: str, M: int, members: List[int], witnesses: Dict[int, int]) -> SelmerDescriptor:
    elements = tuple(sorted(set(members), key=_class_key))
    order = len(elements)
    # the torsion image is <-1> for phi and <p> for phihat
    return SelmerDescriptor(kind=kind, M=M, elements=elements, order=order,
                            quotient_order=order // 2, bounds=(order, order), witnesses=witnesses)


def selmer_phi(pair: NSPair, M: int) -> SelmerDescriptor:
    members, witnesses = _phi_members(pair, M)
    return _descriptor('phi', M, members, witnesses)


def selmer_phihat(pair: NSPair, M: int) -> SelmerDescriptor:
    members, witnesses = _phihat_members(pair, M)
    return _descriptor('phihat', M, members, witnesses)


def selmer_by_oracle(pair: NSPair, M: int, kind: str) -> SelmerDescriptor:
    """The same group, as the d in Q(2, M) whose space is soluble at every place of 2pM."""
    classify_twist(pair, M)
    members = [d for d in q2m_elements(pair, M) if soluble_everywhere(pair, M, d, kind)]
    return _descriptor(kind, M, members, {})


def is_group(elements: Tuple[int, ...]) -> bool:
    found = set(elements)
    return 1 in found and all(squarefree_part(a * b) in found for a in elements for b in elements)


def root_number_ns(pair: NSPair, M: int) -> int:
    """(M/p) for M > 0 and -(M/p) for M < 0, for M = 1 mod 4."""
    if M % 4 != 1:
        raise PreconditionError(f"the root number rule needs M = 1 mod 4, got M={M}")
    symbol = _symbol(M, pair.p)
    return symbol if M > 0 else -symbol


def _pin(lower: int, upper: int, root_number: int) -> Tuple[int, ...]:
    parity = 0 if root_number == 1 else 1
    candidates = []
    order = lower
    while order <= upper:
        if (order.bit_length() - 1) % 2 == parity:
            candidates.append(order)
        order *= 2
    return tuple(candidates)


def selmer2(pair: NSPair, M: int) -> Tuple[SelmerDescriptor, SelmerDescriptor]:
    """
    Orders of the 2-Selmer quotients of A^(M) and A'^(M) from

        0 -> S~phi(A^(M))     -> S~2(A^(M))  -> S^phihat(A'^(M))
        0 -> S~phihat(A'^(M)) -> S~2(A'^(M)) -> S^phi(A^(M))

    and the parity of the F_2-dimension given by the root number.
    """
    w = root_number_ns(pair, M)
    phi = selmer_phi(pair, M)
    phihat = selmer_phihat(pair, M)
    out = []
    for kind, sub, target in (('two(A)', phi, phihat), ("two(A')", phihat, phi)):
        lower, upper = sub.quotient_order, sub.quotient_order * target.order
        candidates = _pin(lower, upper, w)
        if not candidates:
            raise TheoremViolation(f"p={pair.p}, M={M}: no order in [{lower}, {upper}] has root number {w}")
        order = candidates[0] if len(candidates) == 1 else None
        if order is None:
            logger.debug(f"p={pair.p}, M={M}: {kind} order in {candidates}")
        out.append(SelmerDescriptor(kind=kind, M=M, elements=(), order=order,
                                    quotient_order=order, bounds=(candidates[0], candidates[-1])))
    return out[0], out[1]
