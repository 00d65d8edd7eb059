from typing import Dict, Iterator, List

from sympy.ntheory import primerange

from twistlab.apps.cli.models import EXIT_VERIFIED
from twistlab.apps.cli.services import TwistLabCommand, csv_rows
from twistlab.apps.descent.models import SelmerDescriptor
from twistlab.apps.descent.serializers import (
    AqVerdictSerializer, BSDLedgerSerializer, ConjectureRowSerializer, DenominatorCheckSerializer,
    SelmerDescriptorSerializer, aq_record, conjecture_record, denominator_record, ledger_record,
    selmer_record,
)
from twistlab.apps.descent.services import (
    aq_ns, conjecture_scan, lalg_denominator_check, ns_curves, ns_parameters, qualifying_primes,
    root_number_ns, selmer2, selmer_phi, selmer_phihat, verify_thm_A,
)
from twistlab.utils.arith import is_squarefree
from twistlab.utils.exceptions import PreconditionError
from twistlab.utils.logger import TwistLogger

logger = TwistLogger(__name__)

ACTIONS = ('descent', 'bsd', 'conjecture', 'aq', 'denominator')
GRID_FIELDS = ['u', 'p', 'M', 'root_number', 'phi', 'phihat', 'two_A', 'two_A_prime']


def _order_text(descriptor: SelmerDescriptor) -> str:
    if descriptor.pinned:
        return str(descriptor.order)
    return f"{descriptor.bounds[0]}..{descriptor.bounds[1]}"


def _grid_moduli(p: int, m_max: int) -> List[int]:
    moduli = []
    for m in range(3, m_max + 1, 2):
        if m % p and is_squarefree(m):
            moduli.append(m if m % 4 == 1 else -m)
    return sorted(moduli, key=lambda M: (abs(M), M))


def grid_rows(u_max: int, m_max: int) -> Iterator[Dict[str, object]]:
    for u in ns_parameters(u_max):
        pair = ns_curves(u)
        for M in _grid_moduli(pair.p, m_max):
            two_A, two_A_prime = selmer2(pair, M)
            yield {
                'u': u,
                'p': pair.p,
                'M': M,
                'root_number': root_number_ns(pair, M),
                'phi': selmer_phi(pair, M).order,
                'phihat': selmer_phihat(pair, M).order,
                'two_A': _order_text(two_A),
                'two_A_prime': _order_text(two_A_prime),
            }


class Command(TwistLabCommand):
    help = "Neumann-Setzer curves p = u^2 + 64: descent, BSD ledgers, conjecture tables, a_q and L^alg checks"

    def add_arguments(self, parser):
        parser.add_argument('u', type=int, help="u = 1 mod 4 with u^2 + 64 prime, e.g. -3 for p = 73")
        parser.add_argument('action', choices=ACTIONS)
        parser.add_argument('--M', dest='M', type=int, nargs='*', default=[], help="twists for descent")
        parser.add_argument('--grid', action='store_true', help="descent as CSV over |u| <= --u-max, |M| <= --m-max")
        parser.add_argument('--u-max', type=int, default=13)
        parser.add_argument('--m-max', type=int, default=60)
        parser.add_argument('--q', dest='q', type=int, nargs='*', default=[], help="primes for bsd")
        parser.add_argument('--count', type=int, default=5, help="bsd over the first COUNT qualifying primes")
        parser.add_argument('--r', dest='r', type=int, default=1, help="M has 2r prime factors")
        parser.add_argument('--bound', type=int, default=300, help="bound on M (conjecture), q (aq, bsd)")

    def run(self, *args, **options) -> int:
        action = options['action']
        if action == 'descent' and options['grid']:
            csv_rows(self.stdout, GRID_FIELDS, grid_rows(options['u_max'], options['m_max']))
            return EXIT_VERIFIED
        pair = ns_curves(options['u'])
        logger.info(f"{pair}: {action}")
        getattr(self, f"_{action}")(pair, options)
        return EXIT_VERIFIED

    def _descent(self, pair, options):
        if not options['M']:
            raise PreconditionError("descent needs --M or --grid")
        for M in options['M']:
            phi, phihat = selmer_phi(pair, M), selmer_phihat(pair, M)
            for descriptor in (phi, phihat, *selmer2(pair, M)):
                self.emit(SelmerDescriptorSerializer, selmer_record(pair.p, descriptor))

    def _bsd(self, pair, options):
        primes = options['q'] or qualifying_primes(pair, options['bound'])[:options['count']]
        for q in primes:
            self.emit(BSDLedgerSerializer, ledger_record(verify_thm_A(pair, q)))

    def _conjecture(self, pair, options):
        report = conjecture_scan(pair, options['r'], options['bound'])
        logger.info(f"p={pair.p}: ord2 L^alg(A) = {report.base_ord2}, {len(report.rows)} twists")
        for row in report.rows:
            self.emit(ConjectureRowSerializer, conjecture_record(pair.p, report.r, row))

    def _aq(self, pair, options):
        # odd q, the range qualifying_primes draws from; a_2 is reported by the denominator action
        for q in primerange(3, options['bound'] + 1):
            self.emit(AqVerdictSerializer, aq_record(aq_ns(pair, q)))

    def _denominator(self, pair, options):
        self.emit(DenominatorCheckSerializer, denominator_record(lalg_denominator_check(pair)))
