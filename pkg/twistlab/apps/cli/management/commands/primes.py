from twistlab.apps.cli.serializers import PrimeListSerializer
from twistlab.apps.cli.services import TwistLabCommand, prime_list
from twistlab.apps.curves.services import parse_curve


class Command(TwistLabCommand):
    help = "Primes up to a bound that satisfy a '+'-joined predicate, e.g. mod4=3+inert=17"

    def add_arguments(self, parser):
        parser.add_argument('curve', help="corpus label or a1,a2,a3,a4,a6")
        parser.add_argument('predicate', help="inert-F, mod4=1, mod4=3, inert=D, split=D joined by '+'")
        parser.add_argument('bound', type=int)

    def run(self, *args, **options) -> int:
        curve = parse_curve(options['curve'])
        primes = prime_list(curve, options['predicate'], options['bound'])
        self.emit(PrimeListSerializer, {
            'record': 'primes',
            'curve': curve.name,
            'predicate': options['predicate'],
            'bound': options['bound'],
            'primes': primes,
        })
        return 0
