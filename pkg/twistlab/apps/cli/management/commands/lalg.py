from twistlab.apps.analytic.services import cross_validate, lseries_numeric
from twistlab.apps.cli.models import EXIT_FAILURE, EXIT_VERIFIED
from twistlab.apps.cli.services import TwistLabCommand
from twistlab.apps.curves.services import curve_from_label
from twistlab.apps.lvalues.serializers import LValueSerializer, lvalue_record
from twistlab.apps.lvalues.services import lalg
from twistlab.utils.logger import TwistLogger

logger = TwistLogger(__name__)


class Command(TwistLabCommand):
    help = "Exact L(E,1)/Omega for corpus curves, optionally checked against the numeric series"

    def add_arguments(self, parser):
        parser.add_argument('labels', nargs='+', help="corpus labels")
        parser.add_argument('--check', action='store_true', help="cross-validate against the L-series")
        parser.add_argument('--terms', type=int, help="number of series terms for --check")
        parser.add_argument('--tol', type=float, default=1e-6, help="relative tolerance for --check")

    def run(self, *args, **options) -> int:
        code = EXIT_VERIFIED
        for label in options['labels']:
            curve = curve_from_label(label)
            value = lalg(curve)
            check = ""
            if options['check']:
                if options.get('terms') and curve.root_number == 1:
                    lseries_numeric(curve, nterms=options['terms'], tolerance=options['tol'])
                result = cross_validate(curve, tolerance=options['tol'])
                check = f"{'pass' if result else 'FAIL'} (discrepancy {result.discrepancy:.2e})"
                if not result:
                    code = EXIT_FAILURE
            self.emit(LValueSerializer, lvalue_record(curve.name, value, check))
        return code
