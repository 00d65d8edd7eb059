from twistlab.apps.analytic.services import an_table
from twistlab.apps.cli.serializers import CurveInfoSerializer, curve_info_record
from twistlab.apps.cli.services import TwistLabCommand
from twistlab.apps.curves.services import parse_curve, torsion_order, two_division_data
from twistlab.apps.lvalues.services import lalg
from twistlab.utils.logger import TwistLogger

logger = TwistLogger(__name__)


class Command(TwistLabCommand):
    help = "Model, discriminant, conductor, torsion, 2-division data and L^alg of a curve"

    def add_arguments(self, parser):
        parser.add_argument('curve', help="corpus label (11a1, X0(11)) or a1,a2,a3,a4,a6")
        parser.add_argument('--an', type=int, metavar='N', help="also list a_1..a_N")

    def run(self, *args, **options) -> int:
        curve = parse_curve(options['curve'])
        value = None
        if curve.optimal:
            value = lalg(curve)
        else:
            logger.warning(f"{curve.name} is not a known optimal curve; L^alg skipped")
        an = an_table(curve, options['an']) if options.get('an') else None
        record = curve_info_record(curve, torsion_order(curve), two_division_data(curve), value, an)
        self.emit(CurveInfoSerializer, record)
        return 0
