from twistlab.apps.cli.models import SIGNS, ScanSpec
from twistlab.apps.cli.serializers import ScanSummarySerializer, summary_record
from twistlab.apps.cli.services import TwistLabCommand, run_scan, summarize
from twistlab.apps.lvalues.serializers import TwistReportSerializer, report_record
from twistlab.apps.lvalues.services import THEOREM_IDS
from twistlab.utils.logger import TwistLogger

logger = TwistLogger(__name__)


class Command(TwistLabCommand):
    help = "Run one theorem over a family of quadratic twists, one report per M and a summary"

    def add_arguments(self, parser):
        parser.add_argument('theorem', choices=THEOREM_IDS)
        parser.add_argument('--curve', help="corpus label; default is the theorem's corpus family")
        parser.add_argument('--sign', choices=SIGNS, default='any')
        parser.add_argument('--max-primes', type=int, default=1, help="r, the number of prime factors of M")
        parser.add_argument('--prime-bound', type=int, default=50)
        parser.add_argument('--predicate', help="prime filter, see the primes command")
        parser.add_argument('--m-bound', type=int, help="largest |M|")

    def run(self, *args, **options) -> int:
        spec = ScanSpec(
            theorem_id=options['theorem'],
            label=options.get('curve'),
            sign=options['sign'],
            max_primes=options['max_primes'],
            prime_bound=options['prime_bound'],
            predicate=options.get('predicate'),
            M_bound=options.get('m_bound'),
            output=self.output,
            parallelism=self.config.parallelism,
        )
        reports = []
        for report in run_scan(spec):
            reports.append(report)
            self.emit(TwistReportSerializer, report_record(report))
        summary = summarize(spec, reports)
        self.emit(ScanSummarySerializer, summary_record(summary))
        if summary.violations:
            logger.error(f"{spec.theorem_id}: conclusion failed for {', '.join(summary.violations)}")
        logger.info(f"{spec.theorem_id}: {summary.conclusions_held}/{summary.hypotheses_met} verified, "
                    f"{summary.total - summary.hypotheses_met} skipped")
        return summary.exit_code
