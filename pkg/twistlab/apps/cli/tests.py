import json
from io import StringIO
from tempfile import NamedTemporaryFile
from unittest import skipUnless

from django.conf import settings
from django.core.management import CommandError, call_command
from django.test import SimpleTestCase

from twistlab.apps.cli.models import EXIT_UNMET, EXIT_VERIFIED, EXIT_VIOLATED, ScanSpec, ScanSummary
from twistlab.apps.cli.services import family_moduli, prime_list, run_scan
from twistlab.apps.curves.services import curve_from_label
from twistlab.utils.config import RuntimeConfig
from twistlab.utils.exceptions import PreconditionError

INERT_11A = [3, 5, 23, 31, 37, 59, 67, 71, 89, 97, 113, 137, 157, 179, 181, 191]
INERT_37B = [3, 7, 11, 41, 47, 53, 71, 73, 83, 101, 127, 149, 157, 173, 181, 197]
LIST_17A = [3, 7, 11, 23, 31, 71, 79, 107, 131, 139, 163, 167, 199]
LIST_21A = [5, 17, 41, 89, 101, 173, 269, 293]
LIST_73A = [7, 11, 31, 43, 47, 59, 83, 103, 107, 131, 139, 151, 163, 167, 179, 191, 199]

# full acceptance scans; TWISTLAB_SLOW_TESTS=1 turns them on
slow = skipUnless(settings.TWISTLAB['SLOW_TESTS'], "set TWISTLAB_SLOW_TESTS=1 to run the full scans")


def run(*args, **options):
    out = StringIO()
    call_command(*args, stdout=out, **options)
    return out.getvalue()


def records(text):
    return [json.loads(line) for line in text.splitlines() if line.strip()]


class PrimeListTests(SimpleTestCase):
    def test_lists(self):
        cases = [
            ('11a1', 'inert-F', 200, INERT_11A),
            ('37b1', 'inert-F', 200, INERT_37B),
            ('17a1', 'mod4=3+inert=17', 200, LIST_17A),
            ('21a1', 'mod4=1+inert=3+inert=7', 300, LIST_21A),
            ('73a1', 'mod4=3+inert=73', 200, LIST_73A),
        ]
        for label, predicate, bound, expected in cases:
            self.assertEqual(prime_list(curve_from_label(label), predicate, bound), expected, label)

    def test_predicate_errors(self):
        with self.assertRaises(PreconditionError):
            prime_list(curve_from_label('17a1'), 'inert-F', 100)
        with self.assertRaises(PreconditionError):
            prime_list(curve_from_label('11a1'), 'mod4=2', 100)
        with self.assertRaises(PreconditionError):
            prime_list(curve_from_label('11a1'), 'inert=1', 100)

    def test_command(self):
        (record,) = records(run('primes', 'X0(17)', 'mod4=3+inert=17', '200'))
        self.assertEqual(record['primes'], LIST_17A)
        self.assertEqual(record['curve'], '17a1')

    def test_command_mismatch(self):
        with self.assertRaises(CommandError) as ctx:
            run('primes', '17a1', 'inert-F', '100')
        self.assertEqual(ctx.exception.returncode, 1)


class InfoTests(SimpleTestCase):
    def test_11a(self):
        (record,) = records(run('info', '11a1', an=10))
        self.assertEqual(record['disc'], -11 ** 5)
        self.assertEqual(record['conductor'], 11)
        self.assertEqual(record['lalg'], '1/5')
        self.assertEqual(record['ord2'], 0)
        self.assertEqual(record['torsion_order'], 5)
        self.assertEqual(record['an'], [1, -2, -1, 2, 1, 2, -2, 0, -2, -2])
        self.assertEqual(record['schema_version'], 1)

    def test_37b(self):
        (record,) = records(run('info', '37b'))
        self.assertEqual(record['lalg'], '2/3')
        self.assertEqual(record['ord2'], 1)

    def test_singular(self):
        with self.assertRaises(CommandError) as ctx:
            run('info', '0,0,0,0,0')
        self.assertEqual(ctx.exception.returncode, 1)

    def test_unknown_label(self):
        with self.assertRaises(CommandError):
            run('info', '9999z1')

    def test_csv(self):
        text = run('info', '11a1', format='csv')
        header, row = text.splitlines()
        self.assertIn('lalg', header.split(','))
        self.assertIn('1/5', row.split(','))


class LValueCommandTests(SimpleTestCase):
    def test_labels(self):
        values = {r['curve']: r['lalg'] for r in records(run('lalg', '11a1', '17a1', '21a1', '73a1'))}
        self.assertEqual(values, {'11a1': '1/5', '17a1': '1/4', '21a1': '1/4', '73a1': '1/2'})

    def test_check(self):
        (record,) = records(run('lalg', '11a1', check=True))
        self.assertTrue(record['check'].startswith('pass'))


class ScanTests(SimpleTestCase):
    def test_family_moduli(self):
        curve = curve_from_label('11a1')
        moduli = family_moduli(curve, ScanSpec('T1', max_primes=2, prime_bound=40))
        # inert primes 3, 5, 23, 31, 37
        self.assertEqual(moduli[:4], [-3, 5, -15, -23])
        self.assertTrue(all(M % 4 == 1 for M in moduli))
        positive = family_moduli(curve, ScanSpec('T1', sign='+', prime_bound=40))
        self.assertEqual(positive, [5, 37])

    def test_summary_exit_codes(self):
        self.assertEqual(ScanSummary('T1', (), 3, 3, 3).exit_code, EXIT_VERIFIED)
        self.assertEqual(ScanSummary('T1', (), 3, 2, 2).exit_code, EXIT_UNMET)
        self.assertEqual(ScanSummary('T1', (), 3, 3, 2, ('11a1 M=5',)).exit_code, EXIT_VIOLATED)

    def test_theorem_one(self):
        out = records(run('scan', 'T1', curve='11a1', max_primes=2, prime_bound=50))
        summary = out[-1]
        self.assertEqual(summary['record'], 'summary')
        self.assertEqual(summary['total'], len(out) - 1)
        self.assertEqual(summary['conclusions_held'], summary['total'])
        for record in out[:-1]:
            self.assertEqual(record['ord2'], 0)
            self.assertEqual(record['verdicts']['T1']['status'], 'verified')

    def test_theorem_one_dash_one(self):
        out = records(run('scan', 'T1-1', curve='37b1', prime_bound=200))
        self.assertTrue(all(record['ord2'] == 1 for record in out[:-1]))
        self.assertTrue(all(record['M'] > 0 for record in out[:-1]))

    def test_empty_family(self):
        out = records(run('scan', 'T1', curve='11a1', prime_bound=2))
        self.assertEqual(out[-1]['total'], 0)

    def test_unmet_hypotheses_exit(self):
        # 37b has disc > 0, so T1 skips every twist
        with self.assertRaises(CommandError) as ctx:
            run('scan', 'T1', curve='37b1', prime_bound=12)
        self.assertEqual(ctx.exception.returncode, EXIT_UNMET)

    def test_deterministic_across_workers(self):
        one = run('scan', 'T1', curve='11a1', max_primes=2, prime_bound=40, parallelism=1)
        four = run('scan', 'T1', curve='11a1', max_primes=2, prime_bound=40, parallelism=4)
        self.assertEqual(one, four)


class FamilyScanTests(SimpleTestCase):
    def assertFamily(self, spec, ord2, moduli=None):
        reports = list(run_scan(spec))
        self.assertTrue(reports, spec)
        for report in reports:
            verdict = report.theorem_verdicts[spec.theorem_id]
            self.assertTrue(verdict.hypotheses_met, (report.twist.M, verdict.reasons))
            self.assertTrue(verdict.conclusion_holds, report.twist.M)
            self.assertEqual(report.lalg.ord2, ord2, report.twist.M)
        if moduli is not None:
            self.assertEqual([report.twist.M for report in reports], moduli)
        return reports

    def test_t1_on_19a_single_primes(self):
        reports = self.assertFamily(ScanSpec('T1', label='19a1', prime_bound=100), 0)
        self.assertTrue(all(report.curve.name == '19a1' for report in reports))

    def test_t2_family_on_17a(self):
        spec = ScanSpec('T2', label='17a1', sign='-', predicate='mod4=3+inert=17', prime_bound=200)
        self.assertFamily(spec, 0, [-q for q in LIST_17A])

    def test_t2_1_family_on_21a(self):
        spec = ScanSpec('T2-1', label='21a1', sign='+', predicate='mod4=1+inert=3+inert=7', prime_bound=300)
        self.assertFamily(spec, 1, LIST_21A)

    @slow
    def test_t1_two_prime_families(self):
        for label in ('11a1', '19a1'):
            reports = self.assertFamily(ScanSpec('T1', label=label, max_primes=2, prime_bound=100), 0)
            self.assertTrue(any(report.twist.r == 2 for report in reports), label)

    @slow
    def test_t1_1_positive_family_on_37b(self):
        # smallest inert prime is 3, so the other factor stays below 5000 / 3
        spec = ScanSpec('T1-1', label='37b1', max_primes=2, prime_bound=1667, M_bound=5000)
        reports = self.assertFamily(spec, 1)
        self.assertTrue(all(0 < report.twist.M <= 5000 for report in reports))
        self.assertTrue(any(report.twist.r == 2 for report in reports))


class NeumannSetzerCommandTests(SimpleTestCase):
    def test_descent(self):
        out = records(run('ns', '-3', 'descent', M=[-7]))
        by_kind = {record['kind']: record for record in out}
        self.assertEqual(by_kind['phi']['elements'], [1, -1])
        self.assertEqual(by_kind['two(A)']['order'], 1)

    def test_bsd(self):
        (ledger,) = records(run('ns', '-3', 'bsd', q=[7]))
        self.assertTrue(ledger['passed'])
        self.assertEqual(ledger['tamagawa'], {'7': 2, '73': 2})

    def test_bsd_bad_prime(self):
        with self.assertRaises(CommandError) as ctx:
            run('ns', '-3', 'bsd', q=[3])
        self.assertEqual(ctx.exception.returncode, 1)

    def test_conjecture(self):
        rows = records(run('ns', '-3', 'conjecture', r=1, bound=300))
        self.assertEqual([row['M'] for row in rows], [77, 217])
        self.assertTrue(all(row['hypothesis'] and row['conclusion'] for row in rows))

    def test_aq_and_denominator(self):
        verdicts = records(run('ns', '-3', 'aq', bound=60))
        self.assertTrue(all(r['holds'] for r in verdicts))
        self.assertEqual([r['q'] for r in verdicts][:4], [3, 5, 7, 11])
        self.assertEqual(len(verdicts), 16)
        (check,) = records(run('ns', '-3', 'denominator'))
        self.assertEqual(check['lalg'], '1/2')

    def test_grid(self):
        lines = run('ns', '-3', 'descent', grid=True, u_max=3, m_max=11).splitlines()
        self.assertEqual(lines[0], 'u,p,M,root_number,phi,phihat,two_A,two_A_prime')
        self.assertEqual(lines[1].split(',')[:3], ['-3', '73', '-3'])

    def test_invalid_u(self):
        with self.assertRaises(CommandError) as ctx:
            run('ns', '3', 'descent', M=[-7])
        self.assertEqual(ctx.exception.returncode, 1)


class ConfigTests(SimpleTestCase):
    def test_flags_override_file(self):
        with NamedTemporaryFile('w', suffix='.env', delete=False) as handle:
            handle.write("PRECISION=30\nparallelism=3\n")
        config = RuntimeConfig(handle.name, parallelism=2)
        self.assertEqual(config.precision, 30)
        self.assertEqual(config.parallelism, 2)
        self.assertEqual(config.as_settings()['PRECISION'], 30)

    def test_unknown_key(self):
        with NamedTemporaryFile('w', suffix='.env', delete=False) as handle:
            handle.write("colour=blue\n")
        with self.assertRaises(PreconditionError):
            RuntimeConfig(handle.name)
