import json
import math
from fractions import Fraction

from django.test import SimpleTestCase
from sympy.ntheory import primerange

from twistlab.apps.curves.services import curve_from_label, is_inert_in_F, make_twist
from twistlab.apps.lvalues.models import AlgLValue
from twistlab.apps.lvalues.serializers import (
    LValueSerializer, TwistReportSerializer, lvalue_record, report_record,
)
from twistlab.apps.lvalues.services import (
    check_lemma, half_range_sum, hecke_relation_sum, identity_holds, lalg, lalg_twist, period_bridge,
    root_number_twist, signed_modulus, sum_triple, tamagawa_ord2_twist, twist_report,
    verify_theorem, x_pair,
)
from twistlab.utils.arith import is_squarefree
from twistlab.utils.exceptions import PreconditionError
from twistlab.utils.serializers import render_line


def curve(label):
    return curve_from_label(label)


def inert_primes(e, bound):
    return [q for q in primerange(3, bound) if e.is_good(q) and is_inert_in_F(e, q)]


def inert_moduli(e, bound, pair_bound):
    primes = inert_primes(e, bound)
    moduli = list(primes)
    moduli += [a * b for i, a in enumerate(primes) for b in primes[i + 1:] if a * b <= pair_bound]
    return moduli


def odd_moduli(e, bound):
    return [m for m in range(3, bound, 2) if is_squarefree(m) and math.gcd(m, e.conductor) == 1]


class CentralValueTests(SimpleTestCase):
    def test_known_values(self):
        self.assertEqual(lalg(curve('11a1')).value, Fraction(1, 5))
        self.assertEqual(lalg(curve('37b1')).value, Fraction(2, 3))
        self.assertEqual(lalg(curve('73a1')).value, Fraction(1, 2))
        self.assertEqual(lalg(curve('17a1')).value, Fraction(1, 4))

    def test_orders(self):
        self.assertEqual(lalg(curve('11a1')).ord2, 0)
        self.assertEqual(lalg(curve('37b1')).ord2, 1)
        self.assertEqual(lalg(curve('73a1')).ord2, -1)
        self.assertEqual(AlgLValue.of(0).ord2, math.inf)
        self.assertEqual(str(AlgLValue.of(0)), "0 (ord2 inf)")

    def test_auxiliary_prime_does_not_matter(self):
        e = curve('11a1')
        for l in (3, 7, 13, 17):
            self.assertEqual(lalg(e, l).value, Fraction(1, 5))
        with self.assertRaises(PreconditionError):
            lalg(e, 11)

    def test_twisted_values(self):
        self.assertEqual(lalg_twist(curve('11a1'), make_twist(curve('11a1'), -3)).ord2, 0)
        self.assertEqual(lalg_twist(curve('37b1'), make_twist(curve('37b1'), 21)).ord2, 1)
        self.assertEqual(lalg_twist(curve('17a1'), make_twist(curve('17a1'), -3)).ord2, 0)

    def test_period_bridge_is_a_power_of_two(self):
        for label, M in (('11a1', -3), ('37b1', 5), ('37b1', 21), ('17a1', -3)):
            u = period_bridge(curve(label), M)
            self.assertGreater(u, 0)
            self.assertEqual(u.numerator * u.denominator & (u.numerator * u.denominator - 1), 0)


class SumTests(SimpleTestCase):
    def test_modulus_checks(self):
        e = curve('11a1')
        for m in (1, 4, 9, 33):
            with self.assertRaises(PreconditionError):
                sum_triple(e, m)

    def test_signed_modulus(self):
        self.assertEqual(signed_modulus(15), -15)
        self.assertEqual(signed_modulus(21), 21)

    def test_prime_sum_equals_full_sum(self):
        e = curve('11a1')
        triple = sum_triple(e, 7)
        # x(0) = 0, so the sums over k mod 7 and over units agree
        self.assertEqual(triple.S, triple.S_prime)

    def test_hecke_relation(self):
        e = curve('11a1')
        for m in (3, 5, 15, 105):
            left, right = hecke_relation_sum(e, m)
            self.assertEqual(left, right)
        self.assertTrue(identity_holds(curve('37b1'), 15))


class TheoremTests(SimpleTestCase):
    def test_t1_on_11a(self):
        e = curve('11a1')
        verdict = verify_theorem('T1', e, make_twist(e, -15))
        self.assertTrue(verdict.hypotheses_met)
        self.assertTrue(verdict.conclusion_holds)
        self.assertEqual(verdict.status, 'verified')

    def test_t1_1_on_37b(self):
        e = curve('37b1')
        verdict = verify_theorem('T1-1', e, make_twist(e, 21))
        self.assertEqual(verdict.status, 'verified')
        self.assertEqual(verdict.observed_ord2, 1)

    def test_t3_1_on_37b(self):
        e = curve('37b1')
        self.assertTrue(verify_theorem('T3-1', e, make_twist(e, 5)))

    def test_t2_on_17a(self):
        e = curve('17a1')
        verdict = verify_theorem('T2', e, make_twist(e, -3))
        self.assertEqual(verdict.status, 'verified')

    def test_rational_two_torsion_fails_the_gate(self):
        e = curve('17a1')
        for M in (-3, 5, -7):
            verdict = verify_theorem('T1', e, make_twist(e, M))
            self.assertFalse(verdict.hypotheses_met)
            self.assertIsNone(verdict.conclusion_holds)
            self.assertIn("E[2](Q) = 0", verdict.reasons)

    def test_wrong_sign_of_disc(self):
        e = curve('11a1')
        verdict = verify_theorem('T3-1', e, make_twist(e, 5))
        self.assertEqual(verdict.status, 'hypotheses-unmet')
        self.assertIn("disc > 0", verdict.reasons)

    def test_unknown_theorem(self):
        e = curve('11a1')
        with self.assertRaises(PreconditionError):
            verify_theorem('T9', e, make_twist(e, -3))


class LemmaTests(SimpleTestCase):
    def test_odd_counts(self):
        verdict = check_lemma('L2.3', curve('11a1'), 15)
        self.assertTrue(verdict.hypotheses_met)
        self.assertTrue(verdict)

    def test_neumann_setzer_units(self):
        verdict = check_lemma('L2.4', curve('73a1'), 77)
        self.assertTrue(verdict.hypotheses_met)
        self.assertTrue(verdict)
        self.assertIn("observed 1", verdict.detail)

    def test_divisor_identity(self):
        self.assertTrue(check_lemma('L2.2', curve('11a1'), 105))
        self.assertTrue(check_lemma('L2.2', curve('37b1'), 15))

    def test_unknown_lemma(self):
        with self.assertRaises(PreconditionError):
            check_lemma('L7', curve('11a1'), 15)


class LemmaSuiteTests(SimpleTestCase):
    def assertLemma(self, lemma_id, cases):
        met = []
        for label, bound in cases:
            e = curve(label)
            for m in odd_moduli(e, bound):
                verdict = check_lemma(lemma_id, e, m)
                if verdict.hypotheses_met:
                    met.append((label, m))
                    self.assertTrue(verdict, (label, m, verdict.detail))
        self.assertGreaterEqual(len(met), 30, lemma_id)

    def test_divisor_identity(self):
        self.assertLemma('L2.2', (('11a1', 60), ('37b1', 60)))

    def test_odd_counts(self):
        self.assertLemma('L2.3', (('11a1', 250), ('37b1', 250)))

    def test_neumann_setzer_units(self):
        self.assertLemma('L2.4', (('73a1', 600),))

    def test_even_count(self):
        self.assertLemma('L2.5', (('11a1', 120),))

    def test_even_count_needs_an_even_factor(self):
        # 15 = 3 * 5, both inert for 11a, so every N_q is odd
        verdict = check_lemma('L2.5', curve('11a1'), 15)
        self.assertFalse(verdict.hypotheses_met)
        self.assertTrue(check_lemma('L2.5', curve('11a1'), 21).hypotheses_met)


class HalfRangeTests(SimpleTestCase):
    def test_inert_twists_have_odd_half_range_sum(self):
        for label in ('11a1', '19a1'):
            e = curve(label)
            for m in inert_moduli(e, 100, 400):
                M = m if m % 4 == 1 else -m
                total = half_range_sum(e, make_twist(e, M))
                self.assertEqual(total.denominator, 1, (label, M))
                self.assertEqual(total.numerator % 2, 1, (label, M))

    def test_same_parity_of_both_coordinates(self):
        for label in ('11a1', '19a1'):
            e = curve(label)
            for m in inert_moduli(e, 60, 200):
                s_sum = t_sum = 0
                for k in range(1, (m - 1) // 2 + 1):
                    if math.gcd(k, m) != 1:
                        continue
                    pair = x_pair(e, k, m)
                    s, t = 2 * pair.x_plus, 2 * pair.x_minus
                    self.assertEqual((s.denominator, t.denominator), (1, 1), (label, k, m))
                    self.assertEqual((s - t) % 2, 0, (label, k, m))
                    s_sum += s
                    t_sum += t
                self.assertEqual((s_sum - t_sum) % 2, 0, (label, m))

class LocalDataTests(SimpleTestCase):
    def test_root_numbers(self):
        ns = curve('73a1')
        self.assertEqual(root_number_twist(ns, make_twist(ns, -7)), 1)
        self.assertEqual(root_number_twist(ns, make_twist(ns, 57)), 1)
        e = curve('11a1')
        self.assertEqual(root_number_twist(e, make_twist(e, -3)), 1)

    def test_tamagawa(self):
        e = curve('11a1')
        self.assertEqual(tamagawa_ord2_twist(e, make_twist(e, -15)), 0)
        ns = curve('73a1')
        self.assertEqual(tamagawa_ord2_twist(ns, make_twist(ns, -7)), 1)
        self.assertEqual(tamagawa_ord2_twist(ns, make_twist(ns, 5)), 2)


class ReportTests(SimpleTestCase):
    def test_report_for_11a(self):
        report = twist_report(curve('11a1'), -15)
        self.assertEqual(report.root_number, 1)
        self.assertEqual(report.lalg.ord2, 0)
        self.assertEqual(report.theorem_verdicts['T1'].status, 'verified')
        self.assertEqual(report.theorem_verdicts['T1-1'].status, 'hypotheses-unmet')

    def test_record_validates(self):
        report = twist_report(curve('37b1'), 21, theorem_ids=('T1-1', 'T3-1'))
        line = render_line(TwistReportSerializer, report_record(report))
        data = json.loads(line)
        self.assertEqual(data['schema_version'], 1)
        self.assertEqual(data['M'], 21)
        self.assertEqual(data['factorization'], [3, 7])
        self.assertEqual(data['ord2'], 1)
        self.assertEqual(data['verdicts']['T1-1']['status'], 'verified')

    def test_lvalue_record(self):
        line = render_line(LValueSerializer, lvalue_record('11a1', lalg(curve('11a1'))))
        data = json.loads(line)
        self.assertEqual(data['lalg'], "1/5")
        self.assertEqual(data['ord2'], 0)
        zero = json.loads(render_line(LValueSerializer, lvalue_record('x', AlgLValue.of(0))))
        self.assertEqual(zero['ord2'], "inf")
