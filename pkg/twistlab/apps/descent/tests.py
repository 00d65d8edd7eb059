import json
from fractions import Fraction
from unittest import skipUnless

from django.conf import settings
from django.test import SimpleTestCase
from sympy.ntheory import jacobi_symbol, primerange

from twistlab.apps.curves.services import local_two_torsion_order, twisted_root_number
from twistlab.apps.descent.serializers import (
    BSDLedgerSerializer, ConjectureRowSerializer, SelmerDescriptorSerializer, conjecture_record,
    ledger_record, selmer_record,
)
from twistlab.apps.descent.services import (
    add_points, aq_ns, classify_twist, conjecture_scan, is_group, isogeny_apply, lalg_denominator_check,
    local_points_oracle, ns_curves, ns_parameters, on_curve, q2m_elements, qualifying_primes,
    root_number_ns, search_points, selmer2, selmer_by_oracle, selmer_phi, selmer_phihat,
    soluble_everywhere, tamagawa_ns, verify_thm_A,
)
from twistlab.utils.arith import square_roots_mod
from twistlab.utils.exceptions import PreconditionError
from twistlab.utils.serializers import render_line

QUALIFYING_73 = [7, 11, 31, 43, 47, 59, 83, 103, 107, 131, 139, 151, 163, 167, 179, 191, 199]
# M = 1 mod 4, prime to 73, covering every split/inert and residue pattern at small size
ORACLE_GRID = [-7, -11, 57, -3, 5, 21, 37]

# full acceptance scans; TWISTLAB_SLOW_TESTS=1 turns them on
slow = skipUnless(settings.TWISTLAB['SLOW_TESTS'], "set TWISTLAB_SLOW_TESTS=1 to run the full scans")


def ns73():
    return ns_curves(-3)


class CurveTests(SimpleTestCase):
    def test_p73(self):
        pair = ns73()
        self.assertEqual(pair.p, 73)
        self.assertEqual(pair.A.coefficients, (1, -1, 0, 4, -3))
        self.assertEqual(pair.A.label, '73a1')
        self.assertTrue(pair.A.optimal)
        self.assertEqual(pair.A.disc, -73 ** 2)
        self.assertEqual(pair.A_prime.disc, 73)
        self.assertEqual((pair.field_A, pair.field_A_prime), (-1, 73))

    def test_p89(self):
        pair = ns_curves(5)
        self.assertEqual(pair.p, 89)
        self.assertEqual(pair.A.conductor, 89)
        self.assertEqual(pair.A.disc, -89 ** 2)

    def test_bad_parameters(self):
        with self.assertRaises(PreconditionError):
            ns_curves(3)
        with self.assertRaises(PreconditionError):
            # 1 + 64 = 65
            ns_curves(1)

    def test_parameters(self):
        self.assertEqual(list(ns_parameters(13)), [-3, 5, -7, 13])

    def test_classification(self):
        cls = classify_twist(ns73(), -7 * 3 * 5 * 37)
        self.assertEqual(cls.epsilon, -1)
        self.assertEqual(cls.R_minus, (7,))
        self.assertEqual(cls.R_plus, (5,))
        self.assertEqual(cls.N_minus, (3,))
        self.assertEqual(cls.N_plus, (37,))
        self.assertEqual(cls.M_plus, 5 * 37)
        self.assertEqual(cls.counts['k'], 2)

    def test_classification_rejects(self):
        for M in (1, 0, 14, 45, 73 * 3):
            with self.assertRaises(PreconditionError):
                classify_twist(ns73(), M)


class IsogenyTests(SimpleTestCase):
    def test_kernel_and_identity(self):
        pair = ns73()
        self.assertIsNone(isogeny_apply(pair, 'phi', (0, 0), 5))
        self.assertIsNone(isogeny_apply(pair, 'phi', None, 5))
        self.assertIsNone(isogeny_apply(pair, 'phihat', (0, 0), 5))

    def test_image_lies_on_target(self):
        pair = ns73()
        image = isogeny_apply(pair, 'phi', (5, 100), 5)
        self.assertEqual(image, (Fraction(400), Fraction(7200)))
        self.assertTrue(on_curve(pair.model("A'", 5), image))

    def test_dual_composition_is_doubling(self):
        pair = ns73()
        for P in search_points(pair, 5, 200):
            twice = isogeny_apply(pair, 'phihat', isogeny_apply(pair, 'phi', P, 5), 5)
            self.assertEqual(twice, add_points(pair.model('A', 5), P, P))
        self.assertEqual(add_points(pair.model('A', 5), (5, 100), (5, 100)), (Fraction(81), Fraction(-936)))

    def test_point_off_the_curve(self):
        with self.assertRaises(PreconditionError):
            isogeny_apply(ns73(), 'phi', (1, 1), 5)
        with self.assertRaises(PreconditionError):
            isogeny_apply(ns73(), 'psi', (5, 100), 5)


class SelmerTests(SimpleTestCase):
    def test_inert_minus_prime(self):
        pair = ns73()
        phi = selmer_phi(pair, -7)
        self.assertEqual(phi.elements, (1, -1))
        self.assertEqual(phi.quotient_order, 1)
        phihat = selmer_phihat(pair, -7)
        self.assertEqual(phihat.elements, (1, 73))
        self.assertIn(73, phihat)

    def test_split_minus_primes(self):
        pair = ns73()
        phi = selmer_phi(pair, 57)
        self.assertEqual(phi.order, 8)
        self.assertEqual(phi.quotient_order, 4)
        self.assertEqual(selmer_phihat(pair, 57).order, 2)

    def test_groups(self):
        pair = ns73()
        for M in ORACLE_GRID:
            self.assertTrue(is_group(selmer_phi(pair, M).elements), M)
            self.assertTrue(is_group(selmer_phihat(pair, M).elements), M)
            self.assertIn(-1, selmer_phi(pair, M))
            self.assertIn(73, selmer_phihat(pair, M))

    def test_q2m(self):
        elements = q2m_elements(ns73(), -7)
        self.assertEqual(len(elements), 16)
        self.assertEqual(elements[0], 1)
        self.assertIn(-2 * 73 * 7, elements)

    def test_witnesses_are_square_roots(self):
        pair = ns73()
        M = 37
        for q, a in selmer_phi(pair, M).witnesses.items():
            self.assertEqual((a * a - 73) % q, 0)
        for q, b in selmer_phihat(pair, M).witnesses.items():
            self.assertEqual((b * b + 1) % q, 0)

    def test_criteria_do_not_depend_on_the_root(self):
        for u in ns_parameters(13):
            pair = ns_curves(u)
            for q in primerange(5, 300):
                if q % 4 != 1 or q == pair.p or jacobi_symbol(pair.p, q) != 1:
                    continue
                phi = selmer_phi(pair, q)
                phihat = selmer_phihat(pair, q)
                for a in square_roots_mod(pair.p, q):
                    self.assertEqual(jacobi_symbol((2 * u + 2 * a) % q, q), jacobi_symbol((2 * u - 2 * a) % q, q))
                for b in square_roots_mod(-1, q):
                    self.assertEqual(jacobi_symbol((u + 8 * b) % q, q), jacobi_symbol((u - 8 * b) % q, q))
                self.assertTrue(is_group(phi.elements), (u, q))
                self.assertTrue(is_group(phihat.elements), (u, q))


class OracleTests(SimpleTestCase):
    def test_examples(self):
        pair = ns73()
        self.assertFalse(local_points_oracle(pair, -7, 2, 2))
        self.assertFalse(local_points_oracle(pair, -7, 73, 73, kind='phi'))
        for kind in ('phi', 'phihat'):
            self.assertTrue(soluble_everywhere(pair, -7, 1, kind))

    def test_preconditions(self):
        pair = ns73()
        with self.assertRaises(PreconditionError):
            local_points_oracle(pair, -7, 4, 2)
        with self.assertRaises(PreconditionError):
            local_points_oracle(pair, -7, 1, 5)
        with self.assertRaises(PreconditionError):
            local_points_oracle(pair, -7, 1, 7, precision=41)

    def test_criteria_match_local_solubility(self):
        pair = ns73()
        for M in ORACLE_GRID:
            self.assertEqual(selmer_by_oracle(pair, M, 'phi').elements, selmer_phi(pair, M).elements, M)
            self.assertEqual(selmer_by_oracle(pair, M, 'phihat').elements, selmer_phihat(pair, M).elements, M)


class TwoSelmerTests(SimpleTestCase):
    def test_inert_minus_family_is_trivial(self):
        for M in (-7, -11, 77):
            two_A, _ = selmer2(ns73(), M)
            self.assertEqual(two_A.order, 1, M)

    def test_split_minus_family(self):
        two_A, _ = selmer2(ns73(), 57)
        self.assertEqual(two_A.order, 4)

    def test_split_minus_prime_with_sign(self):
        two_A, _ = selmer2(ns73(), -3)
        self.assertEqual(two_A.order, 2)

    def test_inert_plus_prime(self):
        _, two_A_prime = selmer2(ns73(), 5)
        self.assertEqual(two_A_prime.order, 2)

    def test_sequence_bounds(self):
        pair = ns73()
        for M in ORACLE_GRID:
            phi, phihat = selmer_phi(pair, M), selmer_phihat(pair, M)
            two_A, two_A_prime = selmer2(pair, M)
            self.assertGreaterEqual(two_A.bounds[0], phi.quotient_order)
            self.assertLessEqual(two_A.bounds[1], phi.quotient_order * phihat.order)
            self.assertGreaterEqual(two_A_prime.bounds[0], phihat.quotient_order)
            self.assertLessEqual(two_A_prime.bounds[1], phihat.quotient_order * phi.order)

    def test_root_number_rule(self):
        pair = ns73()
        for M in ORACLE_GRID:
            self.assertEqual(root_number_ns(pair, M), twisted_root_number(pair.A, M), M)
            two_A, _ = selmer2(pair, M)
            if two_A.pinned:
                even = (two_A.order.bit_length() - 1) % 2 == 0
                self.assertEqual(even, root_number_ns(pair, M) == 1, M)
        with self.assertRaises(PreconditionError):
            root_number_ns(pair, 7)


class LocalFactorTests(SimpleTestCase):
    def test_tamagawa(self):
        pair = ns73()
        data = tamagawa_ns(pair, -7, 'A')
        self.assertEqual(data.factors, {73: 2, 7: 2})
        self.assertEqual(data.real_components, 1)
        self.assertEqual(data.ord2_total, 2)
        dual = tamagawa_ns(pair, -7, "A'")
        self.assertEqual(dual.factors, {73: 1, 7: 2})
        self.assertEqual(dual.real_components, 2)
        # 37 = 1 mod 4 and splits in Q(sqrt 73)
        self.assertEqual(tamagawa_ns(pair, 37, 'A').factors[37], 4)

    def test_tamagawa_matches_local_torsion(self):
        pair = ns73()
        for M in ORACLE_GRID:
            for which, curve in (('A', pair.A), ("A'", pair.A_prime)):
                data = tamagawa_ns(pair, M, which)
                for q, c in data.factors.items():
                    if q != 73:
                        self.assertEqual(c, local_two_torsion_order(curve, q))

    def test_aq_examples(self):
        pair = ns73()
        self.assertEqual(aq_ns(pair, 2).a_q, 1)
        self.assertEqual(aq_ns(pair, 73).a_q, 1)
        self.assertEqual(aq_ns(pair, 7).predicted, "2 mod 4")
        self.assertEqual(aq_ns(pair, 3).predicted, "0 mod 4")

    def test_aq_congruences(self):
        for u in (-3, 5, 13):
            pair = ns_curves(u)
            for q in primerange(2, 500):
                self.assertTrue(aq_ns(pair, q).holds, (pair.p, q))

    def test_qualifying_primes(self):
        self.assertEqual(qualifying_primes(ns73(), 200), QUALIFYING_73)


class BSDTests(SimpleTestCase):
    def test_denominator(self):
        check = lalg_denominator_check(ns73())
        self.assertTrue(check.passed)
        self.assertEqual(check.lalg, Fraction(1, 2))
        self.assertEqual(check.a_2, 1)
        self.assertEqual(check.x_minus_half, 0)
        self.assertEqual(check.x_plus_half, -1)

    def test_ledger(self):
        pair = ns73()
        for q in QUALIFYING_73[:5]:
            ledger = verify_thm_A(pair, q)
            self.assertTrue(ledger)
            self.assertEqual(ledger.M, -q)
            self.assertEqual(ledger.lalg_ord2, 0)
            self.assertEqual(ledger.tamagawa, {73: 2, q: 2})
            self.assertEqual(ledger.torsion_order, 2)
            self.assertEqual(ledger.descent_sha2, 0)

    def test_ledger_preconditions(self):
        with self.assertRaises(PreconditionError):
            verify_thm_A(ns73(), 3)
        with self.assertRaises(PreconditionError):
            verify_thm_A(ns73(), 5)
        with self.assertRaises(PreconditionError):
            # u = -7 gives p = 113 but is 1 mod 8
            verify_thm_A(ns_curves(-7), 7)

    def test_conjecture_rows(self):
        report = conjecture_scan(ns73(), 1, 300)
        self.assertEqual(report.base_ord2, -1)
        self.assertEqual([row.M for row in report.rows], [77, 217])
        for row in report.rows:
            self.assertEqual((row.ord2_S_chi, row.ord2_S_prime, row.ord2_lalg), (1, 1, 1))
            self.assertTrue(row.hypothesis)
            self.assertTrue(row.conclusion)

    @slow
    def test_conjecture_rows_to_3000(self):
        report = conjecture_scan(ns73(), 1, 3000)
        self.assertEqual([row.M for row in report.rows][:10], [77, 217, 301, 329, 341, 413, 473, 517, 581, 649])
        self.assertIn(31 * 43, [row.M for row in report.rows])
        for row in report.rows:
            self.assertLessEqual(row.M, 3000)
            self.assertEqual((row.ord2_S_chi, row.ord2_S_prime, row.ord2_lalg), (1, 1, 1), row.M)


class LargerPrimeTests(SimpleTestCase):
    def test_denominators(self):
        for u in (5, 13):
            check = lalg_denominator_check(ns_curves(u))
            self.assertEqual(check.lalg.denominator, 2)

    def test_ledger_233(self):
        pair = ns_curves(13)
        for q in qualifying_primes(pair, 100)[:5]:
            self.assertTrue(verify_thm_A(pair, q), q)


class RecordTests(SimpleTestCase):
    def test_selmer_record(self):
        pair = ns73()
        line = render_line(SelmerDescriptorSerializer, selmer_record(73, selmer_phi(pair, 57)))
        data = json.loads(line)
        self.assertEqual(data['kind'], 'phi')
        self.assertEqual(data['order'], 8)
        self.assertEqual(data['schema_version'], 1)
        two_A, _ = selmer2(pair, -7)
        self.assertEqual(json.loads(render_line(SelmerDescriptorSerializer, selmer_record(73, two_A)))['order'], 1)

    def test_selmer_record_rejects_bad_order(self):
        record = selmer_record(73, selmer_phi(ns73(), -7))
        record['order'] = 3
        serializer = SelmerDescriptorSerializer(data={'schema_version': 1, **record})
        self.assertFalse(serializer.is_valid())

    def test_ledger_record(self):
        data = json.loads(render_line(BSDLedgerSerializer, ledger_record(verify_thm_A(ns73(), 7))))
        self.assertEqual(data['tamagawa'], {'7': 2, '73': 2})
        self.assertTrue(data['passed'])

    def test_conjecture_record(self):
        report = conjecture_scan(ns73(), 1, 100)
        data = json.loads(render_line(ConjectureRowSerializer, conjecture_record(73, 1, report.rows[0])))
        self.assertEqual(data['M'], 77)
        self.assertEqual(data['primes'], [7, 11])
