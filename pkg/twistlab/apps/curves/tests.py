import math
import random
from fractions import Fraction

from django.test import SimpleTestCase
from sympy.ntheory import primerange

from twistlab.apps.curves import corpus
from twistlab.apps.curves.models import TwistDescriptor
from twistlab.apps.curves.services import (
    a_p, count_qadic_roots, curve_from_label, is_inert_in_F, local_two_torsion_order,
    make_twist, minimalize, parse_curve, prime_class, torsion_order, twist_model,
    two_division_data,
)
from twistlab.utils.arith import kronecker, ord_p, xgcd
from twistlab.utils.exceptions import CurveNotFoundError, PreconditionError

INERT_11A = [3, 5, 23, 31, 37, 59, 67, 71, 89, 97, 113, 137, 157, 179, 181, 191]
INERT_37B = [3, 7, 11, 41, 47, 53, 71, 73, 83, 101, 127, 149, 157, 173, 181, 197]


class MinimalizeTests(SimpleTestCase):
    def test_11a_is_already_minimal(self):
        curve = minimalize((0, -1, 1, -10, -20))
        self.assertEqual(curve.coefficients, (0, -1, 1, -10, -20))
        self.assertEqual(curve.disc, -11 ** 5)
        self.assertEqual(curve.conductor, 11)
        self.assertEqual(curve.label, '11a1')

    def test_scaled_short_model_reduces(self):
        curve = minimalize((0, 0, 0, 0, -432))
        self.assertEqual(curve.coefficients, (0, 0, 1, 0, -7))
        self.assertEqual(curve.disc, -3 ** 9)

    def test_unscaling_inverts_scaling(self):
        u = 2
        scaled = [u ** i * a for i, a in zip((1, 2, 3, 4, 6), (0, -1, 1, -10, -20))]
        self.assertEqual(minimalize(scaled).coefficients, (0, -1, 1, -10, -20))

    def test_neumann_setzer_model(self):
        curve = minimalize((1, -1, 0, 4, -3))
        self.assertEqual(curve.coefficients, (1, -1, 0, 4, -3))
        self.assertEqual(curve.disc, -73 ** 2)
        self.assertEqual(curve.conductor, 73)

    def test_singular_model_rejected(self):
        with self.assertRaises(PreconditionError):
            minimalize((0, 0, 0, 0, 0))
        with self.assertRaises(PreconditionError):
            parse_curve("0,0,0,-3,2")

    def test_labels_and_aliases(self):
        self.assertEqual(curve_from_label('X0(11)').coefficients, (0, -1, 1, -10, -20))
        self.assertEqual(curve_from_label('37B').coefficients, (0, 1, 1, -23, -50))
        self.assertEqual(curve_from_label('37b1').disc, 37 ** 3)
        with self.assertRaises(CurveNotFoundError):
            curve_from_label('5000zz1')

    def test_corpus_families(self):
        self.assertEqual([e.label for e in corpus.family('T1')],
                         ['11a1', '19a1', '26a1', '26b1', '121a1', '121c1'])
        for entry in corpus.all_entries():
            curve = minimalize(entry.coefficients)
            self.assertEqual(curve.coefficients, entry.coefficients)
            self.assertTrue(all(curve.disc % p == 0 for p in (2, 3, 5, 7, 11, 13, 17, 19, 37, 71, 47)
                                if entry.conductor % p == 0))


class PointCountTests(SimpleTestCase):
    def setUp(self):
        self.e11 = curve_from_label('11a1')
        self.ns = minimalize((1, -1, 0, 4, -3))

    def test_traces(self):
        self.assertEqual(a_p(self.e11, 2), -2)
        self.assertEqual(a_p(self.e11, 3), -1)
        self.assertEqual(a_p(self.e11, 5), 1)
        # split multiplicative at 11
        self.assertEqual(a_p(self.e11, 11), 1)

    def test_neumann_setzer_traces(self):
        self.assertEqual(a_p(self.ns, 2), 1)
        self.assertEqual(a_p(self.ns, 73), 1)

    def test_hasse_bound(self):
        for q in primerange(2, 400):
            if self.e11.is_good(q):
                self.assertLessEqual(a_p(self.e11, q) ** 2, 4 * q)

    def test_prime_class(self):
        pc = prime_class(self.e11, 3, auxiliary=(-3, 5))
        self.assertEqual((pc.a_q, pc.N_q, pc.inert_in_F, pc.q_mod4), (-1, 5, True, 3))
        self.assertEqual(pc.kronecker_flags, {-3: 0, 5: -1})


class TwoDivisionTests(SimpleTestCase):
    def test_field_discriminants(self):
        self.assertEqual(two_division_data(curve_from_label('11a1')).field_disc, -44)
        self.assertEqual(two_division_data(curve_from_label('37b1')).field_disc, 148)

    def test_rational_two_torsion(self):
        data = two_division_data(curve_from_label('17a1'))
        self.assertFalse(data.is_irreducible)
        self.assertIsNone(data.field_disc)
        with self.assertRaises(PreconditionError):
            is_inert_in_F(curve_from_label('17a1'), 3)

    def test_cubic_discriminant(self):
        curve = curve_from_label('11a1')
        data = two_division_data(curve)
        self.assertEqual(data.cubic_disc, 2 ** 8 * curve.disc)

    def test_inert_lists(self):
        for label, expected in (('11a1', INERT_11A), ('37b1', INERT_37B)):
            curve = curve_from_label(label)
            found = [q for q in primerange(3, 200)
                     if curve.is_good(q) and is_inert_in_F(curve, q)]
            self.assertEqual(found, expected)

    def test_same_field_as_printed_polynomials(self):
        # x^3 - x^2 + x + 1 and x^3 + x^2 - 3x - 1 have the same inert primes
        printed = {'11a1': (1, -1, 1, 1), '37b1': (1, 1, -3, -1)}
        for label, cubic in printed.items():
            curve = curve_from_label(label)
            for q in primerange(3, 300):
                if not curve.is_good(q):
                    continue
                no_root = all((((cubic[0] * r + cubic[1]) * r + cubic[2]) * r + cubic[3]) % q
                              for r in range(q))
                self.assertEqual(is_inert_in_F(curve, q), no_root, (label, q))

    def test_inert_iff_odd_point_count(self):
        for label in ('11a1', '37b1'):
            curve = curve_from_label(label)
            for q in primerange(3, 500):
                if curve.is_good(q):
                    self.assertEqual(is_inert_in_F(curve, q), (q + 1 - a_p(curve, q)) % 2 == 1)

    def test_bad_prime_rejected(self):
        with self.assertRaises(PreconditionError):
            is_inert_in_F(curve_from_label('11a1'), 11)


class LocalTorsionTests(SimpleTestCase):
    def test_unramified_counts(self):
        self.assertEqual(local_two_torsion_order(curve_from_label('11a1'), 3), 1)
        ns_a = minimalize((1, -1, 0, 4, -3))
        ns_a_prime = minimalize((1, 1, 0, -1, 0))
        self.assertEqual(local_two_torsion_order(ns_a, 5), 4)
        self.assertEqual(local_two_torsion_order(ns_a, 7), 2)
        # 5 is inert in Q(sqrt 73)
        self.assertEqual(local_two_torsion_order(ns_a_prime, 5), 2)

    def test_roots_that_collide_mod_q(self):
        # (x - 1)(x - 10) has both roots = 1 mod 3
        self.assertEqual(count_qadic_roots([1, -11, 10], 3), 2)
        # x^2 - 3 has no root in Z_3
        self.assertEqual(count_qadic_roots([1, 0, -3], 3), 0)

    def test_matches_residue_count_at_good_primes(self):
        curve = curve_from_label('37b1')
        cubic = two_division_data(curve).cubic
        for q in primerange(3, 150):
            if curve.is_good(q):
                roots = sum(1 for r in range(q)
                            if (((r + cubic[1]) * r + cubic[2]) * r + cubic[3]) % q == 0)
                self.assertEqual(local_two_torsion_order(curve, q), 1 + roots)


class TwistTests(SimpleTestCase):
    def setUp(self):
        self.e11 = curve_from_label('11a1')

    def test_twisted_trace(self):
        self.assertEqual(a_p(twist_model(self.e11, -7), 3), 1)

    def test_involution(self):
        for M in (-7, -3, 5, 13, -15):
            back = twist_model(twist_model(self.e11, M), M)
            self.assertEqual(back.coefficients, self.e11.coefficients)

    def test_twisted_conductor_and_root_number(self):
        twisted = twist_model(self.e11, -3)
        self.assertEqual(twisted.conductor, 99)
        self.assertEqual(twisted.root_number, 1)

    def test_multiplicativity(self):
        rng = random.Random(11)
        primes = [q for q in primerange(3, 1000) if q not in (3, 7, 11)]
        for M in (-3, -7, 21):
            twisted = twist_model(self.e11, M)
            for q in rng.sample(primes, 20):
                if M % q == 0:
                    continue
                self.assertEqual(a_p(twisted, q), kronecker(M, q) * a_p(self.e11, q), (M, q))

    def test_make_twist(self):
        twist = make_twist(self.e11, -15)
        self.assertEqual((twist.epsilon, twist.primes, twist.r), (-1, (3, 5), 2))
        self.assertEqual([twist.chi(k) for k in range(15)].count(0), 7)
        for bad in (-5, 0, 1, 33, 45):
            with self.assertRaises(PreconditionError):
                make_twist(self.e11, bad)
        with self.assertRaises(PreconditionError):
            TwistDescriptor(M=-15, epsilon=1, primes=(3, 5), r=2)

    def test_twist_rejects_trivial(self):
        with self.assertRaises(PreconditionError):
            twist_model(self.e11, 1)
        with self.assertRaises(PreconditionError):
            twist_model(self.e11, 12)


class TorsionTests(SimpleTestCase):
    def test_corpus_torsion(self):
        self.assertEqual(torsion_order(curve_from_label('11a1')), 5)
        self.assertEqual(torsion_order(curve_from_label('21a1')), 8)
        self.assertEqual(torsion_order(curve_from_label('17a1')), 4)
        self.assertEqual(torsion_order(curve_from_label('37b1')), 3)

    def test_neumann_setzer_torsion(self):
        self.assertEqual(torsion_order(minimalize((1, -1, 0, 4, -3))), 2)
        self.assertEqual(torsion_order(minimalize((1, 1, 0, -1, 0))), 2)

    def test_twist_torsion_divides_two_part(self):
        order = torsion_order(twist_model(curve_from_label('11a1'), -3))
        self.assertTrue(math.gcd(order, 5) == 1)


class ArithTests(SimpleTestCase):
    def test_kronecker_conventions(self):
        cases = {
            (5, 2): -1, (-3, 2): -1, (-7, 2): 1, (1, 2): 1, (2, 4): 0,
            (3, -1): 1, (-3, -1): -1, (1, 0): 1, (-1, 0): 1, (2, 0): 0,
            (5, 7): -1, (73, 7): -1, (-7, 73): -1, (2, 73): 1,
        }
        for (a, n), expected in cases.items():
            self.assertEqual(kronecker(a, n), expected, (a, n))

    def test_kronecker_is_multiplicative_in_the_bottom(self):
        rng = random.Random(11)
        for _ in range(200):
            a = rng.randint(-500, 500)
            m, n = rng.randint(1, 200), rng.randint(1, 200)
            self.assertEqual(kronecker(a, m * n), kronecker(a, m) * kronecker(a, n), (a, m, n))

    def test_ord_p(self):
        self.assertEqual(ord_p(Fraction(-12, 5), 2), 2)
        self.assertEqual(ord_p(Fraction(3, 40), 2), -3)
        self.assertEqual(ord_p(-27, 3), 3)
        self.assertEqual(ord_p(7, 2), 0)
        self.assertEqual(ord_p(0, 2), math.inf)

    def test_xgcd(self):
        for a, b in ((-4, 6), (6, -4), (17, 5), (0, 9), (-9, 0), (12, 18), (-12, -18)):
            g, x, y = xgcd(a, b)
            self.assertEqual(g, math.gcd(a, b), (a, b))
            self.assertEqual(a * x + b * y, g, (a, b))
