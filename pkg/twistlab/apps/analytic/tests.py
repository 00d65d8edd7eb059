import math
import random
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

from django.test import SimpleTestCase
from mpmath import mp

from twistlab.apps.analytic.services import (
    agm_periods, an_table, cross_validate, least_real_period, lseries_numeric, period_integral,
    required_terms, tail_bound,
)
from twistlab.apps.curves.services import curve_from_label, minimalize
from twistlab.apps.lvalues.services import x_pair
from twistlab.utils.exceptions import InsufficientTermsError, PreconditionError


def curve(label):
    return curve_from_label(label)


def sample_cusps(conductor, count):
    """count distinct reduced k/m, 0 < k < m <= 40, gcd(m, conductor) = 1, fixed by the conductor."""
    rng = random.Random(conductor)
    moduli = [m for m in range(2, 41) if math.gcd(m, conductor) == 1]
    cusps = set()
    while len(cusps) < count:
        m = rng.choice(moduli)
        k = rng.randrange(1, m)
        if math.gcd(k, m) == 1:
            cusps.add((k, m))
    return sorted(cusps, key=lambda km: (km[1], km[0]))


class PeriodTests(SimpleTestCase):
    def test_lattice_types(self):
        self.assertEqual(agm_periods(curve('11a1')).lattice_type, 2)
        self.assertEqual(agm_periods(curve('37b1')).lattice_type, 1)
        self.assertEqual(agm_periods(curve('73a1')).lattice_type, 2)

    def test_11a_real_period(self):
        self.assertAlmostEqual(float(least_real_period(curve('11a1'))), 1.26920930427955, places=12)

    def test_periods_are_positive(self):
        for label in ('11a1', '17a1', '37b1', '21a1', '26b1'):
            data = agm_periods(curve(label))
            self.assertGreater(data.omega_plus, 0)
            self.assertGreater(data.omega_minus, 0)
            self.assertGreater(data.area, 0)

    def test_precision_is_recorded(self):
        data = agm_periods(curve('11a1'), precision=50)
        self.assertEqual(data.precision, 50)
        self.assertAlmostEqual(float(data.omega_plus), float(agm_periods(curve('11a1')).omega_plus), places=14)

    def test_threads_keep_their_own_precision(self):
        agm = agm_periods.__wrapped__
        labels = ('11a1', '37b1', '17a1', '73a1')
        serial = {(label, dps): agm(curve(label), dps).omega_plus for label in labels for dps in (20, 60)}
        work = [key for key in serial for _ in range(8)]
        with ThreadPoolExecutor(max_workers=8) as pool:
            results = list(pool.map(lambda key: agm(curve(key[0]), key[1]).omega_plus, work))
        for (label, dps), value in zip(work, results):
            self.assertEqual(value, serial[(label, dps)], (label, dps))
            self.assertEqual(value.context.dps, dps)
        self.assertEqual(mp.dps, 15)


class SeriesTests(SimpleTestCase):
    def test_coefficients(self):
        self.assertEqual(an_table(curve('11a1'), 10), (0, 1, -2, -1, 2, 1, 2, -2, 0, -2, -2))

    def test_ratio_to_period(self):
        for label, expected in (('11a1', 0.2), ('37b1', 2 / 3), ('73a1', 0.5), ('17a1', 0.25)):
            e = curve(label)
            ratio = lseries_numeric(e).value / least_real_period(e)
            self.assertAlmostEqual(float(ratio), expected, places=10)

    def test_insufficient_terms(self):
        e = curve('11a1')
        with self.assertRaises(InsufficientTermsError) as ctx:
            lseries_numeric(e, nterms=5)
        self.assertEqual(ctx.exception.required_terms, required_terms(11, 1e-15))
        value = lseries_numeric(e, nterms=ctx.exception.required_terms)
        self.assertLessEqual(value.tail_bound, 1e-15)

    def test_tail_shrinks(self):
        self.assertLess(tail_bound(37, 200), tail_bound(37, 100))
        self.assertGreater(required_terms(142, 1e-15), required_terms(11, 1e-15))

    def test_root_number_minus_one_is_refused(self):
        e37a = minimalize((0, 0, 1, -1, 0), root_number=-1)
        with self.assertRaises(PreconditionError):
            lseries_numeric(e37a)


class PeriodIntegralTests(SimpleTestCase):
    def test_matches_modular_symbols(self):
        for label in ('11a1', '37b1', '17a1', '73a1'):
            e = curve(label)
            data = agm_periods(e)
            for k, m in sample_cusps(e.conductor, 25):
                value = period_integral(e, k, m)
                pair = x_pair(e, k, m)
                for observed, expected in ((value.real, float(pair.x_plus) * float(data.omega_plus)),
                                           (value.imag, float(pair.x_minus) * float(data.omega_minus))):
                    observed = float(observed)
                    self.assertLessEqual(abs(observed - expected), 1e-8 * max(1, abs(expected)), (label, k, m))

    def test_zero_cusp(self):
        self.assertEqual(period_integral(curve('11a1'), 0, 1), 0)

    def test_level_must_be_coprime(self):
        with self.assertRaises(PreconditionError):
            period_integral(curve('11a1'), 1, 22)


class CrossValidationTests(SimpleTestCase):
    def test_untwisted(self):
        for label in ('11a1', '37b1', '73a1'):
            result = cross_validate(curve(label))
            self.assertTrue(result, str(result))

    def test_twisted(self):
        for label, M in (('11a1', -3), ('37b1', 21), ('37b1', 5), ('17a1', -3)):
            result = cross_validate(curve(label), M)
            self.assertTrue(result, str(result))
            self.assertIsNot(result.exact.context, mp)

    def test_exact_part_is_the_rational(self):
        result = cross_validate(curve('11a1'))
        self.assertAlmostEqual(float(result.exact / least_real_period(curve('11a1'))), float(Fraction(1, 5)), places=14)
