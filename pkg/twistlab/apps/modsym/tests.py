import math
from fractions import Fraction
from functools import lru_cache

from django.conf import settings
from django.core.cache import caches
from django.test import SimpleTestCase

from twistlab.apps.curves.services import a_p, curve_from_label
from twistlab.apps.modsym.cache import get_space, space_key
from twistlab.apps.modsym.models import ModSymSpace
from twistlab.apps.modsym.services import (
    boundary_of, build_space, cusp_count, genus_x0, hecke_eigen, hecke_matrix, heilbronn,
    integral_cycles, manin_path, p1_count, path_symbols, period_pair, star_matrix, symbol,
    vector_of,
)
from twistlab.utils.exceptions import (
    AmbiguousEigenspaceError, CapacityError, PreconditionError,
)
from twistlab.utils.linalg import matmul


@lru_cache(maxsize=None)
def space(N):
    return build_space(N)


@lru_cache(maxsize=None)
def eigen(label, pmax=20):
    curve = curve_from_label(label)
    return hecke_eigen(space(curve.conductor), curve, pmax)


class SpaceTests(SimpleTestCase):
    def test_p1_sizes(self):
        self.assertEqual(p1_count(11), 12)
        self.assertEqual(p1_count(49), 56)
        self.assertEqual(len(space(11).symbols), 12)
        self.assertEqual(len(space(49).symbols), 56)

    def test_cuspidal_rank_is_twice_the_genus(self):
        self.assertEqual(space(11).cuspidal_rank, 2)
        self.assertEqual(space(26).cuspidal_rank, 4)
        for N, g in ((11, 1), (26, 2), (37, 2), (49, 1), (121, 6)):
            self.assertEqual(genus_x0(N), g)
        self.assertEqual(cusp_count(26), 4)
        self.assertEqual(len(space(26).cusps), 4)

    def test_capacity(self):
        with self.assertRaises(PreconditionError):
            build_space(10)
        with self.settings(TWISTLAB={**settings.TWISTLAB, "MAX_LEVEL": 100}):
            with self.assertRaises(CapacityError):
                build_space(101)

    def test_relations_vanish(self):
        sp = space(26)
        for i, j in sp.sigma_pairs:
            self.assertEqual(vector_of(sp, {i: 1, j: 1}) if i != j else vector_of(sp, {i: 1}), {})
        for triple in sp.tau_triples:
            terms = {}
            for s in triple:
                terms[s] = terms.get(s, 0) + 1
            self.assertEqual(vector_of(sp, terms), {})

    def test_boundary_of_closed_paths(self):
        sp = space(37)
        for k, m in ((1, 3), (2, 5), (3, 7), (5, 11), (7, 9)):
            self.assertEqual(boundary_of(sp, vector_of(sp, path_symbols(sp, k, m))), {})

    def test_manin_path_starts_at_zero_infinity(self):
        self.assertEqual(manin_path(0, 1), [])
        path = manin_path(2, 5)
        self.assertEqual(path[0], (0, 1))
        self.assertEqual(len(path), 4)


class HeckeTests(SimpleTestCase):
    def test_heilbronn_determinants(self):
        for p in (2, 3, 5, 7, 13):
            for x1, x2, y1, y2 in heilbronn(p):
                self.assertEqual(x1 * y2 - x2 * y1, p)

    def test_commutativity(self):
        sp = space(26)
        primes = (3, 5, 7, 11)
        mats = {p: hecke_matrix(sp, p) for p in primes}
        for p in primes:
            for q in primes:
                if p < q:
                    self.assertEqual(matmul(mats[p], mats[q]), matmul(mats[q], mats[p]))

    def test_star_is_an_involution(self):
        sp = space(26)
        S = star_matrix(sp)
        identity = [[Fraction(int(i == j)) for j in range(sp.dimension)] for i in range(sp.dimension)]
        self.assertEqual(matmul(S, S), identity)

    def test_11a_eigenvalues(self):
        eig = eigen('11a1')
        self.assertEqual(eig.eigenvalues[2], -2)
        self.assertEqual(eig.eigenvalues[3], -1)
        self.assertNotIn(11, eig.eigenvalues)

    def test_26_classes_are_distinguished(self):
        e26a, e26b = eigen('26a1'), eigen('26b1')
        self.assertNotEqual(a_p(curve_from_label('26a1'), 3), a_p(curve_from_label('26b1'), 3))
        self.assertNotEqual(e26a.plus_values, e26b.plus_values)
        self.assertNotEqual(e26a.plus_values, tuple(-x for x in e26b.plus_values))

    def test_no_good_prime_is_ambiguous(self):
        curve = curve_from_label('26a1')
        with self.assertRaises(AmbiguousEigenspaceError):
            hecke_eigen(space(26), curve, 2)

    def test_wrong_level(self):
        with self.assertRaises(PreconditionError):
            hecke_eigen(space(26), curve_from_label('11a1'), 20)

    def test_star_splitting(self):
        sp = space(11)
        eig = eigen('11a1')
        S = star_matrix(sp)
        plus = [sum(a * b for a, b in zip(row, eig.plus_dual)) for row in S]
        minus = [sum(a * b for a, b in zip(row, eig.minus_dual)) for row in S]
        self.assertEqual(plus, list(eig.plus_dual))
        self.assertEqual(minus, [-x for x in eig.minus_dual])

    def test_normalization_is_surjective(self):
        for label in ('11a1', '37b1', '26b1'):
            eig = eigen(label)
            sp = space(eig.level)
            for dual in (eig.plus_dual, eig.minus_dual):
                values = [sum(v * dual[k] for k, v in cycle.items()) for cycle in integral_cycles(sp)]
                self.assertTrue(all(v.denominator == 1 for v in values))
                self.assertEqual(math.gcd(*(int(v) for v in values)), 1)


class SymbolTests(SimpleTestCase):
    def setUp(self):
        self.sp = space(11)
        self.eig = eigen('11a1')

    def test_zero(self):
        pair = symbol(self.sp, self.eig, 0, 1)
        self.assertEqual((pair.x_plus, pair.x_minus), (0, 0))

    def test_eleven_a_sum_over_fifths(self):
        total = sum(symbol(self.sp, self.eig, k, 5).x_plus for k in range(5))
        self.assertEqual(total, -1)

    def test_lalg_independent_of_prime(self):
        curve = curve_from_label('11a1')
        for l in (3, 5, 7, 13):
            total = sum(symbol(self.sp, self.eig, k, l).x_plus for k in range(l))
            self.assertEqual(-total / (l + 1 - a_p(curve, l)), Fraction(1, 5))

    def test_symmetry(self):
        for m in (3, 5, 7, 9, 13):
            for k in range(1, m):
                a, b = symbol(self.sp, self.eig, k, m), symbol(self.sp, self.eig, m - k, m)
                self.assertEqual(a.x_plus, b.x_plus)
                self.assertEqual(a.x_minus, -b.x_minus)

    def test_representative_independence(self):
        self.assertEqual(symbol(self.sp, self.eig, 2, 7), symbol(self.sp, self.eig, 9, 7))

    def test_denominators_are_small(self):
        for m in (3, 5, 7, 13):
            for k in range(m):
                pair = symbol(self.sp, self.eig, k, m)
                self.assertIn(pair.x_plus.denominator, (1, 2))
                self.assertIn(pair.x_minus.denominator, (1, 2))

    def test_level_must_be_coprime(self):
        with self.assertRaises(PreconditionError):
            symbol(self.sp, self.eig, 1, 22)

    def test_period_pairs(self):
        curve = curve_from_label('11a1')
        pp = period_pair(curve, self.sp, self.eig, 0, 1)
        self.assertEqual((pp.s, pp.t, pp.lattice_type), (0, 0, 2))
        pp = period_pair(curve, self.sp, self.eig, 1, 3)
        self.assertEqual((pp.s - pp.t) % 2, 0)

    def test_37b_is_rectangular(self):
        curve = curve_from_label('37b1')
        sp, eig = space(37), eigen('37b1')
        for k, m in ((1, 3), (2, 5), (4, 7), (3, 11)):
            pp = period_pair(curve, sp, eig, k, m)
            self.assertEqual(pp.lattice_type, 1)
            self.assertEqual(pp.s.denominator, 1)
            self.assertEqual(pp.t.denominator, 1)


class CacheTests(SimpleTestCase):
    def test_corrupt_entry_is_rebuilt(self):
        cache = caches['default']
        cache.set(space_key(11), "not a space", None)
        sp = get_space(11, cache)
        self.assertIsInstance(sp, ModSymSpace)
        self.assertIsInstance(cache.get(space_key(11)), ModSymSpace)
        cache.delete(space_key(11))
