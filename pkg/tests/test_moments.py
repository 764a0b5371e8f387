import unittest
from fractions import Fraction

import numpy as np

from divisible_fwe._errors import DomainError, FieldMismatchError, InconsistentInputError
from divisible_fwe._parser import as_exact
from divisible_fwe.algebra.exactnum import qx_sqrt_in_field
from divisible_fwe.catalog import builtin_catalog
from divisible_fwe.moments import CandidateQ, binomial_moment_rows, candidate_q, construct_enumerator, degree_to_n, \
    factor_determinant, moment_determinant, moment_identity_check, moment_matrix, poly_det, search_degree
from tests import PHI3, PHI4, W12, W22, W24, even_determinants, homog, uni

PHI5 = homog(1, 0, '-50+20*sqrt(5)', 0, '225-100*sqrt(5)', 0)
PHI6 = homog(1, 0, -5, 0, '5/3', 0, '-1/27')


def q_poly(*coeffs):
    return uni(*coeffs, var='q')


def t_poly(*coeffs):
    return uni(*coeffs, var='t')


def cofactor_det(rows):
    if not rows:
        return q_poly(1)
    total = q_poly()
    for j, entry in enumerate(rows[0]):
        minor = [row[:j] + row[j + 1:] for row in rows[1:]]
        term = entry * cofactor_det(minor)
        total = total - term if j % 2 else total + term
    return total


class TestcaseMomentMatrix(unittest.TestCase):

    def testEntries(self):
        A = moment_matrix(1, 'even')
        self.assertEqual(q_poly(1, 1), A[0, 0])
        self.assertEqual(q_poly(1), A[0, 1])
        self.assertEqual(q_poly(4), A[1, 0])
        self.assertTrue(A[1, 1].is_zero)
        self.assertEqual('q', A.var)

        A = moment_matrix(2, 'even')
        self.assertEqual(q_poly(1, 0, 1), A[0, 0])
        self.assertEqual(q_poly(4, 4), A[1, 0])
        self.assertEqual(q_poly(12), A[2, 0])
        self.assertEqual(q_poly(2), A[2, 1])

        B = moment_matrix(1, 'odd')
        self.assertEqual(t_poly(1, 0, 0, 1), B[0, 0])
        self.assertEqual(t_poly(3, 3), B[1, 0])
        self.assertEqual(t_poly(1), B[1, 1])
        self.assertEqual('t', B.var)

        self.assertEqual([[3, 1], [4, 0]], moment_matrix(1, 'even').specialize(2))

    def testInvalid(self):
        with self.assertRaises(DomainError):
            moment_matrix(0, 'even')
        with self.assertRaises(ValueError):
            moment_matrix(2, 'both')

    def testDeterminantsEven(self):
        q2, q43 = q_poly(-2, 1), q_poly(-4, 3)
        q888 = q_poly(8, -8, 1)
        q5 = q_poly(16, -20, 5)
        q16 = q_poly(16, -16, 1)
        self.assertEqual(q_poly(-4), moment_determinant(1, 'even'))
        self.assertEqual(q2 * 8, moment_determinant(2, 'even'))
        self.assertEqual(q2 * q43 * 16, moment_determinant(3, 'even'))
        self.assertEqual(q2 * q43 * q888 * 32, moment_determinant(4, 'even'))
        self.assertEqual(q2 * q43 * q888 * q5 * -64, moment_determinant(5, 'even'))
        self.assertEqual(q2 ** 2 * q43 * q888 * q5 * q16 * 128, moment_determinant(6, 'even'))

    def testDeterminantsOdd(self):
        self.assertEqual(t_poly(-2, -3, 0, 1), moment_determinant(1, 'odd'))
        expected = -(t_poly(1, 1) ** 3) * t_poly(-2, 1) * t_poly(-4, 2, 1)
        self.assertEqual(expected, moment_determinant(2, 'odd'))

    def testDeterminantsTable(self):
        for n, expected in even_determinants().items():
            with self.subTest(n=n):
                self.assertEqual(expected, moment_determinant(n, 'even'))
        self.assertEqual(q_poly(-64, 112, -56, 7) * 2, moment_determinant(7, 'even') // moment_determinant(6, 'even'))

    def testCofactorExpansion(self):
        for n in range(1, 5):
            for parity in ('even', 'odd'):
                with self.subTest(n=n, parity=parity):
                    rows = [list(row) for row in moment_matrix(n, parity).entries]
                    self.assertEqual(cofactor_det(rows), moment_determinant(n, parity))

    def testPersistence(self):
        for n in range(2, 9):
            with self.subTest(n=n):
                self.assertEqual(0, moment_determinant(n, 'even')(2))

    def testPolyDet(self):
        q = q_poly(0, 1)
        self.assertEqual(q_poly(-1, 0, 1), poly_det([[q, q_poly(1)], [q_poly(1), q]]))
        self.assertEqual(q_poly(1), poly_det([]))
        with self.assertRaises(DomainError):
            poly_det([[q, q]])

    def testPolyDetRandom(self):
        rng = np.random.default_rng(7)
        for _ in range(5):
            rows = [[q_poly(*(Fraction(int(a), int(b)) for a, b in zip(rng.integers(-5, 6, 3), rng.integers(1, 4, 3))))
                     for _ in range(4)] for _ in range(4)]
            self.assertEqual(cofactor_det(rows), poly_det(rows))


class TestcaseCandidates(unittest.TestCase):

    def testFactor(self):
        content, factors = factor_determinant(moment_determinant(4, 'even'))
        self.assertEqual(Fraction(32), content)
        self.assertEqual({(q_poly(-2, 1), 1), (q_poly(-4, 3), 1), (q_poly(8, -8, 1), 1)}, set(factors))

        content, factors = factor_determinant(q_poly(Fraction(-1, 3), 0, Fraction(2, 3)))
        self.assertEqual(Fraction(1, 3), content)
        self.assertEqual([(q_poly(-1, 0, 2), 1)], factors)

        with self.assertRaises(DomainError):
            factor_determinant(q_poly())

    def testEvenCandidates(self):
        candidates, unresolved = candidate_q(moment_determinant(4, 'even'), 'even')
        self.assertEqual([], unresolved)
        self.assertEqual([as_exact('4-2*sqrt(2)'), as_exact('4/3'), 2, as_exact('4+2*sqrt(2)')],
                         [c.q for c in candidates])
        self.assertEqual(q_poly(8, -8, 1), candidates[0].minimal_polynomial)
        self.assertEqual(2, candidates[0].degree)
        self.assertIsNone(candidates[0].t)
        self.assertEqual(as_exact('2/3*sqrt(3)'), candidates[1].t)

    def testOddCandidates(self):
        candidates, unresolved = candidate_q(moment_determinant(1, 'odd'), 'odd')
        self.assertEqual([4], [c.q for c in candidates])
        self.assertEqual(2, candidates[0].t)

        candidates, unresolved = candidate_q(moment_determinant(2, 'odd'), 'odd')
        self.assertEqual([as_exact('6-2*sqrt(5)'), 4], [c.q for c in candidates])
        self.assertEqual(as_exact('-1+sqrt(5)'), candidates[0].t)

    def testUnresolved(self):
        with self.assertLogs('divisible_fwe.moments', 'WARNING'):
            candidates, unresolved = candidate_q(moment_determinant(7, 'even'), 'even')
        self.assertEqual([q_poly(-64, 112, -56, 7)], unresolved)
        self.assertIn(as_exact('8+4*sqrt(3)'), [c.q for c in candidates])

    def testCandidateFromValue(self):
        self.assertEqual(2, CandidateQ.from_value(4).t)
        self.assertIsNone(CandidateQ.from_value(as_exact('8+4*sqrt(3)')).t)
        with self.assertRaises(DomainError):
            CandidateQ.from_value(1)
        with self.assertRaises(FieldMismatchError):
            CandidateQ.from_value(4, 3)


class TestcaseConstruct(unittest.TestCase):

    def testKnownEnumerators(self):
        self.assertEqual([PHI4], construct_enumerator(2, 'even', CandidateQ.from_value(2)))
        self.assertEqual([PHI6], construct_enumerator(3, 'even', CandidateQ.from_value(Fraction(4, 3))))
        self.assertEqual([PHI3], construct_enumerator(1, 'odd', CandidateQ.from_value(4)))
        self.assertEqual([PHI5], construct_enumerator(2, 'odd', CandidateQ.from_value(as_exact('6-2*sqrt(5)'))))
        # old candidates give products with x^2 + (q-1) y^2
        self.assertEqual([W22 * PHI4], construct_enumerator(3, 'even', CandidateQ.from_value(2)))
        self.assertEqual([W24 * PHI3], construct_enumerator(2, 'odd', CandidateQ.from_value(4)))

    def testIrrationalQ(self):
        enumerators = construct_enumerator(4, 'even', CandidateQ.from_value(as_exact('4-2*sqrt(2)')))
        self.assertEqual(1, len(enumerators))
        self.assertEqual(as_exact('-84+56*sqrt(2)'), enumerators[0][2])
        self.assertEqual(as_exact('577-408*sqrt(2)'), enumerators[0][8])

    def testRegular(self):
        with self.assertRaises(InconsistentInputError):
            construct_enumerator(2, 'even', CandidateQ.from_value(3))

    def testMomentIdentities(self):
        self.assertTrue(moment_identity_check(PHI4, 2))
        self.assertTrue(moment_identity_check(PHI3, 4, 2))
        self.assertTrue(moment_identity_check(W12, 2))
        self.assertFalse(moment_identity_check(W22, 2))
        self.assertEqual(5, len(binomial_moment_rows(4, 2)))
        with self.assertRaises(FieldMismatchError):
            binomial_moment_rows(3, 4)

    def testCatalogIdentities(self):
        for name, entry in builtin_catalog().items():
            if entry.kind != 'anti-invariant':
                continue
            with self.subTest(name=name):
                q = entry.q_value
                sqrt_q = qx_sqrt_in_field(q) if entry.n % 2 else None
                self.assertTrue(moment_identity_check(entry.W, q, sqrt_q))

    def testRowsRedundant(self):
        # row n-nu is q^(nu-n/2) times row nu
        cases = [(4, 2, None), (6, as_exact('4/3'), None), (8, as_exact('4+2*sqrt(2)'), None),
                 (3, 4, 2), (5, as_exact('6-2*sqrt(5)'), as_exact('-1+sqrt(5)'))]
        for n, q, sqrt_q in cases:
            rows = binomial_moment_rows(n, q, sqrt_q)
            for nu in range(n + 1):
                with self.subTest(n=n, nu=nu):
                    if sqrt_q is None:
                        factor = as_exact(q) ** ((2 * nu - n) // 2)
                    else:
                        factor = as_exact(sqrt_q) ** (2 * nu - n)
                    self.assertEqual([c * factor for c in rows[nu]], rows[n - nu])

    def testFullCoefficients(self):
        catalog = builtin_catalog()
        cases = [(4, '4+2*sqrt(2)', 'phi8plus'), (4, '4-2*sqrt(2)', 'phi8minus'),
                 (5, '2+2/5*sqrt(5)', 'phi10plus'), (5, '2-2/5*sqrt(5)', 'phi10minus'),
                 (6, '8+4*sqrt(3)', 'phi12plus'), (6, '8-4*sqrt(3)', 'phi12minus')]
        for n, q, name in cases:
            with self.subTest(name=name):
                enumerators = construct_enumerator(n, 'even', CandidateQ.from_value(as_exact(q)))
                self.assertEqual([catalog[name].W], enumerators)
                self.assertEqual(list(catalog[name].W.coeffs), list(enumerators[0].coeffs))


class TestcaseSearch(unittest.TestCase):

    def testDegreeToN(self):
        self.assertEqual((3, 'odd'), degree_to_n(7))
        self.assertEqual((4, 'even'), degree_to_n(8))
        with self.assertRaises(DomainError):
            degree_to_n(1)

    def testSearchDegree6(self):
        report = search_degree(6)
        self.assertEqual(3, report.n)
        self.assertEqual('even', report.parity)
        self.assertEqual(Fraction(16), report.content)
        self.assertEqual([as_exact('4/3'), 2], [c.q for c in report.candidates])
        self.assertEqual([True, False], [r.new for r in report.found])
        self.assertEqual([PHI6], report.found[0].enumerators)

    def testSearchDegree5(self):
        report = search_degree(5, 'odd')
        self.assertEqual([as_exact('6-2*sqrt(5)'), 4], [c.q for c in report.candidates])
        self.assertEqual([True, False], [r.new for r in report.found])

    def testQValues(self):
        even = set()
        for degree in range(2, 13, 2):
            even.update(c.q for c in search_degree(degree).candidates)
        self.assertEqual({as_exact(q) for q in ['2', '4/3', '4+2*sqrt(2)', '4-2*sqrt(2)', '2+2/5*sqrt(5)',
                                                '2-2/5*sqrt(5)', '8+4*sqrt(3)', '8-4*sqrt(3)']}, even)
        odd = set()
        for degree in (3, 5):
            odd.update(c.q for c in search_degree(degree).candidates)
        self.assertEqual({as_exact('4'), as_exact('6-2*sqrt(5)')}, odd)

    def testParityMismatch(self):
        with self.assertRaises(ValueError):
            search_degree(4, 'odd')


if __name__ == "__main__":
    unittest.main()
