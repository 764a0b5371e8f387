import unittest
from fractions import Fraction

import numpy as np

from divisible_fwe._errors import DegreeMismatchError, DomainError, FieldMismatchError
from divisible_fwe._parser import as_exact
from divisible_fwe.algebra.exactnum import ExactNumber, qx_sqrt_in_field
from divisible_fwe.algebra.poly import HomogPoly, UniPoly, fwe_classify, homog_combine, macwilliams_apply, \
    transform_sign, weight_profile
from divisible_fwe.catalog import builtin_catalog
from tests import PHI3, PHI4, W12, W22, W24, homog, uni


class TestcaseUniPoly(unittest.TestCase):

    def testArithmetic(self):
        t_minus, t_plus = uni(-1, 1), uni(1, 1)
        self.assertEqual(uni(-1, 0, 1), t_minus * t_plus)
        self.assertEqual(uni(0, 2), t_minus + t_plus)
        self.assertTrue((t_minus - t_minus).is_zero)
        self.assertEqual(uni(1, -2, 1), t_minus ** 2)
        self.assertEqual(uni(0, 2), 2 * uni(0, 1))

        quotient, remainder = divmod(uni(-1, 0, 0, 1), t_minus)
        self.assertEqual(uni(1, 1, 1), quotient)
        self.assertTrue(remainder.is_zero)
        with self.assertRaises(ZeroDivisionError):
            divmod(t_minus, UniPoly([]))

    def testStr(self):
        self.assertEqual('2*T^2 - 1', str(uni(-1, 0, 2)))
        self.assertEqual('-T + 1/3', str(uni('1/3', -1)))
        self.assertEqual('(4+2*sqrt(2))*q', str(uni(0, '4+2*sqrt(2)', var='q')))
        self.assertEqual('0', str(UniPoly([])))

    def testEvaluation(self):
        p = uni(-1, 0, 2)
        self.assertEqual(0, p(ExactNumber(0, Fraction(1, 2), 2)))
        self.assertEqual(7, p(2))
        # composition
        self.assertEqual(uni(1, 0, 8, 0, 8), p(uni(1, 0, 2)))

    def testGcd(self):
        a = uni(-1, 1) ** 2 * uni(2, 1)
        b = uni(-1, 1) * uni(3, 1)
        self.assertEqual(uni(-1, 1), a.gcd(b))
        self.assertEqual(uni(-1, 1) * uni(2, 1), a.squarefree_part())
        self.assertEqual(uni(-2, 0, 1), (uni(-2, 0, 1) * 3).monic())

    def testField(self):
        self.assertIsNone(uni(1, 2).field)
        self.assertEqual(2, uni('sqrt(2)', 1).field)
        with self.assertRaises(FieldMismatchError):
            _ = uni('sqrt(2)', 'sqrt(3)').field
        with self.assertRaises(DomainError):
            uni('sqrt(2)', 1).to_sympy(None)


class TestcaseHomogPoly(unittest.TestCase):

    def testConstruction(self):
        self.assertEqual(4, PHI4.n)
        self.assertEqual([0, 2, 4], PHI4.support())
        self.assertEqual(2, PHI4.min_index())
        self.assertIsNone(HomogPoly.x_power(3).min_index())
        with self.assertRaises(DegreeMismatchError):
            HomogPoly([1, 0, 1], n=3)
        with self.assertRaises(DomainError):
            HomogPoly([])

    def testStr(self):
        self.assertEqual('x^4 - 6*x^2*y^2 + y^4', str(PHI4))
        self.assertEqual('x^3 - 9*x*y^2', str(PHI3))

    def testArithmetic(self):
        # W_{2,4} phi_3
        self.assertEqual(homog(1, 0, -6, 0, -27, 0), W24 * PHI3)
        self.assertEqual(homog(1, 0, 2, 0, 1), W22 ** 2)
        self.assertEqual(PHI4 * 2, PHI4 + PHI4)
        with self.assertRaises(DegreeMismatchError):
            _ = PHI4 + W22
        self.assertEqual(-4, PHI4(1, 1))

    def testCombine(self):
        w_h8 = homog_combine([(Fraction(3, 4), [W22] * 4), (Fraction(1, 4), [PHI4, PHI4])])
        self.assertEqual(homog(1, 0, 0, 0, 14, 0, 0, 0, 1), w_h8)
        w12 = homog_combine([(Fraction(9, 8), [W22] * 4 + [PHI4]), (Fraction(-1, 8), [PHI4] * 3)])
        self.assertEqual(W12, w12)
        self.assertEqual(HomogPoly([5]), homog_combine([(5, [])]))
        with self.assertRaises(DegreeMismatchError):
            homog_combine([(1, [PHI4]), (1, [W22])])


class TestcaseMacWilliams(unittest.TestCase):

    def testKnownClasses(self):
        self.assertEqual(-PHI4, macwilliams_apply(PHI4, 2))
        self.assertEqual('anti-invariant', fwe_classify(PHI4, 2))
        self.assertEqual('invariant', fwe_classify(W22, 2))
        self.assertEqual('invariant', fwe_classify(W24, 4))
        self.assertEqual('anti-invariant', fwe_classify(PHI3, 4, 2))
        self.assertEqual('anti-invariant', fwe_classify(W12, 2))
        self.assertEqual('neither', fwe_classify(PHI4, 3))
        self.assertEqual('neither', fwe_classify(HomogPoly([0, 0, 0]), 2))
        self.assertEqual('anti-invariant', fwe_classify(homog(1, 0, '-50+20*sqrt(5)', 0, '225-100*sqrt(5)', 0),
                                                        '6-2*sqrt(5)', '-1+sqrt(5)'))
        self.assertEqual('anti-invariant', fwe_classify(homog(1, 0, -5, 0, '5/3', 0, '-1/27'), '4/3'))

    def testOddDegreeNeedsRoot(self):
        with self.assertRaises(FieldMismatchError):
            macwilliams_apply(PHI3, 4)
        with self.assertRaises(FieldMismatchError):
            macwilliams_apply(PHI3, 4, 3)
        with self.assertRaises(DomainError):
            macwilliams_apply(PHI4, 1)
        with self.assertRaises(DomainError):
            macwilliams_apply(PHI4, -2)

    def testTransformSign(self):
        self.assertEqual(-1, transform_sign(PHI3, 4))
        self.assertEqual(-1, transform_sign(PHI4, 2))
        self.assertEqual(1, transform_sign(W22, 2))
        self.assertIsNone(transform_sign(PHI4, 3))

    def testInvolution(self):
        """sigma_q applied twice is the identity on random forms."""
        rng = np.random.default_rng(2024)
        roots = {}
        for entry in builtin_catalog().values():
            roots.setdefault(entry.q_value, qx_sqrt_in_field(entry.q_value))
        fields = list(roots.items())
        self.assertEqual(10, len(fields))
        self.assertIn((as_exact('2-2/5*sqrt(5)'), None), fields)
        self.assertIn((as_exact('8+4*sqrt(3)'), None), fields)
        self.assertIn((as_exact('4-2*sqrt(2)'), None), fields)
        for k in range(20 * len(fields)):
            q, sqrt_q = fields[k % len(fields)]
            n = int(rng.integers(1, 7))
            if sqrt_q is None and n % 2:
                n += 1
            numerators, denominators = rng.integers(-9, 10, n + 1), rng.integers(1, 5, n + 1)
            W = HomogPoly([Fraction(int(a), int(b)) for a, b in zip(numerators, denominators)])
            self.assertEqual(W, macwilliams_apply(macwilliams_apply(W, q, sqrt_q), q, sqrt_q))

    def testWeightProfile(self):
        self.assertEqual((2, 2, 2), tuple(weight_profile(PHI4, 2)))
        self.assertEqual((2, 2, 2), tuple(weight_profile(PHI3, 4)))
        self.assertEqual((4, 4, 4), tuple(weight_profile(W12, 2)))
        self.assertEqual((4, 4, 4), tuple(weight_profile(W12, 2, sqrt_q=None)))
        self.assertEqual((2, 2, 2), tuple(weight_profile(PHI3, 4, sqrt_q=2)))
        golay = builtin_catalog()['WG24'].W
        profile = weight_profile(golay, 2)
        self.assertEqual(8, profile.d)
        self.assertEqual(8, profile.d_perp)
        self.assertEqual(4, profile.divisor_c)
        with self.assertRaises(DomainError):
            weight_profile(HomogPoly.x_power(4), 2)
        with self.assertRaises(DomainError):
            weight_profile(HomogPoly([0, 0]), 2)


if __name__ == "__main__":
    unittest.main()
