import os
import shutil
import tempfile
from typing import Dict

from divisible_fwe._parser import as_exact
from divisible_fwe.algebra.poly import HomogPoly, UniPoly


def homog(*coeffs) -> HomogPoly:
    """HomogPoly from exact literals, coefficient of x^n first."""
    return HomogPoly([as_exact(c) for c in coeffs])


def uni(*coeffs, var='T') -> UniPoly:
    """UniPoly from exact literals, constant term first."""
    return UniPoly([as_exact(c) for c in coeffs], var)


PHI4 = homog(1, 0, -6, 0, 1)
PHI3 = homog(1, 0, -9, 0)
W22 = homog(1, 0, 1)
W24 = homog(1, 0, 3)
W12 = homog(1, 0, 0, 0, -33, 0, 0, 0, -33, 0, 0, 0, 1)


def even_determinants() -> Dict[int, UniPoly]:
    """Factored moment determinants |A(n, q)| for n = 1..12."""
    def q_poly(*coeffs):
        return uni(*coeffs, var='q')

    q2, q43, q888 = q_poly(-2, 1), q_poly(-4, 3), q_poly(8, -8, 1)
    q5, q16, q7 = q_poly(16, -20, 5), q_poly(16, -16, 1), q_poly(-64, 112, -56, 7)
    table = {1: q_poly(-4),
             2: q2 * 8,
             3: q2 * q43 * 16,
             4: q2 * q43 * q888 * 32,
             5: q2 * q43 * q888 * q5 * -64,
             6: q2 ** 2 * q43 * q888 * q5 * q16 * 128,
             7: q2 ** 2 * q43 * q888 * q5 * q16 * q7 * 256}
    table[8] = table[7] * q_poly(128, -256, 160, -32, 1) * 2
    table[9] = table[8] * q43 * q_poly(-64, 96, -36, 3) * -2
    table[10] = table[9] * q2 * q_poly(256, -512, 304, -48, 1) * -2
    table[11] = table[10] * q_poly(-1024, 2816, -2816, 1232, -220, 11) * 2
    table[12] = table[11] * q888 * q_poly(256, -512, 320, -64, 1) * 2
    return table


# noinspection PyPep8Naming
class EmptyCatalogMixin:
    # noinspection PyAttributeOutsideInit
    def setUp(self):
        # logger = logging.getLogger('divisible_fwe')
        # logger.setLevel(logging.DEBUG)

        self.tempfolder = tempfile.mkdtemp()
        self.catalog_filename = os.path.join(self.tempfolder, 'unittest.json')

    def tearDown(self) -> None:
        shutil.rmtree(self.tempfolder)
