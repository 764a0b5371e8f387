"""
Chebyshev ratio of consecutive moment determinants:

    |A(n, q)| == 2 (-1)^n q^(n/2) T_n(q^(-1/2)) |A(n-1, q)|      (n >= 2)
"""
import logging
from concurrent.futures import ThreadPoolExecutor
from typing import List, NamedTuple, Optional

from divisible_fwe._errors import VerificationError
from divisible_fwe.algebra.poly import UniPoly
from divisible_fwe.moments import moment_determinant

logger = logging.getLogger('divisible_fwe.conjecture')


def chebyshev_T(n: int) -> UniPoly:
    """Chebyshev polynomial of the first kind in x."""
    if n < 0:
        raise ValueError(f'n must be non-negative, got {n}')
    previous, current = UniPoly([1], 'x'), UniPoly([0, 1], 'x')
    if n == 0:
        return previous
    two_x = UniPoly([0, 2], 'x')
    for _ in range(n - 1):
        previous, current = current, two_x * current - previous
    return current


def scaled_chebyshev(n: int) -> UniPoly:
    """
    ``q^(n/2) T_n(q^(-1/2))`` as a polynomial in q.

    Only exponents of the parity of n occur in T_n, so x^k contributes to q^((n-k)/2).
    """
    T = chebyshev_T(n)
    coeffs = [0] * (n // 2 + 1)
    for k, c in enumerate(T.coeffs):
        if c:
            if (n - k) % 2:
                raise VerificationError(f'T_{n} has a term of degree {k}')
            coeffs[(n - k) // 2] = c
    result = UniPoly(coeffs, 'q')
    if result.degree != n // 2 or not all(c.is_rational and c.a.denominator == 1 for c in result.coeffs):
        raise VerificationError(f'scaled T_{n} = {result} is not an integer polynomial of degree {n // 2}')
    return result


class ConjectureRow(NamedTuple):
    n: int
    holds: bool
    lhs: UniPoly
    rhs: UniPoly


class ChebyshevReport(NamedTuple):
    n_max: int
    results: List[ConjectureRow]

    @property
    def all_hold(self) -> bool:
        return all(row.holds for row in self.results)

    @property
    def failures(self) -> List[int]:
        return [row.n for row in self.results if not row.holds]


def verify_conjecture(n_max: int, jobs: Optional[int] = None) -> ChebyshevReport:
    """
    Compare both sides exactly for n = 2..n_max.

    Determinants are computed once, in parallel, before the comparisons. A
    mismatch is reported with both polynomials.
    """
    if n_max < 2:
        raise ValueError(f'n_max must be at least 2, got {n_max}')
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        determinants = dict(zip(range(1, n_max + 1),
                                pool.map(lambda n: moment_determinant(n, 'even'), range(1, n_max + 1))))

    results = []
    for n in range(2, n_max + 1):
        lhs = determinants[n]
        rhs = determinants[n - 1] * scaled_chebyshev(n) * (2 * (-1) ** n)
        holds = lhs == rhs
        if not holds:
            logger.warning('ratio fails at n=%d: %s != %s', n, lhs, rhs)
        results.append(ConjectureRow(n=n, holds=holds, lhs=lhs, rhs=rhs.with_var('q')))
    logger.info('checked n=2..%d, %d failure(s)', n_max, sum(not r.holds for r in results))
    return ChebyshevReport(n_max=n_max, results=results)
