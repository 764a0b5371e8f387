"""
Formal weight enumerators in two-generator rings ``C[gen_inv, gen_anti]``.

The anti-invariant members of such a ring are spanned by the products
``gen_inv^l * gen_anti^(2m+1)``.
"""
import functools
import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Dict, Iterable, List, NamedTuple, Optional, Tuple

from typing_extensions import Literal

from divisible_fwe._errors import (DegenerateRingError, InconsistentInputError, NoEnumeratorError, PreconditionError,
                                   VerificationError)
from divisible_fwe.algebra.exactnum import ExactNumber, qx_sqrt_in_field
from divisible_fwe.algebra.linalg import solve
from divisible_fwe.algebra.poly import HomogPoly, check_q, check_sqrt, fwe_classify
from divisible_fwe.zeta import DEFAULT_PRECISION_BITS, DEFAULT_TOLERANCE, RHVerdict, rh_check, zeta_poly

logger = logging.getLogger('divisible_fwe.rings')

BoundKind = Literal['type-I', 'type-II', 'type-III', 'type-IV', 'RII-minus', 'genus-nonneg']


class RingSpec:
    """
    Ring generated by a sigma_q-invariant and a sigma_q-anti-invariant form.

    Both generators are classified on construction.

    Raises
    ------
    PreconditionError
        If a generator does not have the expected class.
    """

    def __init__(self, q, gen_inv: HomogPoly, gen_anti: HomogPoly, sqrt_q=None, name: Optional[str] = None):
        self._q = check_q(q)
        if sqrt_q is None:
            sqrt_q = qx_sqrt_in_field(self._q)
        else:
            sqrt_q = check_sqrt(self._q, sqrt_q)
        self._sqrt_q = sqrt_q
        self._name = name

        for generator, expected in ((gen_inv, 'invariant'), (gen_anti, 'anti-invariant')):
            kind = fwe_classify(generator, self._q, self._sqrt_q)
            if kind != expected:
                raise PreconditionError(f'{generator} is {kind} under sigma_{self._q}, expected {expected}')
        self._gen_inv = gen_inv
        self._gen_anti = gen_anti

    def __repr__(self):
        label = self._name or 'ring'
        return f'{label}: q={self._q}, generators of degree {self._gen_inv.n} and {self._gen_anti.n}'

    @property
    def name(self) -> Optional[str]:
        return self._name

    @property
    def q(self) -> ExactNumber:
        return self._q

    @property
    def sqrt_q(self) -> Optional[ExactNumber]:
        return self._sqrt_q

    @property
    def gen_inv(self) -> HomogPoly:
        return self._gen_inv

    @property
    def gen_anti(self) -> HomogPoly:
        return self._gen_anti

    def product(self, l: int, m: int) -> HomogPoly:
        return self._gen_inv ** l * self._gen_anti ** (2 * m + 1)


class ExtremalResult(NamedTuple):
    W: HomogPoly
    d: int
    combination: List[Tuple[Tuple[int, int], ExactNumber]]
    constraints: List[int]


def ring_products(R: RingSpec, n: int) -> List[Tuple[int, int]]:
    """All (l, m) with ``l deg(gen_inv) + (2m+1) deg(gen_anti) == n``, by increasing m."""
    a, b = R.gen_inv.n, R.gen_anti.n
    out = []
    m = 0
    while (2 * m + 1) * b <= n:
        rest = n - (2 * m + 1) * b
        if a == 0:
            if rest == 0:
                out.append((0, m))
        elif rest % a == 0:
            out.append((rest // a, m))
        m += 1
    return out


def extremal_search(R: RingSpec, n: int) -> ExtremalResult:
    """
    Enumerator of degree n with the largest minimal index in the span of the ring products.

    The scalars are fixed by A_0 = 1, then A_1, A_2, ... are forced to zero one at
    a time until the next one cannot be; that index is d. Remaining freedom is
    resolved by setting free scalars to zero.

    Raises
    ------
    NoEnumeratorError
        If the ring has no product of degree n.
    DegenerateRingError
        If every combination has A_0 = 0, or x^n itself lies in the span.
    """
    pairs = ring_products(R, n)
    if not pairs:
        raise NoEnumeratorError(f'{R!r} has no anti-invariant products of degree {n}')
    products = [R.product(l, m) for l, m in pairs]

    first = [p[0] for p in products]
    if not any(first):
        raise DegenerateRingError(f'every combination of degree {n} has A_0 = 0')
    rows, rhs = [first], [1]
    solution = solve(rows, rhs)
    constraints = []
    d = None
    for e in range(1, n + 1):
        row = [p[e] for p in products]
        if not any(row):
            continue
        try:
            candidate = solve(rows + [row], rhs + [0])
        except InconsistentInputError:
            d = e
            break
        rows.append(row)
        rhs.append(0)
        constraints.append(e)
        solution = candidate
        logger.debug('degree %d: coefficient of y^%d forced to zero', n, e)
    if d is None:
        raise DegenerateRingError(f'x^{n} lies in the span of the products of degree {n}')

    W = HomogPoly([0] * (n + 1))
    for scalar, p in zip(solution, products):
        if scalar:
            W = W + p * scalar
    if W.min_index() != d:
        raise VerificationError(f'extremal combination {W} has minimal index {W.min_index()}, expected {d}')
    logger.info('extremal enumerator of degree %d in %r has d=%d', n, R, d)
    return ExtremalResult(W=W, d=d, combination=list(zip(pairs, solution)), constraints=constraints)


def distance_bound(kind: BoundKind, n: int) -> int:
    """Upper bounds on the minimal index: Mallows-Sloane types I-IV, the R_II^- analog and g >= 0."""
    if n < 1:
        raise ValueError(f'n must be positive, got {n}')
    if kind == 'type-I':
        return 2 * (n // 8) + 2
    if kind == 'type-II':
        return 4 * (n // 24) + 4
    if kind == 'type-III':
        return 3 * (n // 12) + 3
    if kind == 'type-IV':
        return 2 * (n // 6) + 2
    if kind == 'RII-minus':
        return 4 * ((n - 12) // 24) + 4
    if kind == 'genus-nonneg':
        return n // 2 + 1
    raise ValueError(f'unknown bound {kind!r}')


# ring name: (invariant generator, anti-invariant generator) in the built-in catalog
_RINGS = {'RI_minus': ('W2_2', 'phi4'),
          'RIV_minus': ('W2_4', 'phi3'),
          'R4_3_minus': ('W2_4_3', 'phi6'),
          'RII_minus': ('WH8', 'W12'),
          'R4p2sqrt2_minus': ('W2_4p2sqrt2', 'phi8plus'),
          'R4m2sqrt2_minus': ('W2_4m2sqrt2', 'phi8minus'),
          'R2p2sqrt5_5_minus': ('W2_2p2sqrt5_5', 'phi10plus'),
          'R2m2sqrt5_5_minus': ('W2_2m2sqrt5_5', 'phi10minus'),
          'R8p4sqrt3_minus': ('W2_8p4sqrt3', 'phi12plus'),
          'R8m4sqrt3_minus': ('W2_8m4sqrt3', 'phi12minus')}


def ring_names() -> List[str]:
    return list(_RINGS)


@functools.lru_cache(maxsize=None)
def get_ring(name: str) -> RingSpec:
    """
    Named ring built from the built-in catalog.

    Raises
    ------
    KeyError
        For unknown names.
    """
    from divisible_fwe.catalog import builtin_catalog

    try:
        inv_name, anti_name = _RINGS[name]
    except KeyError:
        raise KeyError(f'unknown ring {name!r}, known rings: {", ".join(_RINGS)}')
    catalog = builtin_catalog()
    inv, anti = catalog[inv_name], catalog[anti_name]
    return RingSpec(anti.q_value, inv.W, anti.W, name=name)


class ScanRow(NamedTuple):
    degree: int
    result: ExtremalResult
    verdict: Optional[RHVerdict]


def scan_extremal(R: RingSpec, degrees: Iterable[int], rh: bool = True, jobs: Optional[int] = None,
                  precision_bits: int = DEFAULT_PRECISION_BITS, tolerance=DEFAULT_TOLERANCE) -> List[ScanRow]:
    """
    Extremal enumerators for several degrees, optionally with their RH verdicts.

    Degrees without products or with a degenerate span are skipped.
    """

    def run(n: int) -> Optional[ScanRow]:
        try:
            result = extremal_search(R, n)
        except (NoEnumeratorError, DegenerateRingError) as e:
            logger.debug('degree %d skipped: %s', n, e)
            return None
        verdict = None
        if rh:
            verdict = rh_check(zeta_poly(result.W, R.q), R.q, precision_bits, tolerance, R.sqrt_q)
        return ScanRow(n, result, verdict)

    with ThreadPoolExecutor(max_workers=jobs) as pool:
        rows = list(pool.map(run, sorted(set(degrees))))
    return [row for row in rows if row is not None]


def scan_summary(rows: List[ScanRow]) -> Dict[int, Tuple[int, Optional[str]]]:
    """degree -> (d, RH status)."""
    return {row.degree: (row.result.d, row.verdict.status if row.verdict else None) for row in rows}
