"""
Zeta polynomials of formal weight enumerators and the Riemann hypothesis for them.

The zeta polynomial P(T) of ``W = x^n + sum_{i>=d} A_i x^(n-i) y^i`` is the unique
polynomial of degree at most n - d with

    [T^(n-d)]  P(T) / ((1-T)(1-qT)) * (y(1-T) + xT)^n  ==  (W - x^n) / (q - 1).

The Riemann hypothesis holds for W when every root of P lies on |T| = 1/sqrt(q).
rh_check decides this exactly where the scalars allow it and certifies a numeric
answer otherwise.
"""
import logging
import math
import threading
from fractions import Fraction
from typing import Any, List, NamedTuple, Optional, Tuple, Union

import mpmath
import numpy as np
from mpmath.libmp.libhyper import NoConvergence
from typing_extensions import Literal

from divisible_fwe._errors import (BoundViolationError, DomainError, InconsistentInputError,
                                   PreconditionError, VerificationError)
from divisible_fwe.algebra.exactnum import ExactNumber, Interval, ONE, ZERO, as_scalar, qx_approx, qx_sqrt_in_field
from divisible_fwe.algebra.linalg import rank, solve
from divisible_fwe.algebra.poly import HomogPoly, UniPoly, check_q, check_sqrt, half_power, transform_sign, \
    weight_profile

logger = logging.getLogger('divisible_fwe.zeta')

DEFAULT_PRECISION_BITS = 256
DEFAULT_TOLERANCE = Fraction(1, 10 ** 30)

Status = Literal['holds', 'fails', 'indeterminate']
Method = Literal['exact-sturm', 'numeric-certified', 'ivt-witness']
Witness = Tuple[str, Any]

# bits carried beyond the requested precision by the numeric path
_GUARD_BITS = 32

# mpmath working precision is process global
_mp_lock = threading.Lock()


class ZetaResult(NamedTuple):
    P: UniPoly
    two_g: int
    sign: Optional[Literal[-1, 1]]

    @property
    def degree(self) -> int:
        return self.P.degree


class RHVerdict(NamedTuple):
    status: Status
    method: Method
    witnesses: List[Witness]
    precision_used: int


def genus_two_g(W: HomogPoly) -> int:
    """
    Twice the genus, ``n + 2 - 2d``.

    Raises
    ------
    DomainError
        If W has no nonzero coefficient beyond x^n.
    BoundViolationError
        If d > n/2 + 1, which would make the genus negative.
    """
    d = W.min_index()
    if d is None:
        raise DomainError(f'{W} has no minimal index')
    two_g = W.n + 2 - 2 * d
    if two_g < 0:
        raise BoundViolationError(f'd={d} exceeds n/2+1 for n={W.n}')
    return two_g


def _series_coefficients(q: ExactNumber, count: int) -> List[ExactNumber]:
    """Coefficients (q^(m+1) - 1)/(q - 1) of 1/((1-T)(1-qT))."""
    out = []
    term, total = ONE, ZERO
    for _ in range(count):
        total = total + term
        out.append(total)
        term = term * q
    return out


def zeta_poly(W: HomogPoly, q) -> ZetaResult:
    """
    Zeta polynomial of W.

    The coefficient of T^(n-d) is a binary form of degree n whose coefficients
    are linear in p_0..p_(n-d); matching them against (W - x^n)/(q - 1) gives
    n+1 equations in n-d+1 unknowns, solved exactly. The system has to be
    consistent and of full column rank.

    Raises
    ------
    PreconditionError
        If A_0 != 1, d < 2 or d_perp < 2.
    VerificationError
        If the linear system is inconsistent or underdetermined.
    """
    q = check_q(q)
    if W.is_zero or W[0] != 1:
        raise PreconditionError(f'zeta polynomial needs A_0 = 1, got {W[0] if not W.is_zero else 0}')
    profile = weight_profile(W, q)
    if profile.d < 2 or (profile.d_perp is not None and profile.d_perp < 2):
        raise PreconditionError(f'zeta polynomial needs d, d_perp >= 2, got {profile.d}, {profile.d_perp}')
    n, d = W.n, profile.d
    r = n - d
    c = _series_coefficients(q, r + 1)

    rows = []
    for k in range(n + 1):
        l = n - k
        row = []
        for j in range(r + 1):
            entry = ZERO
            for i in range(l, r - j + 1):
                entry = entry + c[r - j - i] * (math.comb(n, i) * math.comb(i, l) * (-1) ** (i - l))
            row.append(entry)
        rows.append(row)
    rhs = [(W[k] - (1 if k == 0 else 0)) / (q - 1) for k in range(n + 1)]
    logger.debug('zeta system for n=%d, d=%d: %d equations, %d unknowns', n, d, n + 1, r + 1)

    if rank(rows) != r + 1:
        raise VerificationError(f'zeta system for {W} does not determine P uniquely')
    try:
        P = UniPoly(solve(rows, rhs), 'T')
    except InconsistentInputError:
        raise VerificationError(f'zeta system for {W} at q={q} is inconsistent')

    sign = transform_sign(W, q)
    two_g = genus_two_g(W)
    if sign is not None and P.degree != two_g:
        raise VerificationError(f'zeta polynomial {P} of {W} has degree {P.degree}, expected {two_g}')
    return ZetaResult(P=P, two_g=two_g, sign=sign)


def functional_eq_check(Z: ZetaResult, q, sqrt_q=None) -> bool:
    """
    Check ``p_(2g-j) == sign * q^(g-j) * p_j`` for all j, and deg P <= 2g.

    Always False when the source was neither invariant nor anti-invariant.

    Raises
    ------
    FieldMismatchError
        If 2g is odd and `sqrt_q` is missing or wrong.
    """
    q = check_q(q)
    if Z.two_g % 2:
        sqrt_q = check_sqrt(q, sqrt_q)
    if Z.sign is None or Z.P.degree > Z.two_g:
        return False
    for j in range(Z.two_g + 1):
        if Z.P[Z.two_g - j] != Z.sign * half_power(q, sqrt_q, Z.two_g - 2 * j) * Z.P[j]:
            return False
    return True


def reciprocal_transform(Z: ZetaResult, q, sqrt_q=None) -> ZetaResult:
    """The zeta result for ``q^g T^(2g) P(1/(qT))``; for a valid functional equation this is sign * P."""
    q = check_q(q)
    if Z.two_g % 2:
        sqrt_q = check_sqrt(q, sqrt_q)
    if Z.P.degree > Z.two_g:
        raise DomainError(f'{Z.P} has degree above 2g={Z.two_g}')
    coeffs = [ZERO] * (Z.two_g + 1)
    for j in range(Z.two_g + 1):
        coeffs[Z.two_g - j] = half_power(q, sqrt_q, Z.two_g - 2 * j) * Z.P[j]
    return ZetaResult(P=UniPoly(coeffs, Z.P.var), two_g=Z.two_g, sign=Z.sign)


# Sturm sequences over a real quadratic field

def _signed_remainder_sequence(a: UniPoly, b: UniPoly) -> List[UniPoly]:
    seq = [a]
    while not b.is_zero:
        seq.append(b)
        a, b = b, -(a % b)
    return seq


def _variations(signs) -> int:
    signs = [s for s in signs if s]
    return sum(1 for s, t in zip(signs, signs[1:]) if s != t)


def _variations_at(seq: List[UniPoly], x) -> int:
    return _variations([p(x).sign() for p in seq])


def _variations_at_infinity(seq: List[UniPoly], positive: bool) -> int:
    return _variations([p.leading.sign() * (1 if positive or p.degree % 2 == 0 else -1) for p in seq])


def tarski_query(Q: UniPoly, P: UniPoly) -> int:
    """Sum of sign(Q(x)) over the distinct real roots x of P."""
    seq = _signed_remainder_sequence(P, P.derivative() * Q)
    return _variations_at_infinity(seq, False) - _variations_at_infinity(seq, True)


def _count_roots_between(P: UniPoly, a, b) -> int:
    """Distinct roots of P in (a, b], P squarefree."""
    seq = _signed_remainder_sequence(P, P.derivative())
    return _variations_at(seq, a) - _variations_at(seq, b)


def _exact_division(P: UniPoly, divisor: UniPoly, what: str) -> UniPoly:
    quotient, remainder = divmod(P, divisor)
    if not remainder.is_zero:
        raise VerificationError(f'{what} is not a root of {P}')
    return quotient


def _chebyshev_like(k: int, product: ExactNumber, var: str) -> List[UniPoly]:
    """E_0 = 2, E_1 = X, E_(j+1) = X E_j - product * E_(j-1), i.e. a^j + b^j in X = a + b, product = ab."""
    X = UniPoly([0, 1], var)
    E = [UniPoly([2], var), X]
    while len(E) <= k:
        E.append(X * E[-1] - E[-2] * product)
    return E


def _fold_palindromic(R: UniPoly, product: ExactNumber, var: str) -> UniPoly:
    """
    S with ``R(T) = T^k S(T + product/T)`` for R of degree 2k with
    ``r_(k-j) = product^j r_(k+j)``.
    """
    k = R.degree // 2
    E = _chebyshev_like(k, product, var)
    S = UniPoly([R[k]], var)
    for j in range(1, k + 1):
        S = S + E[j] * R[k + j]
    return S


def _fields_compatible(*values) -> bool:
    fields = set()
    for v in values:
        if isinstance(v, UniPoly):
            f = v.field
        else:
            f = as_scalar(v).d
        if f is not None:
            fields.add(f)
    return len(fields) <= 1


def _exact_sturm(Z: ZetaResult, sqrt_q: ExactNumber) -> RHVerdict:
    """
    RH through Q(u) = P(u / sqrt(q)): deflate the forced roots at u = +-1 and
    count the roots of the folded polynomial S(V), V = u + 1/u, in [-2, 2].
    """
    P = Z.P
    m = P.degree
    Q = UniPoly([P[j] * sqrt_q ** (-j) for j in range(m + 1)], 'u')
    if not Q[0]:
        return RHVerdict('fails', 'exact-sturm', [('root of P', ZERO)], 0)
    for j in range(m + 1):
        if Q[m - j] != Z.sign * Q[j]:
            raise VerificationError(f'{Q} is not {"palindromic" if Z.sign > 0 else "anti-palindromic"}')

    R = Q
    if Z.sign < 0:
        if Q(1):
            raise VerificationError(f'anti-palindromic {Q} does not vanish at u=1')
        R = _exact_division(R, UniPoly([-1, 1], 'u'), 'u=1')
        if m % 2 == 0:
            R = _exact_division(R, UniPoly([1, 1], 'u'), 'u=-1')
    elif m % 2:
        R = _exact_division(R, UniPoly([1, 1], 'u'), 'u=-1')

    S = _fold_palindromic(R, ONE, 'V')
    free = S.squarefree_part()
    for end in (2, -2):
        if free.degree >= 1 and not free(end):
            free = free // UniPoly([-end, 1], 'V')
    inside = _count_roots_between(free, -2, 2) if free.degree >= 1 else 0
    logger.debug('folded polynomial %s has %d of %d distinct roots in [-2, 2]', S, inside, free.degree)
    if inside == max(free.degree, 0):
        return RHVerdict('holds', 'exact-sturm', [], 0)
    return RHVerdict('fails', 'exact-sturm',
                     [('roots of S(V) in (-2, 2)', inside), ('distinct roots of S(V) off the endpoints', free.degree)],
                     0)


def _real_form(Z: ZetaResult, q: ExactNumber) -> RHVerdict:
    """
    RH through X = T + 1/(qT), which needs no square root of q.

    For even 2g the roots of P lie on |T| = 1/sqrt(q) exactly when the folded
    polynomial S(X) has only real roots and all of them satisfy qX^2 <= 4.
    Both conditions are decided by Tarski queries.
    """
    P = Z.P
    if Z.sign < 0:
        P = _exact_division(P, UniPoly([-1, 0, q], P.var), 'T=+-1/sqrt(q)')
    if P.degree < 1:
        return RHVerdict('holds', 'exact-sturm', [], 0)
    S = _fold_palindromic(P, q.inverse(), 'X').squarefree_part()
    bound = UniPoly([4, 0, -q], 'X')
    real = tarski_query(UniPoly([1], 'X'), S)
    outside = (tarski_query(bound * bound, S) - tarski_query(bound, S)) // 2
    logger.debug('real form %s: %d real roots of %d, %d with qX^2 > 4', S, real, S.degree, outside)
    if real == S.degree and outside == 0:
        return RHVerdict('holds', 'exact-sturm', [], 0)
    return RHVerdict('fails', 'exact-sturm',
                     [('real roots of S(X)', real), ('distinct roots of S(X)', S.degree),
                      ('real roots with qX^2 > 4', outside)],
                     0)


def _to_fraction(x) -> Fraction:
    x = mpmath.mpf(x)
    value = Fraction(abs(int(x.man))) * Fraction(2) ** int(x.exp)
    return -value if x < 0 else value


def _to_mpf(x: Fraction):
    return mpmath.mpf(x.numerator) / x.denominator


def _seed_roots(coeffs) -> Optional[list]:
    """Companion matrix roots in double precision, if the coefficients fit."""
    try:
        floats = [float(c) for c in coeffs]
    except OverflowError:
        return None
    if not all(np.isfinite(floats)):
        return None
    seeds = np.roots(floats)
    if not np.all(np.isfinite(seeds)):
        return None
    return [mpmath.mpc(complex(z)) for z in seeds]


def _find_roots(coeffs, precision_bits: int) -> Optional[list]:
    degree = len(coeffs) - 1
    seeds = _seed_roots(coeffs)
    for init in ([seeds, None] if seeds is not None else [None]):
        try:
            return mpmath.polyroots(coeffs, maxsteps=max(100, 20 * degree), extraprec=precision_bits,
                                    roots_init=init)
        except NoConvergence:
            logger.debug('root finding did not converge (%s seeds)', 'numpy' if init else 'default')
    return None


def _ivt_witness(P: UniPoly, q: ExactNumber, center: Fraction, delta: Fraction) -> Optional[Witness]:
    """A real root of P in [center-delta, center+delta] away from +-1/sqrt(q), proven by a sign change."""
    a, b = center - delta, center + delta
    if P(a).sign() * P(b).sign() >= 0:
        return None
    if a * b <= 0:
        return None
    side_a, side_b = (a * a * q - 1).sign(), (b * b * q - 1).sign()
    if side_a == 0 or side_a != side_b:
        return None
    return 'real root of P in [a, b]', Interval(a, b)


def _numeric(Z: ZetaResult, q: ExactNumber, precision_bits: int, tolerance: Fraction) -> RHVerdict:
    with _mp_lock:
        return _numeric_locked(Z, q, precision_bits, tolerance)


def _numeric_locked(Z: ZetaResult, q: ExactNumber, precision_bits: int, tolerance: Fraction) -> RHVerdict:
    """
    Certified numeric path.

    Roots of the squarefree part are found with mpmath; inclusion disks of
    radius m |P(z_i)| / |a_m prod (z_i - z_j)| enlarged by the coefficient and
    rounding errors contain exactly one root each when pairwise disjoint.
    """
    P = Z.P.squarefree_part()
    m = P.degree
    if m < 1:
        return RHVerdict('holds', 'numeric-certified', [], precision_bits)
    wp = precision_bits + _GUARD_BITS
    enclosures = [qx_approx(c, wp) for c in reversed(P.coeffs)]
    q_enclosure = qx_approx(q, wp)

    with mpmath.workprec(wp):
        coeffs = [_to_mpf(e.midpoint) for e in enclosures]
        errors = [_to_mpf(e.width) / 2 for e in enclosures]
        roots = _find_roots(coeffs, precision_bits)
        if roots is None:
            logger.warning('no convergence at %d bits', precision_bits)
            return RHVerdict('indeterminate', 'numeric-certified', [('root finding', 'no convergence')],
                             precision_bits)

        eps = mpmath.mpf(2) ** (-wp + 4)
        lead = abs(coeffs[0]) - errors[0]
        radii = []
        for i, z in enumerate(roots):
            value = abs(mpmath.polyval(coeffs, z))
            powers = [abs(z) ** (m - k) for k in range(m + 1)]
            coefficient_error = mpmath.fsum(e * p for e, p in zip(errors, powers))
            rounding = (m + 1) * eps * mpmath.fsum(abs(c) * p for c, p in zip(coeffs, powers))
            denominator = lead
            for j, w in enumerate(roots):
                if j != i:
                    denominator *= abs(z - w)
            if denominator <= 0:
                return RHVerdict('indeterminate', 'numeric-certified', [('root isolation', 'coincident roots')],
                                 precision_bits)
            radii.append(m * (value + coefficient_error + rounding) / denominator * mpmath.mpf('1.01') + eps)

        for i in range(m):
            for j in range(i + 1, m):
                if abs(roots[i] - roots[j]) <= radii[i] + radii[j]:
                    logger.warning('inclusion disks %d and %d overlap at %d bits', i, j, precision_bits)
                    return RHVerdict('indeterminate', 'numeric-certified',
                                     [('overlapping inclusion disks', [i, j])], precision_bits)

        sqrt_q = mpmath.sqrt(_to_mpf(q_enclosure.midpoint))
        rho = 1 / sqrt_q
        slack = mpmath.mpf(2) ** (-(precision_bits - 8))
        tol = _to_mpf(tolerance)
        off, deviation = [], mpmath.mpf(0)
        for i, z in enumerate(roots):
            distance = abs(abs(z) - rho)
            if distance > radii[i] + slack:
                off.append(i)
            deviation = max(deviation, (distance + radii[i] + slack) * sqrt_q)

        if off:
            witnesses, ivt = [], []
            circle = q.inverse()
            for i in off:
                z, r = roots[i], radii[i]
                modulus = abs(z)
                enclosure = Interval(_to_fraction(modulus - r), _to_fraction(modulus + r))
                # |z|^2 must avoid 1/q exactly
                if Interval(max(enclosure.lo, Fraction(0)) ** 2, enclosure.hi ** 2).contains(circle):
                    logger.warning('modulus enclosure of root %d meets the circle at %d bits', i, precision_bits)
                    return RHVerdict('indeterminate', 'numeric-certified',
                                     [('modulus enclosure meets the circle', i)], precision_bits)
                witnesses.append((f'modulus of root {i} (1/sqrt(q) ~ {mpmath.nstr(rho, 20)})', enclosure))
                if abs(mpmath.im(z)) <= r:
                    gap = min([abs(z - w) for j, w in enumerate(roots) if j != i] or [mpmath.mpf(1)])
                    delta = min(gap / 4, max(2 * r, mpmath.mpf(2) ** (-precision_bits // 2)))
                    witness = _ivt_witness(P, q, _to_fraction(mpmath.re(z)), _to_fraction(delta))
                    if witness is not None:
                        ivt.append(witness)
            logger.info('%d root(s) certified off the circle', len(off))
            if ivt:
                return RHVerdict('fails', 'ivt-witness', ivt + witnesses, precision_bits)
            return RHVerdict('fails', 'numeric-certified', witnesses, precision_bits)

        if deviation < tol:
            return RHVerdict('holds', 'numeric-certified',
                             [('max ||root|*sqrt(q) - 1| bound', _to_fraction(deviation))], precision_bits)
    logger.warning('roots within %s of the circle but not within the tolerance %s',
                   mpmath.nstr(deviation, 5), float(tolerance))
    return RHVerdict('indeterminate', 'numeric-certified',
                     [('max ||root|*sqrt(q) - 1| bound', _to_fraction(deviation))], precision_bits)


def _exact_available(Z: ZetaResult, q: ExactNumber, sqrt_q: Optional[ExactNumber]) -> bool:
    return (sqrt_q is not None and Z.sign is not None and Z.P.degree == Z.two_g
            and _fields_compatible(Z.P, q, sqrt_q) and functional_eq_check(Z, q, sqrt_q))


def _real_form_available(Z: ZetaResult, q: ExactNumber) -> bool:
    if Z.sign is None or Z.two_g % 2 or Z.P.degree != Z.two_g or not _fields_compatible(Z.P, q):
        return False
    return functional_eq_check(Z, q)


def rh_check(Z: ZetaResult, q, precision_bits: int = DEFAULT_PRECISION_BITS,
             tolerance: Union[Fraction, int, float] = DEFAULT_TOLERANCE, sqrt_q=None,
             method: Literal['auto', 'exact', 'numeric', 'real-form'] = 'auto') -> RHVerdict:
    """
    Decide whether all roots of P lie on |T| = 1/sqrt(q).

    Parameters
    ----------
    Z : ZetaResult
    q : ExactNumber
    precision_bits : int
        Working precision of the numeric path.
    tolerance : Fraction
        Bound on ||root| sqrt(q) - 1| for a numeric "holds".
    sqrt_q : ExactNumber, optional
        Defaults to the square root of q in its quadratic field, if there is one.
    method : str
        'auto' takes the exact path when sqrt(q) is available and the numeric path
        otherwise; 'exact', 'real-form' and 'numeric' force one path.

    Returns
    -------
    RHVerdict

    Raises
    ------
    PreconditionError
        If P is zero, or a forced exact method does not apply.
    """
    q = check_q(q)
    if Z.P.is_zero:
        raise PreconditionError('RH is undefined for the zero polynomial')
    if method not in ('auto', 'exact', 'numeric', 'real-form'):
        raise ValueError(f'unknown method {method!r}')
    tolerance = Fraction(tolerance)
    if Z.P.degree == 0:
        return RHVerdict('holds', 'exact-sturm', [], 0)
    if sqrt_q is None:
        sqrt_q = qx_sqrt_in_field(q)
    else:
        sqrt_q = check_sqrt(q, sqrt_q)

    if method == 'real-form':
        if not _real_form_available(Z, q):
            raise PreconditionError('the real form needs even 2g and a valid functional equation')
        verdict = _real_form(Z, q)
    elif method == 'exact' or (method == 'auto' and _exact_available(Z, q, sqrt_q)):
        if not _exact_available(Z, q, sqrt_q):
            raise PreconditionError(f'no exact path: sqrt({q}) is not available in the field of {Z.P}')
        verdict = _exact_sturm(Z, sqrt_q)
    else:
        verdict = _numeric(Z, q, precision_bits, tolerance)

    if verdict.method == 'exact-sturm' and verdict.status == 'fails':
        numeric = _numeric(Z, q, precision_bits, tolerance)
        if numeric.status == 'fails':
            verdict = verdict._replace(witnesses=verdict.witnesses + numeric.witnesses,
                                       precision_used=numeric.precision_used)
    logger.info('RH %s for %s at q=%s (%s)', verdict.status, Z.P, q, verdict.method)
    return verdict
