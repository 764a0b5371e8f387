"""
Dense polynomials over ExactNumber.

:class:`UniPoly` holds determinants, zeta polynomials and Chebyshev
polynomials. :class:`HomogPoly` holds homogeneous forms
``W(x, y) = sum A_i x^(n-i) y^i`` such as weight enumerators.
"""
import logging
import math
from fractions import Fraction
from typing import Iterable, List, NamedTuple, Optional, Sequence, Tuple, Union

import sympy
from typing_extensions import Literal

from divisible_fwe._errors import DegreeMismatchError, DomainError, FieldMismatchError
from divisible_fwe.algebra.exactnum import ExactNumber, ZERO, as_scalar

logger = logging.getLogger('divisible_fwe.poly')

Scalar = Union[int, Fraction, ExactNumber]


def _render_terms(terms: Iterable[Tuple[ExactNumber, str]]) -> str:
    """Join (coefficient, monomial) pairs into a readable sum, e.g. ``x^4 - 6*x^2*y^2 + y^4``."""
    parts = []
    for c, mono in terms:
        if not c:
            continue
        if c.is_rational:
            negative = c.sign() < 0
            magnitude = abs(c)
            if mono:
                body = mono if magnitude == 1 else f'{magnitude}*{mono}'
            else:
                body = str(magnitude)
        else:
            negative = False
            body = f'({c})*{mono}' if mono else f'({c})'
        parts.append((negative, body))
    if not parts:
        return '0'
    text = ('-' if parts[0][0] else '') + parts[0][1]
    for negative, body in parts[1:]:
        text += (' - ' if negative else ' + ') + body
    return text


class UniPoly:
    """
    Univariate polynomial, ``coeffs[k]`` multiplies ``var**k``.

    Trailing zero coefficients are trimmed, the zero polynomial has degree -1.
    The variable label is informational and ignored by comparisons.
    """
    __slots__ = ('_coeffs', '_var')

    def __init__(self, coeffs: Iterable[Scalar] = (), var: str = 'T'):
        cs = [as_scalar(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self._coeffs = tuple(cs)
        self._var = var

    @classmethod
    def monomial(cls, degree: int, coeff: Scalar = 1, var: str = 'T') -> 'UniPoly':
        return cls([0] * degree + [coeff], var)

    @property
    def coeffs(self) -> Tuple[ExactNumber, ...]:
        return self._coeffs

    @property
    def var(self) -> str:
        return self._var

    @property
    def degree(self) -> int:
        return len(self._coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self._coeffs

    @property
    def leading(self) -> ExactNumber:
        return self._coeffs[-1] if self._coeffs else ZERO

    def __getitem__(self, k: int) -> ExactNumber:
        if 0 <= k < len(self._coeffs):
            return self._coeffs[k]
        return ZERO

    def with_var(self, var: str) -> 'UniPoly':
        return UniPoly(self._coeffs, var)

    def __repr__(self):
        return f"UniPoly('{self}')"

    def __str__(self):
        def mono(k):
            return '' if k == 0 else (self._var if k == 1 else f'{self._var}^{k}')
        return _render_terms((self._coeffs[k], mono(k)) for k in reversed(range(len(self._coeffs))))

    def _as_poly(self, other) -> 'UniPoly':
        if isinstance(other, UniPoly):
            return other
        if isinstance(other, (int, Fraction, ExactNumber)):
            return UniPoly([other], self._var)
        return NotImplemented

    def __eq__(self, other):
        other = self._as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self):
        return hash(self._coeffs)

    def __add__(self, other):
        other = self._as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        size = max(len(self._coeffs), len(other._coeffs))
        return UniPoly([self[k] + other[k] for k in range(size)], self._var)

    __radd__ = __add__

    def __neg__(self):
        return UniPoly([-c for c in self._coeffs], self._var)

    def __sub__(self, other):
        other = self._as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        if self.is_zero or other.is_zero:
            return UniPoly([], self._var)
        out = [ZERO] * (len(self._coeffs) + len(other._coeffs) - 1)
        for i, a in enumerate(self._coeffs):
            if not a:
                continue
            for j, b in enumerate(other._coeffs):
                if b:
                    out[i + j] = out[i + j] + a * b
        return UniPoly(out, self._var)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            return NotImplemented
        result = UniPoly([1], self._var)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def __divmod__(self, other):
        other = self._as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero:
            raise ZeroDivisionError('polynomial division by zero')
        rem = list(self._coeffs)
        dq = other.degree
        lead_inv = other.leading.inverse()
        quot = [ZERO] * max(len(rem) - dq, 0)
        for k in range(len(rem) - 1 - dq, -1, -1):
            c = rem[k + dq] * lead_inv
            quot[k] = c
            if c:
                for j, oc in enumerate(other._coeffs):
                    rem[k + j] = rem[k + j] - c * oc
        return UniPoly(quot, self._var), UniPoly(rem[:dq], self._var)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __call__(self, x):
        """Evaluate at a scalar, or compose with another UniPoly."""
        if isinstance(x, UniPoly):
            result = UniPoly([], x.var)
        else:
            x = as_scalar(x)
            result = ZERO
        for c in reversed(self._coeffs):
            result = result * x + c
        return result

    def derivative(self) -> 'UniPoly':
        return UniPoly([k * c for k, c in enumerate(self._coeffs)][1:], self._var)

    def monic(self) -> 'UniPoly':
        if self.is_zero:
            return self
        inv = self.leading.inverse()
        return UniPoly([c * inv for c in self._coeffs], self._var)

    def gcd(self, other: 'UniPoly') -> 'UniPoly':
        a, b = self, other
        while not b.is_zero:
            a, b = b, a % b
        return a.monic()

    def squarefree_part(self) -> 'UniPoly':
        if self.degree < 1:
            return self
        return self // self.gcd(self.derivative())

    @property
    def field(self) -> Optional[int]:
        """Radicand shared by the coefficients, None when all are rational."""
        d = None
        for c in self._coeffs:
            if c.d is not None:
                if d is not None and c.d != d:
                    raise FieldMismatchError(f'coefficients of {self} mix Q(sqrt({d})) and Q(sqrt({c.d}))')
                d = c.d
        return d

    def to_sympy(self, symbol: sympy.Symbol) -> sympy.Poly:
        if self.field is not None:
            raise DomainError(f'{self} has irrational coefficients')
        coeffs = [sympy.Rational(c.a.numerator, c.a.denominator) for c in reversed(self._coeffs)]
        return sympy.Poly(coeffs or [0], symbol, domain='QQ')

    @classmethod
    def from_sympy(cls, poly: sympy.Poly, var: str) -> 'UniPoly':
        coeffs = [Fraction(int(c.p), int(c.q)) for c in reversed(poly.all_coeffs())]
        return cls(coeffs, var)


class HomogPoly:
    """
    Homogeneous form of degree `n` in x and y; ``coeffs[i]`` multiplies ``x^(n-i) y^i``.

    Parameters
    ----------
    coeffs : iterable of int, Fraction or ExactNumber
        Exactly n+1 entries A_0..A_n.
    n : int, optional
        Degree, defaults to ``len(coeffs) - 1``.
    """
    __slots__ = ('_n', '_coeffs')

    def __init__(self, coeffs: Iterable[Scalar], n: Optional[int] = None):
        cs = tuple(as_scalar(c) for c in coeffs)
        if n is None:
            n = len(cs) - 1
        if n < 0:
            raise DomainError('a homogeneous form needs at least one coefficient')
        if len(cs) != n + 1:
            raise DegreeMismatchError(f'degree {n} needs {n + 1} coefficients, got {len(cs)}')
        self._n = n
        self._coeffs = cs

    @classmethod
    def x_power(cls, n: int) -> 'HomogPoly':
        return cls([1] + [0] * n)

    @property
    def n(self) -> int:
        return self._n

    @property
    def coeffs(self) -> Tuple[ExactNumber, ...]:
        return self._coeffs

    def __getitem__(self, i: int) -> ExactNumber:
        return self._coeffs[i]

    @property
    def is_zero(self) -> bool:
        return not any(self._coeffs)

    def support(self) -> List[int]:
        return [i for i, c in enumerate(self._coeffs) if c]

    def min_index(self) -> Optional[int]:
        """Smallest i >= 1 with A_i != 0, None for multiples of x^n."""
        for i in range(1, self._n + 1):
            if self._coeffs[i]:
                return i
        return None

    def __repr__(self):
        return f"HomogPoly('{self}')"

    def __str__(self):
        def mono(i):
            parts = []
            if self._n - i:
                parts.append('x' if self._n - i == 1 else f'x^{self._n - i}')
            if i:
                parts.append('y' if i == 1 else f'y^{i}')
            return '*'.join(parts)
        return _render_terms((c, mono(i)) for i, c in enumerate(self._coeffs))

    def __eq__(self, other):
        if not isinstance(other, HomogPoly):
            return NotImplemented
        return self._n == other._n and self._coeffs == other._coeffs

    def __hash__(self):
        return hash((self._n, self._coeffs))

    def _check_degree(self, other: 'HomogPoly'):
        if self._n != other._n:
            raise DegreeMismatchError(f'cannot add forms of degree {self._n} and {other._n}')

    def __add__(self, other):
        if not isinstance(other, HomogPoly):
            return NotImplemented
        self._check_degree(other)
        return HomogPoly([a + b for a, b in zip(self._coeffs, other._coeffs)])

    def __sub__(self, other):
        if not isinstance(other, HomogPoly):
            return NotImplemented
        self._check_degree(other)
        return HomogPoly([a - b for a, b in zip(self._coeffs, other._coeffs)])

    def __neg__(self):
        return HomogPoly([-c for c in self._coeffs])

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, ExactNumber)):
            other = as_scalar(other)
            return HomogPoly([c * other for c in self._coeffs])
        if not isinstance(other, HomogPoly):
            return NotImplemented
        out = [ZERO] * (self._n + other._n + 1)
        for i, a in enumerate(self._coeffs):
            if not a:
                continue
            for j, b in enumerate(other._coeffs):
                if b:
                    out[i + j] = out[i + j] + a * b
        return HomogPoly(out)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            return NotImplemented
        result = HomogPoly([1])
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def __call__(self, x: Scalar, y: Scalar) -> ExactNumber:
        x, y = as_scalar(x), as_scalar(y)
        total = ZERO
        for i, c in enumerate(self._coeffs):
            if c:
                total = total + c * x ** (self._n - i) * y ** i
        return total


class WeightProfile(NamedTuple):
    d: int
    d_perp: Optional[int]
    divisor_c: int


FWEClass = Literal['anti-invariant', 'invariant', 'neither']


def homog_combine(terms: Sequence[Tuple[Scalar, Sequence[HomogPoly]]]) -> HomogPoly:
    """
    Expand ``sum(scalar * prod(factors))``.

    An empty factor list stands for the constant form 1.

    Raises
    ------
    DegreeMismatchError
        If the products do not share one total degree.
    """
    if not terms:
        raise ValueError('nothing to combine')
    result = None
    for scalar, factors in terms:
        product = HomogPoly([1])
        for f in factors:
            product = product * f
        product = product * as_scalar(scalar)
        if result is None:
            result = product
        elif result.n != product.n:
            raise DegreeMismatchError(f'terms of degree {result.n} and {product.n} cannot be combined')
        else:
            result = result + product
    return result


def check_q(q: Scalar) -> ExactNumber:
    q = as_scalar(q)
    if q.sign() <= 0 or q == 1:
        raise DomainError(f'q must be positive and different from 1, got {q}')
    return q


def check_sqrt(q: ExactNumber, sqrt_q: Optional[Scalar]) -> ExactNumber:
    """Validate `sqrt_q` as the positive square root of `q`."""
    if sqrt_q is None:
        raise FieldMismatchError(f'sqrt(q) is required for q={q}')
    sqrt_q = as_scalar(sqrt_q)
    if sqrt_q.sign() <= 0 or sqrt_q * sqrt_q != q:
        raise FieldMismatchError(f'{sqrt_q} is not the positive square root of {q}')
    return sqrt_q


def half_power(q: ExactNumber, sqrt_q: Optional[ExactNumber], e: int) -> ExactNumber:
    """q**(e/2), using `sqrt_q` for odd `e`."""
    if e % 2 == 0:
        return q ** (e // 2)
    return check_sqrt(q, sqrt_q) ** e


def _linear_substitution(W: HomogPoly, q: ExactNumber) -> HomogPoly:
    """W(x + (q-1)y, x - y), without the q^(-n/2) scale."""
    n = W.n
    first = HomogPoly([1, q - 1])
    second = HomogPoly([1, -1])
    first_powers = [HomogPoly([1])]
    second_powers = [HomogPoly([1])]
    for _ in range(n):
        first_powers.append(first_powers[-1] * first)
        second_powers.append(second_powers[-1] * second)
    result = HomogPoly([0] * (n + 1))
    for i, a in enumerate(W.coeffs):
        if a:
            result = result + (first_powers[n - i] * second_powers[i]) * a
    return result


def macwilliams_apply(W: HomogPoly, q: Scalar, sqrt_q: Optional[Scalar] = None) -> HomogPoly:
    """
    MacWilliams transform ``q^(-n/2) W(x + (q-1)y, x - y)``.

    Raises
    ------
    DomainError
        If q <= 0 or q == 1.
    FieldMismatchError
        If n is odd and `sqrt_q` is missing or wrong.
    """
    q = check_q(q)
    if W.n % 2:
        sqrt_q = check_sqrt(q, sqrt_q)
    return _linear_substitution(W, q) * half_power(q, sqrt_q, -W.n)


def fwe_classify(W: HomogPoly, q: Scalar, sqrt_q: Optional[Scalar] = None) -> FWEClass:
    transformed = macwilliams_apply(W, q, sqrt_q)
    if W.is_zero:
        return 'neither'
    if transformed == -W:
        return 'anti-invariant'
    if transformed == W:
        return 'invariant'
    return 'neither'


def transform_sign(W: HomogPoly, q: Scalar) -> Optional[Literal[-1, 1]]:
    """
    +1 or -1 when W is invariant or anti-invariant under sigma_q, else None.

    Works for odd n without sqrt(q): the unscaled substitution must equal
    lambda * W with lambda**2 == q**n, and the sign of lambda decides.
    """
    q = check_q(q)
    support = W.support()
    if not support:
        return None
    substituted = _linear_substitution(W, q)
    ratio = substituted[support[0]] / W[support[0]]
    if substituted != W * ratio or ratio * ratio != q ** W.n:
        return None
    return 1 if ratio.sign() > 0 else -1


def weight_profile(W: HomogPoly, q: Scalar, sqrt_q: Optional[Scalar] = None) -> WeightProfile:
    """
    Minimal index d, dual minimal index d_perp and the divisor c of W.

    d_perp does not depend on the q^(-n/2) scale, so sqrt(q) is never needed;
    `sqrt_q` is accepted for symmetry with the other transform helpers and ignored.
    d_perp is None if the transform is a multiple of x^n.

    Raises
    ------
    DomainError
        If W is zero or a multiple of x^n.
    """
    q = check_q(q)
    if W.is_zero:
        raise DomainError('weight profile of the zero polynomial')
    d = W.min_index()
    if d is None:
        raise DomainError(f'{W} has no nonzero coefficient beyond x^{W.n}')
    d_perp = _linear_substitution(W, q).min_index()
    divisor_c = 0
    for i in W.support():
        divisor_c = math.gcd(divisor_c, i)
    return WeightProfile(d=d, d_perp=d_perp, divisor_c=divisor_c)
