"""
Exact arithmetic in Q and in real quadratic fields Q(sqrt(d)).

Every value is an :class:`ExactNumber` ``a + b*sqrt(d)`` with rational `a`, `b`
and square-free ``d >= 2``. Purely rational values carry no field tag, so they
combine with members of any field. Signs are decided by integer comparisons,
never by floating point.
"""
import functools
import logging
import math
import operator
from fractions import Fraction
from typing import NamedTuple, Optional, Tuple, Union

import sympy
from typing_extensions import Literal

from divisible_fwe._errors import DomainError, FieldMismatchError

logger = logging.getLogger('divisible_fwe.exactnum')

# rationals are plain fractions.Fraction objects
Rational = Fraction


@functools.lru_cache(maxsize=4096)
def _square_free_split(d: int) -> Tuple[int, int]:
    """Return (k, e) with d == k**2 * e and e square-free."""
    k, e = 1, 1
    for p, mult in sympy.factorint(d).items():
        k *= p ** (mult // 2)
        if mult % 2:
            e *= p
    return k, e


def _rational_sqrt(r: Fraction) -> Optional[Fraction]:
    if r < 0:
        return None
    num, den = math.isqrt(r.numerator), math.isqrt(r.denominator)
    if num * num == r.numerator and den * den == r.denominator:
        return Fraction(num, den)
    return None


class ExactNumber:
    """
    The real number ``a + b*sqrt(d)``.

    Parameters
    ----------
    a, b : int or Fraction
    d : int or None
        Positive radicand. It is reduced to its square-free part; perfect
        squares collapse the value to a rational.
    """
    __slots__ = ('_a', '_b', '_d')

    def __init__(self, a: Union[int, Fraction] = 0, b: Union[int, Fraction] = 0, d: Optional[int] = None):
        if isinstance(a, float) or isinstance(b, float):
            raise TypeError('floats are not exact, use int or Fraction')
        a = Fraction(a)
        b = Fraction(b)
        if b:
            if d is None or int(d) != d or d < 0:
                raise DomainError(f'radicand must be a non-negative integer, got {d!r}')
            d = int(d)
            if d == 0:
                b = Fraction(0)
                d = None
            else:
                k, e = _square_free_split(d)
                if e == 1:
                    a, b, d = a + b * k, Fraction(0), None
                else:
                    b, d = b * k, e
        else:
            d = None
        self._a = a
        self._b = b
        self._d = d

    @classmethod
    def _make(cls, a: Fraction, b: Fraction, d: Optional[int]) -> 'ExactNumber':
        # trusted constructor, d is already square-free
        obj = object.__new__(cls)
        if not b:
            b, d = Fraction(0), None
        obj._a = a
        obj._b = b
        obj._d = d
        return obj

    @classmethod
    def sqrt_of(cls, d: int) -> 'ExactNumber':
        return cls(0, 1, d)

    @property
    def a(self) -> Fraction:
        return self._a

    @property
    def b(self) -> Fraction:
        return self._b

    @property
    def d(self) -> Optional[int]:
        return self._d

    @property
    def is_rational(self) -> bool:
        return self._d is None

    def __repr__(self):
        return f"ExactNumber('{self}')"

    def __str__(self):
        if self._d is None:
            return str(self._a)
        magnitude = abs(self._b)
        radical = f'sqrt({self._d})' if magnitude == 1 else f'{magnitude}*sqrt({self._d})'
        if self._a == 0:
            return radical if self._b > 0 else '-' + radical
        return f'{self._a}{"+" if self._b > 0 else "-"}{radical}'

    def __float__(self):
        # display and ordering heuristics only
        if self._d is None:
            return float(self._a)
        return float(self._a) + float(self._b) * math.sqrt(self._d)

    def __bool__(self):
        return bool(self._a) or bool(self._b)

    def __hash__(self):
        if self._d is None:
            return hash(self._a)
        return hash((self._a, self._b, self._d))

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._a == other._a and self._b == other._b and self._d == other._d

    def _field(self, other: 'ExactNumber') -> Optional[int]:
        if self._d is None:
            return other._d
        if other._d is None or other._d == self._d:
            return self._d
        raise FieldMismatchError(f'{self} and {other} lie in different fields '
                                 f'Q(sqrt({self._d})) and Q(sqrt({other._d}))')

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        d = self._field(other)
        return ExactNumber._make(self._a + other._a, self._b + other._b, d)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        d = self._field(other)
        return ExactNumber._make(self._a - other._a, self._b - other._b, d)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        d = self._field(other)
        if d is None:
            return ExactNumber._make(self._a * other._a, Fraction(0), None)
        return ExactNumber._make(self._a * other._a + self._b * other._b * d,
                                 self._a * other._b + self._b * other._a,
                                 d)

    __rmul__ = __mul__

    def inverse(self) -> 'ExactNumber':
        if not self:
            raise ZeroDivisionError('division by zero in exact arithmetic')
        n = self.norm()
        return ExactNumber._make(self._a / n, -self._b / n, self._d)

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __neg__(self):
        return ExactNumber._make(-self._a, -self._b, self._d)

    def __pos__(self):
        return self

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __pow__(self, exponent):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = ExactNumber._make(Fraction(1), Fraction(0), None)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def sign(self) -> Literal[-1, 0, 1]:
        a_sign = (self._a > 0) - (self._a < 0)
        b_sign = (self._b > 0) - (self._b < 0)
        if b_sign == 0:
            return a_sign
        if a_sign == 0 or a_sign == b_sign:
            return b_sign
        # opposite signs, the larger square wins; equality needs d to be a square
        if self._a * self._a > self._b * self._b * self._d:
            return a_sign
        return b_sign

    def _compare(self, other) -> int:
        other = _coerce(other)
        if other is NotImplemented:
            raise TypeError(f'cannot compare ExactNumber with {type(other)}')
        return (self - other).sign()

    def __lt__(self, other):
        return self._compare(other) < 0

    def __le__(self, other):
        return self._compare(other) <= 0

    def __gt__(self, other):
        return self._compare(other) > 0

    def __ge__(self, other):
        return self._compare(other) >= 0

    def conjugate(self) -> 'ExactNumber':
        return ExactNumber._make(self._a, -self._b, self._d)

    def norm(self) -> Fraction:
        if self._d is None:
            return self._a * self._a
        return self._a * self._a - self._b * self._b * self._d

    def minimal_polynomial(self) -> Tuple[Fraction, ...]:
        """Monic minimal polynomial over Q, coefficients in ascending order."""
        if self._d is None:
            return -self._a, Fraction(1)
        return self.norm(), -2 * self._a, Fraction(1)


def _coerce(x) -> ExactNumber:
    if isinstance(x, ExactNumber):
        return x
    if isinstance(x, (int, Fraction)):
        return ExactNumber._make(Fraction(x), Fraction(0), None)
    return NotImplemented


def as_scalar(x: Union[int, Fraction, ExactNumber]) -> ExactNumber:
    """Coerce ints and fractions to ExactNumber. Strings are handled by ``_parser.as_exact``."""
    result = _coerce(x)
    if result is NotImplemented:
        raise TypeError(f'{x!r} of type {type(x)} is not an exact scalar')
    return result


ZERO = ExactNumber(0)
ONE = ExactNumber(1)

_BINARY_OPS = {'add': operator.add,
               'sub': operator.sub,
               'mul': operator.mul,
               'div': operator.truediv}


def qx_arith(op: Literal['add', 'sub', 'mul', 'div', 'neg', 'pow'],
             lhs: Union[int, Fraction, ExactNumber],
             rhs: Union[int, Fraction, ExactNumber, None] = None) -> ExactNumber:
    """
    Apply `op` to exact operands.

    'neg' ignores `rhs`; 'pow' expects an integer `rhs`.

    Raises
    ------
    FieldMismatchError
        Operands from different quadratic fields.
    ZeroDivisionError
        Division by zero.
    """
    lhs = as_scalar(lhs)
    if op == 'neg':
        return -lhs
    if op == 'pow':
        if not isinstance(rhs, int):
            raise TypeError(f'exponent must be an integer, got {rhs!r}')
        return lhs ** rhs
    try:
        func = _BINARY_OPS[op]
    except KeyError:
        raise ValueError(f'unknown operation {op!r}')
    return func(lhs, as_scalar(rhs))


def qx_sign(x: Union[int, Fraction, ExactNumber]) -> Literal[-1, 0, 1]:
    return as_scalar(x).sign()


def qx_sqrt_in_field(x: Union[int, Fraction, ExactNumber]) -> Optional[ExactNumber]:
    """
    Non-negative square root of `x` if it is an element of Q or of a real quadratic field.

    Every non-negative rational has such a root (r = k**2 * e / m**2 gives
    k*sqrt(e)/m). For irrational ``x`` in Q(sqrt(d)) only roots inside the same
    field are possible; `None` is returned otherwise.

    Raises
    ------
    DomainError
        For negative `x`.
    """
    x = as_scalar(x)
    if x.sign() < 0:
        raise DomainError(f'square root of negative number {x}')
    if x.is_rational:
        r = x.a
        if r == 0:
            return ZERO
        k, e = _square_free_split(r.numerator * r.denominator)
        return ExactNumber(0, Fraction(k, r.denominator), e)

    # (u + v*sqrt(d))**2 == a + b*sqrt(d) forces the norm of x to be a square
    n = _rational_sqrt(x.norm())
    if n is None:
        return None
    for u_squared in ((x.a + n) / 2, (x.a - n) / 2):
        u = _rational_sqrt(u_squared)
        if not u:
            continue
        s = ExactNumber(u, x.b / (2 * u), x.d)
        if s * s == x:
            return s if s.sign() >= 0 else -s
    return None


class Interval(NamedTuple):
    """Closed interval with exact rational endpoints."""
    lo: Fraction
    hi: Fraction

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    @property
    def excludes_zero(self) -> bool:
        return self.lo > 0 or self.hi < 0


def qx_approx(x: Union[int, Fraction, ExactNumber], precision_bits: int) -> Interval:
    """
    Enclose `x` in an interval with dyadic endpoints.

    The width is at most ``2**(1 - precision_bits) * max(1, |x|)``.

    Raises
    ------
    DomainError
        For `precision_bits` below 32.
    """
    if precision_bits < 32:
        raise DomainError(f'precision_bits must be at least 32, got {precision_bits}')
    x = as_scalar(x)
    if not x:
        return Interval(Fraction(0), Fraction(0))

    bound = Fraction(2, 1 << precision_bits)
    k = precision_bits + 2
    while True:
        scale = 1 << k
        if x.is_rational:
            lo = hi = x.a
        else:
            m = math.isqrt(x.d * scale * scale)
            root_lo, root_hi = Fraction(m, scale), Fraction(m + 1, scale)
            if x.b > 0:
                lo, hi = x.a + x.b * root_lo, x.a + x.b * root_hi
            else:
                lo, hi = x.a + x.b * root_hi, x.a + x.b * root_lo
        lo = Fraction(math.floor(lo * scale), scale)
        hi = Fraction(math.ceil(hi * scale), scale)
        interval = Interval(lo, hi)
        magnitude = min(abs(lo), abs(hi)) if interval.excludes_zero else Fraction(0)
        if interval.width <= bound * max(Fraction(1), magnitude):
            return interval
        logger.debug('refining enclosure of %s beyond %d bits', x, k)
        k += 32
