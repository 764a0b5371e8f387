"""
Binomial-moment matrices and the search for divisible formal weight enumerators.

For degree 2n (even parity) the anti-invariance ``W^sigma_q = -W`` of
``W = sum A_i x^(2n-2i) y^(2i)`` is equivalent to ``A(n, q) @ (A_0..A_n) = 0``;
for degree 2n+1 (odd parity) the same holds for ``B(n, t)`` with ``t = sqrt(q)``.
A nonzero solution therefore needs a root of the determinant, and the kernel at
such a root gives the enumerators.
"""
import functools
import logging
import math
from fractions import Fraction
from typing import List, NamedTuple, Optional, Sequence, Tuple, Union

import sympy
from sympy.polys.matrices import DomainMatrix
from typing_extensions import Literal

from divisible_fwe._errors import DomainError, FieldMismatchError, InconsistentInputError, VerificationError
from divisible_fwe.algebra.exactnum import ExactNumber, ZERO, as_scalar, qx_sqrt_in_field
from divisible_fwe.algebra.linalg import nullspace
from divisible_fwe.algebra.poly import HomogPoly, UniPoly, check_q, check_sqrt, fwe_classify, half_power

logger = logging.getLogger('divisible_fwe.moments')

Parity = Literal['even', 'odd']


def _binom(n: int, k: int) -> int:
    # out-of-range binomials vanish
    if k < 0 or k > n or n < 0:
        return 0
    return math.comb(n, k)


def _check_parity(parity: str):
    if parity not in ('even', 'odd'):
        raise ValueError(f"parity must be 'even' or 'odd', got {parity!r}")


class MomentMatrix:
    """
    A(n, q) (even parity, entries in Z[q]) or B(n, q) (odd parity, entries in Z[t]).

    Row nu, column i of the matrix is the coefficient of A_i in the nu-th
    moment identity.
    """

    def __init__(self, n: int, parity: Parity, entries: Sequence[Sequence[UniPoly]]):
        self._n = n
        self._parity = parity
        self._entries = tuple(tuple(row) for row in entries)

    def __repr__(self):
        name = 'A' if self._parity == 'even' else 'B'
        return f'{name}({self._n}, {self.var}) = {[[str(e) for e in row] for row in self._entries]}'

    @property
    def n(self) -> int:
        return self._n

    @property
    def parity(self) -> Parity:
        return self._parity

    @property
    def var(self) -> str:
        return 'q' if self._parity == 'even' else 't'

    @property
    def entries(self) -> Tuple[Tuple[UniPoly, ...], ...]:
        return self._entries

    def __getitem__(self, index: Tuple[int, int]) -> UniPoly:
        nu, i = index
        return self._entries[nu][i]

    def specialize(self, value) -> List[List[ExactNumber]]:
        """Entries evaluated at q (even parity) or t (odd parity)."""
        value = as_scalar(value)
        return [[entry(value) for entry in row] for row in self._entries]


def moment_matrix(n: int, parity: Parity) -> MomentMatrix:
    """
    Build A(n, q) or B(n, q).

    Even parity: ``C(2n-2i, nu) + q^(n-nu) C(2n-2i, 2n-nu)``.
    Odd parity: ``C(2n+1-2i, nu) + t^(2(n-nu)+1) C(2n+1-2i, 2n+1-nu)``.
    """
    if n < 1:
        raise DomainError(f'n must be positive, got {n}')
    _check_parity(parity)
    var = 'q' if parity == 'even' else 't'
    rows = []
    for nu in range(n + 1):
        row = []
        for i in range(n + 1):
            if parity == 'even':
                m = 2 * n - 2 * i
                low, high, e = _binom(m, nu), _binom(m, 2 * n - nu), n - nu
            else:
                m = 2 * n + 1 - 2 * i
                low, high, e = _binom(m, nu), _binom(m, 2 * n + 1 - nu), 2 * (n - nu) + 1
            row.append(UniPoly([low], var) + UniPoly.monomial(e, high, var))
        rows.append(row)
    return MomentMatrix(n, parity, rows)


def poly_det(M: Union[MomentMatrix, Sequence[Sequence[UniPoly]]]) -> UniPoly:
    """
    Exact determinant of a square matrix of rational univariate polynomials.

    The matrix is handed to sympy's DomainMatrix over Z[q] (or Q[q]), whose
    determinant over a polynomial ring is computed by fraction-free elimination.
    """
    if isinstance(M, MomentMatrix):
        entries, var = M.entries, M.var
    else:
        entries = [list(row) for row in M]
        var = entries[0][0].var if entries else 'q'
    size = len(entries)
    if size == 0:
        return UniPoly([1], var)
    if any(len(row) != size for row in entries):
        raise DomainError('determinant of a non-square matrix')
    symbol = sympy.Symbol(var)
    rows = [[entry.to_sympy(symbol).as_expr() for entry in row] for row in entries]
    dm = DomainMatrix.from_list_sympy(size, size, rows)
    logger.debug('determinant of a %dx%d matrix over %s', size, size, dm.domain)
    det = dm.domain.to_sympy(dm.det())
    return UniPoly.from_sympy(sympy.Poly(det, symbol), var)


@functools.lru_cache(maxsize=None)
def moment_determinant(n: int, parity: Parity) -> UniPoly:
    """Memoized |A(n, q)| or |B(n, q)|."""
    D = poly_det(moment_matrix(n, parity))
    logger.info('|%s(%d)| has degree %d', 'A' if parity == 'even' else 'B', n, D.degree)
    return D


def factor_determinant(D: UniPoly) -> Tuple[Fraction, List[Tuple[UniPoly, int]]]:
    """
    Factor a rational polynomial into its content and primitive integer irreducibles.

    Returns
    -------
    (content, [(factor, multiplicity), ...])
    """
    if D.is_zero:
        raise DomainError('cannot factor the zero polynomial')
    symbol = sympy.Symbol(D.var)
    denominator, integral = D.to_sympy(symbol).clear_denoms(convert=True)
    content, factors = integral.factor_list()
    content = sympy.Rational(content) / sympy.Rational(denominator)
    return (Fraction(int(content.p), int(content.q)),
            [(UniPoly.from_sympy(f, D.var), int(k)) for f, k in factors])


class CandidateQ(NamedTuple):
    q: ExactNumber
    t: Optional[ExactNumber]
    minimal_polynomial: UniPoly
    multiplicity: int = 1

    @classmethod
    def from_value(cls, q, t=None, multiplicity: int = 1) -> 'CandidateQ':
        """
        Candidate for a given q; t defaults to sqrt(q) when it lies in a quadratic field.

        Raises
        ------
        DomainError
            Unless q > 0 and q != 1.
        FieldMismatchError
            If a given `t` is not the positive square root of q.
        """
        q = check_q(q)
        if t is None:
            t = qx_sqrt_in_field(q)
        else:
            t = check_sqrt(q, t)
        return cls(q=q, t=t, minimal_polynomial=UniPoly(q.minimal_polynomial(), 'q'), multiplicity=multiplicity)

    @property
    def degree(self) -> int:
        return self.minimal_polynomial.degree


def _real_roots(factor: UniPoly) -> List[ExactNumber]:
    """Real roots of an irreducible polynomial of degree 1 or 2."""
    if factor.degree == 1:
        return [-factor[0] / factor[1]]
    c0, c1, c2 = factor[0], factor[1], factor[2]
    disc = c1 * c1 - 4 * c2 * c0
    if disc.sign() < 0:
        return []
    root = qx_sqrt_in_field(disc)
    return [(-c1 + root) / (2 * c2), (-c1 - root) / (2 * c2)]


def candidate_q(D: UniPoly, parity: Parity) -> Tuple[List[CandidateQ], List[UniPoly]]:
    """
    Admissible q values among the roots of a moment determinant.

    `D` is factored exactly over Q. Roots of linear and quadratic factors are
    written down in closed form; for odd parity they are values of t and only
    t > 0 is kept, giving q = t^2. Factors of degree three or more are returned
    unresolved. Every candidate is checked by exact evaluation of `D`.
    """
    _check_parity(parity)
    content, factors = factor_determinant(D)
    candidates = []
    unresolved = []
    for factor, multiplicity in factors:
        if factor.degree >= 3:
            unresolved.append(factor)
            continue
        for root in _real_roots(factor):
            if root.sign() <= 0 or root == 1:
                continue
            if parity == 'even':
                candidate = CandidateQ.from_value(root, multiplicity=multiplicity)
            else:
                candidate = CandidateQ.from_value(root * root, root, multiplicity)
            if D(root):
                raise VerificationError(f'{root} is not a root of {D}')
            candidates.append(candidate)
    candidates.sort(key=lambda c: float(c.q))
    if unresolved:
        logger.warning('%d factor(s) of degree >= 3 left unresolved: %s',
                       len(unresolved), ', '.join(str(f) for f in unresolved))
    return candidates, unresolved


def _assemble(vector: Sequence[ExactNumber], parity: Parity) -> HomogPoly:
    n = len(vector) - 1
    degree = 2 * n if parity == 'even' else 2 * n + 1
    coeffs = [ZERO] * (degree + 1)
    for i, a in enumerate(vector):
        coeffs[2 * i] = a
    return HomogPoly(coeffs)


def construct_enumerator(n: int, parity: Parity, q: CandidateQ) -> List[HomogPoly]:
    """
    Enumerators of degree 2n (even) or 2n+1 (odd) spanning the kernel at `q`.

    When some kernel vector has A_0 != 0, every returned vector is normalized to
    A_0 = 1 (the first one, then the others shifted by it); otherwise the kernel
    basis is returned as is.

    Raises
    ------
    InconsistentInputError
        If the specialized matrix is regular.
    FieldMismatchError
        For odd parity when sqrt(q) is not available.
    VerificationError
        If a result is not anti-invariant.
    """
    M = moment_matrix(n, parity)
    if parity == 'odd':
        if q.t is None:
            raise FieldMismatchError(f'odd degree needs sqrt(q) for q={q.q}')
        value = q.t
    else:
        value = q.q
    basis = nullspace(M.specialize(value), n + 1)
    if not basis:
        raise InconsistentInputError(f'the moment matrix of size {n + 1} is regular at q={q.q}')

    anchor_index = next((k for k, v in enumerate(basis) if v[0]), None)
    if anchor_index is None:
        logger.warning('every kernel vector at q=%s has A_0 = 0', q.q)
        vectors = basis
    else:
        anchor = [c / basis[anchor_index][0] for c in basis[anchor_index]]
        vectors = [anchor]
        for k, v in enumerate(basis):
            if k != anchor_index:
                shift = 1 - v[0]
                vectors.append([c + shift * a for c, a in zip(v, anchor)])

    enumerators = []
    for vector in vectors:
        W = _assemble(vector, parity)
        kind = fwe_classify(W, q.q, q.t if parity == 'odd' else None)
        if kind != 'anti-invariant':
            raise VerificationError(f'{W} is {kind} under sigma_{q.q}')
        enumerators.append(W)
    logger.info('constructed %d enumerator(s) of degree %d for q=%s',
                len(enumerators), enumerators[0].n, q.q)
    return enumerators


def binomial_moment_rows(n: int, q, sqrt_q=None) -> List[List[ExactNumber]]:
    """
    The moment identities of an anti-invariant form of degree n as linear forms in A_0..A_n.

    Row nu is ``sum_i [C(n-i, nu) + q^(n/2-nu) C(n-i, n-nu)] A_i``, which must vanish.
    """
    q = check_q(q)
    if n % 2:
        sqrt_q = check_sqrt(q, sqrt_q)
    rows = []
    for nu in range(n + 1):
        scale = half_power(q, sqrt_q, n - 2 * nu)
        rows.append([_binom(n - i, nu) + scale * _binom(n - i, n - nu) for i in range(n + 1)])
    return rows


def moment_identity_check(W: HomogPoly, q, sqrt_q=None) -> bool:
    for row in binomial_moment_rows(W.n, q, sqrt_q):
        total = ZERO
        for coeff, a in zip(row, W.coeffs):
            total = total + coeff * a
        if total:
            return False
    return True


class EnumeratorReport(NamedTuple):
    candidate: CandidateQ
    new: bool
    enumerators: List[HomogPoly]


class SearchReport(NamedTuple):
    degree: int
    n: int
    parity: Parity
    determinant: UniPoly
    content: Fraction
    factors: List[Tuple[UniPoly, int]]
    unresolved: List[UniPoly]
    found: List[EnumeratorReport]

    @property
    def candidates(self) -> List[CandidateQ]:
        return [r.candidate for r in self.found]


def degree_to_n(degree: int) -> Tuple[int, Parity]:
    """Matrix size index and parity for a total degree; degrees below 2 carry no enumerator."""
    if degree < 2:
        raise DomainError(f'degree must be at least 2, got {degree}')
    if degree % 2:
        return (degree - 1) // 2, 'odd'
    return degree // 2, 'even'


def search_degree(degree: int, parity: Optional[Parity] = None) -> SearchReport:
    """
    Run the whole search for one total degree: matrix, determinant, candidates, enumerators.

    A candidate is new when it is not already a root of the determinant one size
    smaller; old candidates come from multiplying lower degree enumerators by
    powers of x^2 + (q-1) y^2.
    """
    n, derived = degree_to_n(degree)
    if parity is not None and parity != derived:
        raise ValueError(f'degree {degree} has {derived} parity, not {parity}')
    D = moment_determinant(n, derived)
    content, factors = factor_determinant(D)
    candidates, unresolved = candidate_q(D, derived)
    previous = moment_determinant(n - 1, derived) if n >= 2 else None

    found = []
    for candidate in candidates:
        value = candidate.q if derived == 'even' else candidate.t
        new = previous is None or bool(previous(value))
        found.append(EnumeratorReport(candidate=candidate,
                                      new=new,
                                      enumerators=construct_enumerator(n, derived, candidate)))
    logger.info('degree %d: %d candidate(s), %d new', degree, len(found), sum(r.new for r in found))
    return SearchReport(degree=degree, n=n, parity=derived, determinant=D, content=content,
                        factors=factors, unresolved=unresolved, found=found)
