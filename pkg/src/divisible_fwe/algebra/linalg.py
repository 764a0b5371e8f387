"""Gauss-Jordan elimination over ExactNumber."""
import logging
from typing import List, Sequence, Tuple

from divisible_fwe._errors import InconsistentInputError
from divisible_fwe.algebra.exactnum import ExactNumber, ONE, ZERO, as_scalar

logger = logging.getLogger('divisible_fwe.linalg')

Matrix = List[List[ExactNumber]]


def _copy(rows) -> Matrix:
    return [[as_scalar(c) for c in row] for row in rows]


def rref(rows, ncols: int = None) -> Tuple[Matrix, List[int]]:
    """
    Reduced row echelon form.

    Returns
    -------
    (matrix, pivots)
        `pivots` lists the pivot column of each nonzero row, in order.
    """
    m = _copy(rows)
    if ncols is None:
        ncols = len(m[0]) if m else 0
    pivots = []
    r = 0
    for col in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][col]), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = m[r][col].inverse()
        m[r] = [c * inv for c in m[r]]
        for i in range(len(m)):
            if i != r and m[i][col]:
                factor = m[i][col]
                m[i] = [a - factor * b for a, b in zip(m[i], m[r])]
        pivots.append(col)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows) -> int:
    return len(rref(rows)[1])


def nullspace(rows, ncols: int) -> List[List[ExactNumber]]:
    """Basis of the right kernel; one vector per free column, that column set to 1."""
    if not rows:
        return [[ONE if j == k else ZERO for j in range(ncols)] for k in range(ncols)]
    m, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [ZERO] * ncols
        v[f] = ONE
        for i, p in enumerate(pivots):
            v[p] = -m[i][f]
        basis.append(v)
    logger.debug('kernel of a %dx%d system has dimension %d', len(rows), ncols, len(basis))
    return basis


def solve(rows, rhs: Sequence) -> List[ExactNumber]:
    """
    One solution of ``rows @ x == rhs`` with all free variables set to zero.

    Raises
    ------
    InconsistentInputError
        If the system has no solution.
    """
    ncols = len(rows[0]) if rows else 0
    augmented = [list(row) + [b] for row, b in zip(rows, rhs)]
    m, pivots = rref(augmented, ncols + 1)
    if ncols in pivots:
        raise InconsistentInputError('linear system is inconsistent')
    x = [ZERO] * ncols
    for i, p in enumerate(pivots):
        x[p] = m[i][ncols]
    return x
