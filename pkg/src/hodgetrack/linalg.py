"""Dense linear algebra kernel shared by every homology pipeline.

All matrices are real and dense (numpy float64).  Rank decisions go
through a single SVD-based cutoff so that every Betti number computed
anywhere in the package agrees on what "numerically zero" means.  The
unpivoted triangular elimination and the forward-substitution inverse
are deliberately plain implementations: the harmonic tracking code
relies on their exact sequencing of row operations, so they must not
be swapped for a pivoted factorization behind the scenes.
"""

from dataclasses import dataclass

import numpy as np

__all__ = [
    "Tolerance",
    "DEFAULT_TOL",
    "ZeroPivotError",
    "as_matrix",
    "rank",
    "left_null_space",
    "pseudo_inverse",
    "symmetric_eigenvalues",
    "triangular_eliminate",
    "lower_triangular_inverse",
    "pivoted_row_echelon",
]


@dataclass(frozen=True)
class Tolerance:
    """Numerical thresholds used across the package.

    rank_tol_factor scales the usual SVD cutoff: singular values below
    ``rank_tol_factor * max(m, n) * sigma_max`` are treated as zero.
    zero_eig_tol is an absolute threshold below which an eigenvalue of
    a (positive semi-definite) Laplacian is reported as exactly zero.
    """

    rank_tol_factor: float = 1e-12
    zero_eig_tol: float = 1e-8

    def __post_init__(self):
        if not (self.rank_tol_factor > 0):
            raise ValueError("rank_tol_factor must be positive")
        if not (self.zero_eig_tol > 0):
            raise ValueError("zero_eig_tol must be positive")


DEFAULT_TOL = Tolerance()


class ZeroPivotError(ArithmeticError):
    """Unpivoted elimination hit a zero pivot that required a row swap."""


def as_matrix(m, name="matrix"):
    """Coerce input to a 2-d float array.

    Lists of rows, 1-d sequences (treated as a single row) and existing
    arrays are accepted.  An empty sequence becomes the 0 x 0 matrix.
    Non-finite entries are rejected.
    """
    a = np.asarray(m, dtype=float)
    if a.size == 0 and a.ndim <= 1:
        a = a.reshape(0, 0)
    elif a.ndim == 1:
        a = a.reshape(1, -1)
    if a.ndim != 2:
        raise ValueError("%s must be 2-dimensional, got shape %s" % (name, a.shape))
    if a.size and not np.isfinite(a).all():
        raise ValueError("%s contains non-finite entries" % name)
    return a


def _svd_cutoff(s, shape, tol):
    if len(s) == 0 or s[0] == 0.0:
        return 0.0
    return tol.rank_tol_factor * max(shape) * s[0]


def rank(m, tol=DEFAULT_TOL):
    """Numerical rank via singular values.

    Empty matrices (zero rows or zero columns) have rank 0.
    """
    a = as_matrix(m)
    if a.shape[0] == 0 or a.shape[1] == 0:
        return 0
    s = np.linalg.svd(a, compute_uv=False)
    cutoff = _svd_cutoff(s, a.shape, tol)
    return int(np.count_nonzero(s > cutoff))


def left_null_space(m, tol=DEFAULT_TOL):
    """Orthonormal basis, as rows, of ``{c : c @ m == 0}``.

    Returns a ``(k - rank) x k`` matrix for an input with k rows.  The
    two degenerate shapes follow the conventions used throughout the
    chain-complex code: a matrix with no rows has an empty (0 x 0) left
    null space, while a matrix with rows but no columns has the full
    identity, since every row vector annihilates it.
    """
    a = as_matrix(m)
    k = a.shape[0]
    if k == 0:
        return np.zeros((0, 0))
    if a.shape[1] == 0:
        return np.eye(k)
    u, s, _ = np.linalg.svd(a, full_matrices=True)
    cutoff = _svd_cutoff(s, a.shape, tol)
    r = int(np.count_nonzero(s > cutoff))
    return u[:, r:].T.copy()


def pseudo_inverse(m):
    """Moore-Penrose pseudo-inverse; transposed-empty for empty input."""
    a = as_matrix(m)
    if a.shape[0] == 0 or a.shape[1] == 0:
        return np.zeros((a.shape[1], a.shape[0]))
    return np.linalg.pinv(a)


def symmetric_eigenvalues(m, tol=DEFAULT_TOL):
    """Ascending eigenvalues of a symmetric matrix, small ones snapped to 0.

    Values with absolute size at most ``tol.zero_eig_tol`` are reported
    as exactly 0.0 so that kernel dimensions can be read off by counting.
    Raises ValueError when the input is not square or not symmetric
    (within the same absolute tolerance).
    """
    a = as_matrix(m)
    if a.shape[0] != a.shape[1]:
        raise ValueError("expected a square matrix, got shape %s" % (a.shape,))
    if a.shape[0] == 0:
        return np.zeros(0)
    if np.abs(a - a.T).max() > tol.zero_eig_tol:
        raise ValueError("matrix is not symmetric")
    w = np.linalg.eigvalsh((a + a.T) / 2.0)
    w[np.abs(w) <= tol.zero_eig_tol] = 0.0
    return w


def triangular_eliminate(m):
    """Unpivoted LU: return (L, U) with ``m == L @ U`` exactly by construction.

    L is square unit lower triangular and records the elimination
    factors; U is the eliminated copy of m.  A zero pivot that still has
    nonzero entries below it cannot be eliminated without a row swap, so
    ZeroPivotError is raised and the caller decides how to recover
    (typically by re-running with partial pivoting).
    """
    u = as_matrix(m).copy()
    n_rows, n_cols = u.shape
    lower = np.eye(n_rows)
    for j in range(min(n_rows, n_cols)):
        pivot = u[j, j]
        below = u[j + 1 :, j]
        if not below.size or not np.any(below):
            continue
        if pivot == 0.0:
            raise ZeroPivotError("zero pivot in column %d" % j)
        factors = below / pivot
        lower[j + 1 :, j] = factors
        u[j + 1 :, :] -= np.outer(factors, u[j, :])
        u[j + 1 :, j] = 0.0
    return lower, u


def lower_triangular_inverse(m):
    """Invert a lower triangular matrix by forward substitution.

    Only the lower triangle is read.  A zero on the diagonal means the
    matrix is singular.
    """
    a = as_matrix(m)
    n = a.shape[0]
    if a.shape[1] != n:
        raise ValueError("expected a square matrix, got shape %s" % (a.shape,))
    if np.any(a.diagonal() == 0.0):
        raise ValueError("The matrix is singular")
    inv = np.eye(n)
    for i in range(n):
        if i:
            inv[i, :] -= a[i, :i] @ inv[:i, :]
        inv[i, :] /= a[i, i]
    return inv


def pivoted_row_echelon(m):
    """Row echelon form by Gaussian elimination with partial pivoting.

    Row swaps and row subtractions only, so the row space is preserved.
    """
    u = as_matrix(m).copy()
    n_rows, n_cols = u.shape
    row = 0
    for col in range(n_cols):
        if row >= n_rows:
            break
        p = row + int(np.argmax(np.abs(u[row:, col])))
        if u[p, col] == 0.0:
            continue
        if p != row:
            u[[row, p], :] = u[[p, row], :]
        factors = u[row + 1 :, col] / u[row, col]
        u[row + 1 :, :] -= np.outer(factors, u[row, :])
        u[row + 1 :, col] = 0.0
        row += 1
    return u
