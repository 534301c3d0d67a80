"""Simplicial complexes: construction, boundary operators, homology, spectra.

Chains are row vectors throughout, so the boundary operator in degree p
acts by right multiplication with a matrix B_p of shape
``n_p x n_{p-1}`` whose rows are indexed by the p-simplices.  Simplices
are stored as tuples of vertex ids in increasing order and bases are
always sorted by (dimension, lexicographic), which keeps every matrix in
the package reproducible entry for entry.
"""

import itertools
from dataclasses import dataclass, field

import numpy as np

from .linalg import DEFAULT_TOL, as_matrix, rank, symmetric_eigenvalues

__all__ = [
    "PointCloud",
    "SimplicialComplex",
    "BoundaryBlocks",
    "SpectralReport",
    "simplex_key",
    "canonicalize",
    "rips_complex",
    "omission_boundary",
    "boundary_matrices",
    "betti_numbers",
    "dirac_matrix",
    "laplacian_matrix",
    "spectral_report",
]


def simplex_key(s):
    """Sort key ordering simplices by dimension, then lexicographically."""
    return (len(s), s)


def _clean_simplex(s):
    try:
        out = tuple(sorted(int(v) for v in s))
    except (TypeError, ValueError):
        raise ValueError("simplex %r has non-integer vertices" % (s,))
    if not out:
        raise ValueError("empty simplex is not allowed")
    if len(set(out)) != len(out):
        raise ValueError("simplex %r has a repeated vertex" % (s,))
    return out


@dataclass
class PointCloud:
    """Finite set of points in Euclidean space, rows of ``points``.

    Duplicate points are legal; they are distance-0 apart and collapse
    only combinatorially (a Rips complex treats them as distinct
    vertices joined by an edge at any positive threshold).
    """

    points: np.ndarray
    labels: list = None

    def __post_init__(self):
        a = np.asarray(self.points, dtype=float)
        if a.ndim == 1:
            a = a.reshape(-1, 1)
        if a.ndim != 2:
            raise ValueError("points must form a 2-d array, got shape %s" % (a.shape,))
        if a.size and not np.isfinite(a).all():
            raise ValueError("point cloud contains non-finite coordinates")
        self.points = a
        if self.labels is not None and len(self.labels) != a.shape[0]:
            raise ValueError(
                "got %d labels for %d points" % (len(self.labels), a.shape[0])
            )

    def __len__(self):
        return self.points.shape[0]

    @property
    def dimension(self):
        return self.points.shape[1]

    def distance_matrix(self):
        """Pairwise Euclidean distances, sqrt of the sum of squared differences."""
        diff = self.points[:, None, :] - self.points[None, :, :]
        return np.sqrt((diff * diff).sum(axis=-1))


class SimplicialComplex:
    """A finite abstract simplicial complex over integer vertex ids.

    Instances are produced by :func:`canonicalize` or :func:`rips_complex`
    and hold the full face-closed simplex list in canonical order.
    """

    def __init__(self, simplices):
        self.simplices = list(simplices)
        self._by_dim = {}
        for s in self.simplices:
            self._by_dim.setdefault(len(s) - 1, []).append(s)
        self.vertices = [s[0] for s in self._by_dim.get(0, [])]

    @property
    def top_dim(self):
        """Highest dimension present; -1 for the empty complex."""
        return max(self._by_dim) if self._by_dim else -1

    def simplices_of_dim(self, p):
        return list(self._by_dim.get(p, []))

    def counts(self):
        """Number of simplices in each dimension 0..top_dim."""
        return [len(self._by_dim.get(p, [])) for p in range(self.top_dim + 1)]

    def euler_characteristic(self):
        return sum((-1) ** p * n for p, n in enumerate(self.counts()))

    def __len__(self):
        return len(self.simplices)

    def __iter__(self):
        return iter(self.simplices)

    def __contains__(self, s):
        return tuple(s) in set(self.simplices)

    def __eq__(self, other):
        if not isinstance(other, SimplicialComplex):
            return NotImplemented
        return self.simplices == other.simplices

    def __repr__(self):
        return "SimplicialComplex(%d simplices, top dim %d)" % (
            len(self.simplices),
            self.top_dim,
        )


def canonicalize(simplices):
    """Build a complex from an arbitrary generating set of simplices.

    Vertices inside each simplex are sorted, duplicates are removed, all
    faces are added, and the result is ordered by (dimension, lex).  A
    simplex with a repeated vertex is an input error.
    """
    cleaned = {_clean_simplex(s) for s in simplices}
    closed = set()
    for s in cleaned:
        for k in range(1, len(s) + 1):
            closed.update(itertools.combinations(s, k))
    return SimplicialComplex(sorted(closed, key=simplex_key))


def rips_complex(cloud, threshold, max_dim=2, closed_threshold=False):
    """Vietoris-Rips complex of a point cloud at the given scale.

    An edge is present when the pairwise distance is strictly below the
    threshold (or ``<=`` with closed_threshold).  Higher simplices are
    the cliques of that graph up to max_dim.  All vertices are always
    included, so a non-positive threshold yields the discrete complex
    under the strict convention.
    """
    if not isinstance(cloud, PointCloud):
        cloud = PointCloud(np.asarray(cloud, dtype=float))
    if max_dim < 0:
        raise ValueError("max_dim must be non-negative")
    n = len(cloud)
    dm = cloud.distance_matrix()
    adj = dm <= threshold if closed_threshold else dm < threshold
    np.fill_diagonal(adj, False)

    simplices = [(i,) for i in range(n)]
    frontier = [(i, j) for i in range(n) for j in range(i + 1, n) if adj[i, j]]
    dim = 1
    while frontier and dim <= max_dim:
        simplices.extend(frontier)
        nxt = []
        for s in frontier:
            last = s[-1]
            for v in range(last + 1, n):
                if all(adj[u, v] for u in s):
                    nxt.append(s + (v,))
        frontier = nxt
        dim += 1
    return SimplicialComplex(sorted(simplices, key=simplex_key))


def omission_boundary(row_basis, col_basis):
    """Boundary matrix for the alternating-sum-of-omissions differential.

    Entry (i, j) is ``(-1)**k`` when dropping position k from row i's
    cell yields column j's cell, else 0.  Works for any ordered-tuple
    basis (simplices, paths, directed hyperedges) since only tuple
    omission is used.  Shape is ``len(row_basis) x len(col_basis)``.
    """
    col_index = {tuple(c): j for j, c in enumerate(col_basis)}
    b = np.zeros((len(row_basis), len(col_basis)))
    for i, s in enumerate(row_basis):
        s = tuple(s)
        for k in range(len(s)):
            face = s[:k] + s[k + 1 :]
            j = col_index.get(face)
            if j is not None:
                b[i, j] += (-1.0) ** k
    return b


@dataclass
class BoundaryBlocks:
    """Boundary matrices of a chain complex, one block per dimension p >= 1.

    ``blocks[p]`` maps p-chains (rows) into the (p-1)-basis (columns).
    There is no block for p = 0: the boundary of a vertex is zero.
    dim_index holds cumulative basis offsets, dim_index[p] being the
    position where dimension p starts in the concatenated basis.
    """

    blocks: dict
    dim_index: list

    @property
    def top_dim(self):
        return len(self.dim_index) - 2

    def block(self, p):
        """B_p, or an appropriately shaped zero matrix off the ends."""
        if p in self.blocks:
            return self.blocks[p]
        counts = np.diff(self.dim_index)
        n_rows = counts[p] if 0 <= p < len(counts) else 0
        n_cols = counts[p - 1] if 0 <= p - 1 < len(counts) else 0
        return np.zeros((int(n_rows), int(n_cols)))


def _dim_index(counts):
    idx = [0]
    for c in counts:
        idx.append(idx[-1] + int(c))
    return idx


def boundary_matrices(k):
    """All boundary blocks B_p of a simplicial complex, p = 1..top_dim."""
    counts = k.counts()
    blocks = {}
    for p in range(1, k.top_dim + 1):
        blocks[p] = omission_boundary(k.simplices_of_dim(p), k.simplices_of_dim(p - 1))
    return BoundaryBlocks(blocks=blocks, dim_index=_dim_index(counts))


def betti_numbers(k, tol=DEFAULT_TOL):
    """Betti numbers beta_0..beta_top via ranks of the boundary blocks.

    beta_p = n_p - rank B_p - rank B_{p+1}; the empty complex gives [].
    """
    if k.top_dim < 0:
        return []
    bb = boundary_matrices(k)
    counts = k.counts()
    ranks = {p: rank(bb.block(p), tol) for p in range(1, k.top_dim + 2)}
    ranks[0] = 0
    return [counts[p] - ranks[p] - ranks[p + 1] for p in range(k.top_dim + 1)]


def dirac_matrix(k):
    """Symmetric Dirac operator on the full chain basis.

    The basis concatenates all simplices in canonical order; the block
    coupling dimensions p and p-1 is B_p (and its transpose), everything
    else is zero.  Squaring it gives the block diagonal of all Hodge
    Laplacians at once.
    """
    bb = boundary_matrices(k)
    n = bb.dim_index[-1]
    d = np.zeros((n, n))
    for p in range(1, k.top_dim + 1):
        rows = slice(bb.dim_index[p], bb.dim_index[p + 1])
        cols = slice(bb.dim_index[p - 1], bb.dim_index[p])
        d[rows, cols] = bb.blocks[p]
        d[cols, rows] = bb.blocks[p].T
    return d


def laplacian_matrix(k, p, tol=DEFAULT_TOL):
    """Hodge Laplacian in degree p: L_p = B_p B_p^T + B_{p+1}^T B_{p+1}.

    For p = 0 only the coboundary term B_1^T B_1 contributes (this is
    the ordinary graph Laplacian of the 1-skeleton).  Degrees with no
    simplices give the 0 x 0 matrix.
    """
    if p < 0:
        raise ValueError("degree must be non-negative")
    bb = boundary_matrices(k)
    counts = k.counts()
    n_p = counts[p] if p <= k.top_dim else 0
    if n_p == 0:
        return np.zeros((0, 0))
    up = bb.block(p + 1)
    lap = up.T @ up
    if p > 0:
        down = bb.block(p)
        lap = lap + down @ down.T
    return lap


@dataclass
class SpectralReport:
    """Eigenvalue summary of one Laplacian block.

    eigenvalues are ascending with near-zeros snapped to exactly 0.0,
    betti is the count of those zeros, and spectral_gap is the smallest
    strictly positive eigenvalue -- None when there is none (empty block
    or identically zero spectrum).
    """

    dimension: int
    eigenvalues: np.ndarray
    betti: int
    spectral_gap: float = None

    @classmethod
    def from_eigenvalues(cls, p, eigs, tol=DEFAULT_TOL):
        eigs = np.sort(np.asarray(eigs, dtype=float))
        eigs[np.abs(eigs) <= tol.zero_eig_tol] = 0.0
        positive = eigs[eigs > 0.0]
        gap = float(positive[0]) if positive.size else None
        return cls(
            dimension=int(p),
            eigenvalues=eigs,
            betti=int(np.count_nonzero(eigs == 0.0)),
            spectral_gap=gap,
        )


def spectral_report(k, p, tol=DEFAULT_TOL):
    """Spectrum of L_p with the Betti number read off as its nullity."""
    lap = laplacian_matrix(k, p, tol)
    eigs = symmetric_eigenvalues(lap, tol)
    return SpectralReport.from_eigenvalues(p, eigs, tol)
