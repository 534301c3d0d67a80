"""Filtrations, persistent Laplacians, and tracked harmonic spaces.

A filtration stores, for every threshold, per-dimension simplex bases in
*prefix order*: simplices present at an earlier threshold keep their
positions, new ones are appended in lexicographic order.  Every matrix
in this module is expressed in those bases, which is what makes the
block decompositions below (old rows first, old columns first) valid by
construction rather than by bookkeeping.

Harmonic representatives of holes are rows of an orthonormal kernel
basis.  Crossing from one threshold to the next, a representative dies
when it pairs nontrivially with the boundaries of the new top simplices;
the survivors are recovered by running the boundary-pairing elimination
while carrying the same row operations on the representatives.  Newly
born representatives are the part of the new harmonic space orthogonal
to the carried survivors.
"""

from dataclasses import dataclass, field

import numpy as np

from .complexes import PointCloud, SpectralReport, omission_boundary, rips_complex
from .linalg import (
    DEFAULT_TOL,
    ZeroPivotError,
    left_null_space,
    lower_triangular_inverse,
    rank,
    symmetric_eigenvalues,
    triangular_eliminate,
)

__all__ = [
    "Filtration",
    "BlockBoundary",
    "HarmonicTrack",
    "build_filtration",
    "betti_curve",
    "spectral_gap_curve",
    "split_block_boundary",
    "persistent_laplacian",
    "persistent_betti",
    "harmonic_space",
    "harmonic_transition",
    "harmonic_births",
    "track_harmonics",
]


@dataclass
class Filtration:
    """Nested Rips complexes over an increasing threshold list.

    bases[i][p] lists the p-simplices present at thresholds[i], old
    simplices first (in their previous order), new ones appended in lex
    order.  Prefix property: bases[i][p] is a prefix of bases[j][p]
    whenever i <= j.
    """

    cloud: PointCloud
    thresholds: list
    max_dim: int
    bases: list = field(default_factory=list)

    def index_of(self, t):
        """Position of an exact threshold value; unknown values are an error."""
        for i, s in enumerate(self.thresholds):
            if s == t:
                return i
        raise ValueError("threshold %r is not part of the filtration" % (t,))

    def basis(self, i, p):
        """p-simplices at threshold index i, prefix order; [] off the ends."""
        if p < 0:
            return []
        return list(self.bases[i].get(p, []))

    def counts(self, i):
        return [len(self.bases[i].get(p, [])) for p in range(self.max_dim + 1)]

    def simplices(self, i):
        """All simplices at threshold index i, dimension-major prefix order."""
        out = []
        for p in range(self.max_dim + 1):
            out.extend(self.bases[i].get(p, []))
        return out

    def boundary(self, i, p):
        """Boundary matrix B_p at threshold index i in the prefix bases."""
        return omission_boundary(self.basis(i, p), self.basis(i, p - 1))

    def __len__(self):
        return len(self.thresholds)


def build_filtration(cloud, thresholds, max_dim=2, closed_threshold=False):
    """Rips filtration of a point cloud over strictly increasing thresholds."""
    if not isinstance(cloud, PointCloud):
        cloud = PointCloud(np.asarray(cloud, dtype=float))
    thresholds = [float(t) for t in thresholds]
    if any(t <= 0 for t in thresholds):
        raise ValueError("thresholds must be positive")
    if any(b <= a for a, b in zip(thresholds, thresholds[1:])):
        raise ValueError("thresholds must be strictly increasing")

    bases = []
    prev = {}
    for t in thresholds:
        k = rips_complex(cloud, t, max_dim, closed_threshold)
        cur = {}
        for p in range(max_dim + 1):
            fresh = k.simplices_of_dim(p)
            old = prev.get(p, [])
            old_set = set(old)
            if not old_set <= set(fresh):
                raise ValueError("complexes are not nested; thresholds invalid")
            cur[p] = old + [s for s in fresh if s not in old_set]
        bases.append(cur)
        prev = cur
    return Filtration(cloud=cloud, thresholds=thresholds, max_dim=max_dim, bases=bases)


def betti_curve(f, p, tol=DEFAULT_TOL):
    """(threshold, beta_p) at every threshold of the filtration."""
    if p < 0:
        raise ValueError("degree must be non-negative")
    out = []
    for i, t in enumerate(f.thresholds):
        n_p = len(f.basis(i, p))
        b_down = f.boundary(i, p)
        b_up = f.boundary(i, p + 1)
        out.append((t, n_p - rank(b_down, tol) - rank(b_up, tol)))
    return out


def _laplacian_at(f, i, p):
    b_up = f.boundary(i, p + 1)
    lap = b_up.T @ b_up
    if p > 0:
        b_down = f.boundary(i, p)
        lap = lap + b_down @ b_down.T
    return lap


def spectral_gap_curve(f, p, tol=DEFAULT_TOL):
    """(threshold, smallest positive eigenvalue of L_p) per threshold.

    The gap is None at thresholds where the degree-p block is empty or
    its spectrum is identically zero.
    """
    if p < 0:
        raise ValueError("degree must be non-negative")
    out = []
    for i, t in enumerate(f.thresholds):
        if not f.basis(i, p):
            out.append((t, None))
            continue
        eigs = symmetric_eigenvalues(_laplacian_at(f, i, p), tol)
        out.append((t, SpectralReport.from_eigenvalues(p, eigs, tol).spectral_gap))
    return out


@dataclass
class BlockBoundary:
    """B_{p+1} at the later threshold, split along the earlier one.

    Rows are (p+1)-simplices at b (old first), columns are p-simplices
    at b (old first).  old_old is exactly B_{p+1} at a; the block of old
    rows against new columns is structurally zero because faces of an
    old simplex are old, so only new_old (alpha) and new_new (beta)
    carry new information.
    """

    old_old: np.ndarray
    new_old: np.ndarray
    new_new: np.ndarray


def split_block_boundary(f, a, b, p):
    """Split B_{p+1}^b into prefix blocks relative to threshold a."""
    ia, ib = f.index_of(a), f.index_of(b)
    if ia > ib:
        raise ValueError("need a <= b in the filtration order")
    n_p_a = len(f.basis(ia, p))
    n_up_a = len(f.basis(ia, p + 1))
    full = f.boundary(ib, p + 1)
    top_new = full[:n_up_a, n_p_a:]
    if top_new.size and np.abs(top_new).max() != 0.0:
        raise AssertionError("prefix bases violated: old simplex has a new face")
    return BlockBoundary(
        old_old=full[:n_up_a, :n_p_a],
        new_old=full[n_up_a:, :n_p_a],
        new_new=full[n_up_a:, n_p_a:],
    )


def _persistent_up_boundary(f, a, b, p, tol):
    """Rows spanning the boundaries, at a, of the persistent (p+1)-domain.

    The domain consists of (p+1)-chains at b whose boundary lands in the
    p-chains of a; a new chain qualifies exactly when its new-column
    block vanishes, i.e. its new part lies in the left null space of
    beta.
    """
    blocks = split_block_boundary(f, a, b, p)
    a_frame = left_null_space(blocks.new_new, tol)
    mixed = a_frame @ blocks.new_old
    if mixed.size:
        # Orthonormal frame times an integer block: entries at rounding
        # scale are exact cancellations and would inflate later ranks.
        mixed[np.abs(mixed) <= 64.0 * np.finfo(float).eps * max(mixed.shape)] = 0.0
    return np.vstack([blocks.old_old, mixed])


def persistent_laplacian(f, a, b, p, tol=DEFAULT_TOL):
    """Spectral report of the degree-p persistent Laplacian from a to b.

    Acts on p-chains at a; the count of zero eigenvalues equals the
    persistent Betti number (classes alive at a that still live at b).
    With a == b this is the ordinary Hodge Laplacian at a.
    """
    ia, ib = f.index_of(a), f.index_of(b)
    if ia > ib:
        raise ValueError("need a <= b in the filtration order")
    n_p_a = len(f.basis(ia, p))
    if n_p_a == 0:
        return SpectralReport.from_eigenvalues(p, np.zeros(0), tol)
    d = _persistent_up_boundary(f, a, b, p, tol)
    lap = d.T @ d
    if p > 0:
        b_down = f.boundary(ia, p)
        lap = lap + b_down @ b_down.T
    return SpectralReport.from_eigenvalues(p, symmetric_eigenvalues(lap, tol), tol)


def persistent_betti(f, a, b, p, tol=DEFAULT_TOL):
    """Number of degree-p classes alive at threshold a that survive to b.

    Computed by ranks: cycles at a, minus those already boundaries at a
    or becoming boundaries of chains admissible up to b.  Always equals
    the zero-eigenvalue count of the persistent Laplacian.
    """
    ia, ib = f.index_of(a), f.index_of(b)
    if ia > ib:
        raise ValueError("need a <= b in the filtration order")
    n_p_a = len(f.basis(ia, p))
    if n_p_a == 0:
        return 0
    d = _persistent_up_boundary(f, a, b, p, tol)
    b_down = f.boundary(ia, p)
    return n_p_a - rank(np.hstack([b_down, d.T]), tol)


def harmonic_space(f, a, p, tol=DEFAULT_TOL):
    """Orthonormal rows spanning the harmonic p-chains at threshold a.

    Harmonic chains are simultaneously cycles (killed by B_p) and
    co-cycles (orthogonal to the boundaries of (p+1)-chains); their
    count is beta_p.
    """
    i = f.index_of(a)
    n_p = len(f.basis(i, p))
    if n_p == 0:
        return np.zeros((0, 0))
    b_down = f.boundary(i, p)
    b_up = f.boundary(i, p + 1)
    return left_null_space(np.hstack([b_down, b_up.T]), tol)


def _eliminate_with_carry(u, w, pivot=False):
    """Eliminate the rows of u, applying identical row operations to w.

    The unpivoted path mirrors plain triangular elimination (factors
    recorded in L, carried rows obtained through the inverse of L); a
    zero pivot over a nonzero column aborts it, and the caller retries
    with ``pivot=True`` which uses partial pivoting on an augmented
    matrix.  Either way the row span of (u | w) is preserved, so rows of
    the carried w sitting at zero rows of the eliminated u span exactly
    the combinations of w-rows annihilating u.
    """
    u = np.asarray(u, dtype=float)
    w = np.asarray(w, dtype=float)
    if not pivot:
        low, u_elim = triangular_eliminate(u)
        w_carried = lower_triangular_inverse(low) @ w
        return u_elim, w_carried
    aug = np.hstack([u, w]).copy()
    n_rows, n_u = aug.shape[0], u.shape[1]
    # Sweeps regenerate rounding dust in later columns no matter how the
    # input was cleaned, so pivot acceptance needs a threshold; accepting
    # a dust pivot silently consumes a row that should survive as zero.
    thr = 64.0 * np.finfo(float).eps * max(n_rows, n_u, 1)
    if u.size:
        thr = max(thr, 1e-13 * float(np.abs(u).max()))
    row = 0
    for col in range(n_u):
        if row >= n_rows:
            break
        pvt = row + int(np.argmax(np.abs(aug[row:, col])))
        if abs(aug[pvt, col]) <= thr:
            continue
        if pvt != row:
            aug[[row, pvt], :] = aug[[pvt, row], :]
        factors = aug[row + 1 :, col] / aug[row, col]
        aug[row + 1 :, :] -= np.outer(factors, aug[row, :])
        aug[row + 1 :, col] = 0.0
        row += 1
    return aug[:, :n_u], aug[:, n_u:]


def _zero_row_mask(u_elim, tol):
    if u_elim.shape[1] == 0:
        return np.ones(u_elim.shape[0], dtype=bool)
    return np.abs(u_elim).max(axis=1) <= tol.zero_eig_tol


def _transition_full(f, ia, ib, p, tol):
    """Survivors, deaths and the dying rows for one filtration step."""
    w_a = harmonic_space(f, f.thresholds[ia], p, tol)
    n_p_b = len(f.basis(ib, p))
    w_pad = np.hstack([w_a, np.zeros((w_a.shape[0], n_p_b - w_a.shape[1]))])
    u = w_pad @ f.boundary(ib, p + 1).T
    # The pairing matrix mixes orthonormal harmonic rows with an integer
    # boundary, so honest entries are O(1); anything at rounding scale is
    # an exact cancellation.  Snapping before the rank keeps an all-dust
    # pairing from reporting a death, and snapping before the elimination
    # keeps dust from becoming a pivot with a catastrophic factor.
    if u.size:
        scale = np.abs(u).max()
        dust = max(64.0 * np.finfo(float).eps * max(u.shape), 1e-13 * scale)
        u[np.abs(u) <= dust] = 0.0
    death_count = rank(u, tol)
    if w_pad.shape[0] == 0:
        empty = np.zeros((0, n_p_b))
        return empty, death_count, empty
    try:
        u_elim, w_carried = _eliminate_with_carry(u, w_pad, pivot=False)
        mask = _zero_row_mask(u_elim, tol)
        if int(np.count_nonzero(~mask)) != death_count:
            u_elim, w_carried = _eliminate_with_carry(u, w_pad, pivot=True)
            mask = _zero_row_mask(u_elim, tol)
    except ZeroPivotError:
        u_elim, w_carried = _eliminate_with_carry(u, w_pad, pivot=True)
        mask = _zero_row_mask(u_elim, tol)
    if int(np.count_nonzero(mask)) != w_pad.shape[0] - death_count:
        # Elimination still disagreeing with the rank means the pairing is
        # numerically twisted; the singular frame gives the same survivor
        # span with a combination count that matches the rank by
        # construction.
        uu, _, _ = np.linalg.svd(u, full_matrices=True)
        survivors = uu[:, death_count:].T @ w_pad
        dying = uu[:, :death_count].T @ w_pad
        return survivors, death_count, dying
    survivors = w_carried[mask]
    dying = w_carried[~mask]
    return survivors, death_count, dying


def harmonic_transition(f, a, b, p, tol=DEFAULT_TOL):
    """Carry the harmonic basis at a into threshold b.

    Returns (survivors, death_count): survivors are rows, expressed in
    the p-basis at b, spanning the part of the harmonic space at a that
    is still harmonic at b; death_count is how many independent
    directions were lost (the rank of the pairing against the new
    boundaries).
    """
    ia, ib = f.index_of(a), f.index_of(b)
    if ia > ib:
        raise ValueError("need a <= b in the filtration order")
    survivors, death_count, _ = _transition_full(f, ia, ib, p, tol)
    return survivors, death_count


def _row_space_basis(v, tol):
    """Orthonormal basis of the row space of v, as rows."""
    if v.shape[0] == 0 or v.shape[1] == 0:
        return np.zeros((0, v.shape[1]))
    _, s, vt = np.linalg.svd(v, full_matrices=False)
    if s.size == 0 or s[0] == 0.0:
        return np.zeros((0, v.shape[1]))
    # Everything fed through here is built from orthonormal frames, so the
    # working scale is 1; flooring the cutoff at that scale keeps a matrix
    # of pure cancellation dust from presenting as rank one.
    cutoff = tol.rank_tol_factor * max(v.shape) * max(s[0], 1.0)
    r = int(np.count_nonzero(s > cutoff))
    return vt[:r].copy()


def harmonic_births(f, a, b, p, tol=DEFAULT_TOL, survivors=None, method="projection"):
    """Representatives of classes born strictly between thresholds a and b.

    With the default projection method the harmonic space at b is
    projected off the span of the carried survivors and an orthonormal
    basis of the remainder is returned.  The elimination method instead
    row-reduces the harmonic basis at b against the survivors, choosing
    pivots from the newest simplex columns first; it returns a basis of
    the same space in a different gauge.  Every birth row has nonzero
    support on simplices that appeared after a.
    """
    if method not in ("projection", "elimination"):
        raise ValueError("unknown method %r" % (method,))
    if survivors is None:
        survivors, _ = harmonic_transition(f, a, b, p, tol)
    w_b = harmonic_space(f, b, p, tol)
    if w_b.shape[0] == 0:
        return np.zeros((0, w_b.shape[1]))
    s_frame = _row_space_basis(survivors, tol)
    if method == "projection":
        v = w_b - (w_b @ s_frame.T) @ s_frame
        return _row_space_basis(v, tol)
    # Elimination: bring the survivor frame to reduced row echelon form
    # over its own pivot columns, then sweep those columns out of w_b in
    # one pass; what remains is a coordinate complement of the survivor
    # span inside the harmonic space at b.
    sf = s_frame.copy()
    reduced = w_b.copy()
    used = []
    for k in range(sf.shape[0]):
        scores = np.abs(sf[k]).copy()
        scores[used] = -1.0
        j = int(np.argmax(scores))
        if sf[k, j] == 0.0:
            continue
        sf[k] /= sf[k, j]
        others = [i for i in range(sf.shape[0]) if i != k]
        sf[others] -= np.outer(sf[others, j], sf[k])
        reduced -= np.outer(reduced[:, j], sf[k])
        used.append(j)
    return _row_space_basis(reduced, tol)


@dataclass
class HarmonicTrack:
    """Birth/death bookkeeping of harmonic representatives over a filtration.

    dims[i] is the harmonic dimension (the Betti number) at
    thresholds[i]; spaces[i] holds the orthonormal harmonic bases and
    bases[i] the p-simplices their columns refer to.  births collects
    (threshold, rows) pairs including all initial generators at the
    first threshold; deaths collects (threshold, count, dying_rows).
    """

    dimension: int
    thresholds: list
    dims: list
    spaces: list
    bases: list
    births: list
    deaths: list


def track_harmonics(f, p, tol=DEFAULT_TOL):
    """Follow every harmonic class of degree p across the filtration."""
    if len(f.thresholds) == 0:
        raise ValueError("the filtration has no thresholds")
    spaces = [harmonic_space(f, t, p, tol) for t in f.thresholds]
    bases = [f.basis(i, p) for i in range(len(f.thresholds))]
    dims = [w.shape[0] for w in spaces]
    births = []
    deaths = []
    if spaces[0].shape[0]:
        births.append((f.thresholds[0], spaces[0]))
    for i in range(1, len(f.thresholds)):
        a, b = f.thresholds[i - 1], f.thresholds[i]
        survivors, death_count, dying = _transition_full(f, i - 1, i, p, tol)
        if death_count:
            deaths.append((b, death_count, dying))
        born = harmonic_births(f, a, b, p, tol, survivors=survivors)
        if born.shape[0]:
            births.append((b, born))
    return HarmonicTrack(
        dimension=p,
        thresholds=list(f.thresholds),
        dims=dims,
        spaces=spaces,
        bases=bases,
        births=births,
        deaths=deaths,
    )
