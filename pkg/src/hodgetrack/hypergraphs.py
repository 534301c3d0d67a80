"""Embedded homology of hypergraphs via the infimum chain complex.

A hypergraph is a set of hyperedges (vertex sets) that need not be
closed under taking subsets.  Its simplicial closure is; homology is
computed for the largest subcomplex of chains that stay inside the span
of the hyperedges under the boundary map.  The same recipe -- pick
generators inside an ambient chain basis, restrict to chains whose
boundaries remain in the generator span, conjugate the boundary into
that restricted frame -- also drives path homology of digraphs and the
homology of directed hypergraphs, so the pipeline here is written
against abstract (generators, ambient) bases.
"""

from dataclasses import dataclass

import numpy as np

from .complexes import (
    PointCloud,
    SimplicialComplex,
    SpectralReport,
    canonicalize,
    omission_boundary,
    rips_complex,
    simplex_key,
)
from .linalg import DEFAULT_TOL, left_null_space, rank, symmetric_eigenvalues

__all__ = [
    "Hypergraph",
    "InfimumChainData",
    "element_indices",
    "simplicial_closure",
    "hyperedge_indices",
    "split_columns",
    "infimum_data",
    "embedded_betti",
    "hypergraph_laplacian",
    "two_color_rips_hypergraph",
]


def _clean_edge(edge):
    out = tuple(sorted(int(v) for v in edge))
    if not out:
        raise ValueError("empty hyperedge is not allowed")
    if len(set(out)) != len(out):
        raise ValueError("hyperedge %r has a repeated vertex" % (edge,))
    return out


class Hypergraph:
    """Finite hypergraph: a collection of nonempty vertex sets.

    Hyperedges are stored as sorted tuples in (dimension, lex) order
    with duplicates removed.  The vertex set is the union of the
    hyperedges; an isolated vertex is represented by its singleton edge.
    """

    def __init__(self, hyperedges):
        edges = sorted({_clean_edge(e) for e in hyperedges}, key=simplex_key)
        self.hyperedges = edges
        self.vertices = sorted({v for e in edges for v in e})

    @property
    def top_dim(self):
        return max((len(e) - 1 for e in self.hyperedges), default=-1)

    def edges_of_dim(self, p):
        return [e for e in self.hyperedges if len(e) - 1 == p]

    def __len__(self):
        return len(self.hyperedges)

    def __iter__(self):
        return iter(self.hyperedges)

    def __repr__(self):
        return "Hypergraph(%d hyperedges on %d vertices)" % (
            len(self.hyperedges),
            len(self.vertices),
        )


def element_indices(subset, universe):
    """Positions of subset's elements inside an ordered universe.

    Example: [3, 5, 7] inside [1..9] gives [2, 4, 6].  Elements missing
    from the universe are an error; order follows the subset.
    """
    lookup = {x: i for i, x in enumerate(universe)}
    try:
        return [lookup[x] for x in subset]
    except KeyError as exc:
        raise ValueError("element %r is not in the universe" % (exc.args[0],))


def simplicial_closure(h):
    """Smallest simplicial complex containing every hyperedge."""
    if not h.hyperedges:
        return SimplicialComplex([])
    return canonicalize(h.hyperedges)


def hyperedge_indices(h, closure=None):
    """Per-dimension positions of the hyperedges inside the closure basis."""
    if closure is None:
        closure = simplicial_closure(h)
    return {
        p: element_indices(h.edges_of_dim(p), closure.simplices_of_dim(p))
        for p in range(h.top_dim + 1)
    }


def split_columns(b, idx):
    """Split a matrix into (indexed columns, remaining columns).

    idx selects the columns that correspond to generator positions; the
    complement keeps its original relative order.  Indices out of range
    or repeated are an error.
    """
    b = np.asarray(b, dtype=float)
    n_cols = b.shape[1]
    idx = list(idx)
    if len(set(idx)) != len(idx):
        raise ValueError("duplicate column indices")
    if any(i < 0 or i >= n_cols for i in idx):
        raise ValueError("column index out of range for %d columns" % n_cols)
    rest = [j for j in range(n_cols) if j not in set(idx)]
    return b[:, idx], b[:, rest]


# -- generic (generators, ambient) pipeline ---------------------------------
#
# gens[p] and ambient[p] are ordered tuple bases with gens[p] a sub-basis
# of ambient[p] and every omission face of gens[p] contained in
# ambient[p-1].  Dimensions absent from the dicts are empty.


def _basis(d, p):
    return d.get(p, [])


def _pipeline_matrices(gens, ambient, top):
    """Boundary of the generators into the ambient basis, per dimension."""
    b = {}
    index = {}
    for p in range(top + 1):
        index[p] = element_indices(_basis(gens, p), _basis(ambient, p))
        b[p] = omission_boundary(_basis(gens, p), _basis(ambient, p - 1))
    return b, index


def _pipeline_data(gens, ambient, top, tol):
    """Restricted-frame boundary operators M_p for the infimum complex.

    For each p the columns of B_p split into the generator positions
    (B_tilde) and the rest (B_bar); A_p is an orthonormal basis of the
    chains killing B_bar, and M_p = A_p B_tilde_p A_{p-1}^T expresses
    the boundary purely in the restricted frames.
    """
    b, index = _pipeline_matrices(gens, ambient, top)
    b_tilde, b_bar, a = {}, {}, {}
    for p in range(top + 1):
        lower_idx = index.get(p - 1, [])
        b_tilde[p], b_bar[p] = split_columns(b[p], lower_idx)
        a[p] = left_null_space(b_bar[p], tol)
    m = {}
    for p in range(1, top + 1):
        prod = a[p] @ b_tilde[p] @ a[p - 1].T
        if prod.size:
            # A has orthonormal rows and B_tilde is integer, so any entry of
            # the product below the accumulated-rounding scale is an exact
            # cancellation; without the snap a block that should vanish keeps
            # dust singular values and its rank is overcounted.
            scale = max(1.0, float(np.abs(b_tilde[p]).max())) if b_tilde[p].size else 1.0
            dust = 64.0 * np.finfo(float).eps * scale * max(prod.shape)
            prod[np.abs(prod) <= dust] = 0.0
        m[p] = prod
    return {
        "index": index,
        "B": b,
        "B_tilde": b_tilde,
        "B_bar": b_bar,
        "A": a,
        "M": m,
        "r": {p: a[p].shape[0] for p in range(top + 1)},
    }


def _pipeline_betti(data, top, tol):
    ranks = {p: rank(m, tol) for p, m in data["M"].items()}
    out = []
    for p in range(top + 1):
        out.append(data["r"][p] - ranks.get(p, 0) - ranks.get(p + 1, 0))
    return out


def _pipeline_laplacian(data, p, tol):
    """Spectrum of L_p = M_p M_p^T + M_{p+1}^T M_{p+1} in the restricted frame."""
    if p < 0:
        raise ValueError("degree must be non-negative")
    r_p = data["r"].get(p, 0)
    if r_p == 0:
        return SpectralReport.from_eigenvalues(p, np.zeros(0), tol)
    lap = np.zeros((r_p, r_p))
    if p >= 1 and p in data["M"]:
        m = data["M"][p]
        lap += m @ m.T
    if p + 1 in data["M"]:
        m_up = data["M"][p + 1]
        lap += m_up.T @ m_up
    return SpectralReport.from_eigenvalues(p, symmetric_eigenvalues(lap, tol), tol)


# -- hypergraph front end ----------------------------------------------------


@dataclass
class InfimumChainData:
    """All intermediate data of the infimum chain complex of a hypergraph.

    Per dimension p: closure_index lists hyperedge positions in the
    closure basis; B maps hyperedges into the closure basis below and
    splits as (B_tilde, B_bar) by those positions; A spans the chains
    whose boundary stays inside the hyperedge span (r[p] of them); M is
    the boundary in the A frames.  l and k count closure simplices and
    hyperedges.
    """

    closure: SimplicialComplex
    closure_index: dict
    l: dict
    k: dict
    r: dict
    B: dict
    B_tilde: dict
    B_bar: dict
    A: dict
    M: dict
    top: int


def _hypergraph_bases(h, closure):
    top = h.top_dim
    gens = {p: h.edges_of_dim(p) for p in range(top + 1)}
    ambient = {p: closure.simplices_of_dim(p) for p in range(closure.top_dim + 1)}
    return gens, ambient, top


def infimum_data(h, tol=DEFAULT_TOL):
    """Build the restricted chain complex of a hypergraph."""
    closure = simplicial_closure(h)
    gens, ambient, top = _hypergraph_bases(h, closure)
    if top < 0:
        return InfimumChainData(
            closure=closure, closure_index={}, l={}, k={}, r={},
            B={}, B_tilde={}, B_bar={}, A={}, M={}, top=-1,
        )
    data = _pipeline_data(gens, ambient, top, tol)
    return InfimumChainData(
        closure=closure,
        closure_index=data["index"],
        l={p: len(ambient.get(p, [])) for p in range(top + 1)},
        k={p: len(gens.get(p, [])) for p in range(top + 1)},
        r=data["r"],
        B=data["B"],
        B_tilde=data["B_tilde"],
        B_bar=data["B_bar"],
        A=data["A"],
        M=data["M"],
        top=top,
    )


def embedded_betti(h, tol=DEFAULT_TOL):
    """Embedded Betti numbers of a hypergraph, p = 0..top_dim.

    Computed by ranks in the closure basis: with E_p the 0/1 inclusion
    of p-hyperedges into closure p-simplices and B_p the boundary of the
    p-hyperedges,

        beta_p = rank [E_p over B_{p+1}] - rank B_{p+1} - rank B_p.

    A hypergraph that is already a simplicial complex reproduces the
    ordinary Betti numbers of that complex.
    """
    closure = simplicial_closure(h)
    gens, ambient, top = _hypergraph_bases(h, closure)
    if top < 0:
        return []
    b, _ = _pipeline_matrices(gens, ambient, top)
    out = []
    for p in range(top + 1):
        l_p = len(_basis(ambient, p))
        e_p = np.zeros((len(_basis(gens, p)), l_p))
        for i, j in enumerate(element_indices(_basis(gens, p), _basis(ambient, p))):
            e_p[i, j] = 1.0
        b_up = b.get(p + 1, np.zeros((0, l_p)))
        stacked = np.vstack([e_p, b_up])
        out.append(rank(stacked, tol) - rank(b_up, tol) - rank(b[p], tol))
    return out


def hypergraph_laplacian(h, p, tol=DEFAULT_TOL):
    """Spectral report of the degree-p Laplacian of the infimum complex.

    The restricted frame A_p is only unique up to an orthogonal change
    of basis, but the spectrum (and hence the Betti count and gap) is
    invariant under that choice.
    """
    closure = simplicial_closure(h)
    gens, ambient, top = _hypergraph_bases(h, closure)
    if top < 0:
        return SpectralReport.from_eigenvalues(p, np.zeros(0), tol)
    data = _pipeline_data(gens, ambient, top, tol)
    return _pipeline_laplacian(data, p, tol)


def two_color_rips_hypergraph(cloud, threshold, max_dim=2, closed_threshold=False):
    """Sub-hypergraph of a Rips complex keeping only two-colored simplices.

    Points are colored alternately by index parity.  Every vertex is
    kept; a higher simplex is kept exactly when it contains at least one
    point of each color.  The result is generally not closed under
    faces, which is what makes its embedded homology differ from the
    homology of the underlying Rips complex.
    """
    if not isinstance(cloud, PointCloud):
        cloud = PointCloud(np.asarray(cloud, dtype=float))
    k = rips_complex(cloud, threshold, max_dim, closed_threshold)
    edges = []
    for s in k:
        colors = {v % 2 for v in s}
        if len(s) == 1 or len(colors) == 2:
            edges.append(s)
    return Hypergraph(edges)
