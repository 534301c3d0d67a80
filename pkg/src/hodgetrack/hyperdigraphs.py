"""Homology of directed hypergraphs.

A directed hyperedge is a sequence of distinct vertices where the order
carries the direction information; unlike digraph paths there is no
edge relation to respect, the hyperedges themselves are the generators.
The boundary is the alternating sum over vertex omissions (all
positions, including the first), and homology is computed on the chains
whose boundaries stay in the hyperedge span, exactly as for undirected
hypergraphs but with ordered tuples.
"""

import numpy as np

from .complexes import BoundaryBlocks, SpectralReport, omission_boundary
from .hypergraphs import _pipeline_betti, _pipeline_data, _pipeline_laplacian
from .linalg import DEFAULT_TOL

__all__ = [
    "Hyperdigraph",
    "hyperdigraph_boundary",
    "hyperdigraph_betti",
    "hyperdigraph_laplacian",
]


def _clean_directed_edge(edge):
    out = tuple(int(v) for v in edge)
    if not out:
        raise ValueError("empty directed hyperedge is not allowed")
    if len(set(out)) != len(out):
        raise ValueError("directed hyperedge %r repeats a vertex" % (edge,))
    return out


class Hyperdigraph:
    """Finite set of directed hyperedges (sequences of distinct vertices)."""

    def __init__(self, edges):
        cleaned = sorted({_clean_directed_edge(e) for e in edges}, key=lambda e: (len(e), e))
        self.edges = cleaned
        self.vertices = sorted({v for e in cleaned for v in e})

    @property
    def top_dim(self):
        return max((len(e) - 1 for e in self.edges), default=-1)

    def edges_of_dim(self, p):
        return [e for e in self.edges if len(e) - 1 == p]

    def __len__(self):
        return len(self.edges)

    def __iter__(self):
        return iter(self.edges)

    def __repr__(self):
        return "Hyperdigraph(%d edges on %d vertices)" % (
            len(self.edges),
            len(self.vertices),
        )


def _hyperdigraph_bases(h):
    """Generators plus the ambient bases their omission faces live in.

    Omitting a vertex from a distinct-vertex sequence keeps the entries
    distinct, so the ambient basis in each dimension is just the
    hyperedges together with the faces of the hyperedges one dimension
    up.
    """
    top = h.top_dim
    gens = {p: h.edges_of_dim(p) for p in range(top + 1)}
    ambient = {}
    for p in range(top + 1):
        faces = set(gens[p])
        for e in gens.get(p + 1, []):
            for k in range(len(e)):
                faces.add(e[:k] + e[k + 1 :])
        ambient[p] = sorted(faces)
    return gens, ambient, top


def hyperdigraph_boundary(h):
    """Boundary blocks of the directed hyperedges into the ambient bases."""
    gens, ambient, top = _hyperdigraph_bases(h)
    blocks = {}
    for p in range(1, top + 1):
        blocks[p] = omission_boundary(gens[p], ambient.get(p - 1, []))
    counts = [len(gens[p]) for p in range(top + 1)]
    idx = [0]
    for c in counts:
        idx.append(idx[-1] + c)
    return BoundaryBlocks(blocks=blocks, dim_index=idx)


def hyperdigraph_betti(h, tol=DEFAULT_TOL):
    """Betti numbers of a directed hypergraph, p = 0..top_dim."""
    gens, ambient, top = _hyperdigraph_bases(h)
    if top < 0:
        return []
    data = _pipeline_data(gens, ambient, top, tol)
    return _pipeline_betti(data, top, tol)


def hyperdigraph_laplacian(h, p, tol=DEFAULT_TOL):
    """Spectral report of the degree-p Laplacian of a directed hypergraph."""
    gens, ambient, top = _hyperdigraph_bases(h)
    if top < 0:
        return SpectralReport.from_eigenvalues(p, np.zeros(0), tol)
    data = _pipeline_data(gens, ambient, top, tol)
    return _pipeline_laplacian(data, p, tol)
