"""Path homology of directed graphs.

Allowed paths are vertex sequences following edges ((v) alone for every
vertex).  The boundary is the usual alternating sum of vertex omissions,
taken formally: omitting an interior vertex may create a sequence that
repeats a vertex or skips a missing edge, and such faces keep their own
basis slot rather than being discarded.  Homology lives on the chains
whose boundaries land back in the span of allowed paths -- the same
restricted-frame construction used for hypergraph homology.
"""

from dataclasses import dataclass

import numpy as np

from .complexes import BoundaryBlocks, omission_boundary
from .hypergraphs import _pipeline_betti, _pipeline_data, _pipeline_laplacian
from .linalg import DEFAULT_TOL

__all__ = [
    "Digraph",
    "PathBasis",
    "enumerate_paths",
    "path_boundary_matrices",
    "path_betti",
    "path_laplacian",
]


class Digraph:
    """Simple directed graph: no loops, no parallel edges."""

    def __init__(self, edges, vertices=None):
        cleaned = []
        seen = set()
        for e in edges:
            u, v = (int(x) for x in e)
            if u == v:
                raise ValueError("loop edge %r is not allowed" % (e,))
            if (u, v) in seen:
                raise ValueError("duplicate edge %r" % (e,))
            seen.add((u, v))
            cleaned.append((u, v))
        self.edges = sorted(cleaned)
        vs = {v for e in self.edges for v in e}
        if vertices is not None:
            vs |= {int(v) for v in vertices}
        self.vertices = sorted(vs)

    def successors(self, v):
        return [b for a, b in self.edges if a == v]

    def __repr__(self):
        return "Digraph(%d vertices, %d edges)" % (len(self.vertices), len(self.edges))


@dataclass
class PathBasis:
    """Allowed paths of a digraph up to a length cap, plus ambient bases.

    paths[q] lists the allowed q-paths (q edges, q+1 vertices) in lex
    order; ambient[q] additionally contains every omission face of an
    allowed (q+1)-path, including degenerate sequences that repeat a
    vertex.  Boundaries of allowed paths always land in the ambient
    basis one level down.
    """

    digraph: Digraph
    max_len: int
    paths: dict
    ambient: dict


def enumerate_paths(g, max_len):
    """All allowed paths of g with at most max_len edges."""
    if max_len < 0:
        raise ValueError("max_len must be non-negative")
    paths = {0: [(v,) for v in g.vertices]}
    for q in range(1, max_len + 1):
        nxt = [p + (w,) for p in paths[q - 1] for w in g.successors(p[-1])]
        if not nxt:
            paths[q] = []
            continue
        paths[q] = sorted(nxt)
    ambient = {}
    for q in range(max_len + 1):
        faces = set(paths[q])
        for p in paths.get(q + 1, []):
            for k in range(len(p)):
                faces.add(p[:k] + p[k + 1 :])
        ambient[q] = sorted(faces)
    return PathBasis(digraph=g, max_len=max_len, paths=paths, ambient=ambient)


def path_boundary_matrices(basis):
    """Boundary blocks of the allowed paths into the ambient bases below."""
    blocks = {}
    for q in range(1, basis.max_len + 1):
        blocks[q] = omission_boundary(basis.paths[q], basis.ambient.get(q - 1, []))
    counts = [len(basis.paths[q]) for q in range(basis.max_len + 1)]
    idx = [0]
    for c in counts:
        idx.append(idx[-1] + c)
    return BoundaryBlocks(blocks=blocks, dim_index=idx)


def _path_data(g, max_len, tol):
    basis = enumerate_paths(g, max_len)
    return _pipeline_data(basis.paths, basis.ambient, max_len, tol)


def path_betti(g, max_len=3, tol=DEFAULT_TOL):
    """Path-homology Betti numbers of g for p = 0..max_len-1.

    Paths one longer than the last reported degree are still enumerated,
    since their boundaries can kill top-degree cycles.
    """
    if max_len < 1:
        raise ValueError("max_len must be at least 1")
    data = _path_data(g, max_len, tol)
    return _pipeline_betti(data, max_len, tol)[:max_len]


def path_laplacian(g, p, max_len=3, tol=DEFAULT_TOL):
    """Spectral report of the degree-p path-homology Laplacian."""
    if not 0 <= p < max_len:
        raise ValueError("degree must satisfy 0 <= p < max_len")
    data = _path_data(g, max_len, tol)
    return _pipeline_laplacian(data, p, tol)
