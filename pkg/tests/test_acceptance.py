"""End-to-end gate for the whole package.

Eleven numbered criteria, each asserting frozen values or agreement with
the exact-rational oracles in oracles.py.  Every criterion carries a
wall-clock budget.  Run directly (``python tests/test_acceptance.py``)
to get one PASS/FAIL line per criterion; under pytest each criterion is
an ordinary test.
"""

import math
import sys
import time

import numpy as np

from hodgetrack import (
    PointCloud,
    SimplicialComplex,
    betti_curve,
    betti_numbers,
    boundary_matrices,
    build_filtration,
    canonicalize,
    harmonic_births,
    harmonic_space,
    harmonic_transition,
    persistent_betti,
    persistent_laplacian,
    rips_complex,
    spectral_report,
    track_harmonics,
)
from hodgetrack.cli import DATA_DIR
from hodgetrack.digraphs import Digraph, enumerate_paths, path_betti, path_laplacian
from hodgetrack.hyperdigraphs import (
    Hyperdigraph,
    hyperdigraph_betti,
    hyperdigraph_laplacian,
)
from hodgetrack.hypergraphs import (
    Hypergraph,
    embedded_betti,
    hypergraph_laplacian,
    infimum_data,
    simplicial_closure,
    two_color_rips_hypergraph,
)
from hodgetrack.io import parse_point_cloud
from hodgetrack.linalg import DEFAULT_TOL, symmetric_eigenvalues

from conftest import (
    CLOUD_FIVE,
    CLOUD_LIFTED_HEXAGON,
    CLOUD_TWO_SQUARES,
    HEXAGON_MID,
    hexagon_points,
)
from oracles import (
    embedded_betti_oracle,
    persistent_betti_oracle,
    simplicial_betti,
)

FIVE_POINT_COMPLEX = [
    (0,), (1,), (2,), (3,), (4,),
    (0, 1), (0, 2), (1, 2), (1, 3), (2, 3), (3, 4),
    (0, 1, 2), (1, 2, 3),
]

TWO_COMPONENT_COMPLEX = [
    [1], [2], [3], [4], [5],
    [1, 2], [2, 3], [2, 4], [3, 4],
    [2, 3, 4],
]


def _elapsed_under(start, seconds):
    took = time.monotonic() - start
    assert took < seconds, "budget exceeded: %.1fs >= %ss" % (took, seconds)


def _single_row_matches(row, target, tol=1e-6):
    """The row equals the target up to a global sign flip."""
    row = np.asarray(row, dtype=float)
    target = np.asarray(target, dtype=float)
    return (
        np.allclose(row, target, atol=tol)
        or np.allclose(row, -target, atol=tol)
    )


def test_criterion_01_rips_transcript():
    """Five-point cloud, threshold 3, reproduces the frozen simplex list."""
    start = time.monotonic()
    k = rips_complex(PointCloud(np.asarray(CLOUD_FIVE, dtype=float)), 3.0, max_dim=2)
    assert list(k) == FIVE_POINT_COMPLEX
    assert k.top_dim == 2
    _elapsed_under(start, 1.0)


def test_criterion_02_two_component_betti():
    start = time.monotonic()
    k = canonicalize(TWO_COMPONENT_COMPLEX)
    assert betti_numbers(k) == [2, 0, 0]
    _elapsed_under(start, 1.0)


def test_criterion_03_harmonic_transcript_two_squares():
    """Square cycle at 1.1 survives to 1.3; the second square is born."""
    start = time.monotonic()
    f = build_filtration(CLOUD_TWO_SQUARES, [1.1, 1.3])
    assert f.simplices(0) == [
        (0,), (1,), (2,), (3,), (4,), (5,), (6,), (7,),
        (0, 1), (0, 2), (1, 3), (2, 3), (4, 5), (4, 6),
    ]
    assert f.basis(1, 1) == [
        (0, 1), (0, 2), (1, 3), (2, 3), (4, 5), (4, 6), (5, 7), (6, 7),
    ]

    w_a = harmonic_space(f, 1.1, 1)
    assert w_a.shape == (1, 6)
    assert _single_row_matches(w_a[0], [0.5, -0.5, 0.5, -0.5, 0.0, 0.0])

    survivors, deaths = harmonic_transition(f, 1.1, 1.3, 1)
    assert deaths == 0
    assert survivors.shape == (1, 8)
    assert _single_row_matches(
        survivors[0] / np.linalg.norm(survivors[0]),
        [0.5, -0.5, 0.5, -0.5, 0.0, 0.0, 0.0, 0.0],
    )

    born = harmonic_births(f, 1.1, 1.3, 1, survivors=survivors)
    assert born.shape == (1, 8)
    assert _single_row_matches(
        born[0], [0.0, 0.0, 0.0, 0.0, 0.5, -0.5, 0.5, -0.5]
    )
    _elapsed_under(start, 1.0)


def test_criterion_04_harmonic_transcript_lifted_hexagon():
    """Nothing harmonic at 1.0; the six-term cycle appears at 1.2."""
    start = time.monotonic()
    f = build_filtration(CLOUD_LIFTED_HEXAGON, [1.0, 1.2])
    assert harmonic_space(f, 1.0, 1).shape[0] == 0
    born = harmonic_births(f, 1.0, 1.2, 1)
    assert born.shape == (1, 6)
    assert np.abs(np.abs(born[0]) - 0.4082483).max() <= 1e-6
    _elapsed_under(start, 1.0)


def test_criterion_05_hexagon_two_color_contrast():
    """Frozen hexagon fixtures: plain Rips versus the two-color hypergraph."""
    start = time.monotonic()
    pts = hexagon_points()
    assert betti_numbers(rips_complex(pts, 1.9))[0] == 6

    rips_betti = {}
    for t in (2.1, HEXAGON_MID, 4.1):
        k = rips_complex(pts, t)
        rips_betti[t] = betti_numbers(k)
        assert rips_betti[t][0] == 1
    assert rips_betti[2.1] == [1, 1]
    assert rips_betti[HEXAGON_MID] == [1, 0, 1]
    assert rips_betti[4.1] == [1, 0, 10]

    # at 2.1 both models agree, including the degree-0 spectrum
    k_gap = spectral_report(rips_complex(pts, 2.1), 0)
    assert abs(k_gap.spectral_gap - 1.0) <= 1e-8
    h21 = two_color_rips_hypergraph(pts, 2.1)
    assert embedded_betti(h21) == [1, 1]
    h21_gap = hypergraph_laplacian(h21, 0)
    assert abs(h21_gap.spectral_gap - 1.0) <= 1e-8

    # at the middle threshold the hypergraph keeps the hole the Rips
    # complex has already capped, and the spectra separate
    h_mid = two_color_rips_hypergraph(pts, HEXAGON_MID)
    assert embedded_betti(h_mid) == [1, 1, 0]
    assert rips_betti[HEXAGON_MID][1] == 0
    rips_l0 = spectral_report(rips_complex(pts, HEXAGON_MID), 0)
    assert np.allclose(rips_l0.eigenvalues, [0, 4, 4, 4, 6, 6], atol=1e-8)
    hyper_l0 = hypergraph_laplacian(h_mid, 0)
    assert np.allclose(hyper_l0.eigenvalues, [0, 1, 1, 3, 3, 4], atol=1e-8)
    assert abs(rips_l0.spectral_gap - 4.0) <= 1e-8
    assert abs(hyper_l0.spectral_gap - 1.0) <= 1e-8

    assert embedded_betti(two_color_rips_hypergraph(pts, 4.1)) == [1, 0, 8]
    _elapsed_under(start, 5.0)


def test_criterion_06_simplicial_property_suite():
    """Rank formula = spectrum zeros = rational oracle on random clouds."""
    start = time.monotonic()
    rng = np.random.default_rng(101)
    for _ in range(100):
        n = int(rng.integers(2, 9))
        pts = rng.uniform(-1.0, 1.0, size=(n, 3))
        for t in rng.uniform(0.2, 2.2, size=2):
            k = rips_complex(pts, float(t), max_dim=3)
            mine = betti_numbers(k)
            want = simplicial_betti(list(k))
            for p in range(3):
                w = want[p] if p < len(want) else 0
                m = mine[p] if p < len(mine) else 0
                assert m == w, (pts.tolist(), t, p)
                assert spectral_report(k, p).betti == w
            blocks = boundary_matrices(k)
            for p in range(1, k.top_dim + 1):
                comp = blocks.block(p + 1) @ blocks.block(p)
                assert comp.size == 0 or np.abs(comp).max() == 0.0
            euler_from_counts = sum(
                (-1) ** p * len(k.simplices_of_dim(p)) for p in range(k.top_dim + 1)
            )
            euler_from_betti = sum((-1) ** p * b for p, b in enumerate(mine))
            assert euler_from_counts == euler_from_betti
    _elapsed_under(start, 120.0)


def _random_hypergraph(rng):
    n_vertices = int(rng.integers(1, 7))
    n_edges = int(rng.integers(1, 9))
    edges = []
    for _ in range(n_edges):
        size = int(rng.integers(1, n_vertices + 1))
        edges.append(tuple(sorted(rng.choice(n_vertices, size=size, replace=False))))
    return Hypergraph(edges)


def test_criterion_07_hypergraph_property_suite():
    """Embedded homology vs oracle, closure reduction, frame independence."""
    start = time.monotonic()
    rng = np.random.default_rng(211)
    for _ in range(100):
        h = _random_hypergraph(rng)
        assert embedded_betti(h) == embedded_betti_oracle(h.hyperedges), h.hyperedges

        closed = Hypergraph(simplicial_closure(h))
        k = canonicalize(list(closed))
        assert embedded_betti(closed) == betti_numbers(k), h.hyperedges

        # spectra must not depend on the orthonormal frame the pipeline
        # happened to choose: remix every frame by a random rotation
        data = infimum_data(h)
        q = {}
        for p in range(data.top + 1):
            r = data.r[p]
            q[p] = np.linalg.qr(rng.normal(size=(r, r)))[0] if r else np.zeros((0, 0))
        for p in range(data.top + 1):
            lap = np.zeros((data.r[p], data.r[p]))
            if p in data.M:
                m_down = q[p] @ data.M[p] @ q[p - 1].T
                lap = lap + m_down @ m_down.T
            if p + 1 in data.M:
                m_up = q[p + 1] @ data.M[p + 1] @ q[p].T
                lap = lap + m_up.T @ m_up
            remixed = symmetric_eigenvalues(lap, DEFAULT_TOL)
            reported = hypergraph_laplacian(h, p).eigenvalues
            assert np.allclose(np.sort(remixed), np.sort(reported), atol=1e-8)
    _elapsed_under(start, 120.0)


def test_criterion_08_path_homology_fixtures():
    start = time.monotonic()
    fixtures = [
        ([(0, 1), (1, 2), (2, 0)], [1, 1, 0]),     # cyclic triangle
        ([(0, 1), (1, 2), (0, 2)], [1, 0, 0]),     # shortcut triangle
        ([(0, 1), (1, 3), (0, 2), (2, 3)], [1, 0, 0]),  # directed square
    ]
    for edges, want in fixtures:
        g = Digraph(edges)
        assert path_betti(g, 3) == want, edges
        for p in range(3):
            assert path_laplacian(g, p, 3).betti == want[p], (edges, p)
    _elapsed_under(start, 1.0)


def _random_repeat_free_digraph(rng):
    """Random DAG with scrambled labels; its short paths never repeat."""
    n = int(rng.integers(2, 6))
    perm = rng.permutation(n)
    edges = [
        (int(perm[i]), int(perm[j]))
        for i in range(n)
        for j in range(i + 1, n)
        if rng.random() < 0.45
    ]
    return Digraph(edges, vertices=list(range(n)))


def test_criterion_09_hyperdigraph_reduction():
    """Allowed paths of a digraph, fed as directed hyperedges, agree."""
    start = time.monotonic()
    rng = np.random.default_rng(19)
    for _ in range(50):
        g = _random_repeat_free_digraph(rng)
        paths = enumerate_paths(g, 3).paths
        hyperedges = [p for q in range(4) for p in paths.get(q, [])]
        h = Hyperdigraph(hyperedges)
        assert path_betti(g, 3) == (hyperdigraph_betti(h) + [0, 0, 0])[:3]
        for p in range(3):
            path_eigs = path_laplacian(g, p, 3).eigenvalues
            hyper_eigs = hyperdigraph_laplacian(h, p).eigenvalues
            assert len(path_eigs) == len(hyper_eigs)
            assert np.allclose(path_eigs, hyper_eigs, atol=1e-8)
    _elapsed_under(start, 60.0)


def test_criterion_10_persistent_operator_consistency():
    start = time.monotonic()
    rng = np.random.default_rng(307)
    done = 0
    while done < 50:
        n = int(rng.integers(3, 9))
        pts = rng.normal(size=(n, 2))
        ts = sorted(set(np.round(rng.uniform(0.3, 2.5, size=2), 6)))
        if len(ts) < 2:
            continue
        f = build_filtration(pts, ts)
        a, b = ts
        cloud = PointCloud(np.asarray(pts, dtype=float))
        for p in (0, 1):
            diag = persistent_laplacian(f, a, a, p)
            plain = spectral_report(rips_complex(cloud, a), p)
            assert np.allclose(diag.eigenvalues, plain.eigenvalues, atol=1e-8)
            rep = persistent_laplacian(f, a, b, p)
            want = persistent_betti_oracle(f.simplices(0), f.simplices(1), p)
            assert rep.betti == want, (pts.tolist(), ts, p)
            assert persistent_betti(f, a, b, p) == want
            track = track_harmonics(f, p)
            assert track.dims == [v for _, v in betti_curve(f, p)]
        done += 1
    _elapsed_under(start, 120.0)


def test_criterion_11_molecule_smoke():
    """Dodecahedral carbon cage: 30 bonds, one component, cycle rank 11."""
    start = time.monotonic()
    cloud = parse_point_cloud(DATA_DIR / "c20.xyz")
    assert len(cloud) == 20
    k = rips_complex(cloud, 1.6, max_dim=2)
    n_edges = len(k.simplices_of_dim(1))
    assert n_edges == 30
    betti = betti_numbers(k)
    assert betti[0] == 1
    assert betti[1] == n_edges - 20 + 1 == 11
    _elapsed_under(start, 30.0)


CRITERIA = [
    (1, "Rips transcript golden", test_criterion_01_rips_transcript),
    (2, "two-component Betti golden", test_criterion_02_two_component_betti),
    (3, "harmonic transcript, two squares", test_criterion_03_harmonic_transcript_two_squares),
    (4, "harmonic transcript, lifted hexagon", test_criterion_04_harmonic_transcript_lifted_hexagon),
    (5, "hexagon two-color contrast", test_criterion_05_hexagon_two_color_contrast),
    (6, "simplicial property suite", test_criterion_06_simplicial_property_suite),
    (7, "hypergraph property suite", test_criterion_07_hypergraph_property_suite),
    (8, "path homology fixtures", test_criterion_08_path_homology_fixtures),
    (9, "hyperdigraph reduction", test_criterion_09_hyperdigraph_reduction),
    (10, "persistent operator consistency", test_criterion_10_persistent_operator_consistency),
    (11, "molecule smoke test", test_criterion_11_molecule_smoke),
]


def main():
    failures = 0
    for number, label, fn in CRITERIA:
        try:
            fn()
        except Exception as exc:  # report and keep going
            failures += 1
            print("criterion %02d FAIL — %s: %s" % (number, label, exc))
        else:
            print("criterion %02d PASS — %s" % (number, label))
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
