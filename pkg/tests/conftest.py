import math

import numpy as np
import pytest

# The five-point cloud whose Rips complex at threshold 3 has two filled
# triangles sharing an edge (points 1 and 2 coincide).
CLOUD_FIVE = [(0, 0), (2, 1), (2, 1), (3, 3), (3, 4)]

# Two unit squares in parallel planes; the second square closes only
# when the threshold passes the 1.25 gap on its lifted corner.
CLOUD_TWO_SQUARES = [
    (0, 0, 0), (0, 1, 0), (1, 0, 0), (1, 1, 0),
    (0, 0, 2), (0, 1, 2), (1, 0, 2), (1, 1, 1.5),
]

# Hexagon with one vertex lifted out of plane by 0.3: at threshold 1
# only three sides are present, at 1.2 the full ring closes.
_S3 = math.sqrt(3) / 2
CLOUD_LIFTED_HEXAGON = [
    (0.5, _S3, 0), (-0.5, _S3, 0), (-1, 0, 0),
    (1, 0, 0), (0.5, -_S3, 0), (-0.5, -_S3, 0.3),
]

HEXAGON_MID = 2 * math.sqrt(3) * 1.01


def hexagon_points():
    """Regular hexagon with side 2 (circumradius 2), vertices in ring order."""
    return np.array(
        [(2 * math.cos(math.pi * k / 3), 2 * math.sin(math.pi * k / 3)) for k in range(6)]
    )


@pytest.fixture
def hexagon():
    return hexagon_points()


@pytest.fixture
def two_squares():
    return np.array(CLOUD_TWO_SQUARES, dtype=float)


@pytest.fixture
def lifted_hexagon():
    return np.array(CLOUD_LIFTED_HEXAGON, dtype=float)
