"""Hand-computed S_3 reference values for the adjacent generating set.

All vectors are listed over the ordering id, (12), (23), (13), (123), (132)
and use the fixture matrices in ``irreps.S3_FIXTURE_GENERATORS``.
"""

from math import sqrt

import numpy as np

R3 = sqrt(3.0)

COEFFICIENT_FUNCTIONS = {
    # (shape, k, i): pi_{k,i}
    ((2, 1), 1, 1): [1, -1 / 2, 1, -1 / 2, -1 / 2, -1 / 2],
    ((2, 1), 2, 1): [0, R3 / 2, 0, -R3 / 2, -R3 / 2, R3 / 2],
    ((2, 1), 1, 2): [0, R3 / 2, 0, -R3 / 2, R3 / 2, -R3 / 2],
    ((2, 1), 2, 2): [1, 1 / 2, -1, 1 / 2, -1 / 2, -1 / 2],
    ((3,), 1, 1): [1, 1, 1, 1, 1, 1],
    ((1, 1, 1), 1, 1): [1, -1, -1, -1, 1, 1],
}

# eigenvalue -> eigenvector of pi(S) for the standard representation
STANDARD_EIGENVECTORS = {
    1.0: [R3, 1],
    -1.0: [-1 / R3, 1],
}

# (shape, i, eigenvalue) -> spanning vector of Z(pi, i, lam), unnormalized
Z_SPANS = {
    ((2, 1), 1, 1.0): [R3, 0, R3, -R3, -R3, 0],
    ((2, 1), 1, -1.0): [-1 / R3, 2 / R3, -1 / R3, -1 / R3, -1 / R3, 2 / R3],
    ((2, 1), 2, 1.0): [1, 2, -1, -1, 1, -2],
    ((2, 1), 2, -1.0): [1, 0, -1, 1, -1, 0],
    ((3,), 1, 2.0): [1, 1, 1, 1, 1, 1],
    ((1, 1, 1), 1, -2.0): [1, -1, -1, -1, 1, 1],
}


def as_array(values) -> np.ndarray:
    return np.asarray(values, dtype=float)


def collinear_error(v, ref) -> float:
    """Componentwise error after rescaling v onto ref (least-squares scale)."""
    v, ref = as_array(v), as_array(ref)
    denom = v @ v
    if denom == 0:
        return float(np.abs(ref).max())
    return float(np.abs((ref @ v) / denom * v - ref).max())
