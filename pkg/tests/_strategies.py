import numpy as np
from hypothesis import strategies as st

from su3euler.euler import CANONICAL_RANGES

MARGIN = 0.05


def angles(margin=0.0):
    """Single 8-vector of angles inside the canonical box (shrunk by ``margin``)."""
    parts = [st.floats(lo + margin, hi - margin - 1e-9, allow_nan=False) for lo, hi in CANONICAL_RANGES]
    return st.tuples(*parts).map(np.array)


def regular_angles():
    """Angles away from the sin2beta, sin2b, theta = pi/2 coefficient singularities."""
    lo_hi = list(CANONICAL_RANGES)
    parts = []
    for k, (lo, hi) in enumerate(lo_hi):
        if k in (1, 3, 5):
            parts.append(st.floats(0.2, np.pi / 2 - 0.2))
        else:
            parts.append(st.floats(lo, hi - 1e-9, allow_nan=False))
    return st.tuples(*parts).map(np.array)


def real_vector(n, bound=3.0):
    return st.lists(st.floats(-bound, bound, allow_nan=False), min_size=n, max_size=n).map(np.array)
