import math

import numpy as np
import pytest

from hexflow import make_one_holed_torus, make_pair_of_pants, make_random_surface

ACOSH2 = math.acosh(2.0)


@pytest.fixture
def pants():
    return make_pair_of_pants()


@pytest.fixture
def torus():
    return make_one_holed_torus()


@pytest.fixture
def pants_metric(pants):
    return np.full(pants.num_edges, ACOSH2)


def corpus(seed=0, n_random=10, max_faces=10):
    """Pair of pants, one-holed torus, and seeded random complexes with F <= max_faces."""
    rng = np.random.default_rng(seed)
    surfaces = [make_pair_of_pants(), make_one_holed_torus()]
    for k in range(n_random):
        faces = 2 * int(rng.integers(1, max_faces // 2 + 1))
        surfaces.append(make_random_surface(faces, seed=1000 + k))
    return surfaces


def random_metric(cx, rng, low=0.5, high=2.5):
    return rng.uniform(low, high, cx.num_edges)
