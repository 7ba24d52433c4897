import math

import numpy as np
import pytest

import curvkit as ck


@pytest.fixture
def pole_equator_space():
    """Pole plus three equally spaced equator points of the unit sphere."""
    d = np.zeros((4, 4))
    for i in (1, 2, 3):
        d[0, i] = d[i, 0] = math.pi / 2
    for i, j in ((1, 2), (1, 3), (2, 3)):
        d[i, j] = d[j, i] = 2 * math.pi / 3
    return ck.validate_metric(d, labels=("pole", "e1", "e2", "e3"))


@pytest.fixture
def tripod_space():
    return ck.tripod().space


@pytest.fixture
def collinear_space():
    pos = np.array([0.0, 1.0, 2.0, 3.0])
    return ck.validate_metric(np.abs(pos[:, None] - pos[None, :]))


def planar_space(points):
    cfg = ck.ModelConfig(0.0, 2, np.asarray(points, dtype=float))
    return ck.validate_metric(ck.distance_matrix(cfg)), cfg


def centroid_quadruple_space():
    tri = np.array([[0.0, 0.0], [1.0, 0.0], [0.5, math.sqrt(3) / 2]])
    return planar_space(np.vstack([tri.mean(axis=0), tri]))[0]


def random_uniform_metric(n, rng):
    m = rng.uniform(1.0, 2.0, size=(n, n))
    m = 0.5 * (m + m.T)
    np.fill_diagonal(m, 0.0)
    return ck.validate_metric(m)
