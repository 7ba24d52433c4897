import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

import curvkit as ck
from curvkit.model_space import origin, place_at_angle


def test_kappa_trig_flat():
    assert ck.kappa_trig(0.0, 3.0) == (3.0, 1.0)


def test_kappa_trig_sphere_quarter():
    s, c = ck.kappa_trig(1.0, math.pi / 2)
    assert s == pytest.approx(1.0, abs=1e-15)
    assert c == pytest.approx(0.0, abs=1e-15)


def test_kappa_trig_hyperbolic_matches_libm():
    s, c = ck.kappa_trig(-1.0, 1.0)
    assert s == pytest.approx(math.sinh(1.0), rel=1e-15)
    assert c == pytest.approx(math.cosh(1.0), rel=1e-15)


def test_kappa_trig_continuous_at_zero():
    for kap in (1e-12, -1e-12, 1e-9, -1e-9):
        s, c = ck.kappa_trig(kap, 2.0)
        assert s == pytest.approx(2.0, rel=1e-8)
        assert c == pytest.approx(1.0, rel=1e-8)


def test_kappa_trig_vectorized():
    r = np.array([0.0, 1.0, 2.5])
    s, c = ck.kappa_trig(-0.5, r)
    assert s.shape == r.shape
    assert s[0] == 0.0 and c[0] == 1.0


@given(
    st.floats(min_value=-5.0, max_value=5.0),
    st.floats(min_value=0.0, max_value=5.0),
)
def test_kappa_trig_pythagorean_identity(kappa, r):
    s, c = ck.kappa_trig(kappa, r)
    assert abs(c * c + kappa * s * s - 1.0) <= 1e-12 * max(1.0, c * c)


def test_model_distance_flat():
    cfg = ck.ModelConfig(0.0, 2, [[0.0, 0.0], [3.0, 4.0]])
    assert ck.model_distance(cfg, 0, 1) == 5.0


def test_model_distance_sphere_quarter_circle():
    cfg = ck.ModelConfig(1.0, 2, [[0.0, 0.0, 1.0], [1.0, 0.0, 0.0]])
    assert ck.model_distance(cfg, 0, 1) == pytest.approx(math.pi / 2, rel=1e-15)


def test_model_distance_hyperboloid_unit_step():
    # cosh d = -<u, v> for the Minkowski form: parameters 0 and 1 along a
    # geodesic are exactly distance 1 apart.
    u = np.array([1.0, 0.0, 0.0])
    v = np.array([math.cosh(1.0), math.sinh(1.0), 0.0])
    cfg = ck.ModelConfig(-1.0, 2, [u, v])
    assert ck.model_distance(cfg, 0, 1) == pytest.approx(1.0, rel=1e-14)


def test_model_distance_symmetry_and_zero():
    cfg = ck.sphere_sample(6, 2, 1.0, seed=0).config
    for i in range(6):
        assert ck.model_distance(cfg, i, i) == 0.0
        for j in range(i):
            assert ck.model_distance(cfg, i, j) == ck.model_distance(cfg, j, i)


def test_chart_violation_rejected():
    with pytest.raises(ck.ChartError):
        ck.ModelConfig(1.0, 2, [[0.0, 0.0, 1.1]])
    with pytest.raises(ck.ChartError):
        ck.ModelConfig(-1.0, 2, [[-1.0, 0.0, 0.0]])  # past sheet only


def test_geodesic_point_flat_midpoint():
    cfg = ck.ModelConfig(0.0, 2, [[0.0, 0.0], [2.0, 0.0]])
    assert np.allclose(ck.geodesic_point(cfg, 0, 1, 0.5), [1.0, 0.0])


def test_geodesic_point_endpoints():
    for gen in (
        ck.sphere_sample(2, 2, 1.0, seed=1),
        ck.euclidean_sample(2, 2, seed=1),
        ck.hyperbolic_sample(2, 2, -1.0, seed=1),
    ):
        cfg = gen.config
        assert np.allclose(ck.geodesic_point(cfg, 0, 1, 0.0), cfg.points[0])
        assert np.allclose(ck.geodesic_point(cfg, 0, 1, 1.0), cfg.points[1])


def test_geodesic_point_sphere_latitude():
    cfg = ck.ModelConfig(1.0, 2, [[0.0, 0.0, 1.0], [1.0, 0.0, 0.0]])
    mid = ck.geodesic_point(cfg, 0, 1, 0.5)
    expected = np.array([math.sin(math.pi / 4), 0.0, math.cos(math.pi / 4)])
    assert np.allclose(mid, expected, atol=1e-15)


def test_geodesic_point_additivity_random():
    rng = np.random.default_rng(5)
    for trial in range(100):
        kind = trial % 3
        seed = int(rng.integers(0, 2**31))
        if kind == 0:
            cfg = ck.sphere_sample(2, 3, 1.0, seed=seed).config
            kap = 1.0
        elif kind == 1:
            cfg = ck.euclidean_sample(2, 3, seed=seed).config
            kap = 0.0
        else:
            cfg = ck.hyperbolic_sample(2, 3, -1.0, seed=seed).config
            kap = -1.0
        dist = ck.model_distance(cfg, 0, 1)
        if dist < 1e-6 or (kap > 0 and dist > math.pi - 1e-6):
            continue
        t = float(rng.uniform(0.0, 1.0))
        mid = ck.geodesic_point(cfg, 0, 1, t)
        c3 = ck.ModelConfig(kap, 3, np.vstack([cfg.points, mid]))
        assert ck.model_distance(c3, 0, 2) == pytest.approx(t * dist, abs=1e-12)
        assert ck.model_distance(c3, 2, 1) == pytest.approx((1 - t) * dist, abs=1e-12)


def test_geodesic_point_rejects_degenerate():
    cfg = ck.ModelConfig(0.0, 2, [[0.0, 0.0], [0.0, 0.0]])
    with pytest.raises(ValueError):
        ck.geodesic_point(cfg, 0, 1, 0.5)
    anti = ck.ModelConfig(1.0, 2, [[0.0, 0.0, 1.0], [0.0, 0.0, -1.0]])
    with pytest.raises(ValueError):
        ck.geodesic_point(anti, 0, 1, 0.5)


def test_realize_triangle_right():
    cfg = ck.realize_triangle(0.0, 3.0, 4.0, 5.0)
    assert ck.model_distance(cfg, 0, 1) == pytest.approx(3.0, rel=1e-15)
    assert ck.model_distance(cfg, 0, 2) == pytest.approx(4.0, rel=1e-15)
    assert ck.model_distance(cfg, 1, 2) == pytest.approx(5.0, rel=1e-14)


def test_realize_triangle_octant():
    cfg = ck.realize_triangle(1.0, math.pi / 2, math.pi / 2, math.pi / 2)
    # canonical placement: pole, meridian point on the first axis, third
    # point with nonnegative second coordinate
    assert np.allclose(cfg.points[0], [0.0, 0.0, 1.0], atol=1e-15)
    assert np.allclose(cfg.points[1], [1.0, 0.0, 0.0], atol=1e-15)
    assert np.allclose(cfg.points[2], [0.0, 1.0, 0.0], atol=1e-15)


def test_realize_triangle_violation():
    with pytest.raises(ck.InvalidTriangleError):
        ck.realize_triangle(0.0, 1.0, 1.0, 3.0)


def test_realize_triangle_perimeter_bound():
    with pytest.raises(ck.InvalidTriangleError):
        ck.realize_triangle(1.0, 3.0, 3.0, 1.0)


def test_realize_triangle_roundtrip_random():
    rng = np.random.default_rng(11)
    for trial in range(1000):
        kap = (-1.0, 0.0, 1.0)[trial % 3]
        a, b = rng.uniform(0.1, 1.2, size=2)
        c = rng.uniform(abs(a - b) + 1e-3, a + b - 1e-3)
        cfg = ck.realize_triangle(kap, a, b, c)
        assert ck.model_distance(cfg, 0, 1) == pytest.approx(a, rel=1e-12, abs=1e-12)
        assert ck.model_distance(cfg, 0, 2) == pytest.approx(b, rel=1e-12, abs=1e-12)
        assert ck.model_distance(cfg, 1, 2) == pytest.approx(c, rel=1e-12, abs=1e-12)


def test_exp_from_gram_antipodes():
    cfg = ck.exp_from_gram(0.0, [1.0, 1.0], [[1.0, -1.0], [-1.0, 1.0]])
    assert cfg.dim == 1
    assert ck.model_distance(cfg, 1, 2) == pytest.approx(2.0, abs=1e-15)


def test_exp_from_gram_equatorial_triple():
    g = np.full((3, 3), -0.5)
    np.fill_diagonal(g, 1.0)
    r = math.pi / 2
    cfg = ck.exp_from_gram(1.0, [r, r, r], g)
    assert cfg.dim == 2
    for i in (1, 2, 3):
        assert ck.model_distance(cfg, 0, i) == pytest.approx(r, abs=1e-14)
    for i, j in ((1, 2), (1, 3), (2, 3)):
        assert ck.model_distance(cfg, i, j) == pytest.approx(2 * math.pi / 3, abs=1e-13)


def test_exp_from_gram_rejects_out_of_range():
    with pytest.raises((ck.GramIndefiniteError, ValueError)):
        ck.exp_from_gram(0.0, [1.0, 1.0], [[1.0, 2.0], [2.0, 1.0]])


def test_exp_from_gram_indefinite_witness():
    g = np.array([
        [1.0, 0.9, -0.9],
        [0.9, 1.0, 0.9],
        [-0.9, 0.9, 1.0],
    ])
    with pytest.raises(ck.GramIndefiniteError) as exc:
        ck.exp_from_gram(0.0, [1.0, 1.0, 1.0], g)
    assert exc.value.eigenvalue < -1e-8
    assert exc.value.eigenvector is not None


def test_exp_from_gram_angle_roundtrip():
    rng = np.random.default_rng(3)
    for kap in (-1.0, 0.0, 1.0):
        u = rng.standard_normal((4, 3))
        u /= np.linalg.norm(u, axis=1)[:, None]
        g = np.clip(u @ u.T, -1.0, 1.0)
        np.fill_diagonal(g, 1.0)
        radii = rng.uniform(0.3, 1.2, size=4)
        cfg = ck.exp_from_gram(kap, radii, g)
        d = ck.distance_matrix(cfg)
        sp = ck.validate_metric(d)
        for i in range(4):
            for j in range(i + 1, 4):
                ang = ck.comparison_angle(kap, sp, 0, 1 + i, 1 + j)
                assert ang == pytest.approx(math.acos(g[i, j]), abs=1e-8)


def test_place_at_angle_flat_square_corner():
    cfg = ck.realize_triangle(0.0, 1.0, 1.0, math.sqrt(2.0))
    placed = place_at_angle(cfg, 0, 1, 2, math.pi / 4, math.sqrt(0.5))
    assert np.allclose(placed, [0.5, 0.5], atol=1e-15)


def test_origin_charts():
    assert np.allclose(origin(0.0, 3), np.zeros(3))
    assert np.allclose(origin(4.0, 2), [0.0, 0.0, 0.5])
    assert np.allclose(origin(-4.0, 2), [0.5, 0.0, 0.0])
