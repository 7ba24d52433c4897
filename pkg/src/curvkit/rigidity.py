"""Equality-case detection and constructive model-space realizations.

When a comparison inequality is attained exactly, the configuration is
forced to embed isometrically into the model space.  These routines build
that embedding and report distance residuals; residuals are diagnostics,
never silently asserted away, because a finite matrix may satisfy a
pointwise equality without extending to any genuinely curved space.
"""

import math
from dataclasses import dataclass

import numpy as np

from .comparison import WeightedStar, direction_gram, lss_form, quadruple_defect
from .errors import BetweennessError, NotEqualityCaseError
from .model_space import (
    ModelConfig,
    exp_from_gram,
    geodesic_point,
    model_distance,
    realize_triangle,
)


@dataclass(eq=False, frozen=True)
class StarEmbedding:
    """Model realization of a zero-form star with distance diagnostics.

    ``config`` holds the basepoint first, then the satellites in star
    order; ``residuals[i, j]`` is the model distance between satellites i
    and j minus their distance in the source space.
    """

    config: ModelConfig
    residuals: np.ndarray
    form_value: float
    tol_zero: float

    @property
    def max_residual(self):
        return float(np.max(np.abs(self.residuals))) if self.residuals.size else 0.0


def embed_star(kappa, star, tol_zero=None):
    """Isometrically realize a star whose quadratic form vanishes.

    The direction Gram matrix at the basepoint is a positive-type kernel
    exactly in the equality case; its factor is exponentiated to points at
    the prescribed radii.  Stars with |form| beyond ``tol_zero`` (default
    scale-aware: 1e-8 times the squared weighted radius sum) are rejected.
    """
    radii = star.radii()
    if kappa > 0.0:
        limit = math.pi / math.sqrt(kappa)
        if np.any(radii >= limit):
            raise ValueError("star points must stay inside the ball of radius pi/sqrt(kappa)")
    value = lss_form(kappa, star)
    scale = float(star.weights @ radii)
    if tol_zero is None:
        tol_zero = 1e-8 * scale * scale
    if math.isinf(value) or abs(value) > tol_zero:
        raise NotEqualityCaseError(
            f"not an equality case: form value {value:.6g} exceeds tolerance {tol_zero:.6g}"
        )

    n = len(star.points)
    live = np.flatnonzero(radii > 0.0)
    if live.size == 0:
        raise ValueError("all star points coincide with the basepoint")
    sub = WeightedStar(
        space=star.space,
        p=star.p,
        points=tuple(star.points[i] for i in live),
        weights=star.weights[live],
    )
    gram = direction_gram(kappa, sub)
    cfg_live = exp_from_gram(kappa, radii[live], gram.matrix)

    ambient = cfg_live.points.shape[1]
    pts = np.empty((n + 1, ambient))
    pts[0] = cfg_live.points[0]
    pts[1:] = cfg_live.points[0]
    for k, i in enumerate(live):
        pts[1 + i] = cfg_live.points[1 + k]
    config = ModelConfig(kappa, cfg_live.dim, pts)

    dsub = star.space.d[np.ix_(star.points, star.points)]
    res = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            res[i, j] = res[j, i] = model_distance(config, 1 + i, 1 + j) - dsub[i, j]
    return StarEmbedding(config=config, residuals=res, form_value=value, tol_zero=tol_zero)


@dataclass(eq=False, frozen=True)
class FlatQuadruple:
    """Realization of a zero-defect quadruple inside a model triangle."""

    config: ModelConfig
    residuals: np.ndarray
    defect: float
    inside: bool

    @property
    def max_residual(self):
        return float(np.max(np.abs(self.residuals)))


def _side_sign(kappa, a, b, p):
    """Orientation of p relative to the geodesic through a and b.

    In every two-dimensional chart the geodesic spans a plane through the
    ambient origin (or is an affine line when flat), so a determinant
    decides the side.
    """
    if kappa == 0.0:
        u = b - a
        v = p - a
        return float(u[0] * v[1] - u[1] * v[0])
    return float(np.linalg.det(np.stack([a, b, p])))


def realize_flat_quadruple(kappa, space, x, y, z, w, tol=1e-8):
    """Realize a quadruple whose comparison angles at x sum to 2*pi.

    The three directions at x are exponentiated from their cosine Gram
    matrix (capped at rank two, the zero-defect case is planar), so the
    angles at the realized basepoint match the comparison angles exactly
    and the triangle (y, z, w) is reproduced around it.  The returned
    residual matrix (point order x, y, z, w) measures every model distance
    against the input; the defect hypothesis forces it to vanish exactly
    when the data comes from a genuinely curved space.  The basepoint must
    avoid the three sides: betweenness within ``tol`` is rejected.
    """
    d = space.d
    defect = quadruple_defect(kappa, space, x, y, z, w)
    if abs(defect) > tol:
        raise NotEqualityCaseError(
            f"quadruple defect {defect:.3g} exceeds tolerance {tol:.3g}"
        )
    for a, b in ((y, z), (z, w), (w, y)):
        slack = d[a, x] + d[x, b] - d[a, b]
        if slack <= tol:
            raise BetweennessError(
                f"point {x} lies on the segment [{a}, {b}] (slack {slack:.3g})"
            )

    star = WeightedStar(space=space, p=x, points=(y, z, w), weights=np.ones(3))
    gram = direction_gram(kappa, star)
    config = exp_from_gram(kappa, star.radii(), gram.matrix, max_rank=2)

    order = (x, y, z, w)
    res = np.zeros((4, 4))
    for i in range(4):
        for j in range(i + 1, 4):
            res[i, j] = res[j, i] = model_distance(config, i, j) - d[order[i], order[j]]

    inside = True
    if config.dim == 2:
        p = config.points
        eps = 1e-9 * max(1.0, float(np.max(np.abs(p))))
        for (a, b, c) in ((1, 2, 3), (2, 3, 1), (3, 1, 2)):
            ref = _side_sign(kappa, p[a], p[b], p[c])
            val = _side_sign(kappa, p[a], p[b], p[0])
            if ref != 0.0 and val * math.copysign(1.0, ref) < -eps:
                inside = False
    return FlatQuadruple(config=config, residuals=res, defect=defect, inside=inside)


def comparison_gap(kappa, space, x, y, z, w, tol_between=1e-9):
    """Excess of d(x, w) over its model comparison value.

    Requires w between y and z; the triangle (x, y, z) is realized in the
    model surface, w is interpolated at the matching arclength fraction,
    and the gap d(x, w) - d_model is returned.  Nonnegative under the
    curvature condition; zero triggers the rigid (isometric) case.
    """
    d = space.d
    base = float(d[y, z])
    if base == 0.0:
        raise BetweennessError("segment [y, z] is degenerate")
    slack = d[y, w] + d[w, z] - base
    if abs(slack) > tol_between:
        raise BetweennessError(
            f"point {w} is not between {y} and {z} (slack {slack:.3g})"
        )
    tri = realize_triangle(kappa, d[x, y], d[x, z], base)
    t = float(d[y, w]) / base
    w_t = geodesic_point(tri, 1, 2, t)
    pts = np.vstack([tri.points, w_t])
    cfg = ModelConfig(kappa, 2, pts)
    return float(d[x, w] - model_distance(cfg, 0, 3))
