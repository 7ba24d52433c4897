"""Curvature-comparison quantities on finite metric data.

Everything here reduces a metric configuration to model-space
trigonometry: the comparison angle at a vertex, the induced inner product
of two directions, the quadruple angle-sum defect, and the quadratic forms
whose signs characterize a curvature lower bound.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import UndefinedAngleError
from .metric_core import FiniteMetricSpace
from .model_space import kappa_trig, vertex_angle, vertex_angles_grid

TWO_PI = 2.0 * math.pi


@dataclass(eq=False, frozen=True)
class WeightedStar:
    """A basepoint with weighted satellite points in a common space.

    The basepoint may or may not be among the satellites; weights must be
    strictly positive.
    """

    space: FiniteMetricSpace
    p: int
    points: tuple
    weights: np.ndarray = field(repr=False)

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(int(i) for i in self.points))
        w = np.asarray(self.weights, dtype=float)
        if w.shape != (len(self.points),):
            raise ValueError("one weight per point required")
        if np.any(w <= 0.0) or not np.all(np.isfinite(w)):
            raise ValueError("weights must be positive and finite")
        n = self.space.n
        for i in (self.p, *self.points):
            if not 0 <= int(i) < n:
                raise IndexError(f"point index {i} out of range")
        w = w.copy()
        w.setflags(write=False)
        object.__setattr__(self, "weights", w)

    @property
    def size(self):
        return len(self.points)

    def radii(self):
        return self.space.d[self.p, list(self.points)]

    def normalized(self):
        """Same star with weights rescaled to total mass one."""
        return WeightedStar(
            space=self.space,
            p=self.p,
            points=self.points,
            weights=self.weights / self.weights.sum(),
        )


@dataclass(eq=False, frozen=True)
class DirectionGram:
    """Cosines of the pairwise comparison angles at a common basepoint."""

    matrix: np.ndarray

    def __post_init__(self):
        g = np.asarray(self.matrix, dtype=float)
        if g.ndim != 2 or g.shape[0] != g.shape[1]:
            raise ValueError("gram matrix must be square")
        if np.max(np.abs(g - g.T)) > 1e-12:
            raise ValueError("gram matrix must be symmetric")
        if g.shape[0] and np.max(np.abs(np.diag(g) - 1.0)) > 1e-12:
            raise ValueError("gram matrix must have unit diagonal")
        if g.shape[0] and np.max(np.abs(g)) > 1.0 + 1e-9:
            raise ValueError("gram entries must lie in [-1, 1]")
        g = g.copy()
        np.fill_diagonal(g, 1.0)
        g.setflags(write=False)
        object.__setattr__(self, "matrix", g)

    def __array__(self, dtype=None, copy=None):
        return np.array(self.matrix, dtype=dtype)

    @property
    def size(self):
        return self.matrix.shape[0]


def comparison_angle(kappa, space, x, y, z, tol_clamp=1e-10):
    """Comparison angle at x between y and z, in [0, pi].

    For kappa > 0 the angle is only defined while the triangle perimeter
    stays below 2*pi/sqrt(kappa); beyond that the infinity flag is
    returned.  Zero adjacent sides raise: the degenerate conventions live
    in :func:`kappa_inner_product`.
    """
    d = space.d
    a = float(d[x, y])
    b = float(d[x, z])
    if a == 0.0 or b == 0.0:
        raise UndefinedAngleError(f"zero side in angle at {x} between {y}, {z}")
    c = float(d[y, z])
    if kappa > 0.0 and a + b + c >= TWO_PI / math.sqrt(kappa):
        return math.inf
    return vertex_angle(kappa, a, b, c, tol_clamp=tol_clamp)


def kappa_inner_product(kappa, space, p, x, y, tol_clamp=1e-10):
    """Inner product of the directions from p to x and from p to y.

    Equals d(p,x) d(p,y) cos of the comparison angle, with two degenerate
    conventions: 0 whenever either distance vanishes, +infinity when
    kappa > 0 and the angle is undefined.
    """
    d = space.d
    a = float(d[p, x])
    b = float(d[p, y])
    if a == 0.0 or b == 0.0:
        return 0.0
    ang = comparison_angle(kappa, space, p, x, y, tol_clamp=tol_clamp)
    if math.isinf(ang):
        return math.inf
    return a * b * math.cos(ang)


def quadruple_defect(kappa, space, x, y, z, w, tol_clamp=1e-10):
    """Angle-sum defect 2*pi - sum of the three comparison angles at x.

    Nonnegative for every quadruple exactly when the space satisfies the
    curvature->=kappa comparison condition.  Raises when an angle at x is
    undefined (zero side, or the kappa > 0 perimeter bound).
    """
    total = 0.0
    for u, v in ((y, z), (z, w), (w, y)):
        ang = comparison_angle(kappa, space, x, u, v, tol_clamp=tol_clamp)
        if math.isinf(ang):
            raise UndefinedAngleError(
                f"angle at {x} between {u}, {v} undefined at kappa={kappa:.6g}"
            )
        total += ang
    return TWO_PI - total


def _cos_gram_at_base(kappa, radii, dsub, tol_clamp=1e-10):
    """Cosine Gram matrix of the directions from a basepoint.

    ``radii`` are the distances from the base to N points, ``dsub`` their
    pairwise distances.  Entries where either radius vanishes are NaN;
    entries undefined because of the kappa > 0 perimeter bound are +inf.
    """
    n = len(radii)
    radii = np.asarray(radii, dtype=float)
    dsub = np.asarray(dsub, dtype=float)
    pos = radii > 0.0
    valid = pos[:, None] & pos[None, :]
    g = np.full((n, n), np.nan)
    if not np.any(valid):
        return g
    if kappa > 0.0:
        peri = radii[:, None] + radii[None, :] + dsub
        over = valid & (peri >= TWO_PI / math.sqrt(kappa))
        valid = valid & ~over
    ang = vertex_angles_grid(kappa, radii, dsub, valid, tol_clamp=tol_clamp)
    g[valid] = np.cos(ang[valid])
    if kappa > 0.0 and np.any(over):
        g[over] = np.inf
    return g


def direction_gram(kappa, star, tol_clamp=1e-10):
    """DirectionGram of a star whose satellites are all distinct from p."""
    radii = star.radii()
    if np.any(radii == 0.0):
        raise UndefinedAngleError("directions undefined for points coinciding with p")
    dsub = star.space.d[np.ix_(star.points, star.points)]
    g = _cos_gram_at_base(kappa, radii, dsub, tol_clamp=tol_clamp)
    if np.any(np.isinf(g)):
        raise UndefinedAngleError("inconsistent angle data: undefined comparison angle")
    return DirectionGram(matrix=g)


def lss_form(kappa, star, tol_clamp=1e-10):
    """Weighted double sum of pairwise direction inner products at p.

    The diagonal contributes the squared distances; any +infinity inner
    product makes the whole sum +infinity (vacuously nonnegative).  The
    sign of this form over all weight choices characterizes the curvature
    lower bound.
    """
    radii = star.radii()
    lam = star.weights
    dsub = star.space.d[np.ix_(star.points, star.points)]
    g = _cos_gram_at_base(kappa, radii, dsub, tol_clamp=tol_clamp)
    prods = np.outer(radii, radii) * g
    prods[np.isnan(g)] = 0.0
    if np.any(np.isinf(g)):
        return math.inf
    return float(lam @ prods @ lam)


def sturm_slack(kappa, star, tol_clamp=1e-10):
    """Slack of the quadratic-mean comparison form for kappa <= 0.

    Weights are normalized to total mass one before evaluation; under that
    normalization the slack has the same sign as :func:`lss_form` on the
    same star.  Positive curvature parameters are rejected.
    """
    if kappa > 0.0:
        raise ValueError("sturm_slack is defined for kappa <= 0 only")
    star = star.normalized()
    lam = star.weights
    radii = star.radii()
    dsub = star.space.d[np.ix_(star.points, star.points)]
    if kappa == 0.0:
        return float(2.0 * lam @ (radii**2) - lam @ (dsub**2) @ lam)
    _, c_base = kappa_trig(kappa, radii)
    _, c_pair = kappa_trig(kappa, dsub)
    return float((lam @ c_base) ** 2 - lam @ c_pair @ lam)


def bn_cosq(space, a, b, c, d):
    """Quasilinearized cosine of the pair of segments (a, b) and (c, d).

    Values <= 1 over all quadruples characterize nonpositive curvature in
    the triangle-comparison (CAT) sense among geodesic spaces; positive
    lower curvature bounds violate it.
    """
    dm = space.d
    ab = float(dm[a, b])
    cd = float(dm[c, d])
    if ab == 0.0 or cd == 0.0:
        raise ValueError("degenerate segment: endpoints coincide")
    num = dm[a, d] ** 2 + dm[b, c] ** 2 - dm[a, c] ** 2 - dm[b, d] ** 2
    return float(num / (2.0 * ab * cd))
