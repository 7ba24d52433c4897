"""Trigonometry and geodesic geometry of the constant-curvature model spaces.

A curvature value ``kappa`` selects one of three regimes by its sign:
sphere of radius 1/sqrt(kappa), Euclidean space, or the hyperboloid model
of curvature kappa. Point sets live in explicit coordinate charts:

* kappa > 0: vectors of norm 1/sqrt(kappa) in (n+1)-space, pole on the
  last axis;
* kappa = 0: plain vectors in n-space;
* kappa < 0: future sheet of the unit hyperboloid of the Minkowski form
  -x0^2 + x1^2 + ... + xn^2 = -1/(-kappa), time coordinate first.

All operations are pure functions of immutable inputs.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ChartError, GramIndefiniteError, InvalidTriangleError

# Curvature values are plain floats; the sign is the only branch selector.
Kappa = float

_SERIES_CUTOFF = 1e-8
# Below this value of |kappa| * (a+b+c)^2 a vertex angle is computed in the
# flat regime; the curvature correction is far below double precision.
_FLAT_ANGLE_CUTOFF = 1e-24


def kappa_trig(kappa, r):
    """Generalized sine/cosine pair (S_kappa(r), C_kappa(r)).

    S solves S'' + kappa*S = 0 with S(0)=0, S'(0)=1, and C = S'.  Accepts
    scalars or numpy arrays for ``r``; continuous in kappa at 0, where the
    pair degenerates to (r, 1).
    """
    r_in = np.asarray(r, dtype=float)
    scalar = r_in.ndim == 0
    r = np.atleast_1d(r_in)
    u = kappa * r * r

    s = np.empty_like(r)
    c = np.empty_like(r)
    small = np.abs(u) < _SERIES_CUTOFF
    if np.any(small):
        us = np.where(small, u, 0.0)
        s[small] = (r * (1.0 - us / 6.0 * (1.0 - us / 20.0)))[small]
        c[small] = (1.0 - us / 2.0 * (1.0 - us / 12.0))[small]
    big = ~small
    if np.any(big):
        rt = math.sqrt(abs(kappa))
        x = rt * r[big]
        if kappa > 0:
            s[big] = np.sin(x) / rt
            c[big] = np.cos(x)
        else:
            s[big] = np.sinh(x) / rt
            c[big] = np.cosh(x)
    if scalar:
        return float(s[0]), float(c[0])
    return s, c


def _stretch(kappa, x):
    """sin, identity or sinh of x depending on the curvature regime."""
    if kappa > 0:
        return np.sin(x)
    if kappa < 0:
        return np.sinh(x)
    return x


def vertex_angle(kappa, a, b, c, tol_clamp=1e-10):
    """Angle at the vertex between sides a and b of the model triangle (a, b, c).

    This is the law-of-cosines angle, evaluated through the half-angle
    (semiperimeter) form, which stays accurate for nearly degenerate
    triangles.  Inputs violating the triangle inequality by more than the
    equivalent of ``tol_clamp`` on the cosine are rejected.

    Requires a > 0, b > 0, and, for kappa > 0, a+b+c < 2*pi/sqrt(kappa).
    """
    if a <= 0.0 or b <= 0.0:
        raise ValueError(f"angle undefined for zero side lengths ({a}, {b})")
    if a < b:
        a, b = b, a
    # Ordered differences keep the half-slacks 2(s-a), 2(s-b), 2(s-c)
    # accurate when the triangle degenerates.
    sa2 = c - (a - b)
    sb2 = c + (a - b)
    sc2 = (a - (c - b)) if c >= b else (a + (b - c))
    tws = a + (b + c)

    if kappa != 0.0 and abs(kappa) * tws * tws >= _FLAT_ANGLE_CUTOFF:
        h = 0.5 * math.sqrt(abs(kappa))
        kap = kappa
    else:
        h = 0.5
        kap = 0.0
    f = lambda x: _stretch(kap, h * x)
    p1 = f(sa2) * f(sb2)
    p2 = f(tws) * f(sc2)
    fa = f(2.0 * a)
    fb = f(2.0 * b)
    lim = 0.5 * tol_clamp * fa * fb
    if p1 < 0.0:
        if -p1 > lim:
            raise InvalidTriangleError(
                f"sides ({a:.17g}, {b:.17g}, {c:.17g}) violate |a-b| <= c beyond tolerance"
            )
        p1 = 0.0
    if p2 < 0.0:
        if -p2 > lim:
            raise InvalidTriangleError(
                f"sides ({a:.17g}, {b:.17g}, {c:.17g}) violate c <= a+b beyond tolerance"
            )
        p2 = 0.0
    return 2.0 * math.atan2(math.sqrt(p1), math.sqrt(p2))


def vertex_angles_grid(kappa, dx, d, valid, tol_clamp=1e-10):
    """Vectorized vertex angles at one basepoint.

    ``dx`` is the row of distances from the basepoint, ``d`` the full
    distance matrix.  Entry (y, z) is the angle between sides dx[y], dx[z]
    with opposite side d[y, z]; entries where ``valid`` is False are NaN.
    Used by the pure-python sweep backend.
    """
    a0 = dx[:, None]
    b0 = dx[None, :]
    hi = np.maximum(a0, b0)
    lo = np.minimum(a0, b0)
    c = d
    sa2 = c - (hi - lo)
    sb2 = c + (hi - lo)
    sc2 = np.where(c >= lo, hi - (c - lo), hi + (lo - c))
    tws = hi + (lo + c)

    if kappa != 0.0 and abs(kappa) * np.max(tws) ** 2 >= _FLAT_ANGLE_CUTOFF:
        h = 0.5 * math.sqrt(abs(kappa))
        kap = kappa
    else:
        h = 0.5
        kap = 0.0
    p1 = _stretch(kap, h * sa2) * _stretch(kap, h * sb2)
    p2 = _stretch(kap, h * tws) * _stretch(kap, h * sc2)
    fa = _stretch(kap, 2.0 * h * hi)
    fb = _stretch(kap, 2.0 * h * lo)
    lim = 0.5 * tol_clamp * fa * fb
    bad = valid & ((p1 < -lim) | (p2 < -lim))
    if np.any(bad):
        y, z = np.argwhere(bad)[0]
        raise InvalidTriangleError(
            f"triangle through pair ({y}, {z}) inadmissible beyond clamp tolerance"
        )
    p1 = np.clip(p1, 0.0, None)
    p2 = np.clip(p2, 0.0, None)
    ang = 2.0 * np.arctan2(np.sqrt(p1), np.sqrt(p2))
    ang[~valid] = np.nan
    return ang


@dataclass(eq=False)
class ModelConfig:
    """A labeled list of coordinate vectors in one chart of a model space.

    ``dim`` is the model dimension n; the ambient dimension is n for the
    flat chart and n+1 otherwise.
    """

    kappa: float
    dim: int
    points: np.ndarray
    tol_chart: float = field(default=1e-12, repr=False)

    def __post_init__(self):
        self.points = np.asarray(self.points, dtype=float)
        if self.points.ndim != 2:
            raise ChartError("points must be a 2d array")
        ambient = self.dim if self.kappa == 0.0 else self.dim + 1
        if self.points.shape[1] != ambient:
            raise ChartError(
                f"expected ambient dimension {ambient}, got {self.points.shape[1]}"
            )
        _check_chart(self.kappa, self.points, self.tol_chart)

    @property
    def n_points(self):
        return self.points.shape[0]

    @property
    def radius(self):
        """Model radius 1/sqrt(|kappa|); infinity in the flat regime."""
        if self.kappa == 0.0:
            return math.inf
        return 1.0 / math.sqrt(abs(self.kappa))


def _check_chart(kappa, points, tol):
    if kappa > 0.0:
        r2 = 1.0 / kappa
        sq = np.sum(points * points, axis=1)
        bad = np.abs(sq - r2) > tol * max(r2, 1.0) * 10.0
    elif kappa < 0.0:
        r2 = -1.0 / kappa
        sq = _mink_dot(points, points)
        bad = (np.abs(sq + r2) > tol * max(r2, 1.0) * 10.0) | (points[:, 0] <= 0.0)
    else:
        return
    if np.any(bad):
        i = int(np.argmax(bad))
        raise ChartError(f"point {i} violates the chart constraint")


def _mink_dot(u, v):
    """Minkowski bilinear form with signature (-, +, ..., +)."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    prod = u * v
    return prod[..., 1:].sum(axis=-1) - prod[..., 0]


def _ambient_dot(kappa, u, v):
    if kappa < 0.0:
        return _mink_dot(u, v)
    return (np.asarray(u) * np.asarray(v)).sum(axis=-1)


def origin(kappa, dim):
    """Chart origin: the pole for curved regimes, zero vector when flat."""
    if kappa == 0.0:
        return np.zeros(dim)
    r = 1.0 / math.sqrt(abs(kappa))
    p = np.zeros(dim + 1)
    if kappa > 0.0:
        p[-1] = r
    else:
        p[0] = r
    return p


def _tangent_slots(kappa, dim):
    """Ambient coordinate indices spanning the tangent space at the origin."""
    if kappa > 0.0:
        return list(range(dim))
    if kappa < 0.0:
        return list(range(1, dim + 1))
    return list(range(dim))


def model_distance(cfg, i, j):
    """Intrinsic distance between points i and j of a configuration."""
    u = cfg.points[i]
    v = cfg.points[j]
    if cfg.kappa == 0.0:
        return float(np.linalg.norm(u - v))
    r = cfg.radius
    if cfg.kappa > 0.0:
        theta = 2.0 * math.atan2(np.linalg.norm(u - v), np.linalg.norm(u + v))
        return r * theta
    q = _mink_dot(u - v, u - v)
    q = max(float(q), 0.0)
    return 2.0 * r * math.asinh(math.sqrt(q) / (2.0 * r))


def distance_matrix(cfg):
    """All pairwise intrinsic distances of a configuration."""
    m = cfg.n_points
    d = np.zeros((m, m))
    for i in range(m):
        for j in range(i + 1, m):
            d[i, j] = d[j, i] = model_distance(cfg, i, j)
    return d


def _unit_tangent_toward(kappa, base, target):
    """Unit tangent vector at ``base`` pointing along the geodesic to ``target``."""
    if kappa == 0.0:
        w = target - base
        n = np.linalg.norm(w)
        if n == 0.0:
            raise ValueError("coincident points have no direction")
        return w / n
    r2 = _ambient_dot(kappa, base, base)
    w = target - (_ambient_dot(kappa, base, target) / r2) * base
    n2 = _ambient_dot(kappa, w, w)
    if n2 <= 0.0:
        raise ValueError("coincident or antipodal points have no unique direction")
    return w / math.sqrt(n2)


def _exp(kappa, base, direction, dist):
    """Geodesic flow from ``base`` along a unit tangent for arclength ``dist``."""
    if kappa == 0.0:
        return base + dist * direction
    r = 1.0 / math.sqrt(abs(kappa))
    t = dist / r
    if kappa > 0.0:
        return math.cos(t) * base + r * math.sin(t) * direction
    return math.cosh(t) * base + r * math.sinh(t) * direction


def geodesic_point(cfg, i, j, t):
    """Point at parameter t in [0, 1] along the geodesic from i to j.

    Arclength from i is t*d(i, j).  The endpoints must be distinct, and for
    kappa > 0 non-antipodal so that the geodesic is unique.
    """
    if not 0.0 <= t <= 1.0:
        raise ValueError(f"t={t} outside [0, 1]")
    u = cfg.points[i]
    v = cfg.points[j]
    dist = model_distance(cfg, i, j)
    if dist == 0.0:
        raise ValueError("coincident endpoints")
    if cfg.kappa > 0.0 and dist >= math.pi * cfg.radius * (1.0 - 1e-9):
        raise ValueError("antipodal endpoints: geodesic not unique")
    if cfg.kappa == 0.0:
        return (1.0 - t) * u + t * v
    r = cfg.radius
    theta = dist / r
    if cfg.kappa > 0.0:
        s = math.sin(theta)
        return (math.sin((1.0 - t) * theta) * u + math.sin(t * theta) * v) / s
    s = math.sinh(theta)
    return (math.sinh((1.0 - t) * theta) * u + math.sinh(t * theta) * v) / s


def realize_triangle(kappa, a, b, c, tol_clamp=1e-10):
    """Place a triangle with side lengths (a, b, c) in the model surface.

    Returns a 3-point configuration with d(0,1)=a, d(0,2)=b, d(1,2)=c.
    Canonical placement: point 0 at the chart origin, point 1 along the
    first tangent axis, point 2 with nonnegative second tangent coordinate.
    """
    for name, s in (("a", a), ("b", b), ("c", c)):
        if s < 0.0 or not math.isfinite(s):
            raise InvalidTriangleError(f"side {name}={s} must be finite and nonnegative")
    if kappa > 0.0:
        # The boundary perimeter (a closed great circle) is still realizable,
        # so only reject beyond the clamp tolerance.
        bound = 2.0 * math.pi / math.sqrt(kappa)
        if a + b + c > bound * (1.0 + tol_clamp):
            raise InvalidTriangleError(
                f"perimeter {a + b + c:.17g} exceeds the bound 2*pi/sqrt(kappa)"
            )
    scale = max(a, b, c)
    if scale == 0.0:
        p = origin(kappa, 2)
        return ModelConfig(kappa, 2, np.array([p, p, p]))
    if a + b < c - tol_clamp * scale or a + c < b - tol_clamp * scale or b + c < a - tol_clamp * scale:
        raise InvalidTriangleError(f"sides ({a}, {b}, {c}) violate the triangle inequality")

    p0 = origin(kappa, 2)
    s1, s2 = _tangent_slots(kappa, 2)
    e1 = np.zeros(p0.shape)
    e1[s1] = 1.0
    e2 = np.zeros(p0.shape)
    e2[s2] = 1.0

    if a == 0.0:
        p1 = p0.copy()
        p2 = _exp(kappa, p0, e1, b)
        return ModelConfig(kappa, 2, np.array([p0, p1, p2]))
    p1 = _exp(kappa, p0, e1, a)
    if b == 0.0:
        p2 = p0.copy()
    else:
        gamma = vertex_angle(kappa, a, b, c, tol_clamp=tol_clamp)
        direction = math.cos(gamma) * e1 + math.sin(gamma) * e2
        p2 = _exp(kappa, p0, direction, b)
    return ModelConfig(kappa, 2, np.array([p0, p1, p2]))


def exp_from_gram(kappa, radii, gram, tol_psd=1e-8, rank_rtol=1e-10, max_rank=None):
    """Exponentiate a direction Gram factor into a model-space point set.

    ``gram`` holds cosines of the pairwise angles between the directions
    from a basepoint to N satellite points; ``radii`` the distances to
    them.  The returned configuration has the basepoint first, then the N
    satellites, inside the minimal-rank model space that carries the data;
    ``max_rank`` truncates the factor when the target dimension is known.

    Negative eigenvalues within ``tol_psd`` of zero are projected away;
    anything lower raises GramIndefiniteError with the witness eigenvector.
    """
    g = np.asarray(getattr(gram, "matrix", gram), dtype=float)
    radii = np.asarray(radii, dtype=float)
    n = radii.shape[0]
    if g.shape != (n, n):
        raise ValueError(f"gram shape {g.shape} does not match {n} radii")
    if np.any(radii <= 0.0):
        raise ValueError("radii must be positive")
    if np.max(np.abs(g - g.T)) > 1e-12:
        raise ValueError("gram matrix must be symmetric")
    if np.max(np.abs(np.diag(g) - 1.0)) > 1e-12:
        raise ValueError("gram matrix must have unit diagonal")
    if np.max(np.abs(g)) > 1.0 + tol_psd:
        raise GramIndefiniteError(np.min(np.linalg.eigvalsh(g)), None)
    if kappa > 0.0 and np.any(radii >= math.pi / math.sqrt(kappa)):
        raise ValueError("radii must stay below pi/sqrt(kappa)")

    w, v = np.linalg.eigh(g)
    if w[0] < -tol_psd:
        raise GramIndefiniteError(w[0], v[:, 0])
    w = np.clip(w, 0.0, None)
    keep = w > rank_rtol * w[-1] if w[-1] > 0.0 else np.zeros_like(w, dtype=bool)
    if max_rank is not None and np.count_nonzero(keep) > max_rank:
        order = np.argsort(w)
        keep = np.zeros_like(keep)
        keep[order[-max_rank:]] = True
    rank = max(int(np.count_nonzero(keep)), 1)
    u = v[:, keep] * np.sqrt(w[keep])
    if u.shape[1] < rank:
        u = np.zeros((n, rank))
    norms = np.linalg.norm(u, axis=1)
    norms[norms == 0.0] = 1.0
    u = u / norms[:, None]

    if kappa == 0.0:
        pts = np.zeros((n + 1, rank))
        pts[1:] = radii[:, None] * u
        return ModelConfig(kappa, rank, pts)
    r = 1.0 / math.sqrt(abs(kappa))
    t = radii / r
    pts = np.zeros((n + 1, rank + 1))
    if kappa > 0.0:
        pts[0, -1] = r
        pts[1:, :-1] = r * np.sin(t)[:, None] * u
        pts[1:, -1] = r * np.cos(t)
    else:
        pts[0, 0] = r
        pts[1:, 1:] = r * np.sinh(t)[:, None] * u
        pts[1:, 0] = r * np.cosh(t)
    return ModelConfig(kappa, rank, pts)


def place_at_angle(cfg, base, toward, side, angle, dist):
    """Point at ``dist`` from ``base`` whose direction makes ``angle`` with
    the direction toward ``toward``, rotated into the half-plane of ``side``.

    Only meaningful for two-dimensional configurations.
    """
    if cfg.dim != 2:
        raise ValueError("angular placement requires a 2d configuration")
    kappa = cfg.kappa
    p = cfg.points[base]
    t1 = _unit_tangent_toward(kappa, p, cfg.points[toward])
    t2 = _tangent_complement(kappa, p, t1, _unit_tangent_toward(kappa, p, cfg.points[side]))
    direction = math.cos(angle) * t1 + math.sin(angle) * t2
    return _exp(kappa, p, direction, dist)


def _tangent_complement(kappa, p, t1, hint):
    """Unit tangent at p orthogonal to t1, oriented toward ``hint``.

    When the hint is collinear with t1 (degenerate configuration) a fixed
    coordinate probe picks the completion, keeping placements deterministic.
    """
    candidates = [hint]
    probes = np.eye(p.shape[0])
    candidates.extend(probes)
    for cand in candidates:
        t2 = cand - _ambient_dot(kappa, t1, cand) * t1
        if kappa != 0.0:
            r2 = _ambient_dot(kappa, p, p)
            t2 = t2 - (_ambient_dot(kappa, p, t2) / r2) * p
        n2 = _ambient_dot(kappa, t2, t2)
        if n2 > 1e-12:
            return t2 / math.sqrt(n2)
    raise ValueError("no tangent direction complements the base direction")
