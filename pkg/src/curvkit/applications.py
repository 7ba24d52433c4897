"""Packing radius, quadrilateral inequality, metric transforms, generators."""

import math
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .comparison import WeightedStar
from .errors import GramIndefiniteError
from .metric_core import FiniteMetricSpace, validate_metric
from .model_space import ModelConfig, distance_matrix

EXHAUSTIVE_LIMIT = 10**6


@dataclass(frozen=True)
class PackingResult:
    """A q-point subset maximizing the minimal pairwise distance.

    ``radius`` is half that minimum; ``is_certified_max`` records whether
    the subset search was exhaustive or heuristic.
    """

    q: int
    radius: float
    packer: tuple
    is_certified_max: bool


def _min_pairwise(d, subset):
    best = math.inf
    for i, j in combinations(subset, 2):
        if d[i, j] < best:
            best = d[i, j]
    return best


def _greedy_packer(d, q):
    n = d.shape[0]
    i, j = np.unravel_index(int(np.argmax(d)), d.shape)
    sel = [int(min(i, j)), int(max(i, j))] if q >= 2 else [int(i)]
    while len(sel) < q:
        mind = np.min(d[:, sel], axis=1)
        mind[sel] = -1.0
        sel.append(int(np.argmax(mind)))
    # 1-swap local search: replace any chosen point when that strictly
    # raises the subset minimum, first improvement wins.
    improved = True
    while improved:
        improved = False
        cur = _min_pairwise(d, sel)
        for si in range(q):
            others = sel[:si] + sel[si + 1 :]
            base = _min_pairwise(d, others) if len(others) > 1 else math.inf
            for cand in range(n):
                if cand in sel:
                    continue
                val = min(base, float(np.min(d[cand, others])))
                if val > cur:
                    sel[si] = cand
                    cur = val
                    improved = True
        sel.sort()
    return float(_min_pairwise(d, sel)), tuple(sorted(sel))


def _exhaustive_packer(d, q, seed_val, seed_set):
    n = d.shape[0]
    best_val = seed_val
    best_set = seed_set
    sel = []

    def dfs(start, cur_min):
        nonlocal best_val, best_set
        if len(sel) == q:
            best_val = cur_min
            best_set = tuple(sel)
            return
        for i in range(start, n - (q - len(sel)) + 1):
            m = cur_min
            ok = True
            for j in sel:
                dij = d[i, j]
                if dij <= best_val:
                    ok = False
                    break
                if dij < m:
                    m = dij
            if ok:
                sel.append(i)
                dfs(i + 1, m)
                sel.pop()

    dfs(0, math.inf)
    return best_val, best_set


def packing_radius(space, q, mode="auto"):
    """Largest achievable half-minimum pairwise distance among q points.

    ``mode='auto'`` runs the exhaustive branch-and-bound search while
    C(n, q) stays within a million subsets and falls back to greedy
    seeding plus 1-swap local search beyond that.
    """
    n = space.n
    if not 2 <= q <= n:
        raise ValueError(f"q={q} out of range [2, {n}]")
    if mode not in ("auto", "exhaustive", "heuristic"):
        raise ValueError(f"unknown packing mode {mode!r}")
    if mode == "auto":
        mode = "exhaustive" if math.comb(n, q) <= EXHAUSTIVE_LIMIT else "heuristic"
    d = space.d
    val, packer = _greedy_packer(d, q)
    if mode == "exhaustive":
        val, packer = _exhaustive_packer(d, q, val, packer)
    return PackingResult(
        q=q,
        radius=0.5 * val,
        packer=tuple(int(i) for i in packer),
        is_certified_max=(mode == "exhaustive"),
    )


def packing_bound(q):
    """Upper bound for the q-th packing radius under curvature >= 1.

    Equals half the side arccos(1/(1-q)) of the regular unit-sphere
    simplex; meeting it forces the packer onto a round sphere.
    """
    if q < 2:
        raise ValueError("q must be at least 2")
    return 0.5 * math.acos(1.0 / (1.0 - q))


def sphere_kernel_embedding(space, kappa=1.0, tol_psd=1e-8, rank_rtol=1e-10):
    """Embed a whole finite space into a round sphere from its cosine kernel.

    The matrix cos(sqrt(kappa) d) is a kernel of positive type exactly when
    the space sits isometrically on the sphere of curvature kappa; its
    factor yields unit vectors realizing the points, in the minimal ambient
    rank.  Returns the configuration and the matrix of distance residuals.
    Raises GramIndefiniteError when the kernel is negative beyond tolerance.
    """
    if kappa <= 0.0:
        raise ValueError("the cosine kernel embedding needs kappa > 0")
    rk = math.sqrt(kappa)
    if float(space.d.max()) * rk > math.pi:
        raise ValueError("distances exceed the spherical diameter pi/sqrt(kappa)")
    kernel = np.cos(rk * space.d)
    w, v = np.linalg.eigh(kernel)
    if w[0] < -tol_psd:
        raise GramIndefiniteError(w[0], v[:, 0])
    w = np.clip(w, 0.0, None)
    keep = w > rank_rtol * w[-1] if w[-1] > 0.0 else np.zeros_like(w, dtype=bool)
    rank = max(int(np.count_nonzero(keep)), 1)
    u = v[:, keep] * np.sqrt(w[keep])
    if u.shape[1] < rank:
        u = np.zeros((space.n, rank))
    norms = np.linalg.norm(u, axis=1)
    norms[norms == 0.0] = 1.0
    u = u / norms[:, None]
    cfg = ModelConfig(kappa, rank - 1, u / rk)
    res = distance_matrix(cfg) - space.d
    return cfg, res


def villani_gap(space, gamma, eta, t, snap_tol=None):
    """Defect of the quadrilateral interpolation inequality at parameter t.

    Both geodesics are treated as constant-speed on [0, 1]; ``t`` is
    snapped to the nearest sampled parameter within ``snap_tol``
    (arclength units).  The result is nonnegative in spaces of
    nonnegative curvature; an exact zero marks a flat quadrilateral.
    """
    if snap_tol is None:
        snap_tol = 1e-9 * max(space.diameter(), 1.0)
    a = gamma.sample_at(t, snap_tol)
    if a is None:
        raise ValueError(f"t={t} not realizable on the first geodesic within {snap_tol:.3g}")
    ts = gamma.fraction(a)
    b = eta.sample_at(ts, snap_tol)
    if b is None:
        raise ValueError(f"t={ts} not realizable on the second geodesic within {snap_tol:.3g}")

    d = space.d
    g0, g1 = gamma.indices[0], gamma.indices[-1]
    e0, e1 = eta.indices[0], eta.indices[-1]
    gt, et = gamma.indices[a], eta.indices[b]
    s = ts
    bracket = d[g1, e0] ** 2 + d[g0, e1] ** 2 - d[g0, g1] ** 2 - d[e0, e1] ** 2
    rhs = (1.0 - s) ** 2 * d[g0, e0] ** 2 + s**2 * d[g1, e1] ** 2 + s * (1.0 - s) * bracket
    return float(d[gt, et] ** 2 - rhs)


def find_midpoints(space, i, j, tol):
    """Indices m realizing a midpoint of (i, j) within ``tol``."""
    d = space.d
    hits = []
    for m in range(space.n):
        if m == i or m == j:
            continue
        if (
            abs(d[i, m] + d[m, j] - d[i, j]) <= tol
            and abs(d[i, m] - d[m, j]) <= tol
        ):
            hits.append(m)
    return hits


def villani_star(space, gamma, eta, t, midpoint):
    """Weighted star whose vanishing form certifies a flat quadrilateral.

    Endpoints of both geodesics carry weights (1-t, t) and the base sits
    at a midpoint of the two interpolated points; when the interpolation
    gap is zero this star is an equality case and embeds flat.
    """
    pts = (gamma.indices[0], gamma.indices[-1], eta.indices[0], eta.indices[-1])
    weights = np.array([1.0 - t, t, 1.0 - t, t])
    return WeightedStar(space=space, p=int(midpoint), points=pts, weights=weights)


def metric_transform(space, kappa, alpha):
    """Concave snowflake-type rescaling producing curvature >= kappa.

    Applies the regime-specific distance transform entrywise for
    alpha in [0, 1/2] (with 0 mapped to 0 even at alpha = 0) and
    revalidates the result.
    """
    if not 0.0 <= alpha <= 0.5:
        raise ValueError(f"alpha={alpha} outside [0, 1/2]")
    t = space.d
    if kappa == 0.0:
        with np.errstate(divide="ignore"):
            out = np.where(t > 0.0, t**alpha, 0.0)
    elif kappa > 0.0:
        rk = math.sqrt(kappa)
        out = np.arccos(1.0 - 0.5 * np.minimum(rk * t ** (2.0 * alpha), 1.0)) / rk
        out[t == 0.0] = 0.0
    else:
        rk = math.sqrt(-kappa)
        out = np.arccosh(1.0 + 0.5 * rk * t ** (2.0 * alpha)) / rk
        out[t == 0.0] = 0.0
    return validate_metric(out, labels=space.labels)


@dataclass(eq=False, frozen=True)
class GeneratedSpace:
    """A generated metric space plus its model configuration when one exists."""

    space: FiniteMetricSpace
    config: ModelConfig | None = None


def euclidean_sample(n, dim=2, seed=0, scale=1.0):
    rng = np.random.default_rng(seed)
    pts = scale * rng.standard_normal((n, dim))
    cfg = ModelConfig(0.0, dim, pts)
    space = validate_metric(distance_matrix(cfg))
    return GeneratedSpace(space=space, config=cfg)


def sphere_sample(n, dim=2, kappa=1.0, seed=0):
    if kappa <= 0.0:
        raise ValueError("sphere samples need kappa > 0")
    rng = np.random.default_rng(seed)
    v = rng.standard_normal((n, dim + 1))
    v /= np.linalg.norm(v, axis=1)[:, None]
    cfg = ModelConfig(kappa, dim, v / math.sqrt(kappa))
    space = validate_metric(distance_matrix(cfg))
    return GeneratedSpace(space=space, config=cfg)


def hyperbolic_sample(n, dim=2, kappa=-1.0, seed=0, radius=1.5):
    if kappa >= 0.0:
        raise ValueError("hyperbolic samples need kappa < 0")
    rng = np.random.default_rng(seed)
    u = rng.standard_normal((n, dim))
    u /= np.linalg.norm(u, axis=1)[:, None]
    r = rng.uniform(0.0, radius, size=n)
    rm = 1.0 / math.sqrt(-kappa)
    pts = np.empty((n, dim + 1))
    pts[:, 0] = rm * np.cosh(r / rm)
    pts[:, 1:] = rm * np.sinh(r / rm)[:, None] * u
    cfg = ModelConfig(kappa, dim, pts)
    space = validate_metric(distance_matrix(cfg))
    return GeneratedSpace(space=space, config=cfg)


def star_space(k, leg=1.0):
    """Center with k unit-speed legs; tip-to-tip paths run through the center."""
    legs = np.full(k, float(leg)) if np.isscalar(leg) else np.asarray(leg, dtype=float)
    if legs.shape != (k,) or np.any(legs <= 0.0):
        raise ValueError("legs must be k positive lengths")
    n = k + 1
    d = np.zeros((n, n))
    d[0, 1:] = legs
    d[1:, 0] = legs
    d[1:, 1:] = legs[:, None] + legs[None, :]
    np.fill_diagonal(d, 0.0)
    labels = ("center",) + tuple(f"tip{i + 1}" for i in range(k))
    return GeneratedSpace(space=validate_metric(d, labels=labels))


def tripod(legs=(1.0, 1.0, 1.0)):
    legs = np.asarray(legs, dtype=float)
    if legs.shape != (3,):
        raise ValueError("a tripod has exactly three legs")
    return star_space(3, legs)


def simplex_on_sphere(q):
    """q points of the unit sphere pairwise arccos(1/(1-q)) apart.

    This is the equality configuration of the packing bound; the metric is
    written directly so every pairwise distance is bitwise identical.
    """
    if q < 2:
        raise ValueError("q must be at least 2")
    theta = math.acos(1.0 / (1.0 - q))
    d = np.full((q, q), theta)
    np.fill_diagonal(d, 0.0)
    space = validate_metric(d)
    # unit vectors e_i recentred at the barycenter, pairwise dot 1/(1-q)
    e = np.eye(q) - 1.0 / q
    e /= np.linalg.norm(e, axis=1)[:, None]
    cfg = ModelConfig(1.0, q - 1, e)
    return GeneratedSpace(space=space, config=cfg)


def generate(kind, seed=0, **params):
    """Dispatch generator used by the command-line interface."""
    kinds = {
        "sphere_sample": lambda: sphere_sample(
            int(params.get("n", 20)), int(params.get("dim", 2)),
            float(params.get("kappa", 1.0)), seed),
        "euclidean_sample": lambda: euclidean_sample(
            int(params.get("n", 20)), int(params.get("dim", 2)), seed,
            float(params.get("scale", 1.0))),
        "hyperbolic_sample": lambda: hyperbolic_sample(
            int(params.get("n", 20)), int(params.get("dim", 2)),
            float(params.get("kappa", -1.0)), seed,
            float(params.get("radius", 1.5))),
        "tripod": lambda: tripod(params.get("legs", (1.0, 1.0, 1.0))),
        "star": lambda: star_space(int(params.get("k", 3)), params.get("leg", 1.0)),
        "simplex_on_sphere": lambda: simplex_on_sphere(int(params.get("q", 3))),
    }
    if kind not in kinds:
        raise ValueError(f"unknown generator kind {kind!r}; choose from {sorted(kinds)}")
    return kinds[kind]()
