"""Finite metric spaces as validated distance matrices."""

from dataclasses import dataclass, field

import numpy as np

from .errors import MetricValidationError


@dataclass(eq=False, frozen=True)
class FiniteMetricSpace:
    """An n-point metric space given by its labeled distance matrix.

    Instances are produced by :func:`validate_metric` and are immutable;
    the matrix is symmetric with zero diagonal, positive off-diagonal
    entries, and satisfies the triangle inequality within the validation
    tolerance.
    """

    d: np.ndarray
    labels: tuple

    @property
    def n(self):
        return self.d.shape[0]

    def distance(self, i, j):
        return float(self.d[i, j])

    def diameter(self):
        return float(self.d.max())

    def min_positive(self):
        off = self.d[~np.eye(self.n, dtype=bool)]
        return float(off.min()) if off.size else 0.0

    def index_of(self, label):
        """Resolve a label (or an integer index) to a point index."""
        if isinstance(label, (int, np.integer)):
            i = int(label)
            if not 0 <= i < self.n:
                raise IndexError(f"point index {i} out of range")
            return i
        try:
            return self.labels.index(str(label))
        except ValueError:
            raise KeyError(f"unknown point label {label!r}") from None

    def restrict(self, indices):
        return restrict(self, indices)


def validate_metric(raw, labels=None, tol_rel=1e-9):
    """Check the metric axioms and return an immutable space.

    Asymmetries, nonzero diagonals and triangle-inequality violations below
    ``tol_rel`` times the largest entry are repaired (symmetrized by
    averaging, diagonal zeroed); anything larger raises
    MetricValidationError carrying every violated axiom with witness
    indices and magnitudes.  Off-diagonal zeros are rejected: two points at
    distance 0 must be deduplicated by the caller, not silently merged.
    """
    d = np.array(raw, dtype=float)
    if d.ndim != 2 or d.shape[0] != d.shape[1]:
        raise MetricValidationError([("square-matrix", d.shape, 0.0)])
    if not np.all(np.isfinite(d)):
        i, j = np.argwhere(~np.isfinite(d))[0]
        raise MetricValidationError([("finite-entries", (int(i), int(j)), float("inf"))])
    if np.any(d < 0.0):
        i, j = np.argwhere(d < 0.0)[0]
        raise MetricValidationError([("nonnegative", (int(i), int(j)), float(-d[i, j]))])

    n = d.shape[0]
    scale = float(d.max()) if d.size else 0.0
    tol = tol_rel * max(scale, 1e-300)
    violations = []

    asym = np.abs(d - d.T)
    bad = np.argwhere(np.triu(asym, 1) > tol)
    for i, j in bad[:64]:
        violations.append(("symmetry", (int(i), int(j)), float(asym[i, j])))

    diag = np.abs(np.diag(d))
    for (i,) in np.argwhere(diag > tol)[:64]:
        violations.append(("zero-diagonal", (int(i),), float(diag[i])))

    off = d + np.eye(n) * (scale + 1.0)
    zero = np.argwhere(np.triu(off <= tol, 1))
    for i, j in zero[:64]:
        violations.append(("distinct-points", (int(i), int(j)), float(d[i, j])))

    d = 0.5 * (d + d.T)
    np.fill_diagonal(d, 0.0)

    for j in range(n):
        if len(violations) >= 64:
            break
        excess = d - (d[:, j][:, None] + d[j][None, :])
        for i, k in np.argwhere(excess > tol):
            if i < k:
                violations.append(
                    ("triangle-inequality", (int(i), int(j), int(k)), float(excess[i, k]))
                )

    if violations:
        raise MetricValidationError(violations)

    if labels is None:
        labels = tuple(f"p{i}" for i in range(n))
    else:
        labels = tuple(str(x) for x in labels)
        if len(labels) != n:
            raise MetricValidationError([("label-count", (len(labels), n), 0.0)])
    d.setflags(write=False)
    return FiniteMetricSpace(d=d, labels=labels)


def restrict(space, indices):
    """Induced subspace on a list of distinct point indices."""
    idx = [int(i) for i in indices]
    if len(set(idx)) != len(idx):
        raise ValueError(f"duplicate index in restriction {idx}")
    sub = space.d[np.ix_(idx, idx)].copy()
    sub.setflags(write=False)
    return FiniteMetricSpace(d=sub, labels=tuple(space.labels[i] for i in idx))


def perimeter_and_size(space, quad):
    """Perimeters of the four triangles of a quadruple and their maximum.

    ``quad`` is (x, y, z, w); the triangles are (x,y,z), (x,z,w), (x,w,y)
    and (y,z,w).  The maximum ("size") gates the positive-curvature
    comparison formulas via size < 2*pi/sqrt(kappa).
    """
    x, y, z, w = quad
    d = space.d
    peris = (
        float(d[x, y] + d[x, z] + d[y, z]),
        float(d[x, z] + d[x, w] + d[z, w]),
        float(d[x, w] + d[x, y] + d[w, y]),
        float(d[y, z] + d[z, w] + d[w, y]),
    )
    return peris, max(peris)


@dataclass(eq=False, frozen=True)
class DiscreteGeodesic:
    """A distance-realizing constant-speed chain of sampled points.

    ``params`` are arclengths along the chain; the defining property is
    d(indices[a], indices[b]) == |params[a] - params[b]| for all a, b.
    """

    space: FiniteMetricSpace
    indices: tuple
    params: np.ndarray = field(repr=False)

    @property
    def length(self):
        return float(self.params[-1] - self.params[0])

    def fraction(self, a):
        """Normalized parameter of sample ``a`` on [0, 1]."""
        return float((self.params[a] - self.params[0]) / self.length)

    def sample_at(self, t, tol):
        """Index position of the sample nearest to normalized parameter t.

        Returns None when no sample lies within ``tol`` (in arclength
        units) of the requested parameter.
        """
        target = self.params[0] + t * self.length
        a = int(np.argmin(np.abs(self.params - target)))
        if abs(self.params[a] - target) > tol:
            return None
        return a


def trace_geodesic(space, indices, tol_rel=1e-9):
    """Build a DiscreteGeodesic from an ordered point chain.

    Arclengths are accumulated along consecutive pairs; the construction
    fails unless every pair of samples realizes its arclength gap, i.e.
    the chain actually lies on a metric geodesic.
    """
    idx = tuple(int(i) for i in indices)
    if len(idx) < 2:
        raise ValueError("a geodesic needs at least two samples")
    d = space.d
    params = np.zeros(len(idx))
    for a in range(1, len(idx)):
        params[a] = params[a - 1] + d[idx[a - 1], idx[a]]
    if params[-1] <= 0.0:
        raise ValueError("geodesic has zero length")
    tol = tol_rel * max(space.diameter(), 1.0)
    gaps = np.abs(params[:, None] - params[None, :])
    actual = d[np.ix_(idx, idx)]
    err = float(np.max(np.abs(gaps - actual)))
    if err > tol:
        a, b = np.unravel_index(int(np.argmax(np.abs(gaps - actual))), gaps.shape)
        raise ValueError(
            f"chain is not distance-realizing: samples {a},{b} off by {err:.3g}"
        )
    params.setflags(write=False)
    return DiscreteGeodesic(space=space, indices=idx, params=params)
