"""Whole-space curvature certification and maximal-bound search.

Certification sweeps every quadruple (basepoint plus 3-subset) of a
validated space and checks that the comparison angle sums stay below
2*pi.  For kappa > 0 the condition only constrains quadruples whose size
(maximal triangle perimeter) is below 2*pi/sqrt(kappa); larger quadruples
are counted separately so that a vacuous pass remains visible.
"""

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from ._kernels import get_sweep
from .errors import NoLowerBoundError

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class CertReport:
    """Outcome of one quadruple sweep at a fixed curvature parameter."""

    kappa: float
    passed: bool
    worst_defect: float
    witness: tuple | None
    quadruples_checked: int
    undefined_skipped: int
    tol_defect: float

    @property
    def vacuous(self):
        return self.quadruples_checked == 0


def _chunks(n, threads):
    if threads <= 1 or n < 8:
        return [(0, n)]
    parts = min(threads * 4, n)
    edges = np.linspace(0, n, parts + 1, dtype=int)
    return [(int(a), int(b)) for a, b in zip(edges[:-1], edges[1:]) if a < b]


def _reduce(results):
    worst = math.inf
    witness = None
    checked = 0
    skipped = 0
    for w, wit, c, s in results:
        checked += c
        skipped += s
        if w < worst:
            worst = w
            witness = wit
    return worst, witness, checked, skipped


def certify_kappa(space, kappa, tol_defect=1e-9, threads=1, backend=None,
                  tol_clamp=1e-10):
    """Exhaustive quadruple check of the curvature->=kappa condition.

    The report passes iff every checked quadruple has defect at least
    -tol_defect; the witness is the lexicographically least quadruple
    attaining the worst defect.  Spaces with fewer than 4 points pass
    vacuously.  ``threads`` splits the basepoint range into chunks mapped
    over a thread pool; the reduction is associative so reports do not
    depend on the worker count.
    """
    kappa = float(kappa)
    threads = int(threads) if threads else 1
    sweep = get_sweep(backend)
    n = space.n
    if n < 4:
        return CertReport(kappa, True, math.inf, None, 0, 0, tol_defect)
    chunks = _chunks(n, threads)
    if len(chunks) == 1:
        results = [sweep(space.d, kappa, 0, n, tol_clamp)]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            futures = [pool.submit(sweep, space.d, kappa, a, b, tol_clamp) for a, b in chunks]
            results = [f.result() for f in futures]
    worst, witness, checked, skipped = _reduce(results)
    passed = worst >= -tol_defect
    return CertReport(kappa, passed, worst, witness, checked, skipped, tol_defect)


def min_quadruple_size(space):
    """Smallest quadruple size of the space, +inf when n < 4.

    Above kappa = (2*pi / min_size)^2 every quadruple is exempt from the
    comparison condition, so certification becomes vacuous.
    """
    d = space.d
    n = space.n
    if n < 4:
        return math.inf
    idx = np.arange(n)
    lt = idx[:, None] < idx[None, :]
    tri_order = lt[:, :, None] & lt[None, :, :]
    peri3 = d[:, :, None] + d[None, :, :] + d[:, None, :]
    best = math.inf
    for x in range(n):
        dx = d[x]
        peri_x = dx[:, None] + dx[None, :] + d
        size = np.maximum(
            np.maximum(peri_x[:, :, None], peri_x[None, :, :]),
            np.maximum(peri_x[:, None, :], peri3),
        )
        notx = idx != x
        mask = tri_order & notx[:, None, None] & notx[None, :, None] & notx[None, None, :]
        if np.any(mask):
            best = min(best, float(size[mask].min()))
    return best


def default_kappa_bounds(space):
    """Search range used by :func:`max_kappa` when none is supplied."""
    lo = -((10.0 / space.min_positive()) ** 2)
    hi = 4.0 * (TWO_PI / space.diameter()) ** 2
    return lo, hi


def max_kappa(space, precision=1e-6, kappa_lo=None, kappa_hi=None,
              tol_defect=1e-9, threads=1, backend=None):
    """Supremum of certified curvature bounds, located by bisection.

    The predicate is a non-vacuous certification pass: above the vacuity
    threshold every quadruple is exempt, which says nothing about the
    space, so such parameters count as failures.  Returns +inf when the
    predicate still holds at ``kappa_hi``; raises NoLowerBoundError when
    it already fails at ``kappa_lo``.
    """
    if space.n < 4:
        raise ValueError("max_kappa needs at least 4 points")
    if precision <= 0.0:
        raise ValueError("precision must be positive")
    d_lo, d_hi = default_kappa_bounds(space)
    lo = d_lo if kappa_lo is None else float(kappa_lo)
    hi = d_hi if kappa_hi is None else float(kappa_hi)
    if not lo < hi:
        raise ValueError("kappa_lo must be below kappa_hi")

    def holds(k):
        rep = certify_kappa(space, k, tol_defect=tol_defect, threads=threads,
                            backend=backend)
        return rep.passed and rep.quadruples_checked > 0, rep

    ok_lo, rep_lo = holds(lo)
    if not ok_lo:
        raise NoLowerBoundError(lo, rep_lo)
    ok_hi, _ = holds(hi)
    if ok_hi:
        return math.inf
    while hi - lo > precision:
        mid = 0.5 * (lo + hi)
        if holds(mid)[0]:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def threads_from_env(default=1):
    """Worker count from CURVKIT_THREADS, falling back to ``default``."""
    raw = os.environ.get("CURVKIT_THREADS", "").strip()
    if not raw:
        return default
    try:
        return max(1, int(raw))
    except ValueError:
        return default
