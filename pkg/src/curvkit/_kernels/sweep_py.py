"""Pure-python (numpy) quadruple sweep, the fallback backend.

Semantics are shared with the compiled kernel: iterate every quadruple
(x; {y, z, w}) with x in [x_lo, x_hi) and y < z < w distinct from x,
skip quadruples containing coincident points without counting them, count
quadruples whose size reaches the kappa > 0 perimeter bound as undefined,
and track the minimal defect together with its lexicographically least
witness.
"""

import math

import numpy as np

from ..model_space import vertex_angles_grid

TWO_PI = 2.0 * math.pi


def sweep(d, kappa, x_lo, x_hi, tol_clamp=1e-10):
    """Worst quadruple defect over basepoints in [x_lo, x_hi).

    Returns (worst_defect, witness, checked, skipped); worst_defect is
    +inf and the witness None when nothing was checked.
    """
    d = np.asarray(d, dtype=float)
    n = d.shape[0]
    idx = np.arange(n)
    lt = idx[:, None] < idx[None, :]
    tri_order = lt[:, :, None] & lt[None, :, :]
    pospair = d > 0.0
    bound = TWO_PI / math.sqrt(kappa) if kappa > 0.0 else math.inf

    worst = math.inf
    witness = None
    checked = 0
    skipped = 0
    for x in range(x_lo, x_hi):
        dx = d[x]
        posx = dx > 0.0
        clean_pair = posx[:, None] & posx[None, :] & pospair
        if kappa > 0.0:
            peri_x = dx[:, None] + dx[None, :] + d
            angle_ok = clean_pair & (peri_x < bound)
        else:
            angle_ok = clean_pair
        ang = vertex_angles_grid(kappa, dx, d, angle_ok, tol_clamp=tol_clamp)

        notx = idx != x
        tri = tri_order & notx[:, None, None] & notx[None, :, None] & notx[None, None, :]
        tri = tri & (
            clean_pair[:, :, None] & clean_pair[None, :, :] & clean_pair[:, None, :]
        )
        if kappa > 0.0:
            ok3 = angle_ok[:, :, None] & angle_ok[None, :, :] & angle_ok[:, None, :]
            peri3 = d[:, :, None] + d[None, :, :] + d[:, None, :]
            use = tri & ok3 & (peri3 < bound)
            skipped += int(np.count_nonzero(tri & ~use))
        else:
            use = tri
        cnt = int(np.count_nonzero(use))
        checked += cnt
        if cnt == 0:
            continue
        total = ang[:, :, None] + ang[None, :, :] + ang[:, None, :]
        defects = np.where(use, TWO_PI - total, math.inf)
        m = float(np.min(defects))
        if m < worst:
            y, z, w = np.argwhere(defects == m)[0]
            worst = m
            witness = (x, int(y), int(z), int(w))
    return worst, witness, checked, skipped
