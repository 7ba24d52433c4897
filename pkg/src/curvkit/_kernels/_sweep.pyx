# cython: boundscheck=False, wraparound=False, cdivision=True
# cython: language_level=3
"""Compiled quadruple sweep; see sweep_py for the shared semantics."""

from libc.math cimport atan2, fabs, sin, sinh, sqrt, M_PI, INFINITY

import numpy as np

from ..errors import InvalidTriangleError


cdef inline double _f(int regime, double x) noexcept nogil:
    if regime > 0:
        return sin(x)
    if regime < 0:
        return sinh(x)
    return x


cdef inline double _angle(int regime, double h, double a, double b, double c,
                          double tol_clamp, int* err) noexcept nogil:
    cdef double t, sa2, sb2, sc2, tws, p1, p2, lim
    if a < b:
        t = a
        a = b
        b = t
    sa2 = c - (a - b)
    sb2 = c + (a - b)
    if c >= b:
        sc2 = a - (c - b)
    else:
        sc2 = a + (b - c)
    tws = a + (b + c)
    p1 = _f(regime, h * sa2) * _f(regime, h * sb2)
    p2 = _f(regime, h * tws) * _f(regime, h * sc2)
    lim = 0.5 * tol_clamp * _f(regime, 2.0 * h * a) * _f(regime, 2.0 * h * b)
    if p1 < 0.0:
        if -p1 > lim:
            err[0] = 1
            return 0.0
        p1 = 0.0
    if p2 < 0.0:
        if -p2 > lim:
            err[0] = 1
            return 0.0
        p2 = 0.0
    return 2.0 * atan2(sqrt(p1), sqrt(p2))


def sweep(d_arr, double kappa, Py_ssize_t x_lo, Py_ssize_t x_hi,
          double tol_clamp=1e-10):
    """Worst quadruple defect over basepoints in [x_lo, x_hi).

    Returns (worst_defect, witness, checked, skipped); worst_defect is
    +inf and the witness None when nothing was checked.
    """
    cdef const double[:, ::1] d = np.ascontiguousarray(d_arr, dtype=np.float64)
    cdef Py_ssize_t n = d.shape[0]
    cdef double two_pi = 2.0 * M_PI
    cdef double bound = INFINITY
    cdef int regime = 0
    cdef double h = 0.5
    cdef double maxd = 0.0
    cdef Py_ssize_t i, j, x, y, z, w
    cdef double axy, axz, dyz, peri, ayz, azw, ayw, defect
    cdef double worst = INFINITY
    cdef Py_ssize_t wx = -1, wy = -1, wz = -1, ww = -1
    cdef long long checked = 0, skipped = 0
    cdef int err = 0

    for i in range(n):
        for j in range(n):
            if d[i, j] > maxd:
                maxd = d[i, j]
    if kappa > 0.0:
        bound = two_pi / sqrt(kappa)
    if kappa != 0.0 and fabs(kappa) * (3.0 * maxd) * (3.0 * maxd) >= 1e-24:
        regime = 1 if kappa > 0.0 else -1
        h = 0.5 * sqrt(fabs(kappa))

    angles = np.empty((n, n), dtype=np.float64)
    cdef double[:, ::1] A = angles

    with nogil:
        for x in range(x_lo, x_hi):
            for y in range(n):
                for z in range(y + 1, n):
                    if y == x or z == x:
                        A[y, z] = -1.0
                        continue
                    axy = d[x, y]
                    axz = d[x, z]
                    dyz = d[y, z]
                    if axy == 0.0 or axz == 0.0 or dyz == 0.0:
                        A[y, z] = -1.0
                        continue
                    if kappa > 0.0:
                        peri = axy + axz + dyz
                        if peri >= bound:
                            A[y, z] = -2.0
                            continue
                    A[y, z] = _angle(regime, h, axy, axz, dyz, tol_clamp, &err)
                if err:
                    break
            if err:
                break
            for y in range(n):
                if y == x:
                    continue
                for z in range(y + 1, n):
                    if z == x:
                        continue
                    ayz = A[y, z]
                    for w in range(z + 1, n):
                        if w == x:
                            continue
                        azw = A[z, w]
                        ayw = A[y, w]
                        if ayz == -1.0 or azw == -1.0 or ayw == -1.0:
                            continue
                        if kappa > 0.0:
                            if ayz == -2.0 or azw == -2.0 or ayw == -2.0:
                                skipped += 1
                                continue
                            if d[y, z] + d[z, w] + d[y, w] >= bound:
                                skipped += 1
                                continue
                        checked += 1
                        defect = two_pi - ((ayz + azw) + ayw)
                        if defect < worst:
                            worst = defect
                            wx = x
                            wy = y
                            wz = z
                            ww = w

    if err:
        raise InvalidTriangleError("inadmissible triangle beyond clamp tolerance in sweep")
    witness = (wx, wy, wz, ww) if wx >= 0 else None
    return worst, witness, int(checked), int(skipped)
