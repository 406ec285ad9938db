"""Compiled distance kernels for the cylindrical test curve.

Mirrors ``_pykernels``: same sample order, same tie rule (first minimum wins).
"""
import numpy as np

from libc.math cimport cos, sin, ceil, floor, NAN


cdef inline double _sqdist(double x0, double y0, double z0, double R, double A, double w,
                           double cx, double cy, double cz, double phi) noexcept nogil:
    cdef double dx = x0 + R * cos(phi) - cx
    cdef double dy = y0 + R * sin(phi) - cy
    cdef double dz = z0 + A * (1.0 - cos(w * phi)) - cz
    return dx * dx + dy * dy + dz * dz


def cyl_sqdist(tuple params, double cx, double cy, double cz, phis):
    cdef double x0, y0, z0, R, A, w
    x0, y0, z0, R, A, w = params
    cdef double[::1] p = np.ascontiguousarray(phis, dtype=np.float64).ravel()
    out = np.empty(p.shape[0], dtype=np.float64)
    cdef double[::1] o = out
    cdef Py_ssize_t k
    with nogil:
        for k in range(p.shape[0]):
            o[k] = _sqdist(x0, y0, z0, R, A, w, cx, cy, cz, p[k])
    return out


def cyl_sqdist1(tuple params, double cx, double cy, double cz, double phi):
    cdef double x0, y0, z0, R, A, w
    x0, y0, z0, R, A, w = params
    return _sqdist(x0, y0, z0, R, A, w, cx, cy, cz, phi)


def cyl_scan_min(tuple params, double cx, double cy, double cz,
                 double anchor, double lo, double hi, double step):
    cdef double x0, y0, z0, R, A, w
    x0, y0, z0, R, A, w = params
    cdef double phi, d2
    cdef double last_phi = NAN, last_d2 = NAN
    cdef double best_phi = lo, best_d2
    cdef double prev_phi = NAN, prev_d2 = NAN, next_phi = NAN, next_d2 = NAN
    cdef bint want_next = False
    cdef double k, kmin, kmax

    best_d2 = _sqdist(x0, y0, z0, R, A, w, cx, cy, cz, lo)
    if hi <= lo:
        return (NAN, NAN, lo, best_d2, NAN, NAN)
    last_phi = lo
    last_d2 = best_d2
    want_next = True
    kmin = ceil((lo - anchor) / step)
    kmax = floor((hi - anchor) / step)
    with nogil:
        k = kmin
        while k <= kmax + 1.0:
            if k <= kmax:
                phi = anchor + k * step
                if phi <= lo or phi >= hi:
                    k += 1.0
                    continue
            else:
                phi = hi
            d2 = _sqdist(x0, y0, z0, R, A, w, cx, cy, cz, phi)
            if want_next:
                next_phi = phi
                next_d2 = d2
                want_next = False
            if d2 < best_d2:
                best_phi = phi
                best_d2 = d2
                prev_phi = last_phi
                prev_d2 = last_d2
                next_phi = NAN
                next_d2 = NAN
                want_next = True
            last_phi = phi
            last_d2 = d2
            k += 1.0
    return (prev_phi, prev_d2, best_phi, best_d2, next_phi, next_d2)
