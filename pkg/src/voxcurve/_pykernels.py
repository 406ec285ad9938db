"""Pure-Python (numpy) distance kernels.

Reference implementation of the functions in ``_ckernels.pyx``. Both modules
must visit the same sample parameters in the same order so traces agree.
"""
from __future__ import annotations

import math

import numpy as np

NAN = float("nan")


def sample_params(anchor: float, lo: float, hi: float, step: float) -> np.ndarray:
    """Window samples: ``lo``, the grid ``anchor + k*step`` strictly inside, ``hi``."""
    if hi <= lo:
        return np.array([lo])
    kmin = math.ceil((lo - anchor) / step)
    kmax = math.floor((hi - anchor) / step)
    inner = anchor + np.arange(kmin, kmax + 1, dtype=float) * step
    inner = inner[(inner > lo) & (inner < hi)]
    return np.concatenate(([lo], inner, [hi]))


def scan_min(sqdist, anchor, lo, hi, step):
    """Minimum of ``sqdist`` over the window samples.

    Returns ``(phi_prev, d2_prev, phi_best, d2_best, phi_next, d2_next)``;
    neighbours missing at the window edges are NaN. Ties keep the first sample.
    """
    phis = sample_params(anchor, lo, hi, step)
    d2 = sqdist(phis)
    k = int(np.argmin(d2))
    n = phis.size
    prev = (float(phis[k - 1]), float(d2[k - 1])) if k > 0 else (NAN, NAN)
    nxt = (float(phis[k + 1]), float(d2[k + 1])) if k + 1 < n else (NAN, NAN)
    return (prev[0], prev[1], float(phis[k]), float(d2[k]), nxt[0], nxt[1])


def cyl_sqdist(params, cx, cy, cz, phis):
    x0, y0, z0, R, A, w = params
    phis = np.asarray(phis, dtype=float)
    dx = x0 + R * np.cos(phis) - cx
    dy = y0 + R * np.sin(phis) - cy
    dz = z0 + A * (1.0 - np.cos(w * phis)) - cz
    return dx * dx + dy * dy + dz * dz


def cyl_sqdist1(params, cx, cy, cz, phi):
    x0, y0, z0, R, A, w = params
    dx = x0 + R * math.cos(phi) - cx
    dy = y0 + R * math.sin(phi) - cy
    dz = z0 + A * (1.0 - math.cos(w * phi)) - cz
    return dx * dx + dy * dy + dz * dz


def cyl_scan_min(params, cx, cy, cz, anchor, lo, hi, step):
    return scan_min(lambda p: cyl_sqdist(params, cx, cy, cz, p), anchor, lo, hi, step)
