"""Floating-point filter kernels for the brute-force empty-ball scans.

Each kernel classifies candidate triangles ``(i, j, k)`` of a point set as
certainly empty, certainly encroached, or uncertain; uncertain ones are
re-decided exactly by the caller.  The numba path is used when numba imports
and ``MESHVORONOI_BACKEND`` is not ``numpy``; the numpy path computes the same
classification with chunked array arithmetic.
"""
from __future__ import annotations

import os

import numpy as np

# Generous relative bound: the true rounding error of the filtered
# determinant (including rounding of the time value) is below 20 * 2**-53.
FILTER_REL = 2.0**-40
UNDERFLOW_GUARD = 1e-270

ACCEPT = 1
UNCERTAIN = 2
UNCERTAIN_ORIENT = 3

_requested = os.environ.get("MESHVORONOI_BACKEND", "numba").strip().lower()

try:
    if _requested == "numpy":
        raise ImportError("numba disabled by MESHVORONOI_BACKEND")
    import numba

    njit = numba.njit(cache=True, nogil=True)
    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised by the backend benchmark
    numba = None
    HAVE_NUMBA = False

    def njit(f):
        return f


def backend() -> str:
    return "numba" if HAVE_NUMBA else "numpy"


def _scan_numpy(x, y, w, out_cap):
    n = len(x)
    hits = []
    flags = []
    if n < 3:
        return np.zeros((0, 3), np.int64), np.zeros(0, np.int8)
    combos = np.array(
        [(i, j, k) for i in range(n) for j in range(i + 1, n) for k in range(j + 1, n)], dtype=np.int64
    )
    chunk = max(1, 2_000_000 // n)
    dids = np.arange(n)
    for start in range(0, len(combos), chunk):
        c = combos[start : start + chunk]
        i, j, k = c[:, 0], c[:, 1], c[:, 2]
        dl = (x[i] - x[k]) * (y[j] - y[k])
        dr = (y[i] - y[k]) * (x[j] - x[k])
        o = dl - dr
        ob = FILTER_REL * (np.abs(dl) + np.abs(dr))
        orient_ok = (np.abs(o) > ob) & (ob > UNDERFLOW_GUARD)
        swap = o < 0
        jj = np.where(swap, k, j)
        kk = np.where(swap, j, k)
        a = i[:, None]
        b = jj[:, None]
        cc = kk[:, None]
        d = dids[None, :]
        adx = x[a] - x[d]
        ady = y[a] - y[d]
        bdx = x[b] - x[d]
        bdy = y[b] - y[d]
        cdx = x[cc] - x[d]
        cdy = y[cc] - y[d]
        wd = w[d]
        alift = adx * adx + ady * ady - w[a] + wd
        blift = bdx * bdx + bdy * bdy - w[b] + wd
        clift = cdx * cdx + cdy * cdy - w[cc] + wd
        aperm = adx * adx + ady * ady + np.abs(w[a]) + np.abs(wd)
        bperm = bdx * bdx + bdy * bdy + np.abs(w[b]) + np.abs(wd)
        cperm = cdx * cdx + cdy * cdy + np.abs(w[cc]) + np.abs(wd)
        m1 = bdx * cdy
        m2 = cdx * bdy
        m3 = cdx * ady
        m4 = adx * cdy
        m5 = adx * bdy
        m6 = bdx * ady
        det = alift * (m1 - m2) + blift * (m3 - m4) + clift * (m5 - m6)
        perm = (
            (np.abs(m1) + np.abs(m2)) * aperm
            + (np.abs(m3) + np.abs(m4)) * bperm
            + (np.abs(m5) + np.abs(m6)) * cperm
        )
        err = FILTER_REL * perm
        own = (d == a) | (d == b) | (d == cc)
        trusted = err > UNDERFLOW_GUARD
        inside = (det > err) & trusted & ~own
        outside = (-det > err) & trusted
        unsure = ~own & ~inside & ~outside
        rejected = inside.any(axis=1)
        uncertain = unsure.any(axis=1)
        status = np.where(rejected, 0, np.where(uncertain, UNCERTAIN, ACCEPT))
        status = np.where(orient_ok, status, UNCERTAIN_ORIENT)
        keep = status > 0
        tri = np.stack([i, np.where(orient_ok, jj, j), np.where(orient_ok, kk, k)], axis=1)[keep]
        hits.append(tri)
        flags.append(status[keep].astype(np.int8))
    return np.concatenate(hits), np.concatenate(flags)


@njit
def _scan_numba(x, y, w, out_cap):
    n = x.shape[0]
    tris = np.empty((out_cap, 3), np.int64)
    flags = np.empty(out_cap, np.int8)
    count = 0
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                dl = (x[i] - x[k]) * (y[j] - y[k])
                dr = (y[i] - y[k]) * (x[j] - x[k])
                o = dl - dr
                ob = FILTER_REL * (abs(dl) + abs(dr))
                status = ACCEPT
                if not (abs(o) > ob and ob > UNDERFLOW_GUARD):
                    status = UNCERTAIN_ORIENT
                    b = j
                    c = k
                else:
                    if o > 0:
                        b = j
                        c = k
                    else:
                        b = k
                        c = j
                    for d in range(n):
                        if d == i or d == j or d == k:
                            continue
                        adx = x[i] - x[d]
                        ady = y[i] - y[d]
                        bdx = x[b] - x[d]
                        bdy = y[b] - y[d]
                        cdx = x[c] - x[d]
                        cdy = y[c] - y[d]
                        wd = w[d]
                        a2 = adx * adx + ady * ady
                        b2 = bdx * bdx + bdy * bdy
                        c2 = cdx * cdx + cdy * cdy
                        m1 = bdx * cdy
                        m2 = cdx * bdy
                        m3 = cdx * ady
                        m4 = adx * cdy
                        m5 = adx * bdy
                        m6 = bdx * ady
                        det = (a2 - w[i] + wd) * (m1 - m2) + (b2 - w[b] + wd) * (m3 - m4) + (c2 - w[c] + wd) * (m5 - m6)
                        perm = (
                            (abs(m1) + abs(m2)) * (a2 + abs(w[i]) + abs(wd))
                            + (abs(m3) + abs(m4)) * (b2 + abs(w[b]) + abs(wd))
                            + (abs(m5) + abs(m6)) * (c2 + abs(w[c]) + abs(wd))
                        )
                        err = FILTER_REL * perm
                        if err <= UNDERFLOW_GUARD:
                            status = UNCERTAIN
                        elif det > err:
                            status = 0
                            break
                        elif not (-det > err):
                            status = UNCERTAIN
                if status > 0:
                    if count < out_cap:
                        tris[count, 0] = i
                        tris[count, 1] = b
                        tris[count, 2] = c
                        flags[count] = status
                    count += 1
    return tris, flags, count


def scan_empty_balls(x, y, w) -> tuple[np.ndarray, np.ndarray]:
    """Candidate triangles whose orthoball no other point certainly encroaches.

    ``w`` holds the squared weights (``t`` for input points, ``0`` otherwise).
    Returns ``(tris, flags)``; ``tris`` rows are ccw when the flag is ACCEPT or
    UNCERTAIN and in index order when it is UNCERTAIN_ORIENT.
    """
    x = np.ascontiguousarray(x, dtype=np.float64)
    y = np.ascontiguousarray(y, dtype=np.float64)
    w = np.ascontiguousarray(w, dtype=np.float64)
    cap = 8 * len(x) + 64
    if not HAVE_NUMBA:
        return _scan_numpy(x, y, w, cap)
    tris, flags, count = _scan_numba(x, y, w, cap)
    if count > cap:
        tris, flags, count = _scan_numba(x, y, w, count)
    return tris[:count], flags[:count]
