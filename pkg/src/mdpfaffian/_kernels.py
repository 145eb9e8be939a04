"""Compiled subset-DP kernel for integer-weight covering sums.

``f[mask]`` is the weighted number of coverings of the vertex set ``mask``;
the lowest vertex of ``mask`` is either a monomer (weight ``ys[v]``, zero if
it may not be one) or paired along an edge. Set ``MDPFAFFIAN_DISABLE_NUMBA=1``
to run the plain Python version of the same loop.
"""

from __future__ import annotations

import os

import numpy as np

USE_NUMBA = os.environ.get("MDPFAFFIAN_DISABLE_NUMBA", "") not in ("1", "true", "yes")


def _md_sum_py(n, us, vs, ws, ys):
    # incidence in CSR form so the inner loop only touches edges at v
    deg = np.zeros(n + 1, dtype=np.int64)
    for e in range(len(us)):
        deg[us[e] + 1] += 1
        deg[vs[e] + 1] += 1
    start = np.cumsum(deg)
    fill = start[:-1].copy()
    nbr = np.empty(2 * len(us), dtype=np.int64)
    wt = np.empty(2 * len(us), dtype=np.int64)
    for e in range(len(us)):
        for a, b in ((us[e], vs[e]), (vs[e], us[e])):
            nbr[fill[a]] = b
            wt[fill[a]] = ws[e]
            fill[a] += 1
    f = np.zeros(1 << n, dtype=np.int64)
    f[0] = 1
    for mask in range(1, 1 << n):
        v = 0
        while not (mask >> v) & 1:
            v += 1
        rest = mask ^ (1 << v)
        acc = ys[v] * f[rest]
        for i in range(start[v], start[v + 1]):
            u = nbr[i]
            if (rest >> u) & 1:
                acc += wt[i] * f[rest ^ (1 << u)]
        f[mask] = acc
    return f[(1 << n) - 1]


md_sum_python = _md_sum_py
md_sum_numba = None

if USE_NUMBA:
    try:
        import numba

        md_sum_numba = numba.njit(cache=True)(_md_sum_py)
    except ImportError:  # pragma: no cover
        USE_NUMBA = False


def md_sum(n, us, vs, ws, ys) -> int:
    fn = md_sum_numba if USE_NUMBA and md_sum_numba is not None else md_sum_python
    return int(fn(n, us, vs, ws, ys))


def warmup() -> None:
    """Trigger compilation on a two-vertex instance."""
    one = np.ones(1, dtype=np.int64)
    md_sum(2, np.zeros(1, dtype=np.int64), one, one, np.ones(2, dtype=np.int64))
