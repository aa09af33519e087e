"""Float64 kernels for the float backend.

The recurrences are sequential (every pivot feeds the next few), so the hot
loops are scalar loops over numpy arrays rather than vectorized expressions.
By default they are compiled with numba's ``@njit``; setting the environment
variable ``HEPTACYCLIC_PURE_NUMPY=1`` (or running without numba installed)
selects the identical pure-Python/numpy implementations instead.  Both lanes
execute the same statements in the same order, so their outputs are
bit-identical; ``heptacyclic bench`` times the two side by side.

All kernel arrays are 1-based (length n+1, slot 0 unused) to keep the
formulas aligned with the band indexing.  There is no symbolic machinery
here: a pivot whose magnitude falls below the caller's tolerance aborts the
factorization and the wrapper tells the user to switch to the exact backend.
"""

from __future__ import annotations

import os

import numpy as np

from .errors import NearSingularPivotError

_FORCE_PURE = os.environ.get("HEPTACYCLIC_PURE_NUMPY", "") not in ("", "0")

try:
    from numba import njit

    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    njit = None
    _HAVE_NUMBA = False

NUMBA_ENABLED = _HAVE_NUMBA and not _FORCE_PURE
KERNEL_MODE = "numba" if NUMBA_ENABLED else "numpy"


def _factor_impl(D, B, b, d, a, A, C, tol):
    """Factor sweep; returns the nine vectors plus the index of the first
    pivot below tol (0 when none)."""
    n = D.shape[0] - 1
    al = np.zeros(n + 1)
    f = np.zeros(n + 1)
    e = np.zeros(n + 1)
    g = np.zeros(n + 1)
    z = np.zeros(n + 1)
    k = np.zeros(n + 1)
    h = np.zeros(n + 1)
    v = np.zeros(n + 1)
    w = np.zeros(n + 1)

    al[1] = d[1]
    if abs(al[1]) < tol:
        return al, f, e, g, z, k, h, v, w, 1
    g[1] = a[1]
    z[1] = A[1]
    k[1] = A[n - 1] / al[1]
    v[1] = b[1]
    w[1] = B[1]
    h[1] = a[n] / al[1]
    f[2] = b[2] / al[1]
    e[3] = B[3] / al[1]
    al[2] = d[2] - f[2] * g[1]
    if abs(al[2]) < tol:
        return al, f, e, g, z, k, h, v, w, 2
    k[2] = -k[1] * g[1] / al[2]
    v[2] = B[2] - f[2] * v[1]
    w[2] = -f[2] * w[1]
    h[2] = (A[n] - h[1] * g[1]) / al[2]
    g[2] = a[2] - f[2] * z[1]
    f[3] = (b[3] - e[3] * g[1]) / al[2]
    al[3] = d[3] - e[3] * z[1] - f[3] * g[2]
    if abs(al[3]) < tol:
        return al, f, e, g, z, k, h, v, w, 3
    k[3] = -(k[1] * z[1] + k[2] * g[2]) / al[3]
    h[3] = -(h[1] * z[1] + h[2] * g[2]) / al[3]
    v[3] = -e[3] * v[1] - f[3] * v[2]
    w[3] = -f[3] * w[2] - e[3] * w[1]

    for i in range(4, n - 1):
        e[i] = (B[i] - D[i] * g[i - 3] / al[i - 3]) / al[i - 2]
        f[i] = (b[i] - D[i] * z[i - 3] / al[i - 3] - e[i] * g[i - 2]) / al[i - 1]
        z[i - 2] = A[i - 2] - f[i - 2] * C[i - 3]
        g[i - 1] = a[i - 1] - f[i - 1] * z[i - 2] - e[i - 1] * C[i - 3]
        al[i] = d[i] - D[i] * C[i - 3] / al[i - 3] - e[i] * z[i - 2] - f[i] * g[i - 1]
        if abs(al[i]) < tol:
            return al, f, e, g, z, k, h, v, w, i

    for i in range(4, n - 4):
        k[i] = -(k[i - 3] * C[i - 3] + k[i - 2] * z[i - 2] + k[i - 1] * g[i - 1]) / al[i]
        w[i] = -(D[i] * w[i - 3] / al[i - 3] + e[i] * w[i - 2] + f[i] * w[i - 1])
    for i in range(4, n - 3):
        h[i] = -(h[i - 3] * C[i - 3] + h[i - 2] * z[i - 2] + h[i - 1] * g[i - 1]) / al[i]
        v[i] = -(D[i] * v[i - 3] / al[i - 3] + e[i] * v[i - 2] + f[i] * v[i - 1])

    k[n - 4] = (D[n - 1] - k[n - 7] * C[n - 7] - k[n - 6] * z[n - 6] - k[n - 5] * g[n - 5]) / al[n - 4]
    k[n - 3] = (B[n - 1] - k[n - 6] * C[n - 6] - k[n - 5] * z[n - 5] - k[n - 4] * g[n - 4]) / al[n - 3]
    k[n - 2] = (b[n - 1] - k[n - 5] * C[n - 5] - k[n - 4] * z[n - 4] - k[n - 3] * g[n - 3]) / al[n - 2]
    w[n - 4] = C[n - 4] - D[n - 4] * w[n - 7] / al[n - 7] - e[n - 4] * w[n - 6] - f[n - 4] * w[n - 5]
    w[n - 3] = A[n - 3] - D[n - 3] * w[n - 6] / al[n - 6] - e[n - 3] * w[n - 5] - f[n - 3] * w[n - 4]
    w[n - 2] = a[n - 2] - D[n - 2] * w[n - 5] / al[n - 5] - e[n - 2] * w[n - 4] - f[n - 2] * w[n - 3]
    h[n - 3] = (D[n] - h[n - 6] * C[n - 6] - h[n - 5] * z[n - 5] - h[n - 4] * g[n - 4]) / al[n - 3]
    h[n - 2] = (B[n] - h[n - 5] * C[n - 5] - h[n - 4] * z[n - 4] - h[n - 3] * g[n - 3]) / al[n - 2]
    v[n - 3] = C[n - 3] - D[n - 3] * v[n - 6] / al[n - 6] - e[n - 3] * v[n - 5] - f[n - 3] * v[n - 4]
    v[n - 2] = A[n - 2] - D[n - 2] * v[n - 5] / al[n - 5] - e[n - 2] * v[n - 4] - f[n - 2] * v[n - 3]

    s = 0.0
    for j in range(1, n - 1):
        s += v[j] * k[j]
    v[n - 1] = a[n - 1] - s
    s = 0.0
    for j in range(1, n - 1):
        s += w[j] * k[j]
    al[n - 1] = d[n - 1] - s
    if abs(al[n - 1]) < tol:
        return al, f, e, g, z, k, h, v, w, n - 1
    s = 0.0
    for j in range(1, n - 1):
        s += h[j] * w[j]
    h[n - 1] = (b[n] - s) / al[n - 1]
    s = 0.0
    for j in range(1, n):
        s += v[j] * h[j]
    al[n] = d[n] - s
    if abs(al[n]) < tol:
        return al, f, e, g, z, k, h, v, w, n
    return al, f, e, g, z, k, h, v, w, 0


def _solve_impl(D, C, al, f, e, g, z, k, h, v, w, rhs):
    """Forward/back substitution through the bordered factors; O(n)."""
    n = al.shape[0] - 1
    y = np.zeros(n + 1)
    x = np.zeros(n + 1)
    y[1] = rhs[1]
    y[2] = rhs[2] - f[2] * y[1]
    y[3] = rhs[3] - f[3] * y[2] - e[3] * y[1]
    for i in range(4, n - 1):
        y[i] = rhs[i] - f[i] * y[i - 1] - e[i] * y[i - 2] - D[i] * y[i - 3] / al[i - 3]
    s = 0.0
    for j in range(1, n - 1):
        s += k[j] * y[j]
    y[n - 1] = rhs[n - 1] - s
    s = 0.0
    for j in range(1, n):
        s += h[j] * y[j]
    y[n] = rhs[n] - s

    x[n] = y[n] / al[n]
    x[n - 1] = (y[n - 1] - v[n - 1] * x[n]) / al[n - 1]
    for i in range(n - 2, 0, -1):
        acc = y[i] - w[i] * x[n - 1] - v[i] * x[n]
        if i + 1 <= n - 2:
            acc -= g[i] * x[i + 1]
        if i + 2 <= n - 2:
            acc -= z[i] * x[i + 2]
        if i + 3 <= n - 2:
            acc -= C[i] * x[i + 3]
        x[i] = acc / al[i]
    return x


def _invert_impl(D, C, al, f, e, g, z, k, h, v, w):
    """Inverse column by column through the factors; O(n^2) total."""
    n = al.shape[0] - 1
    S = np.zeros((n, n))
    y = np.zeros(n + 1)
    x = np.zeros(n + 1)
    for col in range(1, n + 1):
        y[1] = 1.0 if col == 1 else 0.0
        y[2] = (1.0 if col == 2 else 0.0) - f[2] * y[1]
        y[3] = (1.0 if col == 3 else 0.0) - f[3] * y[2] - e[3] * y[1]
        for i in range(4, n - 1):
            r = 1.0 if col == i else 0.0
            y[i] = r - f[i] * y[i - 1] - e[i] * y[i - 2] - D[i] * y[i - 3] / al[i - 3]
        s = 0.0
        for j in range(1, n - 1):
            s += k[j] * y[j]
        y[n - 1] = (1.0 if col == n - 1 else 0.0) - s
        s = 0.0
        for j in range(1, n):
            s += h[j] * y[j]
        y[n] = (1.0 if col == n else 0.0) - s

        x[n] = y[n] / al[n]
        x[n - 1] = (y[n - 1] - v[n - 1] * x[n]) / al[n - 1]
        for i in range(n - 2, 0, -1):
            acc = y[i] - w[i] * x[n - 1] - v[i] * x[n]
            if i + 1 <= n - 2:
                acc -= g[i] * x[i + 1]
            if i + 2 <= n - 2:
                acc -= z[i] * x[i + 2]
            if i + 3 <= n - 2:
                acc -= C[i] * x[i + 3]
            x[i] = acc / al[i]
        for i in range(1, n + 1):
            S[i - 1, col - 1] = x[i]
    return S


PURE_IMPLS = {"factor": _factor_impl, "solve": _solve_impl, "invert": _invert_impl}

if NUMBA_ENABLED:
    _jit = njit(cache=True)
    ACTIVE_IMPLS = {name: _jit(fn) for name, fn in PURE_IMPLS.items()}
else:
    ACTIVE_IMPLS = PURE_IMPLS

factor_kernel = ACTIVE_IMPLS["factor"]
solve_kernel = ACTIVE_IMPLS["solve"]
invert_kernel = ACTIVE_IMPLS["invert"]


def implementations() -> dict:
    """Available kernel lanes, for benchmarks: {'numba': ..., 'numpy': ...}."""
    lanes = {"numpy": PURE_IMPLS}
    if NUMBA_ENABLED:
        lanes["numba"] = ACTIVE_IMPLS
    return lanes


# ---------------------------------------------------------------------------
# wrappers over CyclicHeptaMatrix
# ---------------------------------------------------------------------------

def _abs_tol(H, tol: float) -> float:
    return tol * max(1.0, H.max_abs_entry())


def factor_float(H, tol: float = 1e-12, impls=None) -> dict:
    """Float factorization of an exact matrix; raises NearSingularPivotError."""
    impls = impls or ACTIVE_IMPLS
    fb = H.float_bands()
    out = impls["factor"](
        fb["D"], fb["B"], fb["b"], fb["d"], fb["a"], fb["A"], fb["C"], _abs_tol(H, tol)
    )
    al, f, e, g, z, k, h, v, w, bad = out
    if bad:
        raise NearSingularPivotError(int(bad))
    return {
        "alpha": al, "f": f, "e": e, "g": g, "z": z,
        "k": k, "h": h, "v": v, "w": w,
        "D": fb["D"], "C": fb["C"],
    }


def solve_float(H, rhs, tol: float = 1e-12, impls=None) -> np.ndarray:
    """Solve H x = rhs in float64; returns a 0-based length-n array."""
    impls = impls or ACTIVE_IMPLS
    fa = factor_float(H, tol, impls)
    r = np.zeros(H.n + 1)
    r[1:] = [float(v) for v in rhs]
    x = impls["solve"](
        fa["D"], fa["C"], fa["alpha"], fa["f"], fa["e"], fa["g"], fa["z"],
        fa["k"], fa["h"], fa["v"], fa["w"], r,
    )
    return x[1:]


def inverse_float(H, tol: float = 1e-12, impls=None) -> np.ndarray:
    """Dense float64 inverse via per-column substitution through the factors."""
    impls = impls or ACTIVE_IMPLS
    fa = factor_float(H, tol, impls)
    return impls["invert"](
        fa["D"], fa["C"], fa["alpha"], fa["f"], fa["e"], fa["g"], fa["z"],
        fa["k"], fa["h"], fa["v"], fa["w"],
    )
