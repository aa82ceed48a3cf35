"""Pure numpy implementations of the hot kernels.

Each function mirrors one in ``_kernels.pyx`` with the same signature and
semantics; ``fekete.kernels`` picks one backend at import time.
"""
import numpy as np

_CHUNK = 1 << 20  # cap on temporaries (elements)


def clenshaw(coeffs, rows, x):
    """Evaluate the Chebyshev series ``coeffs[rows[i]]`` at ``x[i]``."""
    coeffs = np.ascontiguousarray(coeffs, dtype=np.float64)
    rows = np.asarray(rows, dtype=np.int64)
    x = np.asarray(x, dtype=np.float64)
    n = coeffs.shape[1]
    c = coeffs[rows]
    b1 = np.zeros_like(x)
    b2 = np.zeros_like(x)
    x2 = 2.0 * x
    for j in range(n - 1, 0, -1):
        b1, b2 = c[:, j] + x2 * b1 - b2, b1
    return c[:, 0] + x * b1 - b2


def bisect_roots(coeffs, rows, lo, hi, xtol):
    """Bisect sign-change brackets of Chebyshev series down to width ``xtol``."""
    rows = np.asarray(rows, dtype=np.int64)
    lo = np.array(lo, dtype=np.float64)
    hi = np.array(hi, dtype=np.float64)
    if lo.size == 0:
        return lo
    flo = clenshaw(coeffs, rows, lo)
    width = float(np.max(hi - lo))
    iters = max(0, int(np.ceil(np.log2(width / xtol)))) if width > xtol else 0
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        fm = clenshaw(coeffs, rows, mid)
        move = (np.signbit(fm) == np.signbit(flo)) & (fm != 0.0)
        lo = np.where(move, mid, lo)
        flo = np.where(move, fm, flo)
        hi = np.where(move, hi, mid)
    return 0.5 * (lo + hi)


def remainder_log_sums(values, xg, wg, root_ptr, roots):
    """Row-wise ``sum_j wg[j] * (log|values[b,j]| - sum_i log|xg[j] - r_i|)``.

    ``roots[root_ptr[b]:root_ptr[b+1]]`` are the roots divided out of row b.
    """
    values = np.asarray(values, dtype=np.float64)
    xg = np.asarray(xg, dtype=np.float64)
    wg = np.asarray(wg, dtype=np.float64)
    root_ptr = np.asarray(root_ptr, dtype=np.int64)
    roots = np.asarray(roots, dtype=np.float64)
    with np.errstate(divide="ignore"):
        acc = np.log(np.abs(values))
    counts = np.diff(root_ptr)
    if roots.size:
        owner = np.repeat(np.arange(values.shape[0]), counts)
        with np.errstate(divide="ignore"):
            lg = np.log(np.abs(xg[None, :] - roots[:, None]))
        np.subtract.at(acc, owner, lg)
    return acc @ wg


def _cot_terms(p, m, t, order):
    u = np.pi * (m - t) / p
    if order == 0:
        return (np.pi / p) / np.tan(u)
    s = np.sin(u)
    if order == 1:
        return (np.pi / p) ** 2 / (s * s)
    return 2.0 * (np.pi / p) ** 3 * np.cos(u) / (s * s * s)


def cot_sums(chi, k, t, order):
    """Arc functions ``H_p(k,t)`` (order 0) and their t-derivatives (orders 1, 2).

    Uses coefficients ``c_m = -chi[(k+m) mod p]`` for ``|m| <= (p-1)/2``.
    """
    chi = np.asarray(chi, dtype=np.float64)
    k = np.asarray(k, dtype=np.int64)
    t = np.asarray(t, dtype=np.float64)
    p = chi.size
    h = (p - 1) // 2
    m = np.arange(-h, h + 1, dtype=np.int64)
    out = np.empty(k.size, dtype=np.float64)
    step = max(1, _CHUNK // p)
    for s in range(0, k.size, step):
        kk = k[s:s + step, None]
        tt = t[s:s + step, None]
        c = -chi[(kk + m[None, :]) % p]
        out[s:s + step] = np.sum(c * _cot_terms(p, m[None, :], tt, order), axis=1)
    return out


def harmonic_sums(signs, rows, t, order):
    """``sum_{|m|<=J} signs[row, m+J] / (m - t)^(order+1)``, times 2 for order 2."""
    signs = np.asarray(signs)
    rows = np.asarray(rows, dtype=np.int64)
    t = np.asarray(t, dtype=np.float64)
    width = signs.shape[1]
    J = (width - 1) // 2
    m = np.arange(-J, J + 1, dtype=np.float64)
    out = np.empty(rows.size, dtype=np.float64)
    step = max(1, _CHUNK // width)
    for s in range(0, rows.size, step):
        d = m[None, :] - t[s:s + step, None]
        e = signs[rows[s:s + step]].astype(np.float64)
        out[s:s + step] = np.sum(e / d ** (order + 1), axis=1)
    if order == 2:
        out *= 2.0
    return out
