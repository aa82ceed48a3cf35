"""Integrals of ``log|f|`` and ``|f|^q`` for real-analytic ``f`` with simple zeros.

Two layers share one method.  The scalar routines (``bracket_zeros``,
``integrate_log_abs``) take arbitrary vectorised callables.  The batch
engine (``SmoothRows`` / ``batch_log_integrals``) handles thousands of arcs
or sign patterns at once: each function is written as

    H(t) = R(t) * t**o0 * (1 - t)**o1

with ``R`` smooth and non-vanishing at the endpoints, stored as a Chebyshev
series.  Zeros are bracketed on a scan grid and bisected; their logarithmic
singularities are removed analytically (``int log|t - r| dt`` in closed
form), and what is left is smooth enough for plain Gauss-Legendre.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from functools import lru_cache

import numpy as np
from numpy.polynomial import chebyshev as npcheb
from scipy.fft import dct

from . import kernels
from .arith import LegendreTable, legendre_table
from .errors import DegenerateZeroError, DomainError, EvaluationError
from .estimate import EXACT, Estimate
from .eval import ArcFunction, arc_values
from .parallel import chunk_bounds, pmap

__all__ = [
    "QuadConfig",
    "ZeroBracket",
    "LogIntegral",
    "RowLogIntegrals",
    "SmoothRows",
    "bracket_zeros",
    "integrate_log_abs",
    "log_distance_integral",
    "cheb_nodes",
    "batch_log_integrals",
    "batch_power_integrals",
    "fekete_rows",
    "arc_log_integrals",
    "mahler_fekete",
    "lq_norm_fekete",
    "circle_zero_count",
]

_LOG_2PI = math.log(2.0 * math.pi)


@dataclass(frozen=True)
class QuadConfig:
    """Knobs for the batch engine.

    ``nodes`` Chebyshev samples per function, ``gl_nodes`` Gauss-Legendre
    nodes for the smooth remainder (checked against twice as many),
    ``scan_points`` cells of the zero scan, ``tol`` the per-function
    remainder discrepancy that triggers the careful fallback path.
    """

    nodes: int = 32
    gl_nodes: int = 48
    scan_points: int = 128
    tol: float = 1e-9
    chunk: int = 1024
    threads: int | None = None

    def refined(self, factor: int = 2) -> "QuadConfig":
        return replace(self, nodes=self.nodes * factor, gl_nodes=self.gl_nodes * factor)


@dataclass
class ZeroBracket:
    lo: float
    hi: float
    root: float
    slope: float


@dataclass
class LogIntegral:
    value: float
    zeros: list = field(default_factory=list)
    error_estimate: float = 0.0
    nodes_used: int = 0


# ---------------------------------------------------------------- closed forms

def _xlogx(x):
    x = np.asarray(x)
    ax = np.abs(x)
    with np.errstate(divide="ignore", invalid="ignore"):
        out = np.where(ax > 0, x * np.log(np.where(ax > 0, ax, 1.0)), 0.0)
    return np.where(np.isnan(x), np.nan, out)


def log_distance_integral(a, b, r):
    """``int_a^b log|t - r| dt`` for real or complex ``r``."""
    r = np.asarray(r)
    if np.iscomplexobj(r) and np.any(np.imag(r) != 0):
        wb = b - r.astype(np.complex128)
        wa = a - r.astype(np.complex128)
        # Re(w log w) = Re(w) log|w| - Im(w) arg(w)
        def part(w):
            return _xlogx_complex(w)
        return np.real(part(wb) - part(wa)) - (b - a)
    r = np.real(r).astype(np.float64)
    return _xlogx(b - r) - _xlogx(a - r) - (b - a)


def _xlogx_complex(w):
    w = np.asarray(w, dtype=np.complex128)
    mod = np.abs(w)
    safe = np.where(mod > 0, w, 1.0)
    return np.where(mod > 0, w.real * np.log(np.where(mod > 0, mod, 1.0)) - w.imag * np.angle(safe), 0.0)


def _endpoint_log_integral(width):
    # int_0^width log(s) ds
    return width * (math.log(width) - 1.0)


@lru_cache(maxsize=32)
def _gauss_legendre(n: int):
    x, w = np.polynomial.legendre.leggauss(n)
    x.flags.writeable = False
    w.flags.writeable = False
    return x, w


# ------------------------------------------------------------ scalar routines

def bracket_zeros(f, a: float, b: float, scan_points: int = 64, xtol: float = 1e-12, df=None):
    """Sign changes of ``f`` on an equispaced scan of ``[a, b]``, bisected to width ``xtol``."""
    if scan_points < 16:
        raise DomainError("bracket_zeros needs at least 16 scan points")
    if not a < b:
        raise DomainError("bracket_zeros needs a < b")
    t = np.linspace(a, b, scan_points)
    v = np.asarray(f(t), dtype=np.float64)
    if not np.all(np.isfinite(v)):
        bad = t[~np.isfinite(v)]
        raise EvaluationError(f"non-finite value on the scan grid at t={bad[0]!r}")
    sb = np.signbit(v)
    idx = np.nonzero(sb[1:] != sb[:-1])[0]
    lo, hi, flo = t[idx].copy(), t[idx + 1].copy(), v[idx].copy()
    while lo.size and np.max(hi - lo) > xtol:
        mid = 0.5 * (lo + hi)
        fm = np.asarray(f(mid), dtype=np.float64)
        if not np.all(np.isfinite(fm)):
            raise EvaluationError("non-finite value while bisecting")
        move = (np.signbit(fm) == np.signbit(flo)) & (fm != 0.0)
        stuck = (mid <= lo) | (mid >= hi)
        lo = np.where(move & ~stuck, mid, lo)
        flo = np.where(move & ~stuck, fm, flo)
        hi = np.where(move | stuck, hi, mid)
        if np.all(stuck | (hi - lo <= xtol)):
            break
    roots = 0.5 * (lo + hi)
    if df is not None and roots.size:
        for _ in range(2):
            with np.errstate(divide="ignore", invalid="ignore"):
                step = np.asarray(f(roots), dtype=np.float64) / np.asarray(df(roots), dtype=np.float64)
            ok = np.isfinite(step) & (np.abs(step) < 1e-6 * (b - a))
            roots = np.clip(np.where(ok, roots - np.where(ok, step, 0.0), roots), lo, hi)
        slopes = np.asarray(df(roots), dtype=np.float64)
    elif df is not None:
        slopes = roots
    else:
        h = 1e-6 * (b - a)
        slopes = (np.asarray(f(roots + h)) - np.asarray(f(roots - h))) / (2 * h) if roots.size else roots
    return [ZeroBracket(float(l), float(u), float(r), float(s)) for l, u, r, s in zip(lo, hi, roots, slopes)]


def _adaptive_gl(g, a, b, n=16, tol=1e-13, max_depth=48, max_panels=1 << 16):
    """Adaptive Gauss-Legendre (``n`` vs ``2n`` nodes per panel); returns value, error, evaluations.

    A panel is accepted once the two rules agree to ``tol`` (shared over the
    span) or to rounding level relative to ``int |g|`` on the panel.
    """
    x1, w1 = _gauss_legendre(n)
    x2, w2 = _gauss_legendre(2 * n)
    total, err, evals = 0.0, 0.0, 0
    span = b - a
    stack = [(a, b, 0)]
    panels = 0
    while stack:
        lo, hi, depth = stack.pop()
        half = 0.5 * (hi - lo)
        mid = 0.5 * (hi + lo)
        i1 = half * float(np.dot(w1, g(mid + half * x1)))
        g2 = g(mid + half * x2)
        i2 = half * float(np.dot(w2, g2))
        evals += 3 * n
        panels += 1
        diff = abs(i1 - i2)
        floor = 1e-13 * half * float(np.dot(w2, np.abs(g2)))
        if (diff <= max(tol * (hi - lo) / span, floor) or depth >= max_depth
                or panels >= max_panels or not math.isfinite(diff)):
            total += i2
            err += diff
        else:
            stack.append((mid, hi, depth + 1))
            stack.append((lo, mid, depth + 1))
    return total, err, evals


def integrate_log_abs(f, df, a: float, b: float, zeros=(), endpoint_order=(0, 0),
                      nodes: int = 32, tol: float = 1e-13) -> LogIntegral:
    """``int_a^b log|f(t)| dt`` for ``f`` real-analytic with the listed simple zeros.

    ``endpoint_order`` gives the behaviour of ``f`` at ``a`` and ``b`` as a
    power of the distance: -1 for a simple pole, +1 for a simple zero, 0 if
    regular.  Each zero ``r`` and each flagged endpoint contributes its log
    singularity in closed form; the quotient of ``f`` by those factors is
    integrated by adaptive Gauss-Legendre.
    """
    if not a < b:
        raise DomainError("integrate_log_abs needs a < b")
    zeros = list(zeros)
    roots = np.array([z.root if isinstance(z, ZeroBracket) else float(z) for z in zeros], dtype=np.float64)
    if np.any((roots <= a) | (roots >= b)):
        raise DomainError("zeros must lie strictly inside the domain")
    if df is not None and roots.size:
        for _ in range(2):
            with np.errstate(divide="ignore", invalid="ignore"):
                step = np.asarray(f(roots), dtype=np.float64) / np.asarray(df(roots), dtype=np.float64)
            ok = np.isfinite(step) & (np.abs(step) < 1e-6 * (b - a))
            roots = np.where(ok, roots - np.where(ok, step, 0.0), roots)
        slopes = np.asarray(df(roots), dtype=np.float64)
    elif df is not None:
        slopes = roots
    else:
        slopes = np.array([z.slope for z in zeros], dtype=np.float64)
    oa, ob = (int(o) for o in endpoint_order)
    span = b - a

    xg, _ = _gauss_legendre(nodes)
    probe = np.asarray(f(a + 0.5 * span * (xg + 1.0)), dtype=np.float64)
    probe = probe[np.isfinite(probe)]
    scale = float(np.max(np.abs(probe))) if probe.size else 1.0
    for r, s in zip(roots, slopes):
        if not abs(s) * span >= 1e-8 * scale:
            raise DegenerateZeroError(f"zero at t={r:.17g} has slope {s:.3g}; not simple", location=float(r))

    near_tol = 1e-9 * span

    def quotient(t):
        t = np.asarray(t, dtype=np.float64)
        val = np.asarray(f(t), dtype=np.float64)
        d = t[None, :] - roots[:, None] if roots.size else np.empty((0, t.size))
        out = val / np.prod(d, axis=0) if roots.size else val.copy()
        for i in range(roots.size):
            near = np.abs(d[i]) < near_tol
            if np.any(near):
                others = np.prod(np.delete(d[:, near], i, axis=0), axis=0)
                lead = np.asarray(df(t[near]), dtype=np.float64) if df is not None else slopes[i]
                out[near] = lead / others
        if oa:
            out = out * (t - a) ** (-oa)
        if ob:
            out = out * (b - t) ** (-ob)
        return out

    def g(t):
        with np.errstate(divide="ignore"):
            return np.log(np.abs(quotient(t)))

    rem, err, evals = _adaptive_gl(g, a, b, n=max(8, nodes // 2), tol=tol)
    exact = float(np.sum(log_distance_integral(a, b, roots))) if roots.size else 0.0
    exact += (oa + ob) * _endpoint_log_integral(span)
    brackets = [z if isinstance(z, ZeroBracket) else ZeroBracket(float(z), float(z), float(z), float(s))
                for z, s in zip(zeros, slopes)]
    return LogIntegral(value=rem + exact, zeros=brackets, error_estimate=err + 1e-15 * abs(rem + exact),
                       nodes_used=evals + nodes)


# --------------------------------------------------------------- batch engine

def cheb_nodes(n: int) -> np.ndarray:
    """Chebyshev points of the first kind mapped to ``(0, 1)`` (descending)."""
    x = np.cos(np.pi * (np.arange(n) + 0.5) / n)
    return 0.5 * (x + 1.0)


def cheb_coefficients(samples) -> np.ndarray:
    samples = np.asarray(samples, dtype=np.float64)
    n = samples.shape[-1]
    c = dct(samples, type=2, axis=-1) / n
    c[..., 0] *= 0.5
    return c


@lru_cache(maxsize=64)
def _vander(n: int, m: int, kind: str) -> np.ndarray:
    if kind == "scan":
        x = np.linspace(-1.0, 1.0, m + 1)
    else:
        x, _ = _gauss_legendre(m)
    out = npcheb.chebvander(x, n - 1).T.copy()
    out.flags.writeable = False
    return out


@dataclass
class SmoothRows:
    """A batch of functions ``H_b(t) = R_b(t) t^o0 (1-t)^o1`` with ``R_b`` a Chebyshev series in ``x = 2t-1``."""

    coeffs: np.ndarray
    orders: np.ndarray

    @classmethod
    def from_samples(cls, smooth_samples, orders):
        """``smooth_samples[b, j]`` = ``R_b`` at ``cheb_nodes(n)[j]``."""
        c = cheb_coefficients(smooth_samples)
        o = np.broadcast_to(np.asarray(orders, dtype=np.int64), (c.shape[0], 2)).copy()
        return cls(np.ascontiguousarray(c), o)

    def __len__(self):
        return self.coeffs.shape[0]

    def subset(self, start, stop):
        return SmoothRows(self.coeffs[start:stop], self.orders[start:stop])

    def smooth(self, rows, t):
        rows = np.asarray(rows, dtype=np.int64)
        t = np.asarray(t, dtype=np.float64)
        rb, tb = np.broadcast_arrays(rows, t)
        out = kernels.clenshaw(self.coeffs, rb.ravel(), 2.0 * tb.ravel() - 1.0)
        return out.reshape(tb.shape)

    def weight(self, rows, t):
        rows = np.asarray(rows, dtype=np.int64)
        t = np.asarray(t, dtype=np.float64)
        o0 = self.orders[rows, 0]
        o1 = self.orders[rows, 1]
        return t ** o0 * (1.0 - t) ** o1

    def __call__(self, rows, t):
        """Values of ``H`` (not ``R``) for row indices ``rows`` at ``t``."""
        return self.smooth(rows, t) * self.weight(rows, t)

    def function(self, b: int):
        """Single-row callable ``t -> H_b(t)`` and its derivative, for the scalar routines."""
        b = int(b)
        dc = npcheb.chebder(self.coeffs[b])
        o0, o1 = (int(v) for v in self.orders[b])

        def f(t):
            t = np.asarray(t, dtype=np.float64)
            return npcheb.chebval(2 * t - 1, self.coeffs[b]) * t ** o0 * (1 - t) ** o1

        def df(t):
            t = np.asarray(t, dtype=np.float64)
            r = npcheb.chebval(2 * t - 1, self.coeffs[b])
            dr = 2.0 * npcheb.chebval(2 * t - 1, dc)
            w = t ** o0 * (1 - t) ** o1
            dw = o0 * t ** (o0 - 1) * (1 - t) ** o1 - o1 * t ** o0 * (1 - t) ** (o1 - 1)
            return dr * w + r * dw

        return f, df


@dataclass
class RowLogIntegrals:
    """Per-row results of ``batch_log_integrals`` (roots in ``t`` units)."""

    values: np.ndarray
    errors: np.ndarray
    zero_counts: np.ndarray
    root_ptr: np.ndarray
    roots: np.ndarray
    fallback_rows: np.ndarray
    failed_rows: np.ndarray = field(default_factory=lambda: np.empty(0, dtype=np.int64))

    def roots_of(self, b):
        return self.roots[self.root_ptr[b]:self.root_ptr[b + 1]]


def _scan_brackets(C, scan_points):
    n = C.shape[1]
    xs = np.linspace(-1.0, 1.0, scan_points + 1)
    vs = C @ _vander(n, scan_points, "scan")
    sb = np.signbit(vs)
    rb, cj = np.nonzero(sb[:, 1:] != sb[:, :-1])
    return vs, rb.astype(np.int64), xs[cj], xs[cj + 1]


def _root_terms(roots_x):
    tau = 0.5 * (roots_x + 1.0)
    return math.log(2.0) + _xlogx(tau) + _xlogx(1.0 - tau) - 1.0


def _fallback_row(c, orders, cfg, index):
    """Careful path for one function: all nearby complex roots divided out, adaptive remainder."""
    c = np.trim_zeros(np.asarray(c, dtype=np.float64), "b")
    z = npcheb.chebroots(c) if c.size > 1 else np.empty(0, dtype=np.complex128)
    z = np.asarray(z, dtype=np.complex128)
    near = z[np.abs(z - 1.0) + np.abs(z + 1.0) < 2.5]
    coeffs = c[None, :]

    def g(x):
        v = kernels.clenshaw(coeffs, np.zeros(x.size, dtype=np.int64), x)
        with np.errstate(divide="ignore"):
            out = np.log(np.abs(v))
            if near.size:
                out -= np.sum(np.log(np.abs(x[None, :] - near[:, None])), axis=0)
        return out

    rem, err, _ = _adaptive_gl(g, -1.0, 1.0, n=16, tol=1e-13)
    tau = 0.5 * (near + 1.0)
    exact = float(np.sum(math.log(2.0) + log_distance_integral(0.0, 1.0, tau))) if near.size else 0.0
    value = 0.5 * rem + exact - orders[0] - orders[1]
    err = 0.5 * err
    if not math.isfinite(value) or err > 1e3 * cfg.tol:
        raise DegenerateZeroError(f"log-integral of row {index} did not converge (err={err:.3g})", index=index)
    # real zeros come from the companion roots, which separate close pairs a scan would miss
    real = np.sort(near.real[(np.abs(near.imag) <= 1e-7) & (np.abs(near.real) < 1.0)])
    if real.size:
        dc = npcheb.chebder(c)
        with np.errstate(divide="ignore", invalid="ignore"):
            step = npcheb.chebval(real, c) / npcheb.chebval(real, dc)
        ok = np.isfinite(step) & (np.abs(step) < 1e-9)
        real = np.where(ok, real - np.where(ok, step, 0.0), real)
    return value, err, real


def _log_integrals_chunk(C, orders, cfg, offset, strict=True):
    B, n = C.shape
    vs, rb, lo, hi = _scan_brackets(C, cfg.scan_points)
    roots = kernels.bisect_roots(C, rb, lo, hi, 2e-12)
    counts = np.bincount(rb, minlength=B)
    ptr = np.concatenate([[0], np.cumsum(counts)]).astype(np.int64)

    scale = np.max(np.abs(vs), axis=1)
    dC = np.ascontiguousarray(npcheb.chebder(C, axis=1)) if n > 1 else np.zeros((B, 1))
    slopes = kernels.clenshaw(dC, rb, roots)
    # one Newton step takes the bisected roots from ~1e-12 to rounding level
    with np.errstate(divide="ignore", invalid="ignore"):
        step = kernels.clenshaw(C, rb, roots) / slopes
    polished = roots - step
    ok = np.isfinite(polished) & (polished >= lo) & (polished <= hi)
    roots = np.where(ok, polished, roots)
    degenerate = np.zeros(B, dtype=bool)
    degenerate[rb[np.abs(slopes) < 1e-8 * scale[rb]]] = True

    m = cfg.gl_nodes
    x1, w1 = _gauss_legendre(m)
    x2, w2 = _gauss_legendre(2 * m)
    i1 = kernels.remainder_log_sums(C @ _vander(n, m, "gl"), x1, 0.5 * w1, ptr, roots)
    i2 = kernels.remainder_log_sums(C @ _vander(n, 2 * m, "gl"), x2, 0.5 * w2, ptr, roots)
    root_sum = np.bincount(rb, weights=_root_terms(roots), minlength=B)
    values = i2 + root_sum - orders[:, 0] - orders[:, 1]
    cmax = np.max(np.abs(C), axis=1)
    tail = (np.abs(C[:, -1]) + np.abs(C[:, -2] if n > 1 else 0.0)) / np.where(cmax > 0, cmax, 1.0)
    errors = np.abs(i1 - i2) + tail + 1e-15 * (1.0 + np.abs(values))
    bad = ~np.isfinite(values) | ~np.isfinite(i1) | (np.abs(i1 - i2) > cfg.tol) | degenerate | ~np.isfinite(scale)

    root_lists = [roots[ptr[b]:ptr[b + 1]] for b in range(B)]
    fb = np.nonzero(bad)[0]
    failed = []
    for b in fb:
        try:
            if not np.all(np.isfinite(C[b])):
                raise DegenerateZeroError(f"row {offset + b} has non-finite samples", index=int(offset + b))
            v, e, r = _fallback_row(C[b], orders[b], cfg, int(offset + b))
        except DegenerateZeroError:
            if strict:
                raise
            failed.append(offset + b)
            v, e, r = np.nan, np.nan, np.empty(0)
        values[b] = v
        errors[b] = e + tail[b]
        root_lists[b] = r
    if fb.size:
        counts = np.array([r.size for r in root_lists], dtype=np.int64)
        roots = np.concatenate(root_lists) if counts.sum() else np.empty(0)
    return values, errors, counts, 0.5 * (roots + 1.0), offset + fb, np.array(failed, dtype=np.int64)


def batch_log_integrals(rows: SmoothRows, cfg: QuadConfig | None = None, strict: bool = True) -> RowLogIntegrals:
    """``int_0^1 log|H_b(t)| dt`` for every row, in parallel over fixed-size chunks.

    With ``strict=False`` rows whose integral cannot be resolved come back as
    NaN and are listed in ``failed_rows`` instead of raising.
    """
    cfg = cfg or QuadConfig()
    bounds = chunk_bounds(len(rows), cfg.chunk)

    def work(bd):
        s, e = bd
        return _log_integrals_chunk(rows.coeffs[s:e], rows.orders[s:e], cfg, s, strict)

    parts = pmap(work, bounds, cfg.threads)
    if not parts:
        empty = np.empty(0)
        return RowLogIntegrals(empty, empty, np.empty(0, dtype=np.int64), np.zeros(1, dtype=np.int64),
                               empty, np.empty(0, dtype=np.int64))
    values = np.concatenate([p[0] for p in parts])
    errors = np.concatenate([p[1] for p in parts])
    counts = np.concatenate([p[2] for p in parts])
    roots = np.concatenate([p[3] for p in parts])
    ptr = np.concatenate([[0], np.cumsum(counts)]).astype(np.int64)
    fallback = np.concatenate([p[4] for p in parts]).astype(np.int64)
    failed = np.concatenate([p[5] for p in parts]).astype(np.int64)
    return RowLogIntegrals(values, errors, counts, ptr, roots, fallback, failed)


def _panel_integrals(fun, rows, a, b, n, tol, max_level=40, max_panels=1 << 20, atol=0.0):
    """Vectorised adaptive Gauss-Legendre over panels ``[a_i, b_i]`` of row ``rows[i]``.

    ``fun(rows, t)`` evaluates the integrand; results are summed per row.
    """
    x1, w1 = _gauss_legendre(n)
    x2, w2 = _gauss_legendre(2 * n)
    rows = np.asarray(rows, dtype=np.int64)
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    nrows = int(rows.max()) + 1 if rows.size else 0
    total = np.zeros(nrows)
    err = np.zeros(nrows)
    level = 0
    while rows.size:
        half = 0.5 * (b - a)
        mid = 0.5 * (a + b)
        t1 = mid[:, None] + half[:, None] * x1[None, :]
        t2 = mid[:, None] + half[:, None] * x2[None, :]
        f1 = fun(np.repeat(rows, n), t1.ravel()).reshape(t1.shape)
        f2 = fun(np.repeat(rows, 2 * n), t2.ravel()).reshape(t2.shape)
        i1 = half * (f1 @ w1)
        i2 = half * (f2 @ w2)
        diff = np.abs(i1 - i2)
        # the integrands carry ~1e-13 relative rounding noise; never chase below it
        floor = 1e-12 * half * (np.abs(f2) @ w2)
        done = (diff <= np.maximum(np.maximum(tol * (b - a), floor), atol)) | (level >= max_level)
        if np.count_nonzero(~done) > max_panels:
            done[:] = True
        np.add.at(total, rows[done], i2[done])
        np.add.at(err, rows[done], diff[done])
        keep = ~done
        rows = np.concatenate([rows[keep], rows[keep]])
        a, b = np.concatenate([a[keep], mid[keep]]), np.concatenate([mid[keep], b[keep]])
        order = np.lexsort((a, rows))
        rows, a, b = rows[order], a[order], b[order]
        level += 1
    return total, err


def batch_power_integrals(rows: SmoothRows, q: float, logs: RowLogIntegrals,
                          cfg: QuadConfig | None = None, tol: float = 1e-12):
    """``int_0^1 |G_b(t)|^q dt`` with ``|G| = sin(pi t)/pi * |H|``; panels split at the zeros of ``H``."""
    cfg = cfg or QuadConfig()
    B = len(rows)
    counts = np.diff(logs.root_ptr)
    prow = np.repeat(np.arange(B), counts + 1)
    edges_lo = np.empty(prow.size)
    edges_hi = np.empty(prow.size)
    first = np.concatenate([[0], np.cumsum(counts + 1)])[:-1]
    edges_lo[first] = 0.0
    edges_hi[first + counts] = 1.0
    inner = np.ones(prow.size, dtype=bool)
    inner[first] = False
    edges_lo[inner] = logs.roots
    last = np.ones(prow.size, dtype=bool)
    last[first + counts] = False
    edges_hi[last] = logs.roots

    def integrand(r, t):
        g = np.sin(np.pi * t) / np.pi * np.abs(rows(r, t))
        return g ** q

    total, err = _panel_integrals(integrand, prow, edges_lo, edges_hi, max(8, cfg.gl_nodes // 2), tol)
    return total, err


# ------------------------------------------------------------- Fekete drivers

def arc_orders(p: int) -> np.ndarray:
    """Endpoint orders ``(o0, o1)`` of ``H_p(k, .)`` for every arc."""
    at_one = 1 if p % 4 == 1 else 0
    o = np.full((p, 2), -1, dtype=np.int64)
    o[0, 0] = at_one
    o[p - 1, 1] = at_one
    return o


def fekete_rows(table: LegendreTable, cfg: QuadConfig | None = None) -> SmoothRows:
    """Chebyshev representation of ``H_p(k, .)`` for all arcs from ``nodes`` chirp-z transforms."""
    cfg = cfg or QuadConfig()
    t = cheb_nodes(cfg.nodes)
    _, H = arc_values(table, t)
    orders = arc_orders(table.p)
    R = H.T * t[None, :] ** (-orders[:, :1]) * (1.0 - t[None, :]) ** (-orders[:, 1:])
    return SmoothRows.from_samples(R, orders)


def _table(p, table):
    if table is not None:
        if table.p != p:
            raise DomainError("table does not match p")
        return table
    return legendre_table(p)


def arc_log_integrals(p: int, cfg: QuadConfig | None = None, table=None) -> RowLogIntegrals:
    """``int_0^1 log|H_p(k,t)| dt`` for ``k = 0..p-1``."""
    cfg = cfg or QuadConfig()
    table = _table(p, table)
    rows = fekete_rows(table, cfg)
    return batch_log_integrals(rows, cfg)


def mahler_fekete(p: int, cfg: QuadConfig | None = None, table=None) -> Estimate:
    """``M_0(F_p)/sqrt(p) = exp(mean_k int log|H_p(k,t)| dt - log 2 pi)``."""
    cfg = cfg or QuadConfig()
    res = arc_log_integrals(p, cfg, table)
    A = float(np.sum(res.values)) / p
    value = math.exp(A - _LOG_2PI)
    err = float(np.sum(res.errors)) / p
    return Estimate(value=value, mode=EXACT, n_samples=p, error_estimate=value * err,
                    extras={"log_mean": A, "log_error": err, "fallback_arcs": res.fallback_rows.tolist()})


def lq_norm_fekete(p: int, q: float, cfg: QuadConfig | None = None, table=None) -> Estimate:
    """``M_q(F_p)/sqrt(p) = (mean_k int_0^1 |G_p(k,t)|^q dt)^(1/q)``."""
    if not q > 0:
        raise DomainError("q must be positive")
    cfg = cfg or QuadConfig()
    table = _table(p, table)
    rows = fekete_rows(table, cfg)
    logs = batch_log_integrals(rows, cfg)
    total, err = batch_power_integrals(rows, q, logs, cfg)
    mean = float(np.sum(total)) / p
    value = mean ** (1.0 / q)
    rel = float(np.sum(err)) / p / mean
    return Estimate(value=value, mode=EXACT, n_samples=p, error_estimate=value * rel / q,
                    extras={"moment": mean})


def circle_zero_count(p: int, cfg: QuadConfig | None = None, table=None) -> tuple[int, float]:
    """Zeros of ``F_p`` on the unit circle: sign changes of ``H_p`` on every arc plus zeros at ``e(k/p)``."""
    cfg = cfg or QuadConfig()
    table = _table(p, table)
    res = arc_log_integrals(p, cfg, table)
    from .eval import fekete_grid

    at_points = np.abs(fekete_grid(table, 0.0)) <= 1e-8 * math.sqrt(p)
    at_points[0] = True
    count = int(np.sum(res.zero_counts)) + int(np.sum(at_points))
    return count, count / p
