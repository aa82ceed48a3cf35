"""Quantitative checks tying the Fekete side to the limiting process.

Each report computes a finite-p (or finite-J) quantity whose asymptotic
behaviour is known and returns the numbers together with the fitted
exponent or constant it is judged on.  Nothing here asserts an absolute
constant that the asymptotics leave unspecified: checks are decay
exponents, ratios across p, or bounded trends.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

import numpy as np
from numpy.polynomial import chebyshev as npcheb
from scipy.optimize import nnls
from scipy.special import polygamma, psi

from . import rng
from .arith import _check_odd_prime, gauss_sum, is_prime, legendre_table, quadratic_correlation
from .errors import DomainError, UnsupportedMomentError
from .eval import fekete_derivative_grid_many, fekete_grid_many, gauss_point
from .parallel import chunk_bounds, pmap
from .process import pattern_rows, sample_patterns
from .quad import (
    QuadConfig,
    _panel_integrals,
    batch_log_integrals,
    fekete_rows,
    log_distance_integral,
)

__all__ = [
    "MomentSpec",
    "Rectangle",
    "moment_lhs",
    "moment_rhs_exact",
    "moment_rhs_enumerated",
    "moment_convergence_report",
    "approximation_gap",
    "approximation_gap_terms",
    "tightness_ratio",
    "tightness_report",
    "deriv_gap",
    "log_truncation_check",
    "sup_norm_report",
    "distribution_compare",
    "load_rects",
    "run_suite",
    "SUITES",
]

_UNTRUNCATED_J = 20000


# ------------------------------------------------------------------- types

@dataclass(frozen=True)
class MomentSpec:
    """Mixed moment ``prod_j G(t_j)^r_j conj(G(t_j))^s_j``."""

    nodes: tuple
    r: tuple
    s: tuple

    def __post_init__(self):
        nodes = tuple(float(v) for v in np.atleast_1d(self.nodes))
        r = tuple(int(v) for v in np.atleast_1d(self.r))
        s = tuple(int(v) for v in np.atleast_1d(self.s))
        if not len(nodes) == len(r) == len(s):
            raise DomainError("nodes, r and s must have equal lengths")
        if any(v < 0 or v > 1 for v in nodes):
            raise DomainError("moment nodes must lie in [0, 1]")
        if any(b <= a for a, b in zip(nodes, nodes[1:])):
            raise DomainError("moment nodes must be strictly increasing")
        if any(v < 0 for v in r + s):
            raise DomainError("moment exponents must be non-negative")
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "s", s)

    @property
    def degree(self) -> int:
        return sum(self.r) + sum(self.s)


@dataclass(frozen=True)
class Rectangle:
    re_lo: float
    re_hi: float
    im_lo: float
    im_hi: float
    name: str = ""

    def __post_init__(self):
        if not (self.re_lo < self.re_hi and self.im_lo < self.im_hi):
            raise DomainError("rectangle sides must satisfy lo < hi")

    def contains(self, z) -> np.ndarray:
        z = np.asarray(z)
        return (z.real >= self.re_lo) & (z.real <= self.re_hi) & (z.imag >= self.im_lo) & (z.imag <= self.im_hi)

    def negated(self) -> "Rectangle":
        return Rectangle(-self.re_hi, -self.re_lo, -self.im_hi, -self.im_lo, f"-{self.name}" if self.name else "")


def load_rects(path=None) -> list[Rectangle]:
    """Rectangle family from a JSON file (default: the bundled ``rects_v1.json``)."""
    if path is None:
        text = resources.files("fekete").joinpath("data/rects_v1.json").read_text()
    else:
        text = Path(path).read_text()
    data = json.loads(text)
    items = data["rectangles"] if isinstance(data, dict) else data
    return [Rectangle(float(d["re_lo"]), float(d["re_hi"]), float(d["im_lo"]), float(d["im_hi"]),
                      str(d.get("name", ""))) for d in items]


# ----------------------------------------------------------------- moments

def _table(p):
    return legendre_table(_check_odd_prime(p))


def moment_lhs(p: int, spec: MomentSpec, table=None) -> complex:
    """``(1/p) sum_k prod_j G_p(k,t_j)^r_j conj(G_p(k,t_j))^s_j``."""
    table = table or _table(p)
    if not spec.nodes:
        return 1.0 + 0.0j
    G = fekete_grid_many(table, spec.nodes) / gauss_point(table.p)
    prod = np.ones(table.p, dtype=np.complex128)
    for j in range(len(spec.nodes)):
        prod *= G[j] ** spec.r[j] * np.conj(G[j]) ** spec.s[j]
    return complex(np.sum(prod) / table.p)


def _linear_forms(spec):
    forms = []
    for t, r, s in zip(spec.nodes, spec.r, spec.s):
        c = (np.exp(2j * np.pi * t) - 1.0) / (2j * np.pi) if 0.0 < t < 1.0 else 0.0j
        forms += [(c, t)] * r + [(np.conj(c), t)] * s
    return forms


def _coefficient_vector(c, t, m):
    """``g_m(t)`` (or its conjugate) over ``m``; at ``t`` in {0, 1} only ``g_t(t) = -1`` survives."""
    if t == 0.0 or t == 1.0:
        return -(m == t).astype(np.complex128)
    return c / (m - t)


def _half_tail(a, b, N):
    # sum_{m >= N} 1/((m - a)(m - b))
    if a == b:
        return float(polygamma(1, N - a))
    return float((psi(N - b) - psi(N - a)) / (a - b))


def _pair_tail(a, b, J):
    N = J + 1
    return _half_tail(a, b, N) + _half_tail(-a, -b, N)


def moment_rhs_exact(J, spec: MomentSpec) -> complex:
    """``E prod_j G_X^J(t_j)^r_j conj(G_X^J(t_j))^s_j`` by Rademacher pairings (degree <= 4).

    ``J=None`` gives the untruncated process: pair sums get their exact
    digamma/trigamma tails, the fourth-order diagonal is summed to
    ``|m| <= 20000`` (remainder below 1e-12).
    """
    d = spec.degree
    if d > 4:
        raise UnsupportedMomentError(f"exact process moments are limited to degree 4 (got {d})")
    if d == 0:
        return 1.0 + 0.0j
    if d % 2:
        return 0.0j
    tails = J is None
    Jm = _UNTRUNCATED_J if tails else int(J)
    if Jm < 1:
        raise DomainError("J must be at least 1")
    m = np.arange(-Jm, Jm + 1, dtype=np.float64)
    forms = _linear_forms(spec)
    vecs = [_coefficient_vector(c, t, m) for c, t in forms]

    def pair(i, j):
        ci, ti = forms[i]
        cj, tj = forms[j]
        val = np.sum(vecs[i] * vecs[j])
        if tails and ci != 0 and cj != 0:
            val += ci * cj * _pair_tail(ti, tj, Jm)
        return complex(val)

    if d == 2:
        return pair(0, 1)
    diag = complex(np.sum(vecs[0] * vecs[1] * vecs[2] * vecs[3]))
    return pair(0, 1) * pair(2, 3) + pair(0, 2) * pair(1, 3) + pair(0, 3) * pair(1, 2) - 2.0 * diag


def moment_rhs_enumerated(J: int, spec: MomentSpec) -> complex:
    """Brute-force expectation over all ``2^(2J+1)`` patterns (small ``J`` only)."""
    from .process import enumerate_patterns

    if 2 * J + 1 > 20:
        raise DomainError("enumeration is limited to 2J+1 <= 20")
    signs = enumerate_patterns(J).astype(np.float64)
    m = np.arange(-J, J + 1, dtype=np.float64)
    prod = np.ones(signs.shape[0], dtype=np.complex128)
    for t, r, s in zip(spec.nodes, spec.r, spec.s):
        c = (np.exp(2j * np.pi * t) - 1.0) / (2j * np.pi) if 0.0 < t < 1.0 else 0.0j
        G = signs @ _coefficient_vector(c, t, m)
        prod *= G**r * np.conj(G) ** s
    return complex(np.mean(prod))


def _fit_exponent(x, y):
    """Least-squares slope of ``log y`` against ``log x``."""
    lx, ly = np.log(np.asarray(x, float)), np.log(np.asarray(y, float))
    return float(np.polyfit(lx, ly, 1)[0])


def moment_convergence_report(p_list, J, spec: MomentSpec) -> dict:
    """``Delta(p) = |moment_lhs - moment_rhs_exact|`` and the exponent ``beta`` in ``C p^-beta (log p)^(r+s)``."""
    p_list = [int(p) for p in p_list]
    if any(b <= a for a, b in zip(p_list, p_list[1:])):
        raise DomainError("p_list must be increasing")
    rhs = moment_rhs_exact(J, spec)
    deltas = [abs(moment_lhs(p, spec) - rhs) for p in p_list]
    d = spec.degree
    if all(v == 0.0 for v in deltas):
        beta = math.inf
    else:
        scaled = [max(v, 1e-300) / math.log(p) ** d for v, p in zip(deltas, p_list)]
        beta = -_fit_exponent(p_list, scaled)
    return {"p": p_list, "delta": deltas, "rhs": [rhs.real, rhs.imag], "beta": beta,
            "decreasing": bool(all(b <= a for a, b in zip(deltas, deltas[1:]))), "passed": beta >= 0.4}


# ----------------------------------------------------------- approximation

def _cot_minus_inverse(y):
    """``cot(y) - 1/y``, with its Taylor series near 0."""
    y = np.asarray(y, dtype=np.float64)
    small = np.abs(y) < 1e-3
    ys = np.where(small, 1.0, y)
    direct = 1.0 / np.tan(ys) - 1.0 / ys
    series = -y / 3.0 - y**3 / 45.0 - 2.0 * y**5 / 945.0
    return np.where(small, series, direct)


def approximation_gap_terms(p: int, t) -> tuple[np.ndarray, np.ndarray]:
    """``E|G_X(t) - G~_{X,p}(t)|^2`` split into the window part and the tail ``|m| > (p-1)/2``."""
    p = _check_odd_prime(p)
    t = np.atleast_1d(np.asarray(t, dtype=np.float64))
    if np.any((t < 0) | (t > 1)):
        raise DomainError("t must lie in [0, 1]")
    h = (p - 1) // 2
    m = np.arange(-h, h + 1, dtype=np.float64)
    x = (m[None, :] - t[:, None]) / p
    # g_m - alpha_p(m;t) = (e(t)-1)/p * (1/(2 pi i x) - 1/(e(x)-1)),
    # and 1/(e(x)-1) = -1/2 - (i/2) cot(pi x)
    D = 0.5 + 0.5j * _cot_minus_inverse(np.pi * x)
    amp = np.abs(np.exp(2j * np.pi * t) - 1.0) ** 2 / p**2
    body = amp * np.sum(np.abs(D) ** 2, axis=1)
    tail = np.sin(np.pi * t) ** 2 / np.pi**2 * (polygamma(1, h + 1 - t) + polygamma(1, h + 1 + t))
    return body, tail


def approximation_gap(p: int, t_list) -> float:
    """``max_t p * E|G_X(t) - G~_{X,p}(t)|^2`` over ``t_list``."""
    body, tail = approximation_gap_terms(p, t_list)
    return float(np.max(p * (body + tail)))


# ---------------------------------------------------------------- tightness

def _pairs(pair_count, seed):
    u = rng.generator(seed, rng.PAIRS).random((pair_count, 2))
    return u[:, 0], u[:, 1]


def tightness_report(p: int, pair_count: int = 500, seed: int = 0) -> dict:
    """``E_k|G_p(k,t) - G_p(k,s)|^2`` over random pairs: max ratio to ``|t-s|^(3/2)`` and a ``C1|t-s|^2 + C2/p`` fit."""
    if pair_count < 100:
        raise DomainError("pair_count must be at least 100")
    table = _table(p)
    s, t = _pairs(pair_count, seed)
    G = fekete_grid_many(table, np.concatenate([s, t])) / gauss_point(table.p)
    d = np.sum(np.abs(G[pair_count:] - G[:pair_count]) ** 2, axis=1) / table.p
    gap = np.abs(t - s)
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.where(gap > 0, d / gap**1.5, 0.0)
    A = np.stack([gap**2, np.full_like(gap, 1.0 / table.p)], axis=1)
    (C1, C2), resid = nnls(A, d)
    return {"p": table.p, "max_ratio": float(np.max(ratio)), "C1": float(C1), "C2": float(C2),
            "fit_residual": float(resid), "pairs": int(pair_count), "seed": int(seed)}


def tightness_ratio(p: int, pair_count: int = 500, seed: int = 0) -> float:
    return tightness_report(p, pair_count, seed)["max_ratio"]


# --------------------------------------------------------- derivative gaps

def _f1(x):
    """``pi^2/sin^2(pi x) - 1/x^2``."""
    x = np.asarray(x, dtype=np.float64)
    small = np.abs(x) < 1e-2
    xs = np.where(small, 1.0, x)
    direct = np.pi**2 / np.sin(np.pi * xs) ** 2 - 1.0 / xs**2
    y2 = (np.pi * x) ** 2
    series = np.pi**2 * (1.0 / 3.0 + y2 / 15.0 + 2.0 * y2**2 / 189.0 + y2**3 / 675.0)
    return np.where(small, series, direct)


def _f2(x):
    """``pi^3 cos(pi x)/sin^3(pi x) - 1/x^3`` (equals ``-f1'(x)/2``)."""
    x = np.asarray(x, dtype=np.float64)
    small = np.abs(x) < 1e-2
    xs = np.where(small, 1.0, x)
    direct = np.pi**3 * np.cos(np.pi * xs) / np.sin(np.pi * xs) ** 3 - 1.0 / xs**3
    y = np.pi * x
    series = -np.pi**3 * (y / 15.0 + 4.0 * y**3 / 189.0 + 6.0 * y**5 / 675.0)
    return np.where(small, series, direct)


def deriv_gap_matrix(p: int, order: int, t_grid) -> np.ndarray:
    """``H_p^(order)(k,t) - H~^(order)(k,t)`` for every arc ``k`` and every ``t`` in ``t_grid``; shape ``(T, p)``."""
    if order not in (1, 2):
        raise DomainError("order must be 1 or 2")
    table = _table(p)
    p = table.p
    h = (p - 1) // 2
    m = np.arange(-h, h + 1)
    t = np.atleast_1d(np.asarray(t_grid, dtype=np.float64))
    x = (m[None, :] - t[:, None]) / p
    d = _f1(x) / p**2 if order == 1 else 2.0 * _f2(x) / p**3
    dd = np.zeros((t.size, p))
    dd[:, m % p] = d
    chi = table.as_float()
    # sum_m chi(k+m) d_m for all k at once
    corr = np.fft.ifft(np.fft.fft(chi)[None, :] * np.conj(np.fft.fft(dd, axis=1)), axis=1).real
    return -corr


def deriv_gap(p: int, order: int, n_t: int = 33) -> float:
    """``p^order * max_{k,t} |H_p^(order) - H~^(order)|`` on ``n_t`` equispaced offsets."""
    gap = deriv_gap_matrix(p, order, np.linspace(0.0, 1.0, n_t))
    return float(np.max(np.abs(gap)) * p**order)


# ------------------------------------------------------------ log truncation

def _target_rows(target, p, J, n_samples, seed, cfg):
    if target == "fekete":
        if p is None:
            raise DomainError("the fekete target needs p")
        return fekete_rows(_table(p), cfg)
    if target == "process":
        if J is None:
            raise DomainError("the process target needs J")
        return pattern_rows(sample_patterns(J, seed, 0, n_samples), cfg)
    raise DomainError(f"unknown target {target!r}")


def _crossings(rows, rid_all, ts, Hs, level):
    """Brackets of ``H = level`` on the scan, bisected to 1e-13."""
    f = Hs - level
    sb = np.signbit(f)
    rb, cj = np.nonzero(sb[:, 1:] != sb[:, :-1])
    lo, hi = ts[cj].copy(), ts[cj + 1].copy()
    rid = rid_all[rb]
    flo = f[rb, cj]
    for _ in range(48):
        mid = 0.5 * (lo + hi)
        fm = rows(rid, mid) - level
        move = np.signbit(fm) == np.signbit(flo)
        lo = np.where(move, mid, lo)
        flo = np.where(move, fm, flo)
        hi = np.where(move, hi, mid)
    return rid, 0.5 * (lo + hi)


def log_truncation_check(target: str, eps_list, p: int | None = None, J: int | None = None,
                         n_samples: int = 2000, seed: int = 0, cfg: QuadConfig | None = None,
                         scan_points: int = 2048) -> dict:
    """Truncated log-masses of ``H`` over all arcs (or sampled patterns).

    For each ``eps``: the interior mass ``|avg int_0^1 log|H| 1{|H|<=eps}|``
    and the boundary mass ``|avg (int_0^eps + int_(1-eps)^1) log|H| 1{|H|>=eps}|``.
    The interior exponent is the least-squares slope of log-mass against
    ``log eps``; the boundary constants are ``mass / (eps log(1/eps))``.
    """
    eps_list = [float(e) for e in eps_list]
    if any(not 0 < e < 0.5 for e in eps_list):
        raise DomainError("eps values must lie in (0, 1/2)")
    if any(b >= a for a, b in zip(eps_list, eps_list[1:])):
        raise DomainError("eps_list must be decreasing")
    cfg = cfg or QuadConfig()
    rows = _target_rows(target, p, J, n_samples, seed, cfg)
    logs = batch_log_integrals(rows, cfg)
    B = len(rows)
    counts = np.diff(logs.root_ptr)
    width = max(1, int(counts.max()) if counts.size else 1)
    roots = np.full((B, width), np.nan)
    for b in range(B):
        rb = logs.roots_of(b)
        roots[b, :rb.size] = rb
    o0 = rows.orders[:, 0].astype(np.float64)
    o1 = rows.orders[:, 1].astype(np.float64)

    def g(rid, t):
        with np.errstate(divide="ignore", invalid="ignore"):
            v = np.log(np.abs(rows.smooth(rid, t)))
            lr = np.log(np.abs(t[:, None] - roots[rid]))
        return v - np.nansum(lr, axis=1)

    ts = np.concatenate([[1e-9], np.arange(1, scan_points) / scan_points, [1.0 - 1e-9]])
    x = 2.0 * ts - 1.0
    V = npcheb.chebvander(x, rows.coeffs.shape[1] - 1)
    Hs = (rows.coeffs @ V.T) * ts[None, :] ** o0[:, None] * (1.0 - ts[None, :]) ** o1[:, None]
    rid_all = np.arange(B)

    interior, boundary = [], []
    for eps in eps_list:
        pts_r = [rid_all, rid_all, rid_all, rid_all]
        pts_t = [np.zeros(B), np.ones(B), np.full(B, eps), np.full(B, 1.0 - eps)]
        for level in (eps, -eps):
            r, c = _crossings(rows, rid_all, ts, Hs, level)
            pts_r.append(r)
            pts_t.append(c)
        pr = np.concatenate(pts_r)
        pt = np.concatenate(pts_t)
        order = np.lexsort((pt, pr))
        pr, pt = pr[order], pt[order]
        same = pr[1:] == pr[:-1]
        ir, a, b = pr[:-1][same], pt[:-1][same], pt[1:][same]
        keep = b > a
        ir, a, b = ir[keep], a[keep], b[keep]
        mid = 0.5 * (a + b)
        low = np.abs(rows(ir, mid)) <= eps
        edge = (b <= eps) | (a >= 1.0 - eps)
        sel = low | edge
        ir, a, b, low, edge = ir[sel], a[sel], b[sel], low[sel], edge[sel]
        ids = np.arange(ir.size)
        rem, _ = _panel_integrals(lambda i, t: g(ir[i], t), ids, a, b, 16, 1e-12, max_level=30, atol=1e-14)
        rem = np.concatenate([rem, np.zeros(ir.size - rem.size)])
        rr = roots[ir]
        present = ~np.isnan(rr)
        with np.errstate(invalid="ignore"):
            per_root = log_distance_integral(a[:, None], b[:, None], np.where(present, rr, 0.0))
        exact = np.sum(np.where(present, per_root, 0.0), axis=1)
        exact = exact + o0[ir] * log_distance_integral(a, b, 0.0) + o1[ir] * log_distance_integral(a, b, 1.0)
        val = rem + exact
        interior.append(abs(float(np.sum(val[low]))) / B)
        boundary.append(abs(float(np.sum(val[edge & ~low]))) / B)

    exponent = _fit_exponent(eps_list, interior) if len(eps_list) > 1 else math.nan
    C = [m / (e * math.log(1.0 / e)) for m, e in zip(boundary, eps_list)]
    C_ratio = max(C) / min(C) if min(C) > 0 else math.inf
    return {"target": target, "p": p, "J": J, "n_rows": B, "eps": eps_list, "interior": interior,
            "boundary": boundary, "interior_exponent": exponent, "boundary_C": C, "boundary_C_ratio": C_ratio,
            "interior_passed": exponent >= 6.0 / 25.0 - 0.05, "boundary_passed": C_ratio <= 2.0}


# --------------------------------------------------------------- sup norms

def sup_norm_report(p: int, per_arc: int = 16) -> dict:
    """Grid sup of ``|F_p|`` and ``|F_p'|`` on ``per_arc * p`` equispaced points of the circle."""
    table = _table(p)
    p = table.p
    off = np.arange(per_arc) / per_arc
    sup_F = float(np.max(np.abs(fekete_grid_many(table, off))))
    sup_dF = float(np.max(np.abs(fekete_derivative_grid_many(table, off))))
    rp = math.sqrt(p)
    return {"p": p, "grid_points": per_arc * p, "sup_F": sup_F, "sup_dF": sup_dF,
            "sup_F_over_sqrtp_logp": sup_F / (rp * math.log(p)),
            "bernstein_ratio": sup_dF / ((p - 1) * sup_F),
            "gauss_point_ok": sup_F >= rp * (1.0 - 1e-12)}


# ------------------------------------------------------------ distribution

def _fractions(z, rects):
    return np.array([np.count_nonzero(r.contains(z)) for r in rects], dtype=np.float64) / z.size


def distribution_compare(p: int, rects, J: int, n_samples: int, grid_per_arc: int = 64, seed: int = 0,
                         theta_block: int = 64, pattern_block: int = 64, threads: int | None = None) -> dict:
    """Rectangle probabilities of ``G_p(k,t)`` on an arc grid against those of ``G_X^J(theta)``.

    Process draws come in independent blocks: ``pattern_block`` patterns, all
    evaluated at the same ``theta_block`` uniform points, so each block is one
    small matrix product.  Standard errors use the block means as the
    independent units.
    """
    if n_samples < 10**5:
        raise DomainError("distribution_compare needs at least 1e5 process draws")
    rects = list(rects)
    table = _table(p)
    off = (np.arange(grid_per_arc) + 0.5) / grid_per_arc
    Gf = (fekete_grid_many(table, off) / gauss_point(table.p)).ravel()
    fek = _fractions(Gf, rects)

    per_block = theta_block * pattern_block
    n_blocks = -(-n_samples // per_block)
    m = np.arange(-J, J + 1, dtype=np.float64)

    def work(blk):
        theta = rng.generator(seed, rng.THETA, blk).random(theta_block)
        signs = sample_patterns(J, seed, blk * pattern_block, pattern_block).astype(np.float64)
        G = (signs @ (1.0 / (m[:, None] - theta[None, :]))) * ((np.exp(2j * np.pi * theta) - 1.0) / (2j * np.pi))
        return np.array([np.count_nonzero(r.contains(G)) for r in rects], dtype=np.float64) / per_block

    block_frac = np.stack(pmap(work, range(n_blocks), threads), axis=0)
    proc = np.sum(block_frac, axis=0) / n_blocks
    se = np.std(block_frac, axis=0, ddof=1) / math.sqrt(n_blocks)
    gaps = np.abs(fek - proc)
    return {"p": table.p, "J": J, "n_draws": int(n_blocks * per_block), "n_blocks": int(n_blocks),
            "grid_points": int(Gf.size), "rects": [r.name for r in rects], "fekete": fek.tolist(),
            "process": proc.tolist(), "process_std_error": se.tolist(), "gaps": gaps.tolist(),
            "max_gap": float(np.max(gaps)), "seed": int(seed)}


# ------------------------------------------------------------------ suites

def suite_quadsum(p: int = 499, **_) -> dict:
    table = _table(p)
    bad = [n for n in range(table.p) if quadratic_correlation(table, n) != (table.p - 1 if n == 0 else -1)]
    return {"suite": "quadsum", "p": table.p, "checked": table.p, "failures": bad, "passed": not bad}


def suite_gauss(p: int = 200, **_) -> dict:
    worst = 0.0
    for q in range(3, int(p)):
        if not is_prime(q):
            continue
        tab = legendre_table(q)
        err = abs(gauss_sum(tab) - gauss_point(q)) / math.sqrt(q)
        worst = max(worst, err)
    return {"suite": "gauss", "p_max": int(p), "max_relative_error": worst, "passed": worst <= 1e-9}


def suite_moments(p: int = 1009, **_) -> dict:
    spec = MomentSpec((0.37,), (1,), (1,))
    rep = moment_convergence_report([101, 1009, 10007], None, spec)
    return {"suite": "moments", **rep}


def suite_approx(p: int = 1009, **_) -> dict:
    t = np.linspace(0.0, 1.0, 33)
    vals = {q: approximation_gap(q, t) for q in (101, 1009, 10007)}
    ratio = max(vals.values()) / min(vals.values())
    return {"suite": "approx", "scaled_gaps": vals, "ratio": ratio, "passed": ratio <= 4.0}


def suite_tightness(p: int = 1009, seed: int = 0, **_) -> dict:
    a, b = tightness_ratio(101, 500, seed), tightness_ratio(1009, 500, seed)
    ratio = max(a, b) / min(a, b)
    return {"suite": "tightness", "max_ratio": {"101": a, "1009": b}, "ratio": ratio, "passed": ratio <= 2.0}


def suite_deriv(p: int = 10007, **_) -> dict:
    ps = (101, 1009, 10007)
    g1 = [deriv_gap(q, 1) for q in ps]
    g2 = [deriv_gap(q, 2) for q in ps]
    ok = all(b <= a for a, b in zip(g1, g1[1:])) and all(b <= a for a, b in zip(g2, g2[1:]))
    return {"suite": "deriv", "p": list(ps), "order1": g1, "order2": g2, "passed": ok}


def suite_logtrunc(p: int = 1009, **_) -> dict:
    rep = log_truncation_check("fekete", [1e-1, 1e-2, 1e-3], p=p)
    return {"suite": "logtrunc", **rep, "passed": rep["interior_passed"] and rep["boundary_passed"]}


def suite_sup(p: int = 1009, **_) -> dict:
    rep = sup_norm_report(p)
    ok = rep["gauss_point_ok"] and rep["bernstein_ratio"] <= 1.0 + 1e-3
    return {"suite": "sup", **rep, "passed": ok}


SUITES = {
    "quadsum": suite_quadsum,
    "gauss": suite_gauss,
    "moments": suite_moments,
    "approx": suite_approx,
    "tightness": suite_tightness,
    "deriv": suite_deriv,
    "logtrunc": suite_logtrunc,
    "sup": suite_sup,
}


def run_suite(name: str, **params) -> dict:
    if name not in SUITES:
        raise DomainError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    return SUITES[name](**params)
