"""The limiting random process and its truncations.

``H_X^J(t) = sum_{|m|<=J} X(m)/(m - t)`` with independent fair signs, and
``G_X^J(t) = (e(t) - 1)/(2 pi i) * H_X^J(t)``.  Per-pattern integrals of
``log|H|`` go through the same Chebyshev engine as the Fekete side.
"""
from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import kernels, rng
from .errors import DegenerateZeroError, DomainError, PoleError
from .estimate import EXACT, MONTE_CARLO, Estimate
from .parallel import chunk_bounds, pmap
from .quad import QuadConfig, SmoothRows, _gauss_legendre, batch_log_integrals, cheb_nodes

__all__ = [
    "SignPattern",
    "Estimate",
    "TruncatedH",
    "truncated_H",
    "sample_pattern",
    "sample_patterns",
    "enumerate_patterns",
    "second_moment_exact",
    "fourth_moment_exact",
    "fourth_moment_from_coefficients",
    "moment_integral",
    "pattern_log_integrals",
    "k0_estimate",
    "k0_schedule",
    "kq_estimate",
    "process_G",
]

log = logging.getLogger(__name__)

_LOG_2PI = math.log(2.0 * math.pi)
_MAX_EXACT_WIDTH = 21


@dataclass(frozen=True, eq=False)
class SignPattern:
    """Signs ``X(m)`` for ``|m| <= J``; ``signs[m + J]`` is the sign at index ``m``."""

    J: int
    signs: np.ndarray

    def __post_init__(self):
        J = int(self.J)
        if J < 1:
            raise DomainError("J must be at least 1")
        s = np.array(self.signs, dtype=np.int8)
        if s.shape != (2 * J + 1,):
            raise DomainError(f"pattern needs {2 * J + 1} signs, got shape {s.shape}")
        if not np.all(np.abs(s) == 1):
            raise DomainError("pattern entries must be +1 or -1")
        s.flags.writeable = False
        object.__setattr__(self, "J", J)
        object.__setattr__(self, "signs", s)

    def __getitem__(self, m):
        if abs(m) > self.J:
            raise IndexError(m)
        return int(self.signs[m + self.J])

    def __eq__(self, other):
        return isinstance(other, SignPattern) and self.J == other.J and np.array_equal(self.signs, other.signs)

    def __hash__(self):
        return hash((self.J, self.signs.tobytes()))

    def flipped(self) -> "SignPattern":
        return SignPattern(self.J, -self.signs)

    def indices(self) -> np.ndarray:
        return np.arange(-self.J, self.J + 1)


class TruncatedH:
    """``t -> sum signs[m]/(m - t)`` with exact derivatives; immutable."""

    def __init__(self, pattern: SignPattern):
        self.pattern = pattern
        self._signs = pattern.signs.astype(np.float64)[None, :]

    def _eval(self, t, order):
        t = np.asarray(t, dtype=np.float64)
        if np.any(t == np.round(t)) and np.any(np.abs(np.round(t)) <= self.pattern.J):
            raise PoleError("truncated H has a pole at integer t")
        flat = np.ravel(t)
        out = kernels.harmonic_sums(self._signs, np.zeros(flat.size, dtype=np.int64), flat, order)
        return out.reshape(t.shape) if t.ndim else float(out[0])

    def __call__(self, t):
        return self._eval(t, 0)

    def deriv(self, t, order: int = 1):
        if order not in (1, 2):
            raise DomainError("derivative order must be 1 or 2")
        return self._eval(t, order)


def truncated_H(pattern: SignPattern) -> TruncatedH:
    return TruncatedH(pattern)


def process_G(pattern: SignPattern, t):
    """``G_X^J(t) = (e(t) - 1)/(2 pi i) * H_X^J(t)``."""
    t = np.asarray(t, dtype=np.float64)
    return (np.exp(2j * np.pi * t) - 1.0) / (2j * np.pi) * truncated_H(pattern)(t)


def sample_patterns(J: int, seed: int, start: int = 0, count: int = 1) -> np.ndarray:
    """Signs of patterns ``start .. start+count-1`` as an int8 array ``(count, 2J+1)``."""
    if J < 1:
        raise DomainError("J must be at least 1")
    return rng.sign_patterns(seed, J, start, count)


def sample_pattern(J: int, seed: int, index: int = 0) -> SignPattern:
    """Pattern number ``index`` of the stream ``seed``."""
    return SignPattern(J, sample_patterns(J, seed, index, 1)[0])


def enumerate_patterns(J: int, fix_first: bool = False) -> np.ndarray:
    """All ``2^(2J+1)`` patterns (or half of them, sign at ``m=-J`` fixed to +1)."""
    width = 2 * J + 1
    free = width - 1 if fix_first else width
    codes = np.arange(2**free, dtype=np.int64)
    bits = (codes[:, None] >> np.arange(free - 1, -1, -1)) & 1
    s = (1 - 2 * bits).astype(np.int8)
    if fix_first:
        s = np.concatenate([np.ones((s.shape[0], 1), dtype=np.int8), s], axis=1)
    return s


# ------------------------------------------------------------ exact moments

def _coefficients(t, J):
    """``a_m(t) = (e(t) - 1)/(2 pi i (m - t))`` for ``|m| <= J``; shape ``(T, 2J+1)``."""
    t = np.atleast_1d(np.asarray(t, dtype=np.float64))
    m = np.arange(-J, J + 1, dtype=np.float64)
    return ((np.exp(2j * np.pi * t) - 1.0) / (2j * np.pi))[:, None] / (m[None, :] - t[:, None])


def _check_t(t):
    t = np.asarray(t, dtype=np.float64)
    if np.any((t <= 0) | (t >= 1)):
        raise DomainError("t must lie in (0, 1)")
    return t


def second_moment_exact(t, J=None):
    """``E|G_X^J(t)|^2``; ``J=None`` (or inf) gives the untruncated value 1."""
    t = _check_t(t)
    if J is None or J == math.inf:
        return np.ones_like(t) if t.ndim else 1.0
    m = np.arange(-int(J), int(J) + 1, dtype=np.float64)
    tt = np.atleast_1d(t)
    s = np.sin(np.pi * tt) ** 2 / np.pi**2
    out = s * np.sum(1.0 / (m[None, :] - tt[:, None]) ** 2, axis=1)
    return out if t.ndim else float(out[0])


def fourth_moment_from_coefficients(a) -> np.ndarray:
    """``E|sum X(m) a_m|^4 = 2 (sum|a|^2)^2 + |sum a^2|^2 - 2 sum|a|^4`` along the last axis."""
    a = np.asarray(a, dtype=np.complex128)
    a2 = np.abs(a) ** 2
    s2 = np.sum(a2, axis=-1)
    return 2.0 * s2**2 + np.abs(np.sum(a * a, axis=-1)) ** 2 - 2.0 * np.sum(a2**2, axis=-1)


def fourth_moment_exact(t, J: int):
    """``E|G_X^J(t)|^4`` by the pairing rule for Rademacher products."""
    t = _check_t(t)
    if J < 1:
        raise DomainError("J must be at least 1")
    out = fourth_moment_from_coefficients(_coefficients(t, int(J)))
    return out if t.ndim else float(out[0])


def moment_integral(func, J, nodes: int = 400) -> float:
    """``int_0^1 func(t, J) dt`` by composite Gauss-Legendre on 8 panels."""
    x, w = _gauss_legendre(nodes // 8)
    edges = np.linspace(0.0, 1.0, 9)
    total = 0.0
    for a, b in zip(edges[:-1], edges[1:]):
        t = 0.5 * (a + b) + 0.5 * (b - a) * x
        total += 0.5 * (b - a) * float(np.dot(w, func(t, J)))
    return total


# ------------------------------------------------------- per-pattern integrals

@lru_cache(maxsize=8)
def _smooth_kernel(J: int, n: int) -> np.ndarray:
    # R(t) = t (1 - t) H(t) sampled at the Chebyshev points
    t = cheb_nodes(n)
    m = np.arange(-J, J + 1, dtype=np.float64)
    K = (t * (1.0 - t))[None, :] / (m[:, None] - t[None, :])
    K.flags.writeable = False
    return K


def pattern_rows(signs, cfg: QuadConfig) -> SmoothRows:
    signs = np.asarray(signs)
    J = (signs.shape[1] - 1) // 2
    R = signs.astype(np.float64) @ _smooth_kernel(J, cfg.nodes)
    return SmoothRows.from_samples(R, (-1, -1))


def pattern_log_integrals(signs, cfg: QuadConfig | None = None, strict: bool = True):
    """``int_0^1 log|H_X^J(t)| dt`` for every row of ``signs``."""
    cfg = cfg or QuadConfig()
    return batch_log_integrals(pattern_rows(signs, cfg), cfg, strict=strict)


def _mc_log_integrals(J, n_samples, seed, cfg, block=4096):
    """Per-pattern integrals for patterns ``0..n-1``; unresolved patterns are redrawn."""
    bounds = chunk_bounds(n_samples, block)
    serial = replace_threads(cfg, 1)

    def work(bd):
        s, e = bd
        signs = rng.sign_patterns(seed, J, s, e - s)
        res = pattern_log_integrals(signs, serial, strict=False)
        vals = res.values
        incidents = []
        for i in res.failed_rows:
            idx = s + int(i)
            for attempt in range(1, 65):
                alt = rng.sign_patterns(seed ^ (attempt << 40), J, idx, 1, domain=rng.RESAMPLE)
                r2 = pattern_log_integrals(alt, serial, strict=False)
                if not r2.failed_rows.size:
                    vals[i] = r2.values[0]
                    incidents.append((idx, attempt))
                    break
            else:
                raise DegenerateZeroError(f"pattern {idx} could not be resampled", index=idx)
        return vals, incidents

    parts = pmap(work, bounds, cfg.threads)
    values = np.concatenate([p[0] for p in parts]) if parts else np.empty(0)
    incidents = [inc for p in parts for inc in p[1]]
    for idx, attempt in incidents:
        log.warning("degenerate zero in pattern %d (J=%d, seed=%d); resampled after %d attempt(s)",
                    idx, J, seed, attempt)
    return values, incidents


def replace_threads(cfg: QuadConfig, threads):
    from dataclasses import replace

    return replace(cfg, threads=threads)


def _k0_from_A(A_mean, A_se, **kw):
    value = math.exp(A_mean - _LOG_2PI)
    return value, value * A_se


def k0_estimate(J: int, n_samples: int = 0, mode: str = MONTE_CARLO, cfg: QuadConfig | None = None,
                seed: int = 0) -> Estimate:
    """``k0 = exp(A - log 2 pi)`` with ``A = E int_0^1 log|H_X^J(t)| dt``.

    ``mode="exact"`` enumerates all patterns (half of them, using the global
    sign flip) and needs ``2J+1 <= 21``; ``mode="monte_carlo"`` averages
    ``n_samples`` patterns from the stream ``seed``.
    """
    cfg = cfg or QuadConfig()
    if J < 1:
        raise DomainError("J must be at least 1")
    if mode == EXACT:
        if 2 * J + 1 > _MAX_EXACT_WIDTH:
            raise DomainError(f"exact mode needs 2J+1 <= {_MAX_EXACT_WIDTH}")
        signs = enumerate_patterns(J, fix_first=True)
        try:
            res = pattern_log_integrals(signs, cfg, strict=True)
        except DegenerateZeroError as exc:
            raise DegenerateZeroError(
                f"exact enumeration at J={J}: pattern {exc.index} "
                f"(signs {signs[exc.index].tolist() if exc.index is not None else '?'}) is degenerate",
                index=exc.index) from exc
        A = float(np.sum(res.values)) / signs.shape[0]
        value = math.exp(A - _LOG_2PI)
        err = float(np.sum(res.errors)) / signs.shape[0]
        return Estimate(value=value, mode=EXACT, n_samples=2 * signs.shape[0], error_estimate=value * err,
                        extras={"A": A, "A_std_error": 0.0, "J": J})
    if mode != MONTE_CARLO:
        raise DomainError(f"unknown mode {mode!r}")
    if n_samples < 2:
        raise DomainError("Monte-Carlo mode needs at least 2 samples")
    values, incidents = _mc_log_integrals(J, n_samples, seed, cfg)
    A = float(np.sum(values)) / n_samples
    A_se = float(np.std(values, ddof=1)) / math.sqrt(n_samples)
    value, se = _k0_from_A(A, A_se)
    return Estimate(value=value, std_error=se, n_samples=n_samples, seed=seed, mode=MONTE_CARLO,
                    extras={"A": A, "A_std_error": A_se, "J": J, "resampled": len(incidents)})


def k0_schedule(Js=(250, 500, 1000, 2000), n_samples: int = 20000, seed: int = 0,
                cfg: QuadConfig | None = None) -> dict:
    """Monte-Carlo ``k0`` along a truncation schedule plus extrapolation in ``1/J``.

    Patterns are nested across ``J`` (common random numbers), so each pattern
    carries its own least-squares line ``A_i(J) = a_i + b_i/J``; the
    extrapolated ``A`` is the mean of the intercepts ``a_i``.
    """
    cfg = cfg or QuadConfig()
    Js = sorted(int(j) for j in Js)
    if len(Js) < 2:
        raise DomainError("the schedule needs at least two truncation levels")
    per_J = np.empty((len(Js), n_samples))
    rows = []
    for i, J in enumerate(Js):
        vals, inc = _mc_log_integrals(J, n_samples, seed, cfg)
        per_J[i] = vals
        A = float(np.sum(vals)) / n_samples
        A_se = float(np.std(vals, ddof=1)) / math.sqrt(n_samples)
        k0, se = _k0_from_A(A, A_se)
        rows.append({"J": J, "A": A, "A_std_error": A_se, "k0": k0, "std_error": se, "resampled": len(inc)})
    x = 1.0 / np.array(Js, dtype=np.float64)
    X = np.stack([np.ones_like(x), x], axis=1)
    w_intercept = np.linalg.pinv(X)[0]
    intercepts = w_intercept @ per_J
    A_inf = float(np.sum(intercepts)) / n_samples
    A_inf_se = float(np.std(intercepts, ddof=1)) / math.sqrt(n_samples)
    k0_inf, se_inf = _k0_from_A(A_inf, A_inf_se)
    return {"levels": rows, "extrapolated": {"A": A_inf, "A_std_error": A_inf_se, "k0": k0_inf,
                                             "std_error": se_inf}, "n_samples": n_samples, "seed": seed}


@lru_cache(maxsize=8)
def _gl_kernel(J: int, n: int):
    x, w = _gauss_legendre(n)
    t = 0.5 * (x + 1.0)
    m = np.arange(-J, J + 1, dtype=np.float64)
    K = 1.0 / (m[:, None] - t[None, :])
    amp = np.sin(np.pi * t) / np.pi
    for a in (K, amp):
        a.flags.writeable = False
    return K, amp, 0.5 * w


def kq_estimate(q: float, J: int, n_samples: int, seed: int = 0, nodes: int = 256,
                threads: int | None = None, block: int = 4096) -> Estimate:
    """``(E int_0^1 |G_X^J(t)|^q dt)^(1/q)`` by Monte Carlo on fixed Gauss-Legendre nodes."""
    if not q > 0:
        raise DomainError("q must be positive")
    if n_samples < 2:
        raise DomainError("kq_estimate needs at least 2 samples")
    K, amp, w = _gl_kernel(int(J), int(nodes))

    def work(bd):
        s, e = bd
        signs = rng.sign_patterns(seed, J, s, e - s).astype(np.float64)
        G = np.abs(signs @ K) * amp[None, :]
        return (G**q) @ w

    vals = np.concatenate(pmap(work, chunk_bounds(n_samples, block), threads))
    mean = float(np.sum(vals)) / n_samples
    se_mean = float(np.std(vals, ddof=1)) / math.sqrt(n_samples)
    value = mean ** (1.0 / q)
    se = value * se_mean / (q * mean)
    return Estimate(value=value, std_error=se, n_samples=n_samples, seed=seed, mode=MONTE_CARLO,
                    extras={"moment": mean, "moment_std_error": se_mean, "J": J, "q": q})
