"""Fekete polynomial values on the unit circle, arc by arc.

The circle is cut into the ``p`` arcs ``e((k+t)/p)``, ``t`` in ``[0, 1]``.
On arc ``k`` the normalised value is ``G_p(k,t) = F_p(e((k+t)/p)) / F_p(e(1/p))``
and ``H_p(k,t) = 2*pi*i * G_p(k,t) / (e(t) - 1)`` is real.  Both are finite
character sums over ``|m| <= (p-1)/2`` with coefficients
``c_m = -((k+m)/p)``:

    G_p(k,t) = sum_m c_m * alpha_p(m;t),  alpha_p(m;t) = (e(t)-1) / (p*(e((m-t)/p)-1))
    H_p(k,t) = (pi/p) * sum_m c_m * cot(pi*(m-t)/p)
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import kernels
from .arith import LegendreTable
from .errors import DomainError, PoleError

__all__ = [
    "PhaseGrid",
    "ArcFunction",
    "chirp_dft",
    "gauss_point",
    "fekete_horner",
    "fekete_grid",
    "fekete_grid_many",
    "fekete_derivative_grid_many",
    "arc_coefficients",
    "alpha",
    "arc_G",
    "arc_H",
    "arc_H_deriv",
    "arc_H_complex",
    "arc_values",
]


def _e(x):
    return np.exp(2j * np.pi * np.asarray(x, dtype=np.float64))


@dataclass(frozen=True)
class PhaseGrid:
    """Offsets ``t`` shared by every arc of ``F_p``."""

    p: int
    offsets: tuple

    def __post_init__(self):
        off = np.asarray(self.offsets, dtype=np.float64).ravel()
        if off.size and (off.min() < 0.0 or off.max() > 1.0):
            raise DomainError("phase offsets must lie in [0, 1]")
        if np.any(np.diff(off) <= 0):
            raise DomainError("phase offsets must be strictly increasing")
        object.__setattr__(self, "offsets", tuple(float(v) for v in off))

    def __len__(self):
        return len(self.offsets)

    def array(self) -> np.ndarray:
        return np.asarray(self.offsets, dtype=np.float64)


@lru_cache(maxsize=16)
def _chirp_plan(n: int):
    # X_k = c(k) * sum_j x_j c(j) conj(c(k-j)),  c(j) = exp(i*pi*j^2/n)
    size = 1 << int(np.ceil(np.log2(2 * n - 1)))
    j = np.arange(n, dtype=np.int64)
    chirp = np.exp(1j * np.pi * ((j * j) % (2 * n)) / n)
    kernel = np.zeros(size, dtype=np.complex128)
    kernel[:n] = np.conj(chirp)
    kernel[size - n + 1:] = np.conj(chirp[1:][::-1])
    return size, chirp, np.fft.fft(kernel)


def chirp_dft(x) -> np.ndarray:
    """``X_k = sum_j x_j e(jk/n)`` along the last axis, any length ``n``.

    Bluestein's factorisation turns the length-``n`` transform into a
    circular convolution of power-of-two length ``>= 2n - 1``.
    """
    x = np.asarray(x, dtype=np.complex128)
    n = x.shape[-1]
    size, chirp, kernel_hat = _chirp_plan(n)
    a = np.fft.fft(x * chirp, n=size, axis=-1)
    y = np.fft.ifft(a * kernel_hat, axis=-1)[..., :n]
    return y * chirp


def gauss_point(p: int) -> complex:
    """Closed form of ``F_p(e(1/p))``: ``sqrt(p)`` or ``i*sqrt(p)``."""
    return complex(np.sqrt(p)) if p % 4 == 1 else complex(0.0, np.sqrt(p))


def fekete_horner(table: LegendreTable, z) -> np.ndarray | complex:
    """Direct Horner evaluation of ``F_p(z) = sum_{n=1}^{p-1} (n/p) z^n``."""
    z = np.asarray(z, dtype=np.complex128)
    if np.any(np.abs(np.abs(z) - 1.0) > 1e-12):
        raise DomainError("fekete_horner expects points on the unit circle")
    coeffs = table.as_float()
    acc = np.zeros_like(z)
    for c in coeffs[::-1]:
        acc = acc * z + c
    return complex(acc) if acc.ndim == 0 else acc


def fekete_grid_many(table: LegendreTable, offsets) -> np.ndarray:
    """``out[j, k] = F_p(e((k + offsets[j])/p))`` via one chirp-z transform per offset."""
    p = table.p
    off = np.atleast_1d(np.asarray(offsets, dtype=np.float64))
    n = np.arange(p)
    x = table.as_float()[None, :] * _e(np.outer(off, n) / p)
    return chirp_dft(x)


def fekete_grid(table: LegendreTable, t: float) -> np.ndarray:
    """Values of ``F_p`` at ``e((k+t)/p)`` for ``k = 0..p-1``."""
    return fekete_grid_many(table, [t])[0]


def fekete_derivative_grid_many(table: LegendreTable, offsets) -> np.ndarray:
    """``|F_p'|`` companion: ``z F_p'(z) = sum n (n/p) z^n`` on the same grid."""
    p = table.p
    off = np.atleast_1d(np.asarray(offsets, dtype=np.float64))
    n = np.arange(p)
    x = (n * table.as_float())[None, :] * _e(np.outer(off, n) / p)
    return chirp_dft(x)


def arc_coefficients(table: LegendreTable, k: int) -> tuple[np.ndarray, np.ndarray]:
    """Indices ``m`` with ``|m| <= (p-1)/2`` and coefficients ``c_m = -((k+m)/p)``."""
    p = table.p
    h = (p - 1) // 2
    m = np.arange(-h, h + 1, dtype=np.int64)
    return m, -table.as_float()[(int(k) + m) % p]


def alpha(p: int, m, t) -> np.ndarray:
    """``alpha_p(m;t) = (e(t)-1) / (p (e((m-t)/p) - 1))``."""
    m = np.asarray(m, dtype=np.float64)
    t = np.asarray(t, dtype=np.float64)
    return (_e(t) - 1.0) / (p * (_e((m - t) / p) - 1.0))


@dataclass(frozen=True)
class ArcFunction:
    """The pair ``(G_p(k,.), H_p(k,.))`` on one arc."""

    table: LegendreTable
    k: int

    def __post_init__(self):
        if not 0 <= int(self.k) < self.table.p:
            raise DomainError(f"arc index must lie in [0, {self.table.p - 1}]")
        object.__setattr__(self, "k", int(self.k))

    @property
    def p(self) -> int:
        return self.table.p

    def endpoint_orders(self) -> tuple[int, int]:
        """Order of ``H`` at ``t=0`` and ``t=1``: -1 pole, 0 regular, +1 simple zero.

        ``H`` has a pole wherever ``F_p`` is non-zero at the arc endpoint; at
        ``z = 1`` it is regular, vanishing when ``F_p`` has a double zero there
        (``p = 1 mod 4``).
        """
        p, k = self.p, self.k
        at_one = 1 if p % 4 == 1 else 0
        left = at_one if k == 0 else -1
        right = at_one if k == p - 1 else -1
        return left, right

    def G(self, t):
        return arc_G(self, t)

    def H(self, t):
        return arc_H(self, t)

    def dH(self, t, order=1):
        return arc_H_deriv(self, t, order)


def _as_points(t):
    t = np.asarray(t, dtype=np.float64)
    return t, t.ndim == 0


def arc_G(arc: ArcFunction, t):
    """``G_p(k,t)`` from the alpha-sum; equals ``F_p(e((k+t)/p)) / F_p(e(1/p))``."""
    t, scalar = _as_points(t)
    if np.any((t < 0.0) | (t > 1.0)):
        raise DomainError("arc_G requires t in [0, 1]")
    p = arc.p
    m, c = arc_coefficients(arc.table, arc.k)
    flat = np.atleast_1d(t)
    out = np.empty(flat.shape, dtype=np.complex128)
    for i, tv in enumerate(flat):
        if tv == 0.0:
            out[i] = arc.table[arc.k]
        elif tv == 1.0:
            out[i] = arc.table[arc.k + 1]
        else:
            out[i] = np.sum(c * alpha(p, m, tv))
    return complex(out[0]) if scalar else out.reshape(t.shape)


def _check_open(t, name):
    if np.any((t <= 0.0) | (t >= 1.0)):
        if np.any((t == 0.0) | (t == 1.0)):
            raise PoleError(f"{name} is not evaluated at the arc endpoints t in {{0, 1}}")
        raise DomainError(f"{name} requires t in (0, 1)")


def arc_H(arc: ArcFunction, t):
    """``H_p(k,t)`` via the real cotangent sum."""
    t, scalar = _as_points(t)
    _check_open(t, "arc_H")
    flat = np.atleast_1d(t).ravel()
    out = kernels.cot_sums(arc.table.as_float(), np.full(flat.size, arc.k), flat, 0)
    return float(out[0]) if scalar else out.reshape(t.shape)


def arc_H_deriv(arc: ArcFunction, t, order: int = 1):
    """First or second t-derivative of ``H_p(k,t)``."""
    if order not in (1, 2):
        raise DomainError("derivative order must be 1 or 2")
    t, scalar = _as_points(t)
    _check_open(t, "arc_H_deriv")
    flat = np.atleast_1d(t).ravel()
    out = kernels.cot_sums(arc.table.as_float(), np.full(flat.size, arc.k), flat, order)
    return float(out[0]) if scalar else out.reshape(t.shape)


def arc_H_complex(arc: ArcFunction, t):
    """``2*pi*i*G/(e(t)-1)`` from the complex alpha-sum (test oracle for ``arc_H``)."""
    t, scalar = _as_points(t)
    _check_open(t, "arc_H_complex")
    G = np.atleast_1d(arc_G(arc, t))
    out = 2j * np.pi * G / (_e(np.atleast_1d(t)) - 1.0)
    return complex(out[0]) if scalar else out.reshape(t.shape)


def arc_values(table: LegendreTable, offsets) -> tuple[np.ndarray, np.ndarray]:
    """``(G, H)`` for every arc at interior ``offsets``; arrays of shape ``(len(offsets), p)``."""
    off = np.atleast_1d(np.asarray(offsets, dtype=np.float64))
    if np.any((off <= 0.0) | (off >= 1.0)):
        raise PoleError("arc_values needs offsets strictly inside (0, 1)")
    G = fekete_grid_many(table, off) / gauss_point(table.p)
    H = (2j * np.pi * G / (_e(off) - 1.0)[:, None]).real
    return G, H
