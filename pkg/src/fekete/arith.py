"""Exact modular arithmetic: primality, Legendre symbols, Gauss sums.

Legendre symbols are held in a precomputed table so that the hot loops
downstream can index them directly.
"""
from __future__ import annotations

import os
import struct
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import CacheFormatError, DomainError

__all__ = [
    "LegendreTable",
    "is_prime",
    "legendre_table",
    "gauss_sum",
    "quadratic_correlation",
    "save_table",
    "load_table",
    "cached_table",
    "default_cache_dir",
]

# Deterministic for every n < 3.3e24, far beyond the 2**63 contract.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

CACHE_MAGIC = b"FKLT"
CACHE_VERSION = 1
_HEADER = struct.Struct("<4sIQ")


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin primality test for 2 <= n < 2**63."""
    n = int(n)
    if n < 2:
        raise DomainError(f"is_prime requires n >= 2, got {n}")
    if n >= 1 << 63:
        raise DomainError("is_prime is only guaranteed for n < 2**63")
    for q in _MR_WITNESSES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _check_odd_prime(p) -> int:
    p = int(p)
    if p < 3 or p % 2 == 0 or not is_prime(p):
        raise DomainError("p must be an odd prime")
    return p


@dataclass(frozen=True, eq=False)
class LegendreTable:
    """Legendre symbols ``(n/p)`` for ``n = 0..p-1``.

    ``symbols`` is a read-only ``int8`` array; entry ``n`` is the symbol of
    ``n`` modulo ``p``.
    """

    p: int
    symbols: np.ndarray

    def __post_init__(self):
        sym = np.asarray(self.symbols, dtype=np.int8)
        if sym.shape != (self.p,):
            raise DomainError(f"table for p={self.p} must have {self.p} entries")
        sym = sym.copy()
        sym.flags.writeable = False
        object.__setattr__(self, "symbols", sym)

    def __getitem__(self, n):
        return self.symbols[np.mod(n, self.p)]

    def __len__(self):
        return self.p

    def as_float(self) -> np.ndarray:
        return self.symbols.astype(np.float64)

    def __eq__(self, other):
        if not isinstance(other, LegendreTable):
            return NotImplemented
        return self.p == other.p and np.array_equal(self.symbols, other.symbols)

    def __hash__(self):
        return hash((self.p, self.symbols.tobytes()))


def legendre_table(p: int) -> LegendreTable:
    """Build the table in one pass by marking the squares ``k^2 mod p``."""
    p = _check_odd_prime(p)
    sym = np.full(p, -1, dtype=np.int8)
    sym[0] = 0
    k = np.arange(1, (p - 1) // 2 + 1, dtype=np.int64)
    sym[(k * k) % p] = 1
    return LegendreTable(p, sym)


def gauss_sum(table: LegendreTable) -> complex:
    """``sum_{n=1}^{p} (n/p) e(n/p)``; equals sqrt(p) or i*sqrt(p)."""
    p = table.p
    n = np.arange(p)
    return complex(np.sum(table.as_float() * np.exp(2j * np.pi * n / p)))


def quadratic_correlation(table: LegendreTable, n: int) -> int:
    """Exact ``sum_{k=1}^{p} ((k(k+n))/p)``."""
    p = table.p
    k = np.arange(1, p + 1, dtype=np.int64)
    idx = (k * ((k + int(n)) % p)) % p
    return int(table.symbols[idx].astype(np.int64).sum())


def save_table(table: LegendreTable, path) -> None:
    """Write ``table`` in the FKLT cache format (little-endian header, one byte per symbol)."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    payload = table.symbols.astype(np.int8).view(np.uint8).tobytes()
    tmp = path.with_name(path.name + f".{os.getpid()}.tmp")
    with open(tmp, "wb") as fh:
        fh.write(_HEADER.pack(CACHE_MAGIC, CACHE_VERSION, table.p))
        fh.write(payload)
    os.replace(tmp, path)


def load_table(path) -> LegendreTable:
    data = Path(path).read_bytes()
    if len(data) < _HEADER.size:
        raise CacheFormatError(f"{path}: truncated header")
    magic, version, p = _HEADER.unpack_from(data)
    if magic != CACHE_MAGIC:
        raise CacheFormatError(f"{path}: bad magic {magic!r}")
    if version != CACHE_VERSION:
        raise CacheFormatError(f"{path}: unsupported version {version}")
    body = np.frombuffer(data, dtype=np.uint8, offset=_HEADER.size)
    if body.size != p:
        raise CacheFormatError(f"{path}: expected {p} symbol bytes, found {body.size}")
    if not np.all((body == 0x00) | (body == 0x01) | (body == 0xFF)):
        raise CacheFormatError(f"{path}: invalid symbol byte")
    return LegendreTable(int(p), body.view(np.int8))


def default_cache_dir() -> Path:
    return Path(os.environ.get("FEKETE_CACHE_DIR", ".fekete-cache"))


def cached_table(p: int, cache_dir=None) -> LegendreTable:
    """Load the table for ``p`` from the cache, building and storing it on a miss."""
    p = _check_odd_prime(p)
    root = Path(cache_dir) if cache_dir is not None else default_cache_dir()
    path = root / f"legendre_{p}.fklt"
    if path.exists():
        try:
            table = load_table(path)
            if table.p == p:
                return table
        except CacheFormatError:
            pass
    table = legendre_table(p)
    try:
        save_table(table, path)
    except OSError:
        pass
    return table
