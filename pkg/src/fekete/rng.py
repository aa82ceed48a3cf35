"""Counter-based random streams.

Every draw is addressed by ``(seed, domain, block)`` through the Philox
counter, so the value attached to a sample index never depends on how
work was scheduled.  Sign patterns are generated 64 at a time: word ``j``
of block ``b`` holds the ``j``-th sign (in the interleaved order
``0, 1, -1, 2, -2, ...``) of patterns ``64b .. 64b+63``.  Because signs are
laid out by distance from the origin, the pattern with index ``i`` at
level ``J`` is the restriction of the same pattern at any larger level.
"""
from __future__ import annotations

import numpy as np

PATTERN = 0
THETA = 1
PAIRS = 2
RESAMPLE = 3

_BLOCK = 64


def interleaved_positions(J: int) -> np.ndarray:
    """Position in the draw order of each index ``m = -J..J``."""
    m = np.arange(-J, J + 1)
    return np.where(m > 0, 2 * m - 1, -2 * m)


def _philox(seed: int, domain: int, block: int) -> np.random.Philox:
    return np.random.Philox(key=int(seed) & (2**64 - 1), counter=[0, int(domain), int(block), 0])


def generator(seed: int, domain: int, block: int = 0) -> np.random.Generator:
    """A ``Generator`` on the sub-stream ``(seed, domain, block)``."""
    return np.random.Generator(_philox(seed, domain, block))


def sign_bits(seed: int, start: int, count: int, width: int, domain: int = PATTERN) -> np.ndarray:
    """Bits (0/1, uint8) of patterns ``start .. start+count-1``, shape ``(count, width)``, draw order."""
    if count <= 0:
        return np.zeros((0, width), dtype=np.uint8)
    shifts = np.arange(_BLOCK, dtype=np.uint64)
    b0, b1 = start // _BLOCK, (start + count - 1) // _BLOCK
    parts = []
    for b in range(b0, b1 + 1):
        raw = _philox(seed, domain, b).random_raw(width)
        parts.append(((raw[None, :] >> shifts[:, None]) & np.uint64(1)).astype(np.uint8))
    bits = np.concatenate(parts, axis=0)
    off = start - b0 * _BLOCK
    return bits[off:off + count]


def sign_patterns(seed: int, J: int, start: int, count: int, domain: int = PATTERN) -> np.ndarray:
    """Signs ``(count, 2J+1)`` as int8, column ``m+J`` holding the sign at index ``m``."""
    bits = sign_bits(seed, start, count, 2 * J + 1, domain)
    return (1 - 2 * bits[:, interleaved_positions(J)].astype(np.int8)).astype(np.int8)
