import numpy as np
import pytest

from fekete.arith import legendre_table


def primes_below(n):
    sieve = np.ones(n, dtype=bool)
    sieve[:2] = False
    for i in range(2, int(n**0.5) + 1):
        if sieve[i]:
            sieve[i * i::i] = False
    return [int(v) for v in np.nonzero(sieve)[0]]


def euler_symbol(n, p):
    """Legendre symbol by Euler's criterion; independent of the table builder."""
    n %= p
    if n == 0:
        return 0
    r = pow(n, (p - 1) // 2, p)
    return 1 if r == 1 else -1


@pytest.fixture(scope="session")
def table101():
    return legendre_table(101)


@pytest.fixture(scope="session")
def table1009():
    return legendre_table(1009)


@pytest.fixture(autouse=True)
def _isolated_cache(tmp_path, monkeypatch):
    monkeypatch.setenv("FEKETE_CACHE_DIR", str(tmp_path / "cache"))
