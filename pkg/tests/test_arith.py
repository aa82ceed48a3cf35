import struct

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fekete.arith import (
    LegendreTable,
    cached_table,
    gauss_sum,
    is_prime,
    legendre_table,
    load_table,
    quadratic_correlation,
    save_table,
)
from fekete.errors import CacheFormatError, DomainError

from conftest import euler_symbol, primes_below


def trial_division(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@pytest.mark.parametrize("n,expected", [(2, True), (3, True), (4, False), (100003, True), (100001, False)])
def test_is_prime_examples(n, expected):
    assert is_prime(n) is expected


def test_is_prime_matches_trial_division():
    for n in range(2, 5000):
        assert is_prime(n) == trial_division(n), n


def test_is_prime_large_known_values():
    assert is_prime(2**61 - 1)
    assert not is_prime((2**31 - 1) * (2**31 + 11))
    # strong pseudoprime to bases 2..11
    assert not is_prime(3215031751)


@pytest.mark.parametrize("n", [0, 1, -7, 2**63])
def test_is_prime_domain(n):
    with pytest.raises(DomainError):
        is_prime(n)


def test_table_examples():
    t = legendre_table(7)
    assert t[3] == -1
    assert t[1] == 1
    assert t[0] == 0
    assert t[10] == t[3]


@pytest.mark.parametrize("p", [3, 5, 7, 11, 101, 1009])
def test_table_matches_euler_criterion(p):
    t = legendre_table(p)
    assert [int(v) for v in t.symbols] == [euler_symbol(n, p) for n in range(p)]


@pytest.mark.parametrize("p", [3, 13, 499, 10007])
def test_table_invariants(p):
    t = legendre_table(p)
    s = t.symbols.astype(int)
    assert s[0] == 0
    assert np.count_nonzero(s == 1) == (p - 1) // 2
    assert np.count_nonzero(s == -1) == (p - 1) // 2
    gen = np.random.default_rng(p)
    a = gen.integers(1, p, 10**4)
    b = gen.integers(1, p, 10**4)
    assert np.array_equal(s[(a * b) % p], s[a] * s[b])


def test_table_is_immutable():
    t = legendre_table(11)
    with pytest.raises(ValueError):
        t.symbols[1] = -1


@pytest.mark.parametrize("p", [1, 2, 9, 15, 1001])
def test_table_rejects_non_odd_primes(p):
    with pytest.raises(DomainError, match="p must be an odd prime"):
        legendre_table(p)


def test_gauss_sum_examples():
    assert abs(gauss_sum(legendre_table(5)) - np.sqrt(5)) < 1e-12
    assert abs(gauss_sum(legendre_table(7)) - 1j * np.sqrt(7)) < 1e-12


@pytest.mark.parametrize("p", primes_below(200)[1:])
def test_gauss_sum_closed_form(p):
    g = gauss_sum(legendre_table(p))
    expected = np.sqrt(p) if p % 4 == 1 else 1j * np.sqrt(p)
    assert abs(g - expected) <= 1e-9 * np.sqrt(p)
    assert abs(abs(g) ** 2 - p) <= 1e-8 * p


def test_quadratic_correlation_examples():
    assert quadratic_correlation(legendre_table(11), 0) == 10
    assert quadratic_correlation(legendre_table(11), 3) == -1
    assert quadratic_correlation(legendre_table(7), 14) == 6


def test_quadratic_correlation_brute_force_small():
    for p in (3, 5, 7, 11, 13):
        for n in range(-p, 2 * p):
            direct = sum(euler_symbol(k * (k + n), p) for k in range(1, p + 1))
            assert quadratic_correlation(legendre_table(p), n) == direct


@settings(max_examples=50, deadline=None)
@given(st.sampled_from(primes_below(500)[1:]), st.integers(-10**6, 10**6))
def test_quadratic_correlation_property(p, n):
    expected = p - 1 if n % p == 0 else -1
    assert quadratic_correlation(legendre_table(p), n) == expected


def test_cache_round_trip_and_layout(tmp_path):
    t = legendre_table(7)
    path = tmp_path / "t.fklt"
    save_table(t, path)
    raw = path.read_bytes()
    magic, version, p = struct.unpack_from("<4sIQ", raw)
    assert (magic, version, p) == (b"FKLT", 1, 7)
    body = raw[16:]
    assert body == bytes([0x00, 0x01, 0x01, 0xFF, 0x01, 0xFF, 0xFF])
    assert load_table(path) == t


@pytest.mark.parametrize("mutate", [
    lambda b: b"XXXX" + b[4:],
    lambda b: b[:4] + struct.pack("<I", 2) + b[8:],
    lambda b: b[:-1],
    lambda b: b[:-1] + b"\x05",
])
def test_cache_rejects_corrupt_files(tmp_path, mutate):
    path = tmp_path / "t.fklt"
    save_table(legendre_table(7), path)
    path.write_bytes(mutate(path.read_bytes()))
    with pytest.raises(CacheFormatError):
        load_table(path)


def test_cached_table_uses_env_directory(tmp_path, monkeypatch):
    monkeypatch.setenv("FEKETE_CACHE_DIR", str(tmp_path / "c"))
    t = cached_table(13)
    assert (tmp_path / "c" / "legendre_13.fklt").exists()
    assert cached_table(13) == t


def test_table_equality_and_hash():
    a, b = legendre_table(13), legendre_table(13)
    assert a == b and hash(a) == hash(b)
    assert a != legendre_table(11)
    assert isinstance(a, LegendreTable)
