import os
import subprocess
import sys

import numpy as np
import pytest
from numpy.polynomial import chebyshev as npcheb

from fekete import kernels
from fekete.arith import legendre_table

py = kernels.backend("python")
try:
    cy = kernels.backend("cython")
except ImportError:  # pragma: no cover - build without the extension
    cy = None

needs_ext = pytest.mark.skipif(cy is None, reason="compiled extension not built")
BACKENDS = [py] + ([cy] if cy is not None else [])


@pytest.fixture(scope="module")
def coeffs():
    gen = np.random.default_rng(0)
    c = gen.normal(size=(40, 24)) * (0.6 ** np.arange(24))[None, :]
    return np.ascontiguousarray(c)


@pytest.mark.parametrize("impl", BACKENDS, ids=lambda m: m.__name__)
def test_clenshaw_matches_numpy(impl, coeffs):
    gen = np.random.default_rng(1)
    rows = gen.integers(0, coeffs.shape[0], 500)
    x = gen.uniform(-1, 1, 500)
    ref = np.array([npcheb.chebval(xi, coeffs[r]) for r, xi in zip(rows, x)])
    assert np.allclose(impl.clenshaw(coeffs, rows, x), ref, atol=1e-13)


@pytest.mark.parametrize("impl", BACKENDS, ids=lambda m: m.__name__)
def test_bisect_roots_brackets(impl):
    # (x - r) (x + 2) has a single root r in [-1, 1]
    r = np.linspace(-0.9, 0.9, 7)
    polys = [npcheb.poly2cheb(np.polynomial.polynomial.polyfromroots([ri, -2.0])) for ri in r]
    C = np.ascontiguousarray(np.array(polys))
    rows = np.arange(r.size)
    out = impl.bisect_roots(C, rows, np.full(r.size, -1.0), np.full(r.size, 1.0), 1e-13)
    assert np.max(np.abs(out - r)) < 1e-12


@pytest.mark.parametrize("impl", BACKENDS, ids=lambda m: m.__name__)
def test_bisect_roots_exact_zero_at_midpoint(impl):
    C = np.ascontiguousarray(npcheb.poly2cheb([0.0, 1.0])[None, :])
    out = impl.bisect_roots(C, np.array([0]), np.array([-1.0]), np.array([1.0]), 1e-13)
    assert abs(out[0]) < 1e-12


@pytest.mark.parametrize("impl", BACKENDS, ids=lambda m: m.__name__)
def test_remainder_log_sums(impl):
    x, w = np.polynomial.legendre.leggauss(24)
    vals = np.stack([(x - 0.3) * 2.0, np.full_like(x, 3.0)])
    ptr = np.array([0, 1, 1])
    roots = np.array([0.3])
    out = impl.remainder_log_sums(vals, x, w, ptr, roots)
    assert np.allclose(out, [2 * np.log(2.0), 2 * np.log(3.0)], atol=1e-13)


@pytest.mark.parametrize("impl", BACKENDS, ids=lambda m: m.__name__)
@pytest.mark.parametrize("order", [0, 1, 2])
def test_cot_sums_against_direct(impl, order):
    p = 101
    chi = legendre_table(p).as_float()
    gen = np.random.default_rng(order)
    k = gen.integers(0, p, 30)
    t = gen.uniform(0.05, 0.95, 30)
    h = (p - 1) // 2
    m = np.arange(-h, h + 1)
    ref = []
    for kk, tt in zip(k, t):
        c = -chi[(kk + m) % p]
        u = np.pi * (m - tt) / p
        if order == 0:
            ref.append(np.pi / p * np.sum(c / np.tan(u)))
        elif order == 1:
            ref.append((np.pi / p) ** 2 * np.sum(c / np.sin(u) ** 2))
        else:
            ref.append(2 * (np.pi / p) ** 3 * np.sum(c * np.cos(u) / np.sin(u) ** 3))
    assert np.allclose(impl.cot_sums(chi, k, t, order), ref, rtol=1e-11, atol=1e-11)


@pytest.mark.parametrize("impl", BACKENDS, ids=lambda m: m.__name__)
@pytest.mark.parametrize("order", [0, 1, 2])
def test_harmonic_sums_against_direct(impl, order):
    J = 20
    gen = np.random.default_rng(10 + order)
    signs = np.where(gen.random((5, 2 * J + 1)) < 0.5, -1, 1).astype(np.int8)
    rows = gen.integers(0, 5, 40)
    t = gen.uniform(0.01, 0.99, 40)
    m = np.arange(-J, J + 1)
    scale = 2.0 if order == 2 else 1.0
    ref = [scale * np.sum(signs[r] / (m - tt) ** (order + 1)) for r, tt in zip(rows, t)]
    assert np.allclose(impl.harmonic_sums(signs, rows, t, order), ref, rtol=1e-12, atol=1e-12)


@needs_ext
def test_backends_agree_on_production_sizes():
    p = 1009
    chi = legendre_table(p).as_float()
    gen = np.random.default_rng(4)
    k = gen.integers(0, p, 300)
    t = gen.uniform(0, 1, 300)
    for order in (0, 1, 2):
        a = py.cot_sums(chi, k, t, order)
        b = cy.cot_sums(chi, k, t, order)
        assert np.allclose(a, b, rtol=1e-10, atol=1e-10)


def test_pure_python_switch():
    env = dict(os.environ, FEKETE_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "import fekete.kernels as k; print(k.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


@needs_ext
def test_default_backend_is_compiled():
    env = {k: v for k, v in os.environ.items() if k != "FEKETE_PURE_PYTHON"}
    out = subprocess.run([sys.executable, "-c", "import fekete.kernels as k; print(k.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "cython"


def test_mahler_identical_under_both_backends():
    code = "from fekete.quad import mahler_fekete; print(repr(mahler_fekete(211).value))"
    res = {}
    for flag in ("1", ""):
        env = dict(os.environ)
        env.pop("FEKETE_PURE_PYTHON", None)
        if flag:
            env["FEKETE_PURE_PYTHON"] = flag
        res[flag] = float(subprocess.run([sys.executable, "-c", code], env=env, capture_output=True,
                                         text=True, check=True).stdout)
    assert abs(res["1"] - res[""]) < 1e-12
