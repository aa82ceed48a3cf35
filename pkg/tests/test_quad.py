import math

import numpy as np
import pytest
from numpy.polynomial import chebyshev as npcheb

from fekete.arith import legendre_table
from fekete.errors import DegenerateZeroError, DomainError, EvaluationError
from fekete.eval import ArcFunction, arc_H, arc_H_deriv
from fekete.quad import (
    QuadConfig,
    SmoothRows,
    arc_log_integrals,
    batch_log_integrals,
    bracket_zeros,
    circle_zero_count,
    cheb_nodes,
    integrate_log_abs,
    log_distance_integral,
    lq_norm_fekete,
    mahler_fekete,
)


def coefficients(p):
    return np.array([0] + [1 if pow(n, (p - 1) // 2, p) == 1 else -1 for n in range(1, p)], dtype=float)


def mahler_by_roots(p):
    r = np.roots(coefficients(p)[::-1])
    return float(np.prod(np.maximum(1.0, np.abs(r))))


def l4_by_autocorrelation(p):
    a = coefficients(p)
    corr = np.correlate(a, a, mode="full")
    return float(np.sum(corr**2)) ** 0.25


def circle_roots_by_numpy(p, tol=1e-5):
    r = np.roots(coefficients(p)[::-1])
    on = r[np.abs(np.abs(r) - 1.0) < tol]
    distinct = []
    for z in on:
        if all(abs(z - w) > 1e-3 for w in distinct):
            distinct.append(z)
    return len(distinct)


# ---------------------------------------------------------------- scalar layer

def test_bracket_cotangent():
    f = lambda t: np.pi / np.tan(np.pi * t)
    df = lambda t: -np.pi**2 / np.sin(np.pi * t) ** 2
    z = bracket_zeros(f, 0.01, 0.99, 64, df=df)
    assert len(z) == 1
    assert abs(z[0].root - 0.5) < 1e-12
    assert z[0].hi - z[0].lo <= 1e-12
    assert abs(z[0].slope + np.pi**2) < 1e-9
    assert f(z[0].lo) * f(z[0].hi) <= 0


def test_bracket_no_sign_change():
    assert bracket_zeros(lambda t: t - 2.0, 0.0, 1.0, 32) == []


def test_bracket_sorted_multiple():
    z = bracket_zeros(lambda t: np.sin(7 * np.pi * t), 0.01, 0.99, 200)
    roots = [b.root for b in z]
    assert roots == sorted(roots)
    assert np.allclose(roots, np.arange(1, 7) / 7, atol=1e-12)


def test_bracket_validation():
    with pytest.raises(DomainError):
        bracket_zeros(lambda t: t, 0, 1, 8)
    with pytest.raises(EvaluationError):
        bracket_zeros(lambda t: 1.0 / (t - 0.5), 0.0, 1.0, 33)


def test_bracket_fekete_p5_arc2():
    # F_5 = z (1 - z)^2 (1 + z): the only zero off z = 1 is z = -1 = e((2 + 1/2)/5)
    arc = ArcFunction(legendre_table(5), 2)
    z = bracket_zeros(lambda t: arc_H(arc, t), 0.01, 0.99, 64, df=lambda t: arc_H_deriv(arc, t, 1))
    assert len(z) == 1 and abs(z[0].root - 0.5) < 1e-12
    for k in (0, 1, 3, 4):
        a = ArcFunction(legendre_table(5), k)
        assert bracket_zeros(lambda t: arc_H(a, t), 1e-3, 1 - 1e-3, 256) == []


def test_integrate_log_abs_examples():
    two_sin = lambda t: 2 * np.sin(np.pi * t)
    r = integrate_log_abs(two_sin, None, 0.0, 1.0, endpoint_order=(1, 1))
    assert abs(r.value) < 1e-13
    e_minus_1 = lambda t: np.abs(np.exp(2j * np.pi * t) - 1.0)
    assert abs(integrate_log_abs(e_minus_1, None, 0.0, 1.0, endpoint_order=(1, 1)).value) < 1e-13
    z = bracket_zeros(lambda t: t - 0.5, 0.0, 1.0, 32)
    r = integrate_log_abs(lambda t: t - 0.5, lambda t: np.ones_like(t), 0.0, 1.0, zeros=z)
    assert abs(r.value - (-1 - math.log(2))) < 1e-13
    assert r.error_estimate >= 0


def test_integrate_log_abs_endpoint_pole():
    r = integrate_log_abs(lambda t: 1.0 / t, None, 0.0, 1.0, endpoint_order=(-1, 0))
    assert abs(r.value - 1.0) < 1e-13


def test_integrate_log_abs_cotangent_against_closed_form():
    # int_0^1 log|pi cot(pi t)| dt = log(pi), since int log|sin| = int log|cos|
    f = lambda t: np.pi / np.tan(np.pi * t)
    df = lambda t: -np.pi**2 / np.sin(np.pi * t) ** 2
    z = bracket_zeros(f, 0.01, 0.99, 64, df=df)
    r = integrate_log_abs(f, df, 0.0, 1.0, zeros=z, endpoint_order=(-1, -1))
    assert abs(r.value - math.log(math.pi)) < 1e-12


def test_integrate_log_abs_degenerate_zero():
    f = lambda t: (t - 0.5) ** 2
    with pytest.raises(DegenerateZeroError) as exc:
        integrate_log_abs(f, lambda t: 2 * (t - 0.5), 0.0, 1.0, zeros=[0.5])
    assert exc.value.location == 0.5


def test_integrate_log_abs_refinement_self_consistency():
    f = lambda t: np.cos(5 * t) + 0.3
    df = lambda t: -5 * np.sin(5 * t)
    z = bracket_zeros(f, 0.0, 1.0, 64, df=df)
    a = integrate_log_abs(f, df, 0.0, 1.0, zeros=z, nodes=16)
    b = integrate_log_abs(f, df, 0.0, 1.0, zeros=z, nodes=32)
    assert abs(a.value - b.value) <= 2 * max(a.error_estimate, 1e-14)


def test_log_distance_integral_complex_and_real():
    assert abs(log_distance_integral(0.0, 1.0, 0.5) - (-1 - math.log(2))) < 1e-15
    # a root hugging the real axis tends to the real formula
    assert abs(log_distance_integral(0.0, 1.0, 0.3 + 1e-12j) - log_distance_integral(0.0, 1.0, 0.3)) < 1e-10
    x, w = np.polynomial.legendre.leggauss(200)
    t = 0.5 * (x + 1)
    r = 0.4 + 0.7j
    assert abs(log_distance_integral(0.0, 1.0, r) - 0.5 * np.sum(w * np.log(np.abs(t - r)))) < 1e-12


# ----------------------------------------------------------------- batch engine

def test_batch_fallback_near_double_root():
    # R(x) = (x - 0.3)^2 - 1e-10: two roots 2e-5 apart
    c = npcheb.poly2cheb([0.09 - 1e-10, -0.6, 1.0])
    c = np.concatenate([c, np.zeros(29)])[None, :]
    rows = SmoothRows(np.ascontiguousarray(c), np.zeros((1, 2), dtype=np.int64))
    res = batch_log_integrals(rows)
    taus = (np.array([0.3 - 1e-5, 0.3 + 1e-5]) + 1) / 2
    exact = sum(math.log(2.0) + log_distance_integral(0.0, 1.0, tau) for tau in taus)
    assert abs(res.values[0] - exact) < 1e-10
    assert res.zero_counts[0] == 2


def test_batch_non_finite_row_reports_index():
    c = np.zeros((3, 8))
    c[:, 0] = 1.0
    c[2, 1] = np.nan
    rows = SmoothRows(c, np.zeros((3, 2), dtype=np.int64))
    with pytest.raises(DegenerateZeroError) as exc:
        batch_log_integrals(rows)
    assert exc.value.index == 2
    res = batch_log_integrals(rows, strict=False)
    assert list(res.failed_rows) == [2]
    assert np.isnan(res.values[2]) and res.values[0] == 0.0


def test_batch_matches_scalar_path_on_arcs():
    p = 101
    tab = legendre_table(p)
    res = arc_log_integrals(p, table=tab)
    for k in (0, 1, 13, 50, 99, 100):
        arc = ArcFunction(tab, k)
        f = lambda t: arc_H(arc, t)
        df = lambda t: arc_H_deriv(arc, t, 1)
        z = bracket_zeros(f, 1e-4, 1 - 1e-4, 512, df=df)
        ref = integrate_log_abs(f, df, 0.0, 1.0, zeros=z, endpoint_order=arc.endpoint_orders())
        assert abs(res.values[k] - ref.value) < 1e-10
        assert res.zero_counts[k] == len(z)


def test_cheb_nodes_inside():
    t = cheb_nodes(32)
    assert np.all((t > 0) & (t < 1)) and np.all(np.diff(t) < 0)


# --------------------------------------------------------------- Fekete drivers

def test_mahler_small_exact():
    assert abs(mahler_fekete(3).value - 1 / math.sqrt(3)) < 1e-12
    assert abs(mahler_fekete(5).value - 1 / math.sqrt(5)) < 1e-12


@pytest.mark.parametrize("p", [7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53])
def test_mahler_matches_polynomial_roots(p):
    est = mahler_fekete(p)
    assert abs(est.value - mahler_by_roots(p) / math.sqrt(p)) < 1e-10
    assert est.mode == "exact" and est.std_error == 0.0


def test_mahler_node_doubling_within_error():
    for p in (101, 1009):
        a = mahler_fekete(p, QuadConfig())
        b = mahler_fekete(p, QuadConfig().refined())
        assert abs(a.value - b.value) <= 2 * max(a.error_estimate, b.error_estimate)


def test_mahler_thread_count_independent():
    a = mahler_fekete(1009, QuadConfig(chunk=100, threads=1)).value
    b = mahler_fekete(1009, QuadConfig(chunk=100, threads=4)).value
    assert a == b


def test_arc_symmetry():
    p = 1009
    v = arc_log_integrals(p).values
    assert np.max(np.abs(v - v[::-1])) < 1e-11


@pytest.mark.parametrize("p", [3, 5, 101, 1009, 10007])
def test_l2_norm_parseval(p):
    assert abs(lq_norm_fekete(p, 2).value - math.sqrt((p - 1) / p)) < 1e-8


def test_l4_norm_p5():
    assert abs(lq_norm_fekete(5, 4).value - 28**0.25 / math.sqrt(5)) < 1e-10


@pytest.mark.parametrize("p", [7, 13, 101, 211])
def test_l4_norm_autocorrelation_oracle(p):
    assert abs(lq_norm_fekete(p, 4).value - l4_by_autocorrelation(p) / math.sqrt(p)) < 1e-9


@pytest.mark.parametrize("q", [0.5, 1.0, 3.0])
def test_lq_norm_dense_trapezoid_oracle(q):
    p = 101
    n = 2**20
    F = np.fft.fft(np.concatenate([coefficients(p), np.zeros(n - p)]))
    ref = np.mean(np.abs(F) ** q) ** (1 / q) / math.sqrt(p)
    assert abs(lq_norm_fekete(p, q).value - ref) < 1e-7


def test_norm_ordering():
    for p in (101, 1009):
        m0 = mahler_fekete(p).value
        vals = [lq_norm_fekete(p, q).value for q in (0.5, 1, 2, 4)]
        assert m0 <= vals[0]
        assert all(a <= b for a, b in zip(vals, vals[1:]))


def test_lq_domain():
    with pytest.raises(DomainError):
        lq_norm_fekete(101, 0.0)


def test_zero_counts_small():
    assert circle_zero_count(3) == (1, 1 / 3)
    count, _ = circle_zero_count(5)
    assert count == 2


@pytest.mark.parametrize("p", [7, 11, 13, 17, 29, 37, 41, 53, 61])
def test_zero_counts_against_numpy_roots(p):
    assert circle_zero_count(p)[0] == circle_roots_by_numpy(p)


def test_domain_errors():
    with pytest.raises(DomainError, match="odd prime"):
        mahler_fekete(9)
