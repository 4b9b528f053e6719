import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from hypvol.errors import DomainError
from hypvol.scalarfun import (LOG3, LOG8, ball_volume, f_n, g_k, i_k_upper, in_interval_I_k,
                              phi_n, psi_angle, q, q_inv, theta_cap_angle, xi_n)
from hypvol.trianglegeom import omega

LOG5, LOG7 = math.log(5), math.log(7)
dist = st.floats(0.0, 30.0)


def test_q_values():
    assert q(0.0) == 0.5
    assert q(math.log(3)) == pytest.approx(0.25, rel=1e-15)
    assert q(LOG7) == pytest.approx(0.125, rel=1e-15)
    with pytest.raises(DomainError):
        q(-1e-3)


def test_q_inv_values():
    assert q_inv(0.5) == 0.0
    assert q_inv(0.25) == pytest.approx(math.log(3), rel=1e-15)
    assert q_inv(q(1.3)) == pytest.approx(1.3, abs=1e-14)
    for bad in (0.0, -0.1, 0.5000001):
        with pytest.raises(DomainError):
            q_inv(bad)


@given(dist)
def test_q_inv_inverts_q(u):
    assert q_inv(q(u)) == pytest.approx(u, rel=1e-12, abs=1e-12)


@given(st.floats(1e-6, 0.5))
def test_q_inverts_q_inv(x):
    assert q(q_inv(x)) == pytest.approx(x, rel=1e-12)


@given(dist, dist)
def test_q_strictly_decreasing(a, b):
    if a < b and q(a) != q(b):
        assert q(a) > q(b)


@pytest.mark.parametrize("n", range(1, 7))
def test_f_n_fixed_point(n):
    x = math.log(2 * n + 1)
    assert abs(f_n(n, x) - x) < 1e-12


def test_f3_of_log8_is_log5():
    assert f_n(3, LOG8) == pytest.approx(LOG5, abs=1e-14)
    assert f_n(1, math.log(3)) == pytest.approx(math.log(3), abs=1e-14)


def test_f_n_domain():
    with pytest.raises(DomainError):
        f_n(3, math.log(5))
    with pytest.raises(DomainError):
        f_n(0, 2.0)


@given(st.integers(1, 6), st.floats(0.0, 1.0), st.floats(0.0, 1.0))
def test_f_n_strictly_decreasing(n, s, t):
    lo = math.log(2 * n - 1) + 1e-6
    a, b = sorted((lo + 8 * s, lo + 8 * t))
    if b - a > 1e-9:
        assert f_n(n, a) > f_n(n, b)


def test_xi_n_examples():
    assert xi_n(1, 0.5 - q(2.0)) == pytest.approx(1.0, abs=1e-13)
    assert xi_n(2, 0.5 - 2 * q(2.0)) == pytest.approx(1.0, abs=1e-13)
    u = q(LOG8) + q(LOG5)
    assert 2 * q(2 * xi_n(2, u)) + u == pytest.approx(0.5, abs=1e-12)
    with pytest.raises(DomainError):
        xi_n(2, 0.5)


def test_xi_n_identity_bulk():
    rng = np.random.default_rng(3)
    for _ in range(10_000):
        n = int(rng.integers(1, 8))
        u = rng.uniform(1e-9, 0.5 - 1e-9)
        assert abs(n * q(2 * xi_n(n, u)) + u - 0.5) < 1e-12


@given(st.integers(1, 6), st.floats(1e-6, 0.499), st.floats(1e-6, 0.499))
def test_xi_n_increasing(n, u, v):
    if u < v:
        assert xi_n(n, u) <= xi_n(n, v)


def test_g_k_examples():
    assert g_k(4, math.log(17 / 3)) == pytest.approx(math.log(3), abs=1e-12)
    assert g_k(4, 1.1253) > math.log(3)
    assert g_k(5, 1.1319) > math.log(3)
    with pytest.raises(DomainError):
        g_k(4, math.log(3))


def test_interval_I_k():
    assert in_interval_I_k(4, 1.13)
    assert not in_interval_I_k(4, math.log(3))
    assert in_interval_I_k(7, 10.0)
    assert i_k_upper(4) == pytest.approx(math.log(17 / 3), rel=1e-15)
    assert i_k_upper(7) == math.inf


@given(st.integers(3, 9), st.floats(1.0, 3.0))
def test_interval_I_k_matches_g_k_characterisation(k, x):
    if abs(x - i_k_upper(k)) < 1e-9 or abs(x - LOG3) < 1e-9:
        return
    expected = x > LOG3 and g_k(k, x) > LOG3
    assert in_interval_I_k(k, x) == expected


def test_ball_volume():
    assert ball_volume(0.0) == 0.0
    assert ball_volume(0.5) == pytest.approx(4 * math.pi / 3 * 0.125, rel=0.15)
    # Small-radius limit is the Euclidean ball.
    assert ball_volume(1e-3) == pytest.approx(4 * math.pi / 3 * 1e-9, rel=1e-5)
    with pytest.raises(DomainError):
        ball_volume(-0.1)


@given(st.floats(0.0, 5.0), st.floats(0.0, 5.0))
def test_ball_volume_increasing(a, b):
    if a < b:
        assert ball_volume(a) <= ball_volume(b)


def test_phi_n_examples():
    assert phi_n(2, 0.5, 0.5) == pytest.approx(1.0, abs=1e-14)
    assert phi_n(3, 0.5, 0.5) == pytest.approx(1.5, abs=1e-14)
    assert 0.8 <= phi_n(2, 0.4, 0.9) <= 1.8
    with pytest.raises(DomainError):
        phi_n(2, 0.6, 0.5)
    with pytest.raises(DomainError):
        phi_n(2, 0.0, 0.5)


def test_phi_n_bounds_bulk():
    rng = np.random.default_rng(5)
    for _ in range(10_000):
        n = int(rng.integers(1, 5))
        delta = rng.uniform(0.01, 1.5)
        d = delta + rng.uniform(0.0, 2.0)
        v = phi_n(n, delta, d)
        assert n * delta - 1e-12 <= v <= n * d + 1e-12


@given(st.integers(2, 3), st.floats(0.05, 1.0), st.floats(0.0, 2.0), st.floats(0.0, 2.0))
def test_phi_n_increasing_in_d(n, delta, s, t):
    a, b = sorted((delta + s, delta + t))
    assert phi_n(n, delta, a) <= phi_n(n, delta, b) + 1e-13


def test_psi_angle_examples():
    assert psi_angle(0.8, 1.6) == pytest.approx(0.0, abs=1e-6)
    assert psi_angle(5.0, 0.001) == pytest.approx(math.pi / 2, abs=1e-3)
    assert psi_angle(1.0, 1.0) == pytest.approx(math.acos(omega(1.0, 1.0, 1.0)), abs=1e-12)
    with pytest.raises(DomainError):
        psi_angle(0.5, 1.1)


@given(st.floats(0.05, 3.0), st.floats(0.05, 3.0), st.floats(0.01, 1.0))
def test_psi_angle_monotone(x1, x2, frac):
    x1, x2 = sorted((x1, x2))
    y = frac * 2 * x1
    assert psi_angle(x1, y) <= psi_angle(x2, y) + 1e-12
    y2 = min(2 * x1, y * 1.5)
    assert psi_angle(x1, y2) <= psi_angle(x1, y) + 1e-12


def test_theta_cap_angle():
    assert theta_cap_angle(0.999, 1.0) < 0.1
    assert theta_cap_angle(1e-9, 1.0) == pytest.approx(math.pi / 2, abs=1e-4)
    assert theta_cap_angle(0.4, 0.9) < theta_cap_angle(0.3, 0.9) < theta_cap_angle(0.2, 0.9)
    for w, r in ((1.0, 1.0), (0.0, 1.0)):
        with pytest.raises(DomainError):
            theta_cap_angle(w, r)


def test_non_finite_rejected():
    for fn, args in ((q, (math.nan,)), (ball_volume, (math.inf,)), (f_n, (1, math.nan))):
        with pytest.raises(DomainError):
            fn(*args)
