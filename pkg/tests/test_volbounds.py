import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from boxes import chi_boxes, psi_boxes, w1_boxes
from hypvol.errors import DomainError
from hypvol.packing import density, h3, tvbor
from hypvol.scalarfun import LOG3, ball_volume, f_n, g_k, phi_n, q, xi_n
from hypvol.volbounds import (chi_k, chi_minus, drill_bound, in_w0_double_prime, in_w_double_prime,
                              psi_k, psi_minus, tail_large_d, v_ad, w1_minus, w1_st, w_dr, w_far,
                              w_minus, w_sg, w_st, w_vsg)
from hypvol.capvol import kappa

LOG8 = math.log(8)


def _dominance(gen, box_fn, pt_fn, seed, n_boxes=1000):
    rng = np.random.default_rng(seed)
    worst = math.inf
    for box, points in gen(rng, n_boxes, 10):
        bound = box_fn(*box)
        worst = min(worst, min(pt_fn(*p) - bound for p in points))
    return worst


# near point ------------------------------------------------------------------

def test_w1_all_caps_empty():
    alpha, delta, d = 1.0, 0.9, 1.2
    assert phi_n(2, delta, d) >= alpha
    assert w1_st(alpha, delta, d) == pytest.approx(ball_volume(alpha / 2), abs=1e-14)


def test_w1_branches_agree_when_corrections_vanish():
    # Phi_3 >= alpha empties the Phi_3 cap, so both branches give w_st.
    alpha, delta, d = 1.4, 0.5, 0.8
    assert phi_n(3, delta, d) >= alpha
    assert w1_st(alpha, delta, d) == pytest.approx(w_st(alpha, delta, d), abs=1e-12)


def test_w1_minus_collapsed_box():
    rng = np.random.default_rng(8)
    for _ in range(200):
        alpha, delta = rng.uniform(1.9, LOG8), rng.uniform(0.45, 0.62)
        d = rng.uniform(delta, 2.3)
        assert in_w0_double_prime(alpha, delta, d, d) == in_w_double_prime(alpha, delta, d)
        assert w1_minus(alpha, delta, d, d) == pytest.approx(w1_st(alpha, delta, d), abs=1e-10)


def test_w1_minus_branch_in_w0_double_prime():
    rng = np.random.default_rng(1)
    hits = 0
    for box, _ in w1_boxes(rng, 2000, 1):
        if in_w0_double_prime(*box):
            hits += 1
            assert w1_minus(*box) == w_minus(*box)
    assert hits > 0


def test_st_domain_errors():
    with pytest.raises(DomainError):
        w_st(2.0, 0.6, 0.5)
    with pytest.raises(DomainError):
        w1_minus(2.0, 0.5, 0.9, 0.8)
    with pytest.raises(DomainError):
        w_st(math.nan, 0.5, 0.6)


def test_w1_dominance():
    assert _dominance(w1_boxes, w1_minus, w1_st, 31) >= -1e-10


# short geodesic and far point ---------------------------------------------------

def test_w_sg_examples():
    assert w_sg(1.0, 1.2) == ball_volume(0.5)
    assert w_sg(1.0, 1e-12) == pytest.approx(0.0, abs=1e-10)


@given(st.floats(0.1, 3.0), st.floats(0.01, 3.0), st.floats(0.0, 0.5), st.floats(0.0, 0.5))
def test_w_sg_monotone(lam, l, dlam, dl):
    base = w_sg(lam, l)
    assert w_sg(lam + dlam, l) >= base - 1e-12
    assert w_sg(lam, l + dl) >= base - 1e-12


@given(st.floats(0.001, 1.098), st.floats(1e-6, 1.0))
def test_w_sg_positive_for_psi(l, h):
    assert w_sg(f_n(1, l) + h, l) > 0


def test_w_far_branches():
    mu = 1.13
    assert w_far(0.4, 0.5, mu) == 0.0
    assert w_far(0.5, 0.5, mu) == 0.0
    hm = mu / 2
    assert w_far(0.5 + hm, 0.5, mu) == ball_volume(hm)
    assert w_far(0.5 + 0.5 * (hm + h3(hm)), 0.5, mu) == ball_volume(hm)


@pytest.mark.parametrize("mu", [1.12, 1.13, 1.146])
def test_w_far_seams_jump_upward(mu):
    hm, r = mu / 2, 0.9
    for seam in (hm, h3(hm), 3 * h3(hm)):
        left = w_far(r + seam - 1e-9, r, mu)
        right = w_far(r + seam, r, mu)
        assert right >= left - 1e-7


def test_w_far_monotone_sampled():
    rng = np.random.default_rng(4)
    for _ in range(2000):
        rho, r, mu = rng.uniform(0.05, 4.0), rng.uniform(0.05, 2.0), rng.uniform(1.0, 1.2)
        d = rng.uniform(0.0, 0.3)
        base = w_far(rho, r, mu)
        assert w_far(rho + d, r, mu) >= base - 1e-12
        assert w_far(rho, r + d, mu) <= base + 1e-12


def test_w_dr():
    assert w_dr(math.log(5) / 2, g_k(4, 1.12235), f_n(1, 1.12235)) == pytest.approx(3.6904, abs=5e-4)
    assert w_dr(0.6, 1e-12, 1.1) == pytest.approx(tvbor(0.6, 1e-12), abs=1e-12)
    xs = np.linspace(0.01, 4.0, 80)
    vals = [w_dr(0.7, x, 1.1) for x in xs]
    assert np.all(np.diff(vals) >= -1e-12)


def test_w_vsg():
    mu = max(1.1253, 0.033 + 0.584)
    assert w_vsg(4, 0.033, mu) > 3.570002
    reach = math.log(3) / 2 - 0.1
    assert w_vsg(4, 0.1, 2 * reach) == w_vsg(4, 0.1, 2 * reach + 1.0)
    assert w_vsg(3, 1e-9, 10.0) == pytest.approx(math.pi + ball_volume(math.log(2) / 2), abs=1e-6)
    with pytest.raises(DomainError):
        w_vsg(4, math.log(3) / 2, 1.0)


# campaign sums ------------------------------------------------------------------

def test_chi_k_reduces_to_w1_when_far_term_vanishes():
    k, alpha, lam, delta, d, mu = 4, 2.0, 2.05, 0.55, 1.9, 1.13
    assert xi_n(2, q(lam) + q(d)) <= lam / 2
    assert chi_k(k, alpha, lam, delta, d, mu) == pytest.approx(w1_st(alpha, delta, d), abs=1e-14)


def test_chi_k_domain():
    with pytest.raises(DomainError):
        # Q(lambda) + Q(D) >= 1/2 leaves no room for the far point.
        chi_k(4, 1.0, 0.5, 0.5, 0.5, 1.1)


def test_chi_k_smoke_on_grid_midpoints():
    lam = np.linspace(LOG8 - 0.0335, LOG8, 11)
    for a, b in zip(lam[:-1], lam[1:]):
        v = chi_k(4, a, 0.5 * (a + b), 0.5413, 0.5413 + 0.3, 1.13)
        assert math.isfinite(v) and v > 0


def test_psi_k_examples():
    v = psi_k(4, 0.02, 0.55, 1.1253)
    assert math.isfinite(v) and v > 3
    for h, l in ((0.02, 0.55), (0.3, 0.2), (0.5, 0.05)):
        assert psi_k(4, h, l, 1.13) >= w_sg(f_n(1, l) + h, l)


def test_chi_dominance_k4():
    assert _dominance(chi_boxes, chi_minus, chi_k, 32) >= -1e-10


def test_chi_dominance_k5():
    gen = lambda rng, n, m: chi_boxes(rng, n, m, k=5)
    assert _dominance(gen, chi_minus, chi_k, 33) >= -1e-10


def test_psi_dominance():
    assert _dominance(psi_boxes, psi_minus, psi_k, 34) >= -1e-10


def test_minorant_box_errors():
    with pytest.raises(DomainError):
        chi_minus(4, 2.05, 2.04, 0.55, 0.1, 0.2, 1.13)
    with pytest.raises(DomainError):
        psi_minus(4, 0.2, 0.1, 0.3, 0.4, 1.13)


# tails and drilling ---------------------------------------------------------------

def test_tail_large_d_values():
    assert tail_large_d(LOG8 - 0.0409, LOG8, 0.5912) == pytest.approx(5.264, abs=5e-3)
    lam0, dm = LOG8 - 0.0335, 0.5413
    coffee = ball_volume(lam0 / 2) - 2 * kappa(LOG8 / 2, dm) - 2 * kappa(LOG8 / 2, 1.5 * dm)
    assert coffee > 3.570002
    assert tail_large_d(2.0, 2.07, 0.55) <= ball_volume(1.0)
    with pytest.raises(DomainError):
        tail_large_d(0.5, 2.0, 0.6)


def test_tail_bounds_w1_beyond_upper_end():
    rng = np.random.default_rng(6)
    for _ in range(300):
        lo = rng.uniform(1.95, LOG8 - 0.01)
        hi = min(LOG8, lo + rng.uniform(0.001, 0.05))
        delta = rng.uniform(0.5, 0.6)
        bound = tail_large_d(lo, hi, delta)
        for alpha, d in zip(rng.uniform(lo, hi, 10), hi + rng.uniform(0.0, 1.5, 10)):
            assert w1_st(alpha, delta, d) >= bound - 1e-10


def test_v_ad():
    assert v_ad(5.06, 40.0, 0.5) == pytest.approx(5.06 - math.pi / 4, abs=1e-12)
    assert v_ad(5.0, 0.4, 0.5) < v_ad(5.1, 0.4, 0.5)
    assert v_ad(5.06, 0.33, 0.5637) > 0


def test_drill_bound_reference_values():
    r_b = 0.5 * math.acosh(math.cosh(f_n(1, 0.5637)) / math.cosh(0.5637 / 2))
    assert v_ad(5.06, r_b, 0.5637) == pytest.approx(3.69019, abs=5e-5)
    assert drill_bound(0.5637, 0.0, 5.06) == pytest.approx(3.69019, abs=5e-5)
    assert drill_bound(0.5912, 0.08267, 5.06) == pytest.approx(3.690003, abs=5e-6)
    with pytest.raises(DomainError):
        drill_bound(LOG3, 0.0, 5.06)


def test_drill_bound_increasing_in_eta():
    etas = np.linspace(0.0, 0.5, 50)
    vals = [drill_bound(0.58, e, 5.06) for e in etas]
    assert np.all(np.diff(vals) > 0)
