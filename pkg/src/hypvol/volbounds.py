"""Volume lower bounds assembled from balls, caps and packing densities.

Pointwise bounds (w_st, w1_st, w_sg, w_far, w_dr, w_vsg, chi_k, psi_k, v_ad,
drill_bound) and their box minorants (w_minus, w1_minus, chi_minus,
psi_minus, tail_large_d). A minorant takes interval endpoints and is at most
the pointwise bound anywhere in the box, so one evaluation certifies a grid
cell.
"""

import math

from ._numerics import acosh_clamped, kernel, require_finite
from .capvol import iota, kappa, sigma
from .errors import DomainError
from .packing import density, h3, tvbor, vbor
from .scalarfun import LOG3, ball_volume, f_n, phi_n, psi_angle, q, theta_cap_angle, xi_n
from .trianglegeom import lambda_fn, lambda_plus

#: Points this close to the boundary of the strict inequality selecting the
#: cheaper W1 branch are sent to the other (smaller, always valid) branch.
BRANCH_MARGIN = 1e-12


@kernel
def _finite_positive(x):
    require_finite(x)
    if x <= 0.0:
        raise DomainError("argument must be positive", x)


@kernel
def _check_st_box(alpha, delta, d_lo, d_hi):
    _finite_positive(alpha)
    _finite_positive(delta)
    require_finite(d_lo)
    require_finite(d_hi)
    if not (delta <= d_lo <= d_hi):
        raise DomainError("requires 0 < delta <= d_lo <= d_hi", delta, d_lo, d_hi)


@kernel
def _far_angle_test(alpha, d_theta, p3_theta, num_cosh_d, num_p3, num_2d, den_d, den_p3):
    # cos(Theta(d/2, a/2) - Theta(p3/2, a/2)) < (cosh d cosh p3 - cosh 2d') / (sinh d'' sinh p3'')
    lhs = math.cos(theta_cap_angle(0.5 * d_theta, 0.5 * alpha)
                   - theta_cap_angle(0.5 * p3_theta, 0.5 * alpha))
    rhs = ((math.cosh(num_cosh_d) * math.cosh(num_p3) - math.cosh(2.0 * num_2d))
           / (math.sinh(den_d) * math.sinh(den_p3)))
    return lhs < rhs - BRANCH_MARGIN


# ---------------------------------------------------------------- near point


@kernel
def w_st(alpha, delta, d_big):
    """B(a/2) - 2 sigma(a/2, D/2, Phi_2(d, D)/2, Psi(D, Phi_2(d, D)))."""
    _check_st_box(alpha, delta, d_big, d_big)
    p2 = phi_n(2, delta, d_big)
    return ball_volume(0.5 * alpha) - 2.0 * sigma(0.5 * alpha, 0.5 * d_big, 0.5 * p2,
                                                  psi_angle(d_big, p2))


@kernel
def in_w_prime(alpha, delta, d_big):
    """D < Phi_3(delta, D) < alpha."""
    _check_st_box(alpha, delta, d_big, d_big)
    p3 = phi_n(3, delta, d_big)
    return d_big < p3 < alpha


@kernel
def in_w_double_prime(alpha, delta, d_big):
    """Membership in the sub-domain where w1_st needs no Phi_3 correction."""
    if not in_w_prime(alpha, delta, d_big):
        return False
    p3 = phi_n(3, delta, d_big)
    return _far_angle_test(alpha, d_big, p3, d_big, p3, d_big, d_big, p3)


@kernel
def w1_st(alpha, delta, d_big):
    """w_st, corrected by the Phi_3 cap outside the sub-domain in_w_double_prime."""
    w = w_st(alpha, delta, d_big)
    if in_w_double_prime(alpha, delta, d_big):
        return w
    p2 = phi_n(2, delta, d_big)
    p3 = phi_n(3, delta, d_big)
    ha = 0.5 * alpha
    return (w - 2.0 * kappa(ha, 0.5 * p3)
            + 2.0 * iota(ha, 0.5 * p2, 0.5 * p3, lambda_fn(delta, d_big)))


@kernel
def w_minus(alpha, delta, d_lo, d_hi):
    """Box version of w_st over D in [d_lo, d_hi]."""
    _check_st_box(alpha, delta, d_lo, d_hi)
    p2 = phi_n(2, delta, d_lo)
    return ball_volume(0.5 * alpha) - 2.0 * sigma(0.5 * alpha, 0.5 * d_lo, 0.5 * p2,
                                                  psi_angle(d_hi, p2))


@kernel
def in_w0_double_prime(alpha, delta, d_lo, d_hi):
    """Box analogue of in_w_double_prime."""
    _check_st_box(alpha, delta, d_lo, d_hi)
    p3_lo = phi_n(3, delta, d_lo)
    p3_hi = phi_n(3, delta, d_hi)
    if not (d_hi < p3_lo <= p3_hi < alpha):
        return False
    return _far_angle_test(alpha, d_hi, p3_lo, d_lo, p3_lo, d_hi, d_hi, p3_hi)


@kernel
def w1_minus(alpha, delta, d_lo, d_hi):
    """Lower bound for w1_st(alpha, delta, D) over D in [d_lo, d_hi]."""
    w = w_minus(alpha, delta, d_lo, d_hi)
    if in_w0_double_prime(alpha, delta, d_lo, d_hi):
        return w
    ha = 0.5 * alpha
    return (w - 2.0 * kappa(ha, 0.5 * phi_n(3, delta, d_lo))
            + 2.0 * iota(ha, 0.5 * phi_n(2, delta, d_hi), 0.5 * phi_n(3, delta, d_hi),
                         lambda_plus(delta, d_lo, d_hi)))


@kernel
def w_sg(lam, l):
    """B(lambda/2) - 2 kappa(lambda/2, l/2): ball minus the two caps cut by a short geodesic."""
    _finite_positive(lam)
    _finite_positive(l)
    return ball_volume(0.5 * lam) - 2.0 * kappa(0.5 * lam, 0.5 * l)


# ----------------------------------------------------------------- far point


@kernel
def w_far(rho, r, mu):
    """Lower bound for the volume lying outside the radius-r ball, given a
    mu-thick point at distance rho."""
    _finite_positive(rho)
    _finite_positive(r)
    _finite_positive(mu)
    gap = rho - r
    half_mu = 0.5 * mu
    if gap < half_mu:
        return ball_volume(max(0.0, gap))
    h = h3(half_mu)
    if gap < h:
        return ball_volume(half_mu)
    near = vbor(half_mu, rho)
    if gap < 3.0 * h:
        return near + ball_volume(min(half_mu, 0.5 * (gap - h)))
    return near + ball_volume(half_mu) / density(half_mu)


@kernel
def w_dr(r, x, mu):
    """tVbor(r, x/2) + min(B(mu/2), 2 B(max(0, x/2 - h3(r))))."""
    _finite_positive(r)
    _finite_positive(x)
    _finite_positive(mu)
    return tvbor(r, 0.5 * x) + min(ball_volume(0.5 * mu),
                                   2.0 * ball_volume(max(0.0, 0.5 * x - h3(r))))


@kernel
def w_vsg(k, delta, mu):
    """Volume bound for a very short geodesic of length delta < log(k - 1)/2."""
    _finite_positive(delta)
    _finite_positive(mu)
    reach = 0.5 * math.log(k - 1.0) - delta
    if k <= 2 or reach <= 0.0:
        raise DomainError("w_vsg requires k > 2 and 0 < delta < log(k - 1)/2", k, delta)
    ed = math.exp(delta)
    return (4.0 * math.pi / (math.cosh(0.5 * delta) * ed * (ed + 3.0))
            - 0.5 * math.pi * delta + ball_volume(min(0.5 * mu, reach)))


# ------------------------------------------------------------ campaign sums


@kernel
def _far_displacement(k, q_sum):
    if not (0.0 < q_sum < 0.5):
        raise DomainError("far-point displacement needs 0 < Q(a) + Q(b) < 1/2", q_sum)
    return xi_n(k - 2, q_sum)


@kernel
def chi_k(k, alpha, lam, delta, d_big, mu):
    """w1_st(alpha, delta, D) + w_far(xi_{k-2}(Q(lambda) + Q(D)), lambda/2, mu)."""
    _finite_positive(lam)
    return (w1_st(alpha, delta, d_big)
            + w_far(_far_displacement(k, q(lam) + q(d_big)), 0.5 * lam, mu))


@kernel
def psi_k(k, h, l, mu):
    """w_sg(f1(l) + h, l) + w_far(xi_{k-2}(Q(f1(l) + h) + Q(l)), (f1(l) + h)/2, mu)."""
    _finite_positive(h)
    _finite_positive(l)
    reach = f_n(1, l) + h
    return (w_sg(reach, l)
            + w_far(_far_displacement(k, q(reach) + q(l)), 0.5 * reach, mu))


@kernel
def chi_minus(k, lambda_lo, lambda_hi, delta, e_lo, e_hi, mu):
    """Lower bound for chi_k(k, lambda_lo, lambda, delta, E + delta, mu) over
    lambda in [lambda_lo, lambda_hi] and E in (e_lo, e_hi]."""
    _finite_positive(lambda_lo)
    require_finite(e_lo)
    if not (lambda_lo <= lambda_hi) or not (0.0 <= e_lo <= e_hi):
        raise DomainError("chi_minus box out of order", lambda_lo, lambda_hi, e_lo, e_hi)
    d_hi = e_hi + delta
    return (w1_minus(lambda_lo, delta, e_lo + delta, d_hi)
            + w_far(_far_displacement(k, q(lambda_hi) + q(d_hi)), 0.5 * lambda_hi, mu))


@kernel
def psi_minus(k, h_lo, h_hi, l_lo, l_hi, mu):
    """Lower bound for psi_k(k, h, l, mu) over h in [h_lo, h_hi], l in [l_lo, l_hi]."""
    require_finite(h_lo)
    _finite_positive(l_lo)
    if not (0.0 <= h_lo <= h_hi) or not (l_lo <= l_hi):
        raise DomainError("psi_minus box out of order", h_lo, h_hi, l_lo, l_hi)
    reach_far = f_n(1, l_lo) + h_hi
    return (w_sg(f_n(1, l_hi) + h_lo, l_lo)
            + w_far(_far_displacement(k, q(reach_far) + q(l_hi)), 0.5 * reach_far, mu))


@kernel
def tail_large_d(lambda_lo, lambda_hi, delta):
    """Closed-form lower bound for w1_st(alpha, delta, D) valid for all alpha in
    [lambda_lo, lambda_hi] and every D >= lambda_hi."""
    _finite_positive(delta)
    if not (delta < lambda_lo <= lambda_hi):
        raise DomainError("tail_large_d requires 0 < delta < lambda_lo <= lambda_hi",
                          delta, lambda_lo, lambda_hi)
    r = 0.5 * lambda_hi
    return (ball_volume(0.5 * lambda_lo)
            - 2.0 * kappa(r, 0.5 * phi_n(2, delta, lambda_hi))
            - 2.0 * kappa(r, 0.5 * phi_n(3, delta, lambda_hi)))


# ------------------------------------------------------------------ drilling


@kernel
def v_ad(v, r, l):
    """V tanh^3(2R) - (pi/2) l tanh R tanh 2R: drilling a geodesic of length l
    with an embedded tube of radius R from a manifold of volume V."""
    _finite_positive(v)
    _finite_positive(r)
    _finite_positive(l)
    t2 = math.tanh(2.0 * r)
    return v * t2 * t2 * t2 - 0.5 * math.pi * l * math.tanh(r) * t2


@kernel
def drill_bound(delta, eta, v_cusped):
    """v_ad with the tube radius (1/2) arccosh(cosh(f1(delta) + eta) / cosh(delta/2))."""
    _finite_positive(delta)
    require_finite(eta)
    if delta >= LOG3 or eta < 0.0:
        raise DomainError("drill_bound requires 0 < delta < log 3 and eta >= 0", delta, eta)
    radius = 0.5 * acosh_clamped(math.cosh(f_n(1, delta) + eta) / math.cosh(0.5 * delta))
    return v_ad(v_cusped, radius, delta)
