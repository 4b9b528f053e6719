"""Volumes of caps of a hyperbolic ball and of intersections and unions of two caps.

A cap K(R, w) is the part of a radius-R ball lying beyond a plane at distance w
from the center, perpendicular to a ray (the cap axis) from the center.

kappa has a closed form obtained by integrating the volume element
sinh(rho) cosh(rho) drho dtheta dt of cylindrical coordinates around the cap
axis. iota slices the ball by the planes t = const perpendicular to the first
axis; each slice meets the second half-space in a half-plane, and the weighted
area of disk-minus-half-plane has a closed form, leaving a 1D quadrature in t.
"""

import math

import numpy as np

from ._numerics import kernel, make_integrator, require_finite
from .errors import DomainError
from .scalarfun import ball_volume

#: Absolute error target of one iota evaluation.
IOTA_TOL = 1e-10

# Axis angles this close to 0 or pi use the nested / disjoint shortcuts.
_ALPHA_EPS = 1e-12


@kernel
def _check_spec(r_big, w):
    require_finite(r_big)
    require_finite(w)
    if r_big <= 0.0 or w < 0.0:
        raise DomainError("cap requires R > 0 and w >= 0", r_big, w)


@kernel
def kappa(r_big, w):
    """Volume of the cap of the radius-R ball beyond a plane at distance w.

    pi (cosh^2 R (tanh R - tanh w) - (R - w)) for w < R, and 0 for w >= R.
    The difference of tanh values is rewritten as sinh(R - w)/(cosh R cosh w).
    """
    _check_spec(r_big, w)
    if w >= r_big:
        return 0.0
    gap = r_big - w
    return math.pi * (math.cosh(r_big) * math.sinh(gap) / math.cosh(w) - gap)


@kernel
def _slice_volume(t, params):
    # Volume density, per unit t, of {points of the ball at axial coordinate t
    # lying in the second half-space}. params = (cosh R, tanh w', cos a, sin a).
    cosh_r, tanh_wp, cos_a, sin_a = params
    ct = math.cosh(t)
    cosh_rho = cosh_r / ct
    s = cosh_rho * cosh_rho - 1.0  # sinh^2 of the slice disk radius
    if s <= 0.0:
        return 0.0
    tanh_rho = math.sqrt(s) / cosh_rho
    # Inside the slice the half-space reads tanh(rho) cos(theta) >= c.
    c = (ct * tanh_wp - math.sinh(t) * cos_a) / sin_a
    if c >= tanh_rho:
        return 0.0
    if c <= -tanh_rho:
        return math.pi * s
    cc = abs(c)
    root = math.sqrt(1.0 - cc * cc)
    arg = root * cosh_rho
    part = s * math.acos(cc / tanh_rho)
    if arg > 1.0:
        part -= cc / root * math.acosh(arg)
    if c >= 0.0:
        return part
    return math.pi * s - part


_integrate_slices = make_integrator(_slice_volume)


@kernel
def _axial_cut(tanh_t, tanh_w, tanh_r, w):
    # Axial coordinate with the given tanh, clipped into [w, R).
    if tanh_t <= tanh_w:
        return w
    return math.atanh(min(tanh_t, tanh_r))


@kernel
def iota(r_big, w, w_prime, alpha):
    """Volume of the intersection of two caps whose axes meet at angle alpha."""
    _check_spec(r_big, w)
    _check_spec(r_big, w_prime)
    require_finite(alpha)
    if not (0.0 <= alpha <= math.pi):
        raise DomainError("iota requires 0 <= alpha <= pi", alpha)
    if w >= r_big or w_prime >= r_big:
        return 0.0
    if alpha <= _ALPHA_EPS:
        return kappa(r_big, max(w, w_prime))
    if alpha >= math.pi - _ALPHA_EPS:
        return 0.0

    cos_a = math.cos(alpha)
    sin_a = math.sin(alpha)
    tanh_r = math.tanh(r_big)
    tanh_w = math.tanh(w)
    tanh_wp = math.tanh(w_prime)
    params = (math.cosh(r_big), tanh_wp, cos_a, sin_a)

    # The second plane meets the ball's boundary sphere in a circle whose
    # projection onto the first axis spans tanh t in [lo, hi]; the integrand
    # changes regime (empty / partial / full slice) only there.
    spread = sin_a * math.sqrt(max(0.0, tanh_r * tanh_r - tanh_wp * tanh_wp))
    t_lo = _axial_cut(tanh_wp * cos_a - spread, tanh_w, tanh_r, w)
    t_hi = _axial_cut(tanh_wp * cos_a + spread, tanh_w, tanh_r, w)
    tol = IOTA_TOL / 30.0
    return (_integrate_slices(params, w, t_lo, tol)
            + _integrate_slices(params, t_lo, t_hi, tol)
            + _integrate_slices(params, t_hi, r_big, tol))


@kernel
def sigma(r_big, w, w_prime, alpha):
    """Volume of the union of two caps, by inclusion-exclusion."""
    return kappa(r_big, w) + kappa(r_big, w_prime) - iota(r_big, w, w_prime, alpha)


def mc_cap_oracle(r_big, w, w_prime=None, alpha=0.0, which="cap", n_samples=10**6, seed=0):
    """Monte-Carlo estimate of a cap (or two-cap intersection) volume.

    Points are drawn uniformly from the radius-R ball: the distance r from the
    center by rejection against the radial density sinh^2 r, the direction
    uniformly on the sphere. A point lies beyond the plane at distance w along
    a unit axis e exactly when its foot on the axis, at signed distance t with
    tanh t = tanh r <v, e>, satisfies t >= w.

    Returns ``(estimate, standard_error)``.
    """
    if n_samples < 10**4:
        raise DomainError("mc_cap_oracle needs at least 1e4 samples", n_samples)
    if which not in ("cap", "intersection"):
        raise DomainError("which must be 'cap' or 'intersection'", which)
    if r_big <= 0 or w < 0:
        raise DomainError("cap requires R > 0 and w >= 0", r_big, w)
    axis1 = np.array([1.0, 0.0, 0.0])
    axis2 = np.array([math.cos(alpha), math.sin(alpha), 0.0])
    t1 = math.tanh(w)
    t2 = math.tanh(w_prime) if which == "intersection" else None

    rng = np.random.default_rng(seed)
    sinh2_r = math.sinh(r_big) ** 2
    hits = 0
    drawn = 0
    chunk = 1 << 20
    while drawn < n_samples:
        want = min(chunk, n_samples - drawn)
        radii = np.empty(0)
        while radii.size < want:
            r = rng.uniform(0.0, r_big, size=2 * want)
            keep = rng.uniform(0.0, sinh2_r, size=2 * want) < np.sinh(r) ** 2
            radii = np.concatenate([radii, r[keep]])
        radii = radii[:want]
        v = rng.standard_normal((want, 3))
        v /= np.linalg.norm(v, axis=1, keepdims=True)
        th = np.tanh(radii)
        inside = th * (v @ axis1) >= t1
        if t2 is not None:
            inside &= th * (v @ axis2) >= t2
        hits += int(np.count_nonzero(inside))
        drawn += want

    vol = float(ball_volume(r_big))
    p = hits / n_samples
    return vol * p, vol * math.sqrt(p * (1.0 - p) / n_samples)
