"""Böröczky ball-packing quantities for H^3.

All of them are expressed through the regular simplex whose vertices are the
centers of four mutually tangent radius-R balls (side 2R): its circumradius
h3, dihedral angle beta, volume tau, and the resulting local density bound.
"""

import math

from ._numerics import kernel, make_integrator, require_finite
from .errors import DomainError
from .scalarfun import ball_volume

#: Absolute error target of the simplex-volume quadrature.
TAU_TOL = 1e-12

_ARCSEC3 = math.acos(1.0 / 3.0)
_SQRT_3_2 = math.sqrt(1.5)
_TWO_OVER_SQRT3 = 2.0 / math.sqrt(3.0)


@kernel
def _check_radius(r):
    require_finite(r)
    if r <= 0.0:
        raise DomainError("radius must be positive", r)


@kernel
def h3(r):
    """Circumradius of the regular tetrahedron of side 2r: sinh h3 = sqrt(3/2) sinh r."""
    _check_radius(r)
    return math.asinh(_SQRT_3_2 * math.sinh(r))


@kernel
def h2(r):
    """Circumradius of the regular triangle of side 2r: sinh h2 = (2/sqrt 3) sinh r."""
    _check_radius(r)
    return math.asinh(_TWO_OVER_SQRT3 * math.sinh(r))


@kernel
def beta(r):
    """Dihedral angle arcsec(sech 2r + 2) of the regular tetrahedron of side 2r."""
    _check_radius(r)
    return math.acos(1.0 / (1.0 / math.cosh(2.0 * r) + 2.0))


@kernel
def _simplex_integrand(s, params):
    # arcsech(sec t - 2) at t = arcsec 3 - s^2, times |dt/ds| = 2s. The
    # substitution absorbs the square-root zero of arcsech at t = arcsec 3.
    t = _ARCSEC3 - s * s
    y = 1.0 / math.cos(t) - 2.0
    one_minus_y = 3.0 - 1.0 / math.cos(t)
    if one_minus_y <= 0.0:
        return 0.0
    return 2.0 * s * math.log((1.0 + math.sqrt(one_minus_y * (1.0 + y))) / y)


_integrate_simplex = make_integrator(_simplex_integrand)


@kernel
def tau(r):
    """Volume 3 * int_{beta(r)}^{arcsec 3} arcsech(sec t - 2) dt of the regular tetrahedron of side 2r."""
    _check_radius(r)
    span = _ARCSEC3 - beta(r)
    if span <= 0.0:
        return 0.0
    return 3.0 * _integrate_simplex((0.0,), 0.0, math.sqrt(span), TAU_TOL / 3.0)


@kernel
def density(r):
    """Böröczky density bound (3 beta - pi)(sinh 2r - 2r) / tau for radius-r packings."""
    _check_radius(r)
    return (3.0 * beta(r) - math.pi) * (math.sinh(2.0 * r) - 2.0 * r) / tau(r)


@kernel
def _bor_sine(r, rho):
    c = math.cosh(r)
    ch = math.cosh(rho)
    return math.sqrt(max(0.0, ch * ch - c * c)) / (math.sinh(rho) * c)


@kernel
def phi_bor(r, rho):
    """Angle phi(R, rho) of the refined neighborhood bound; 0 at rho = h3(R)."""
    _check_radius(r)
    require_finite(rho)
    h = h3(r)
    if rho < h:
        raise DomainError("phi_bor requires rho >= h3(r)", r, rho)
    return math.asin(min(1.0, _bor_sine(r, rho))) - math.asin(min(1.0, _bor_sine(r, h)))


@kernel
def vbor(r, rho):
    """Lower bound for the volume of the h3(r)-neighborhood piece around a radius-r ball center."""
    _check_radius(r)
    require_finite(rho)
    if rho <= h3(r):
        raise DomainError("vbor requires rho > h3(r)", r, rho)
    cphi = math.cos(phi_bor(r, rho))
    return (0.5 * (1.0 - cphi) * ball_volume(h3(r))
            + 0.5 * (1.0 + cphi) * ball_volume(r) / density(r))


@kernel
def tvbor(r, rho):
    """vbor(r, rho) for rho > h3(r), else B(r)/density(r)."""
    _check_radius(r)
    require_finite(rho)
    if rho <= 0.0:
        raise DomainError("tvbor requires rho > 0", rho)
    if rho > h3(r):
        return vbor(r, rho)
    return ball_volume(r) / density(r)

