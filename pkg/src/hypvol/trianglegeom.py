"""Hyperbolic law-of-cosines angles and their upper bounds over boxes of side lengths."""

import math

from ._numerics import acosh_clamped, kernel, require_finite
from .errors import DomainError
from .scalarfun import phi_n

HALF_PI = 0.5 * math.pi


@kernel
def _positive(x):
    require_finite(x)
    if x <= 0.0:
        raise DomainError("side length must be positive", x)


@kernel
def _ordered(lo, hi):
    _positive(lo)
    _positive(hi)
    # Bounds produced by Phi_n at a degenerate box may cross by an ulp.
    if lo - hi > 1e-12 * max(1.0, hi):
        raise DomainError("box bounds out of order", lo, hi)


@kernel
def _clipped_acos(x):
    return math.acos(min(max(x, -1.0), 1.0))


@kernel
def omega(x, y, z):
    """Cosine of the angle between sides x and y when the third side is z.

    Lies in [-1, 1] exactly when (x, y, z) satisfies the triangle inequalities.
    """
    _positive(x)
    _positive(y)
    _positive(z)
    return (math.cosh(x) * math.cosh(y) - math.cosh(z)) / (math.sinh(x) * math.sinh(y))


@kernel
def omega_bar(x, y, z):
    """The angle arccos(omega), with omega clipped to [-1, 1]."""
    return _clipped_acos(omega(x, y, z))


@kernel
def theta_fn(c, x):
    """Angle at the foot-side vertex of the right triangle with leg C and hypotenuse x.

    pi/2 when x <= C.
    """
    _positive(c)
    _positive(x)
    if x <= c:
        return HALF_PI
    leg = acosh_clamped(math.cosh(x) / math.cosh(c))
    if leg == 0.0:
        return HALF_PI
    return omega_bar(leg, x, c)


@kernel
def angle_bound_A(c, a10, a11, a20, a21):
    """Upper bound for omega_bar(x1, x2, C) over x1 in [a10, a11], x2 in [a20, a21]."""
    _ordered(a10, a11)
    _ordered(a20, a21)
    best = max(
        max(omega_bar(a10, a20, c), omega_bar(a10, a21, c)),
        max(omega_bar(a11, a20, c), omega_bar(a11, a21, c)),
    )
    best = max(best, max(theta_fn(c, a10), theta_fn(c, a11)))
    return max(best, max(theta_fn(c, a20), theta_fn(c, a21)))


@kernel
def lambda_fn(delta, d_big):
    """Lambda(delta, D) = A(D, 2 delta, Phi_2(delta, D), 3 delta, Phi_3(delta, D))."""
    return angle_bound_A(d_big, 2.0 * delta, phi_n(2, delta, d_big),
                         3.0 * delta, phi_n(3, delta, d_big))


@kernel
def omega_minus(x_lo, x_hi, y_lo, y_hi, z_hi):
    """Lower bound for omega(x, y, z) over x in [x_lo, x_hi], y in [y_lo, y_hi], z <= z_hi."""
    _ordered(x_lo, x_hi)
    _ordered(y_lo, y_hi)
    _positive(z_hi)
    return (1.0 / (math.tanh(x_hi) * math.tanh(y_hi))
            - math.cosh(z_hi) / (math.sinh(x_lo) * math.sinh(y_lo)))


@kernel
def omega_bar_plus(x_lo, x_hi, y_lo, y_hi, z_hi):
    """Upper bound for omega_bar over the same box as :func:`omega_minus`."""
    return _clipped_acos(omega_minus(x_lo, x_hi, y_lo, y_hi, z_hi))


@kernel
def theta_plus(c_lo, c_hi, x_lo, x_hi):
    """Upper bound for theta_fn(C, x) over C in [c_lo, c_hi], x in [x_lo, x_hi]."""
    _ordered(c_lo, c_hi)
    _ordered(x_lo, x_hi)
    if x_lo <= c_hi:
        return HALF_PI
    leg_lo = acosh_clamped(math.cosh(x_lo) / math.cosh(c_hi))
    leg_hi = acosh_clamped(math.cosh(x_hi) / math.cosh(c_lo))
    if leg_lo == 0.0:
        # omega_minus -> -inf as the short leg shrinks to zero.
        return math.pi
    return omega_bar_plus(leg_lo, leg_hi, x_lo, x_hi, c_hi)


@kernel
def a_plus(c_lo, c_hi, a10_lo, a10_hi, a11_lo, a11_hi, a20_lo, a20_hi, a21_lo, a21_hi):
    """Upper bound for angle_bound_A when C and each a_{m,i} range over intervals.

    All eight candidate angles are evaluated; there is no short-circuiting.
    """
    best = max(
        max(omega_bar_plus(a10_lo, a10_hi, a20_lo, a20_hi, c_hi),
            omega_bar_plus(a10_lo, a10_hi, a21_lo, a21_hi, c_hi)),
        max(omega_bar_plus(a11_lo, a11_hi, a20_lo, a20_hi, c_hi),
            omega_bar_plus(a11_lo, a11_hi, a21_lo, a21_hi, c_hi)),
    )
    best = max(best, max(theta_plus(c_lo, c_hi, a10_lo, a10_hi),
                         theta_plus(c_lo, c_hi, a11_lo, a11_hi)))
    return max(best, max(theta_plus(c_lo, c_hi, a20_lo, a20_hi),
                         theta_plus(c_lo, c_hi, a21_lo, a21_hi)))


@kernel
def lambda_plus(delta, d_lo, d_hi):
    """Upper bound for lambda_fn(delta, D) over D in [d_lo, d_hi]."""
    if d_lo > d_hi:
        raise DomainError("lambda_plus requires d_lo <= d_hi", d_lo, d_hi)
    two = 2.0 * delta
    three = 3.0 * delta
    return a_plus(d_lo, d_hi, two, two, phi_n(2, delta, d_lo), phi_n(2, delta, d_hi),
                  three, three, phi_n(3, delta, d_lo), phi_n(3, delta, d_hi))
