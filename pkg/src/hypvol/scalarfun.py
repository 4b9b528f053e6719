"""Elementary displacement, radius and angle functions of one or two reals.

Every function here is a compiled kernel callable from plain Python and from
other kernels. Distances are hyperbolic, angles are in radians.
"""

import math

from ._numerics import acos_clamped, acosh_clamped, kernel, require_finite
from .errors import DomainError

LOG3 = math.log(3.0)
LOG8 = math.log(8.0)


@kernel
def q(u):
    """Q(u) = 1/(1 + e^u), a decreasing bijection [0, inf) -> (0, 1/2]."""
    require_finite(u)
    if u < 0.0:
        raise DomainError("q requires u >= 0", u)
    return 1.0 / (1.0 + math.exp(u))


@kernel
def q_inv(x):
    """Inverse of :func:`q`: log(1/x - 1) for 0 < x <= 1/2."""
    require_finite(x)
    if not (0.0 < x <= 0.5):
        raise DomainError("q_inv requires 0 < x <= 1/2", x)
    return math.log(1.0 / x - 1.0)


@kernel
def f_n(n, x):
    """f_n(x) = Q^-1(1/2 - n Q(x)), defined for x > log(2n - 1).

    Strictly decreasing with unique fixed point log(2n + 1).
    """
    require_finite(x)
    if n < 1 or x <= math.log(2.0 * n - 1.0):
        raise DomainError("f_n requires n >= 1 and x > log(2n - 1)", x)
    return q_inv(0.5 - n * q(x))


@kernel
def xi_n(n, u):
    """The distance v with n Q(2v) + u = 1/2, for 0 < u < 1/2."""
    require_finite(u)
    if n < 1 or not (0.0 < u < 0.5):
        raise DomainError("xi_n requires n >= 1 and 0 < u < 1/2", u)
    return 0.5 * q_inv((0.5 - u) / n)


@kernel
def g_k(k, x):
    """g_k(x) = Q^-1((1/2 - 2 Q(x)) / (k - 2)) / 2, for x > log 3."""
    require_finite(x)
    if k <= 2 or x <= LOG3:
        raise DomainError("g_k requires k > 2 and x > log 3", x)
    return 0.5 * q_inv((0.5 - 2.0 * q(x)) / (k - 2))


@kernel
def i_k_upper(k):
    """Right endpoint of I_k (infinite for k >= 7)."""
    if k <= 2:
        raise DomainError("I_k requires k > 2", k)
    if k >= 7:
        return math.inf
    return math.log(20.0 / (7 - k) - 1.0)


@kernel
def in_interval_I_k(k, x):
    """Membership in I_k = (log 3, log(20/(7-k) - 1)); I_k = (log 3, inf) for k >= 7."""
    return LOG3 < x < i_k_upper(k)


@kernel
def ball_volume(x):
    """Volume pi (sinh 2x - 2x) of a hyperbolic ball of radius x."""
    require_finite(x)
    if x < 0.0:
        raise DomainError("ball_volume requires x >= 0", x)
    y = 2.0 * x
    if y < 1e-2:
        # sinh y - y by its Taylor series, avoiding cancellation.
        y2 = y * y
        return math.pi * y * y2 / 6.0 * (1.0 + y2 / 20.0 * (1.0 + y2 / 42.0 * (1.0 + y2 / 72.0)))
    return math.pi * (math.sinh(y) - y)


@kernel
def phi_n(n, delta, d_big):
    """Phi_n(delta, D); satisfies n delta <= Phi_n <= n D and Phi_n(delta, delta) = n delta."""
    require_finite(delta)
    require_finite(d_big)
    if delta <= 0.0 or d_big < delta:
        raise DomainError("phi_n requires 0 < delta <= D", delta, d_big)
    c = math.cosh(n * delta)
    cd = math.cosh(delta)
    return acosh_clamped(c + (c - 1.0) * (math.cosh(d_big) - cd) / (cd + 1.0))


@kernel
def psi_angle(x, y):
    """Base angle of the isosceles triangle with legs x and base y.

    arccos(coth x (coth y - csch y)); evaluated as arccos(tanh(y/2) / tanh x),
    which is the same quantity without the cancellation near y = 0.
    """
    require_finite(x)
    require_finite(y)
    if x <= 0.0 or y <= 0.0:
        raise DomainError("psi_angle requires positive arguments", x, y)
    return acos_clamped(math.tanh(0.5 * y) / math.tanh(x))


@kernel
def theta_cap_angle(w, r_big):
    """Theta(w, R) = arccos(tanh w / tanh R): angular radius of a cap seen from the center."""
    require_finite(w)
    require_finite(r_big)
    if not (0.0 < w < r_big):
        raise DomainError("theta_cap_angle requires 0 < w < R", w, r_big)
    return math.acos(math.tanh(w) / math.tanh(r_big))
