"""Low-level numerical helpers: compiled-kernel decorator, clamped inverse
trigonometric functions, and an adaptive Gauss-Kronrod integrator."""

import math

import numba
import numpy as np

from .errors import DomainError, QuadratureError

#: Arguments of arccos/arccosh within this distance of the domain boundary
#: are snapped onto it; anything further out is a domain error.
CLAMP_TOL = 1e-12


def kernel(fn):
    """Compile ``fn`` in nopython mode with an on-disk cache."""
    return numba.njit(cache=True)(fn)


@kernel
def require_finite(x):
    if not math.isfinite(x):
        raise DomainError("non-finite argument", x)


@kernel
def acos_clamped(x):
    if x > 1.0:
        if x - 1.0 > CLAMP_TOL:
            raise DomainError("arccos argument above 1", x)
        return 0.0
    if x < -1.0:
        if -1.0 - x > CLAMP_TOL:
            raise DomainError("arccos argument below -1", x)
        return math.pi
    return math.acos(x)


@kernel
def acosh_clamped(x):
    if x < 1.0:
        if 1.0 - x > CLAMP_TOL:
            raise DomainError("arccosh argument below 1", x)
        return 0.0
    return math.acosh(x)


# Bisection depth limit of the adaptive integrator.
_MAX_DEPTH = 48


def make_integrator(integrand):
    """Build a compiled adaptive integrator for one fixed compiled ``integrand``.

    The integrand is bound through a closure rather than passed as an
    argument, so callers stay cacheable (numba keys the cache on the closure
    contents).
    """

    @kernel
    def smoothstep_eval(params, a, length, u):
        # x = a + L (3u^2 - 2u^3) has dx/du vanishing at both ends, which turns
        # square-root type endpoint behaviour into an analytic integrand.
        x = a + length * u * u * (3.0 - 2.0 * u)
        return integrand(x, params) * 6.0 * length * u * (1.0 - u)

    @kernel
    def gk15(params, a, length, u0, u1):
        # 15-point Kronrod rule with its embedded 7-point Gauss rule (QUADPACK qk15).
        center = 0.5 * (u0 + u1)
        half = 0.5 * (u1 - u0)
        du = half * 0.9914553711208126
        p0 = (smoothstep_eval(params, a, length, center - du)
              + smoothstep_eval(params, a, length, center + du))
        du = half * 0.9491079123427585
        p1 = (smoothstep_eval(params, a, length, center - du)
              + smoothstep_eval(params, a, length, center + du))
        du = half * 0.8648644233597691
        p2 = (smoothstep_eval(params, a, length, center - du)
              + smoothstep_eval(params, a, length, center + du))
        du = half * 0.7415311855993945
        p3 = (smoothstep_eval(params, a, length, center - du)
              + smoothstep_eval(params, a, length, center + du))
        du = half * 0.5860872354676911
        p4 = (smoothstep_eval(params, a, length, center - du)
              + smoothstep_eval(params, a, length, center + du))
        du = half * 0.4058451513773972
        p5 = (smoothstep_eval(params, a, length, center - du)
              + smoothstep_eval(params, a, length, center + du))
        du = half * 0.20778495500789848
        p6 = (smoothstep_eval(params, a, length, center - du)
              + smoothstep_eval(params, a, length, center + du))
        fc = smoothstep_eval(params, a, length, center)
        kronrod = (0.022935322010529224 * p0 + 0.06309209262997856 * p1
                   + 0.10479001032225019 * p2 + 0.14065325971552592 * p3
                   + 0.1690047266392679 * p4 + 0.19035057806478542 * p5
                   + 0.20443294007529889 * p6 + 0.20948214108472782 * fc)
        gauss = (0.1294849661688697 * p1 + 0.27970539148927664 * p3
                 + 0.3818300505051189 * p5 + 0.4179591836734694 * fc)
        return kronrod * half, abs((kronrod - gauss) * half)

    @kernel
    def integrate(params, a, b, tol):
        """Integrate ``integrand(x, params)`` over [a, b] to absolute error ``tol``.

        The interval is reparametrised by a smoothstep map and then bisected
        depth-first. Each leaf must meet its share of the budget in proportion
        to its width, so the accepted error estimates sum to at most ``tol``.
        The raw |Kronrod - Gauss| difference serves as the error estimate; it
        overstates the true error of the Kronrod value.
        """
        if b <= a:
            return 0.0
        length = b - a
        lo = np.empty(_MAX_DEPTH + 2)
        hi = np.empty(_MAX_DEPTH + 2)
        depth = np.empty(_MAX_DEPTH + 2, dtype=np.int64)
        lo[0] = 0.0
        hi[0] = 1.0
        depth[0] = 0
        top = 1
        total = 0.0
        while top > 0:
            top -= 1
            u0 = lo[top]
            u1 = hi[top]
            d = depth[top]
            value, err = gk15(params, a, length, u0, u1)
            if err <= tol * (u1 - u0) or err < 1e-15 * abs(value):
                total += value
                continue
            if d >= _MAX_DEPTH:
                raise QuadratureError("subdivision limit reached", a, b, err)
            mid = 0.5 * (u0 + u1)
            lo[top] = mid
            hi[top] = u1
            depth[top] = d + 1
            lo[top + 1] = u0
            hi[top + 1] = mid
            depth[top + 1] = d + 1
            top += 2
        if not math.isfinite(total):
            raise QuadratureError("non-finite integral", a, b, total)
        return total

    return integrate
