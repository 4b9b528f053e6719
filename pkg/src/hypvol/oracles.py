"""Independent numerical oracles for the closed-form geometry.

Each oracle builds the configuration explicitly in the hyperboloid model
{x : <x, x> = -1, x_0 > 0} with the Minkowski form <x, y> = -x0 y0 + x1 y1 + ...
and measures the quantity directly, then compares it with the library value.
"""

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq

from .capvol import kappa, iota, mc_cap_oracle
from .packing import h3
from .scalarfun import ball_volume
from .trianglegeom import omega_bar, theta_fn


@dataclass(frozen=True)
class OracleCase:
    label: str
    value: float
    reference: float
    tolerance: float

    @property
    def error(self):
        return abs(self.value - self.reference)

    @property
    def passed(self):
        return self.error <= self.tolerance


@dataclass
class OracleReport:
    target: str
    cases: list = field(default_factory=list)

    @property
    def passed(self):
        return all(c.passed for c in self.cases)

    @property
    def worst(self):
        """The case using the largest fraction of its tolerance."""
        return max(self.cases, key=lambda c: c.error / c.tolerance if c.tolerance else math.inf)

    def summary(self):
        lines = [f"oracle {self.target}: {len(self.cases)} cases"]
        lines += [f"  FAIL {c.label}: value={c.value:.12g} reference={c.reference:.12g} "
                  f"err={c.error:.3g} tol={c.tolerance:.3g}"
                  for c in self.cases if not c.passed]
        w = self.worst
        lines.append(f"  worst {w.label}: err={w.error:.3g} tol={w.tolerance:.3g}")
        lines.append(f"  {'PASS' if self.passed else 'FAIL'}")
        return "\n".join(lines)


# Minkowski geometry ---------------------------------------------------------

_J = np.diag([-1.0, 1.0, 1.0, 1.0])


def mink(x, y):
    return float(x @ _J @ y)


def hyp_distance(x, y):
    return math.acosh(max(1.0, -mink(x, y)))


def vertex_angle(p, a, b):
    """Angle at p between the geodesics toward a and toward b."""
    u = a + mink(p, a) * p
    v = b + mink(p, b) * p
    c = mink(u, v) / math.sqrt(mink(u, u) * mink(v, v))
    return math.acos(min(1.0, max(-1.0, c)))


def point_at(direction, dist):
    """The point at distance ``dist`` from the base point along a unit 3-vector."""
    d = np.asarray(direction, dtype=float)
    return np.concatenate([[math.cosh(dist)], math.sinh(dist) * d / np.linalg.norm(d)])


def random_isometry(rng, max_boost=1.5):
    """A random orientation-preserving Lorentz map: rotation then boost."""
    qm, _ = np.linalg.qr(rng.standard_normal((3, 3)))
    rot = np.eye(4)
    rot[1:, 1:] = qm
    n = rng.standard_normal(3)
    n /= np.linalg.norm(n)
    s = rng.uniform(0.0, max_boost)
    boost = np.eye(4)
    boost[0, 0] = math.cosh(s)
    boost[0, 1:] = boost[1:, 0] = math.sinh(s) * n
    boost[1:, 1:] += (math.cosh(s) - 1.0) * np.outer(n, n)
    return boost @ rot


def triangle_from_sides(x, y, z):
    """Vertices (P, A, C) with d(P, A) = x, d(P, C) = y, d(A, C) = z.

    C is found by linear algebra in span(P, A, N) from its Minkowski inner
    products with P and A plus the unit-norm condition.
    """
    p = np.array([1.0, 0.0, 0.0, 0.0])
    a = point_at([1.0, 0.0, 0.0], x)
    n = np.array([0.0, 0.0, 1.0, 0.0])
    gram = np.array([[mink(p, p), mink(p, a)], [mink(a, p), mink(a, a)]])
    coef = np.linalg.solve(gram, [-math.cosh(y), -math.cosh(z)])
    base = coef[0] * p + coef[1] * a
    c_sq = -1.0 - mink(base, base)
    c = base + math.sqrt(max(0.0, c_sq)) * n
    return p, a, c


# Oracles --------------------------------------------------------------------

def triangle_oracle(n_cases=500, seed=0, tol=1e-9):
    """Law-of-cosines angles against angles measured on explicit triangles.

    Half the cases check omega_bar on a random non-degenerate triangle; the
    other half check theta_fn on a right triangle with one leg C and
    hypotenuse x.
    """
    rng = np.random.default_rng(seed)
    report = OracleReport("triangle")
    n_omega = n_cases - n_cases // 2
    while len(report.cases) < n_omega:
        x, y = rng.uniform(0.05, 2.5, size=2)
        z = rng.uniform(abs(x - y), x + y)
        # Keep away from flat triangles, where the measured angle is ill-conditioned.
        if min(x + y - z, z - abs(x - y)) < 1e-3:
            continue
        g = random_isometry(rng)
        p, a, c = (g @ v for v in triangle_from_sides(x, y, z))
        measured = vertex_angle(p, a, c)
        report.cases.append(OracleCase(f"omega_bar({x:.6g},{y:.6g},{z:.6g})",
                                       float(omega_bar(x, y, z)), measured, tol))
    while len(report.cases) < n_cases:
        c_leg, x = rng.uniform(0.05, 2.5, size=2)
        if x < c_leg:
            # theta is pi/2 by definition on this branch.
            report.cases.append(OracleCase(f"theta_fn({c_leg:.6g},{x:.6g})",
                                           float(theta_fn(c_leg, x)), 0.5 * math.pi, tol))
            continue
        if x - c_leg < 1e-3:
            continue
        g = random_isometry(rng)
        corner = np.array([1.0, 0.0, 0.0, 0.0])
        q = point_at([1.0, 0.0, 0.0], c_leg)
        # Slide along the perpendicular leg until the hypotenuse has length x.
        leg = brentq(lambda t: hyp_distance(q, point_at([0.0, 1.0, 0.0], t)) - x,
                     0.0, x, xtol=1e-15, rtol=1e-15)
        r = point_at([0.0, 1.0, 0.0], leg)
        corner, q, r = (g @ v for v in (corner, q, r))
        measured = vertex_angle(r, corner, q)
        report.cases.append(OracleCase(f"theta_fn({c_leg:.6g},{x:.6g})",
                                       float(theta_fn(c_leg, x)), measured, tol))
    return report


_TETRA = np.array([[1.0, 1.0, 1.0], [1.0, -1.0, -1.0], [-1.0, 1.0, -1.0], [-1.0, -1.0, 1.0]])


def tetrahedron_edge(circumradius):
    """Edge length of the regular tetrahedron whose vertices lie at the given
    distance from the base point in the four regular directions."""
    verts = [point_at(d, circumradius) for d in _TETRA]
    edges = [hyp_distance(verts[i], verts[j]) for i in range(4) for j in range(i + 1, 4)]
    return float(np.mean(edges))


def simplex_oracle(radii=None, tol=1e-10):
    """Circumradius of the regular simplex with edge 2r, found by bisection on
    a constructed tetrahedron, against the closed form for h3."""
    if radii is None:
        radii = np.linspace(0.05, 2.0, 20)
    report = OracleReport("simplex")
    for r in radii:
        r = float(r)
        rho = brentq(lambda v: tetrahedron_edge(v) - 2.0 * r, 0.0, 2.0 * r + 1.0,
                     xtol=1e-15, rtol=1e-15)
        report.cases.append(OracleCase(f"h3({r:.6g})", float(h3(r)), rho,
                                       tol * max(1.0, rho)))
        report.cases.append(OracleCase(f"sinh h3({r:.6g})", math.sqrt(1.5) * math.sinh(r),
                                       math.sinh(rho), tol * max(1.0, math.sinh(rho))))
    return report


#: Fixed regression set: (R, w) cap cases and (R, w, w', alpha) intersection cases.
CAP_CASES = [
    (0.5, 0.1), (0.5, 0.3), (0.8, 0.2), (0.8, 0.55), (1.0, 0.4),
    (1.0, 0.7), (1.2, 0.3), (1.2, 0.9), (1.5, 0.6), (1.5, 1.1),
]
INTERSECTION_CASES = [
    (1.0, 0.35, 0.45, 1.1), (1.0, 0.2, 0.3, 0.6), (1.0, 0.1, 0.1, 2.0),
    (0.8, 0.2, 0.4, 0.9), (1.2, 0.3, 0.5, 1.4), (1.2, 0.5, 0.5, 0.3),
    (1.4, 0.4, 0.7, 1.0), (1.4, 0.2, 0.9, 0.5), (0.6, 0.1, 0.2, 1.2),
    (1.05, 0.28, 0.41, 0.72),
]
HALF_BALL_RADII = (0.3, 0.7, 1.0, 1.4)


def cap_oracle(n_samples=10**6, seed=0, n_sigma=3.0):
    """Cap and cap-intersection volumes against Monte-Carlo estimates, plus the
    half-ball limit kappa(R, 0+) = B(R)/2."""
    report = OracleReport("cap")
    for i, (r, w) in enumerate(CAP_CASES):
        est, se = mc_cap_oracle(r, w, which="cap", n_samples=n_samples, seed=seed + i)
        report.cases.append(OracleCase(f"kappa({r},{w})", float(kappa(r, w)), est, n_sigma * se))
    for i, (r, w, wp, a) in enumerate(INTERSECTION_CASES):
        est, se = mc_cap_oracle(r, w, wp, a, which="intersection", n_samples=n_samples,
                                seed=seed + 100 + i)
        report.cases.append(OracleCase(f"iota({r},{w},{wp},{a})", float(iota(r, w, wp, a)),
                                       est, n_sigma * se))
    for r in HALF_BALL_RADII:
        report.cases.append(OracleCase(f"kappa({r},0+)", float(kappa(r, 1e-300)),
                                       0.5 * float(ball_volume(r)), 1e-9))
    return report


ORACLES = {"cap": cap_oracle, "triangle": triangle_oracle, "simplex": simplex_oracle}
