"""Phase shifts by outward Numerov integration of the radial equation.

u''(r) = [2 V(r) + l(l+1)/r^2 - k^2] u(r), started from the regular
Frobenius series at the origin and matched to Riccati-Bessel functions at
two radii. This route shares no formulas with the series and Born
closed forms and serves as their independent check.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import spherical_jn, spherical_yn

from .errors import ConvergenceError, DomainError
from .phase_shifts import PotentialKind

_SERIES_TERMS = 16


@dataclass(frozen=True)
class RadialGrid:
    """Grid policy for :func:`numerov_delta_l`.

    The step is the shorter of 2 pi / k and 1 / screening divided by
    ``points_per_wavelength``; the outer radius is ``r_max_factor`` /
    screening. With ``richardson`` the step h and h/2 results are
    combined to cancel the leading h^4 error.
    """

    points_per_wavelength: int = 200
    r_max_factor: float = 30.0
    richardson: bool = True
    match_tol: float = 1e-6
    continuation_step: float = 0.25
    coarse_points_per_wavelength: int = 40

    def __post_init__(self):
        if self.points_per_wavelength < 10 or self.coarse_points_per_wavelength < 10:
            raise DomainError("grid too coarse: need at least 10 points per wavelength")
        if self.r_max_factor < 10.0:
            raise DomainError("r_max too small: screening * r_max must be at least 10")
        if not 0.0 < self.continuation_step <= 0.25:
            raise DomainError("charge continuation step must lie in (0, 0.25]")


def _frobenius(p, l, k, r):
    """Regular solution r^(l+1) sum_j a_j r^j evaluated at r."""
    c = p.small_r_coefficients(_SERIES_TERMS)
    a = [1.0]
    for j in range(1, _SERIES_TERMS):
        s = sum(c[m] * a[j - 1 - m] for m in range(j))
        if j >= 2:
            s -= k * k * a[j - 2]
        a.append(s / (j * (j + 2 * l + 1)))
    return r ** (l + 1) * sum(aj * r**j for j, aj in enumerate(a))


def _integrate(p, l, k, h, r_max):
    """Numerov solution on r_i = i h for i0 <= i <= N; returns (r, u)."""
    n_pts = int(math.ceil(r_max / h))
    # keep h^2 l(l+1) / (12 r^2) small at the first point
    i0 = max(1, int(math.ceil(math.sqrt(l * (l + 1) / 1.2))))
    r = h * np.arange(i0, n_pts + 1, dtype=float)
    f = 2.0 * p.v_r(r) + l * (l + 1) / (r * r) - k * k
    c = h * h / 12.0
    denom = 1.0 - c * f
    g = (h * h * f / denom).tolist()
    w = [0.0] * len(r)
    w[0] = denom[0] * _frobenius(p, l, k, r[0])
    w[1] = denom[1] * _frobenius(p, l, k, r[1])
    for i in range(2, len(r)):
        w[i] = (2.0 + g[i - 1]) * w[i - 1] - w[i - 2]
        if abs(w[i]) > 1e250:
            w = [wi * 1e-250 for wi in w]
    return r, np.asarray(w) / denom


def _phase_at(u, r, i1, i2, l, k):
    x1, x2 = k * r[i1], k * r[i2]
    j1, j2 = x1 * spherical_jn(l, x1), x2 * spherical_jn(l, x2)
    n1, n2 = x1 * spherical_yn(l, x1), x2 * spherical_yn(l, x2)
    # u = A (j - tan(delta) n) with scipy's sign convention for y_l
    num = u[i1] * j2 - u[i2] * j1
    den = u[i1] * n2 - u[i2] * n1
    delta = math.atan2(num, den)
    return _reduce(delta)


def _reduce(delta):
    # principal value in (-pi/2, pi/2]
    d = math.fmod(delta, math.pi)
    if d > 0.5 * math.pi:
        d -= math.pi
    elif d <= -0.5 * math.pi:
        d += math.pi
    return d


def _nearest_branch(principal, reference):
    return principal + math.pi * round((reference - principal) / math.pi)


def _single_run(p, l, k, h, r_max):
    r, u = _integrate(p, l, k, h, r_max)
    sep = max(1, int(round(0.25 * (2.0 * math.pi / k) / h)))
    outer = len(r) - 1
    inner = int(round(0.8 * outer))
    return _phase_at(u, r, outer - sep, outer, l, k), _phase_at(u, r, inner - sep, inner, l, k)


def numerov_delta_l(p, l, k, grid=RadialGrid()):
    """Phase shift delta_l of a screened potential by Numerov integration.

    The result is on the branch that vanishes continuously as z1 -> 0: the
    charge is ramped from 0 in steps of at most ``grid.continuation_step``
    on a coarse grid, and the fine result is placed on the nearest branch.
    """
    if p.kind not in (PotentialKind.YUKAWA, PotentialKind.HULTHEN):
        raise DomainError("Numerov phase shifts need a screened potential")
    if not k > 0.0:
        raise DomainError("k must be positive")
    if l < 0:
        raise DomainError("l must be nonnegative")
    if p.z1 == 0.0:
        return 0.0
    wavelength = min(2.0 * math.pi / k, 1.0 / p.screening)
    r_max = grid.r_max_factor / p.screening

    h_coarse = wavelength / grid.coarse_points_per_wavelength
    steps = int(math.ceil(abs(p.z1) / grid.continuation_step))
    branch = 0.0
    for j in range(1, steps + 1):
        pj = p.with_charge(p.z1 * j / steps)
        branch = _nearest_branch(_single_run(pj, l, k, h_coarse, r_max)[0], branch)

    h = wavelength / grid.points_per_wavelength
    outer, inner = _single_run(p, l, k, h, r_max)
    if grid.richardson:
        outer2, inner2 = _single_run(p, l, k, 0.5 * h, r_max)
        outer2 = _nearest_branch(outer2, outer)
        inner2 = _nearest_branch(inner2, inner)
        outer = (16.0 * outer2 - outer) / 15.0
        inner = (16.0 * inner2 - inner) / 15.0
    inner = _nearest_branch(inner, outer)
    if abs(outer - inner) > grid.match_tol:
        raise ConvergenceError(
            f"matching radii disagree by {abs(outer - inner):.3g} rad; "
            "increase r_max or refine the grid",
            best_estimate=outer,
            error_estimate=abs(outer - inner),
        )
    return _nearest_branch(outer, branch)
