"""Special functions and numerical primitives.

Only what the phase-shift and stopping modules need: Re psi(1 + iu),
zeta(3), Legendre polynomials, adaptive quadrature and tail-corrected
summation of slowly convergent positive-index series.
"""

import cmath
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy import integrate as _sp_integrate

from .errors import ConvergenceError, DomainError
from .kinematics import HULTHEN_SCALE

EULER_GAMMA = 0.57721566490153286061
PSI_ONE = -EULER_GAMMA
ZETA3 = 1.2020569031595942854

# B_2n / (2n) for n = 1..6, the asymptotic digamma series through w**-12
_DIGAMMA_ASYMPTOTIC = (
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
)
_DIGAMMA_SWITCH = 10.0


class TailMode(str, Enum):
    TRUNCATE = "truncate"
    INTEGRAL = "integral_tail_correction"


@dataclass(frozen=True)
class SumControl:
    """Stopping rule for :func:`sum_series`.

    ``decay_power`` is the exponent p of the assumed asymptotic decay
    term(n) ~ C / n**p used for the remainder estimate.
    """

    abs_tol: float = 1e-10
    max_terms: int = 1_000_000
    tail_mode: TailMode = TailMode.INTEGRAL
    decay_power: float = 3.0
    block: int = 4096

    def __post_init__(self):
        if not self.abs_tol > 0.0:
            raise DomainError("abs_tol must be positive")
        if self.max_terms < 1:
            raise DomainError("max_terms must be at least 1")
        if not self.decay_power > 1.0:
            raise DomainError("decay_power must exceed 1 for a convergent tail")
        object.__setattr__(self, "tail_mode", TailMode(self.tail_mode))


DEFAULT_CONTROL = SumControl()


@dataclass(frozen=True)
class SeriesResult:
    value: float
    terms_used: int
    tail_bound: float
    converged: bool
    tail_correction: float = 0.0

    def __float__(self):
        return float(self.value)


def re_digamma_1p_iu(u):
    """Real part of the digamma function at 1 + iu."""
    z = complex(1.0, abs(float(u)))
    shift = 0.0
    while abs(z) <= _DIGAMMA_SWITCH:
        shift += (1.0 / z).real
        z += 1.0
    w2 = 1.0 / (z * z)
    series = 0j
    power = w2
    for c in _DIGAMMA_ASYMPTOTIC:
        series += c * power
        power *= w2
    psi = cmath.log(z) - 0.5 / z - series
    return psi.real - shift


def bethe_log_approx(u):
    """(1/2) ln(1 + G^2 u^2) with G = 1.781, large-u stand-in for Re psi(1+iu) - psi(1)."""
    gu = HULTHEN_SCALE * float(u)
    return 0.5 * math.log1p(gu * gu)


def zeta3():
    """Apery's constant."""
    return ZETA3


def legendre_p(l, x):
    """Legendre polynomial P_l(x) on [-1, 1] by upward recurrence."""
    if l < 0 or int(l) != l:
        raise DomainError(f"degree must be a nonnegative integer, got {l!r}")
    if abs(x) > 1.0:
        raise DomainError(f"Legendre argument must lie in [-1, 1], got {x!r}")
    l = int(l)
    p_prev, p = 1.0, x
    if l == 0:
        return 1.0
    for n in range(1, l):
        p_prev, p = p, ((2 * n + 1) * x * p - n * p_prev) / (n + 1)
    return p


def legendre_p_array(l, x):
    """Vectorized :func:`legendre_p` for use inside quadrature integrands."""
    x = np.asarray(x, dtype=float)
    p_prev = np.ones_like(x)
    if l == 0:
        return p_prev
    p = x.copy()
    for n in range(1, l):
        p_prev, p = p, ((2 * n + 1) * x * p - n * p_prev) / (n + 1)
    return p


def _power_tail(last_term, n, p):
    # midpoint-rule integral of C / t**p from n + 1/2 with C = last_term * n**p
    return last_term * n**p / ((p - 1.0) * (n + 0.5) ** (p - 1.0))


def sum_series(term, ctrl=DEFAULT_CONTROL):
    """Sum ``term(n)`` for n = 1, 2, ... until the remainder is below tolerance.

    ``term`` must accept an integer numpy array and return an array of the
    same shape. Terms are summed in blocks in a fixed order, so the result is
    deterministic. Hitting ``max_terms`` returns a result with
    ``converged=False``.
    """
    p = ctrl.decay_power
    total = 0.0
    n_done = 0
    last = 0.0
    while n_done < ctrl.max_terms:
        stop = min(n_done + (ctrl.block if n_done else 1), ctrl.max_terms)
        n = np.arange(n_done + 1, stop + 1, dtype=float)
        t = np.asarray(term(n), dtype=float)
        if not np.all(np.isfinite(t)):
            raise ConvergenceError("non-finite series term", best_estimate=total)
        total += math.fsum(t)
        n_done = stop
        last = float(t[-1])
        if n_done == 1 and last == 0.0:
            return SeriesResult(total, 1, 0.0, True)
        remainder = _power_tail(last, n_done, p)
        if ctrl.tail_mode is TailMode.INTEGRAL:
            # the midpoint estimate is exact to O(1/N^2) for a pure power law,
            # O(1/N) allows for a slowly varying prefactor
            bound = abs(remainder) * (1.0 / n_done + p * (p + 1.0) / (24.0 * n_done**2))
        else:
            bound = abs(remainder)
        if abs(last) < ctrl.abs_tol and bound < ctrl.abs_tol:
            if ctrl.tail_mode is TailMode.INTEGRAL:
                return SeriesResult(total + remainder, n_done, bound, True, remainder)
            return SeriesResult(total, n_done, bound, True)
    remainder = _power_tail(last, n_done, p)
    if ctrl.tail_mode is TailMode.INTEGRAL:
        return SeriesResult(total + remainder, n_done, abs(remainder), False, remainder)
    return SeriesResult(total, n_done, abs(remainder), False)


def integrate(f, a, b, rel_tol=1e-9, abs_tol=0.0, limit=500, points=None):
    """Adaptive Gauss-Kronrod quadrature of a scalar function on [a, b].

    Raises :class:`ConvergenceError` (with the best estimate attached) when
    the subdivision limit is reached before the tolerance is met.
    """
    if a == b:
        return 0.0
    if b < a:
        return -integrate(f, b, a, rel_tol, abs_tol, limit, points)
    out = _sp_integrate.quad(
        f, a, b, epsabs=abs_tol, epsrel=rel_tol, limit=limit, points=points, full_output=1
    )
    value, err = out[0], out[1]
    if len(out) > 3 and err > max(abs_tol, rel_tol * abs(value)):
        raise ConvergenceError(out[3], best_estimate=value, error_estimate=err)
    return value


def legendre_q_table(l_max, z_minus_1):
    """Legendre functions of the second kind Q_0..Q_l_max at real z > 1.

    The argument is passed as ``z - 1`` (scalar or array) so that values
    just above 1 keep full precision. Q_l is the minimal solution of the
    three-term recurrence for z > 1, so it is generated downward (Miller's
    algorithm) and normalized with the closed form of Q_0. Returns an array
    of shape ``(l_max + 1,) + shape(z_minus_1)``.
    """
    zm1 = np.atleast_1d(np.asarray(z_minus_1, dtype=float))
    if np.any(zm1 <= 0.0):
        raise DomainError("Q_l is only evaluated for z > 1")
    z = 1.0 + zm1
    xi_min = float(np.min(np.arccosh(z)))
    start = l_max + 20 + int(math.ceil(40.0 / xi_min))
    out = np.empty((l_max + 1,) + zm1.shape)
    q_next = np.zeros_like(z)
    q = np.full_like(z, 1e-300)
    for n in range(start, 0, -1):
        # Q_{n-1} = ((2n+1) z Q_n - (n+1) Q_{n+1}) / n
        q_prev = ((2 * n + 1) * z * q - (n + 1) * q_next) / n
        q_next, q = q, q_prev
        big = np.abs(q) > 1e250
        if np.any(big):
            scale = np.where(big, 1e-250, 1.0)
            q *= scale
            q_next *= scale
            if n - 1 < l_max:
                out[n:] *= scale
        if n - 1 <= l_max:
            out[n - 1] = q
    q0 = 0.5 * np.log1p(2.0 / zm1)
    out *= q0 / out[0]
    if np.ndim(z_minus_1) == 0:
        return out[:, 0]
    return out
