"""Stopping forces from phase shifts and their asymptotic decomposition.

All results are forces in Hartree atomic units (hartree / bohr). With
k = v the phase-shift form reads

    dE/dz = 2 pi n0 gamma * sum_l sin(2 [delta_l - delta_{l+1}])

and the transport-cross-section form

    dE/dz = 4 pi n0 * sum_l (l + 1) sin^2(delta_l - delta_{l+1}).
"""

import math
import warnings
from collections import namedtuple
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .errors import DomainError, RegimeError, RegimeWarning
from .kinematics import HULTHEN_SCALE
from .phase_shifts import TailModel, coulomb_diff, hulthen_delta0_exact
from .special import DEFAULT_CONTROL, SumControl, TailMode, integrate, sum_series, zeta3

LINDHARD_BETA = {"pi": math.pi, "3pi/2": 1.5 * math.pi}


class Method(str, Enum):
    ASYMPTOTIC = "asymptotic"
    SEMI_ANALYTIC = "semi_analytic"
    NUMERIC_PARTIAL_WAVE = "numeric_partial_wave"
    TRANSPORT_PARTIAL_WAVE = "transport_partial_wave"
    TWO_DIMENSIONAL = "two_dimensional"


@dataclass(frozen=True)
class StoppingDecomposition:
    """Bethe, Barkas and Bloch terms of the asymptotic stopping force.

    ``total = prefactor * (L0 + L1_weighted + L2_weighted)`` with
    ``prefactor = omega_p^2 (z1/v)^2``, ``L1_weighted = z1 L1`` and
    ``L2_weighted = z1^2 L2``.
    """

    prefactor: float
    L0: float
    L1: float
    L2: float
    L1_weighted: float
    L2_weighted: float
    total: float


@dataclass(frozen=True)
class StoppingResult:
    value: float
    method: Method
    diagnostics: dict = field(default_factory=dict, compare=False)


InequalityResult = namedtuple("InequalityResult", "lhs rhs lhs_closed rhs_closed")


def coulomb_identity_check(gamma, l):
    """Both sides of (l+1) sin^2 D = gamma sin D cos D for D = arctan(gamma/(l+1))."""
    d = coulomb_diff(gamma, l)
    s = math.sin(d)
    return (l + 1) * s * s, gamma * s * math.cos(d)


def truncated_coulomb_sum(gamma, l_max):
    """gamma^2 * sum_{l=0}^{l_max} (l+1) / ((l+1)^2 + gamma^2).

    Grows like gamma^2 ln(l_max): the unscreened sum has no finite limit.
    """
    j = np.arange(1, l_max + 2, dtype=float)
    return gamma * gamma * math.fsum(j / (j * j + gamma * gamma))


def _check_series(series):
    if len(series.values) < 2:
        raise DomainError("a phase-shift series needs at least two entries")


def _coulomb_cubic_tail(gamma, l_start, ctrl):
    # sum_{l >= l_start} [sin(2 D_l) - 2 D_l] with D_l = gamma / (l + 1)
    if gamma == 0.0:
        return 0.0
    ctrl = SumControl(ctrl.abs_tol * 1e-2, ctrl.max_terms, TailMode.INTEGRAL, 3.0, ctrl.block)

    def term(n):
        d = gamma / (n + l_start)
        return np.sin(2.0 * d) - 2.0 * d

    return sum_series(term, ctrl).value


def sine_sum(series, ctrl=DEFAULT_CONTROL):
    """Sum over l of sin(2 [delta_l - delta_{l+1}]) including the tail.

    Explicit differences are used up to l_max - 1. Beyond that the linear
    part of the sine telescopes onto 2 delta_{l_max}, and with the Coulomb
    tail model the cubic remainder uses the unscreened differences
    gamma / (l + 1).
    """
    _check_series(series)
    diffs = series.differences()
    explicit = math.fsum(np.sin(2.0 * diffs))
    tail = 2.0 * series.values[-1]
    if series.tail_model is TailModel.COULOMB:
        tail += _coulomb_cubic_tail(series.gamma, series.l_max, ctrl)
    return explicit + tail


def transport_sum(series):
    """Sum over l of (l+1) sin^2(delta_l - delta_{l+1}), truncated at l_max.

    No tail model is added: with Coulomb differences the remainder diverges
    logarithmically, with screened ones it is negligible once delta_l has
    decayed.
    """
    _check_series(series)
    diffs = series.differences()
    weights = np.arange(1, len(diffs) + 1, dtype=float)
    return math.fsum(weights * np.sin(diffs) ** 2)


def _check_kinematics(s, series):
    if not math.isclose(series.k, s.k, rel_tol=1e-12):
        raise DomainError("phase-shift series was built for a different k")


def stopping_new_form(gas, s, series, ctrl=DEFAULT_CONTROL):
    """Stopping force v^2 n0 (2 pi / k^2) gamma * sine_sum(series)."""
    _check_kinematics(s, series)
    total = sine_sum(series, ctrl)
    value = s.v**2 * gas.n0 * (2.0 * math.pi / s.k**2) * s.gamma * total
    diag = {"sine_sum": total, "l_max": series.l_max, "delta_l_max": series.values[-1]}
    return StoppingResult(value, Method.NUMERIC_PARTIAL_WAVE, diag)


def stopping_transport_form(gas, s, series):
    """Stopping force v^2 n0 (4 pi / k^2) * transport_sum(series)."""
    _check_kinematics(s, series)
    total = transport_sum(series)
    value = s.v**2 * gas.n0 * (4.0 * math.pi / s.k**2) * total
    diag = {"transport_sum": total, "l_max": series.l_max, "delta_l_max": series.values[-1]}
    return StoppingResult(value, Method.TRANSPORT_PARTIAL_WAVE, diag)


def eq4_expansion(delta0, gamma):
    """Two-term expansion 2 delta0 - (4/3) gamma^3 zeta(3) of the sine sum.

    The cubic term uses the unscreened differences gamma / (l + 1).
    """
    if abs(gamma) >= 1.0:
        warnings.warn(f"|gamma| = {abs(gamma):.3g} >= 1: two-term expansion invalid", RegimeWarning)
    return 2.0 * delta0 - (4.0 / 3.0) * gamma**3 * zeta3()


def stopping_semi_analytic(gas, s, ctrl=DEFAULT_CONTROL):
    """Stopping force from the exact Hulthen delta_0 through the two-term expansion."""
    d0 = hulthen_delta0_exact(s, ctrl)
    value = 2.0 * math.pi * gas.n0 * s.gamma * eq4_expansion(d0.value, s.gamma)
    diag = {"delta0": d0.value, "delta0_terms": d0.terms_used, "delta0_converged": d0.converged}
    return StoppingResult(value, Method.SEMI_ANALYTIC, diag)


def check_asymptotic_regime(gas, s):
    if not 2.0 * s.v**2 > gas.omega_p:
        raise RegimeError(
            f"2 v^2 = {2.0 * s.v**2:.4g} <= omega_p = {gas.omega_p:.4g}: "
            "negative Bethe logarithm, below the asymptotic regime"
        )
    if not abs(s.gamma) < 1.0:
        raise RegimeError(f"|gamma| = {abs(s.gamma):.4g} >= 1: outside the weak-coupling regime")


def asymptotic_decomposition(gas, s):
    """Bethe/Barkas/Bloch decomposition of the stopping force.

    L0 = (1/2) ln[1 + (2 k G / Lambda)^2], L1 = Lambda L0 / (2 k^2),
    L2 = -zeta(3) / k^2, prefactor omega_p^2 (z1 / v)^2.
    """
    check_asymptotic_regime(gas, s)
    k = s.k
    ratio = 2.0 * k * HULTHEN_SCALE / s.lambda_hulthen
    L0 = 0.5 * math.log1p(ratio * ratio)
    L1 = s.lambda_hulthen / (2.0 * k * k) * L0
    # 1/3 from the cubic of the leading arctan, 2/3 from the expansion remainder
    L2 = -(1.0 / 3.0 + 2.0 / 3.0) * zeta3() / (k * k)
    prefactor = gas.omega_p**2 * s.gamma**2
    l1w = s.z1 * L1
    l2w = s.z1**2 * L2
    return StoppingDecomposition(
        prefactor=prefactor,
        L0=L0,
        L1=L1,
        L2=L2,
        L1_weighted=l1w,
        L2_weighted=l2w,
        total=prefactor * (L0 + l1w + l2w),
    )


def stopping_asymptotic(gas, s):
    d = asymptotic_decomposition(gas, s)
    return StoppingResult(d.total, Method.ASYMPTOTIC, {"decomposition": d})


def lindhard_barkas(gas, s, beta=math.pi):
    """Lindhard's Barkas term beta (omega_p / v^3) ln(2 v^2 / omega_p)."""
    if isinstance(beta, str):
        beta = LINDHARD_BETA[beta]
    if beta < 0.0:
        raise DomainError("beta must be nonnegative")
    v = s.v
    return beta * gas.omega_p / v**3 * math.log(2.0 * v * v / gas.omega_p)


def born_integral_inequality(z1, k, lam, rel_tol=1e-10):
    """Born-level integrals behind the transport and phase-shift stopping forms.

    With the Yukawa transform V(q) = -4 pi z1 / (q^2 + lam^2) and the bare
    Coulomb transform V_C(q) = -4 pi z1 / q^2:

        lhs = int_0^{2k} q^3 V(q)^2 dq,  rhs = int_0^{2k} q^3 V_C(q) V(q) dq,

    both divided by (4 pi z1)^2, by quadrature and in closed form.
    """
    if not (k > 0.0 and lam > 0.0):
        raise DomainError("k and lambda must be positive")
    lam2 = lam * lam
    lhs = integrate(lambda q: q**3 / (q * q + lam2) ** 2, 0.0, 2.0 * k, rel_tol=rel_tol, points=[lam])
    rhs = integrate(lambda q: q / (q * q + lam2), 0.0, 2.0 * k, rel_tol=rel_tol, points=[lam])
    r2 = 4.0 * k * k / lam2
    log_term = math.log1p(r2)
    rhs_closed = 0.5 * log_term
    lhs_closed = 0.5 * (log_term - r2 / (1.0 + r2))
    return InequalityResult(lhs, rhs, lhs_closed, rhs_closed)


def stopping_2d_exact(n0_2d, s):
    """Exact Coulomb stopping force of a 2D gas, n0 v^2 (gamma/k) 2 pi tanh(pi gamma)."""
    if not n0_2d > 0.0:
        raise DomainError("2D density must be positive")
    return n0_2d * s.v**2 * (s.gamma / s.k) * 2.0 * math.pi * math.tanh(math.pi * s.gamma)


def identity_2d_check(gamma, m):
    """Both sides of sin^2 D = (gamma / (m + 1/2)) sin D cos D, D = arctan(gamma/(m+1/2))."""
    d = math.atan(gamma / (m + 0.5))
    s = math.sin(d)
    return s * s, gamma / (m + 0.5) * s * math.cos(d)


def stopping_2d_partial_wave(s_or_gamma, ctrl=DEFAULT_CONTROL):
    """2D transport sum over m >= 0 of sin^2(arctan(gamma / (m + 1/2))).

    Equals (pi gamma / 2) tanh(pi gamma). Accepts a setup or a bare gamma.
    """
    gamma = getattr(s_or_gamma, "gamma", s_or_gamma)
    g2 = gamma * gamma
    ctrl = SumControl(ctrl.abs_tol, ctrl.max_terms, TailMode.INTEGRAL, 2.0, ctrl.block)
    return sum_series(lambda n: g2 / ((n - 0.5) ** 2 + g2), ctrl)
