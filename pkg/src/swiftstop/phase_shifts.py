"""Scattering phase shifts for screened Coulomb potentials.

Routes available for the same quantities:

* the exact s-wave phase shift of the Hulthen potential, as an arctan
  series and as the phase of the Jost-function product;
* first-order Born phase shifts in closed form (digamma for the Hulthen
  s-wave, Legendre Q functions for all other cases) and by momentum-space
  quadrature;
* direct integration of the radial equation (:mod:`swiftstop.numerov`).

Sign convention: z1 > 0 is an attractive projectile, V(r) < 0.
"""

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np
from scipy.special import bernoulli

from .errors import DomainError, RegimeError
from .special import (
    DEFAULT_CONTROL,
    PSI_ONE,
    SeriesResult,
    SumControl,
    integrate,
    legendre_p_array,
    legendre_q_table,
    re_digamma_1p_iu,
    sum_series,
)


class PotentialKind(str, Enum):
    COULOMB = "coulomb"
    YUKAWA = "yukawa"
    HULTHEN = "hulthen"


class SeriesSource(str, Enum):
    EXACT_HULTHEN_L0 = "exact_hulthen_l0"
    BORN_CLOSED = "born_closed"
    BORN_QUADRATURE = "born_quadrature"
    NUMEROV = "numerov"


class TailModel(str, Enum):
    COULOMB = "coulomb"
    NONE = "none"


# explicit terms of the Hulthen V(q) series before the Euler-Maclaurin
# remainder; the neglected f^(5) term is below 1e-12 of the leading term
_VQ_TERMS_PER_RATIO = 20
_VQ_MAX_TERMS = 100_000


def _g_derivative(m, t, q, lam):
    """m-th derivative in t of 1 / (q^2 + lam^2 t^2)."""
    if q == 0.0:
        return (-1) ** m * math.factorial(m + 1) / (lam * lam * t ** (m + 2))
    w = complex(lam * t, -q)
    return ((-1) ** m * math.factorial(m) * lam**m * w ** (-(m + 1))).imag / q


def hulthen_vq_sum(q, lam):
    """Sum over n >= 1 of n / (q^2 + (n lam)^2)^2.

    The first N terms are added explicitly; the rest is the Euler-Maclaurin
    remainder of f(t) = -g'(t) / (2 lam^2) with g = 1 / (q^2 + lam^2 t^2),
    from the exact integral plus the first- and third-derivative corrections.
    """
    n_explicit = min(_VQ_MAX_TERMS, int(_VQ_TERMS_PER_RATIO * (q / lam + 1.0)) + 16)
    n = np.arange(1, n_explicit, dtype=float)
    head = math.fsum(n / (q * q + (n * lam) ** 2) ** 2)
    t = float(n_explicit)
    c = -0.5 / (lam * lam)
    integral = -c * _g_derivative(0, t, q, lam)
    f0 = c * _g_derivative(1, t, q, lam)
    d1 = c * _g_derivative(2, t, q, lam)
    d3 = c * _g_derivative(4, t, q, lam)
    return head + integral + 0.5 * f0 - d1 / 12.0 + d3 / 720.0


@dataclass(frozen=True)
class PotentialSpec:
    """A spherical potential of strength ``z1`` and screening parameter.

    ``screening`` is lambda for the Yukawa form -z1 exp(-lambda r) / r,
    Lambda for the Hulthen form -z1 Lambda / (exp(Lambda r) - 1), and 0 for
    the bare Coulomb potential -z1 / r.
    """

    kind: PotentialKind
    z1: float
    screening: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "kind", PotentialKind(self.kind))
        if self.kind is PotentialKind.COULOMB:
            if self.screening != 0.0:
                raise DomainError("a Coulomb potential has no screening parameter")
        elif not self.screening > 0.0:
            raise DomainError(f"{self.kind.value} potential needs screening > 0")

    @classmethod
    def hulthen(cls, s):
        """Hulthen potential for a :class:`~swiftstop.kinematics.ScatteringSetup`."""
        return cls(PotentialKind.HULTHEN, s.z1, s.lambda_hulthen)

    @classmethod
    def yukawa(cls, s):
        return cls(PotentialKind.YUKAWA, s.z1, s.lambda_yukawa)

    def with_charge(self, z1):
        return PotentialSpec(self.kind, z1, self.screening)

    def v_r(self, r):
        r = np.asarray(r, dtype=float)
        if self.kind is PotentialKind.COULOMB:
            return -self.z1 / r
        if self.kind is PotentialKind.YUKAWA:
            return -self.z1 * np.exp(-self.screening * r) / r
        lam = self.screening
        return -self.z1 * lam / np.expm1(lam * r)

    def v_q(self, q):
        """Fourier transform of V(r), a scalar in q."""
        return self.z1 * self._v_q_unit(q)

    def _v_q_unit(self, q):
        q2 = q * q
        if self.kind is PotentialKind.COULOMB:
            return -4.0 * math.pi / q2
        lam = self.screening
        if self.kind is PotentialKind.YUKAWA:
            return -4.0 * math.pi / (q2 + lam * lam)
        return -8.0 * math.pi * lam * lam * hulthen_vq_sum(q, lam)

    def small_r_coefficients(self, count):
        """Coefficients c_m of 2 V(r) = sum_m c_m r**(m - 1) near the origin."""
        z, lam = self.z1, self.screening
        if self.kind is PotentialKind.COULOMB:
            return [-2.0 * z] + [0.0] * (count - 1)
        if self.kind is PotentialKind.YUKAWA:
            return [-2.0 * z * (-lam) ** m / math.factorial(m) for m in range(count)]
        b = bernoulli(count)
        return [-2.0 * z * b[m] * lam**m / math.factorial(m) for m in range(count)]


@dataclass(frozen=True)
class PhaseShiftSeries:
    """Phase shifts delta_0..delta_lmax at wave number ``k``.

    ``tail_model`` says how differences beyond ``l_max`` are modelled by
    the stopping sums; the Coulomb model uses gamma / (l + 1).
    """

    k: float
    z1: float
    values: tuple
    source: SeriesSource
    tail_model: TailModel = TailModel.COULOMB
    potential: PotentialSpec = None
    meta: dict = field(default_factory=dict, compare=False)

    @property
    def gamma(self):
        return self.z1 / self.k

    @property
    def l_max(self):
        return len(self.values) - 1

    def differences(self):
        v = np.asarray(self.values, dtype=float)
        return v[:-1] - v[1:]


def coulomb_diff(gamma, l):
    """sigma_l - sigma_{l+1} = arctan(gamma / (l + 1))."""
    return math.atan(gamma / (l + 1))


def _check_s_wave_regime(gamma, x):
    # the n = 1 denominator is the smallest one
    if not 1.0 - gamma * x + x * x > 0.0:
        raise RegimeError(
            "strong-coupling/low-velocity regime out of scope: "
            f"1 - gamma*Lambda/2k + (Lambda/2k)^2 = {1.0 - gamma * x + x * x:.3g} <= 0"
        )


def hulthen_delta0_series(gamma, k, lam, ctrl=DEFAULT_CONTROL):
    """Exact Hulthen s-wave phase shift for explicit (gamma, k, Lambda)."""
    x = lam / (2.0 * k)
    _check_s_wave_regime(gamma, x)
    if gamma == 0.0:
        return SeriesResult(0.0, 1, 0.0, True)
    ctrl = SumControl(ctrl.abs_tol, ctrl.max_terms, ctrl.tail_mode, 3.0, ctrl.block)
    return sum_series(lambda n: np.arctan(gamma / (n * (1.0 - gamma * x + (n * x) ** 2))), ctrl)


def hulthen_delta0_exact(s, ctrl=DEFAULT_CONTROL):
    """Exact s-wave phase shift of the Hulthen potential for setup ``s``.

    Sum over n >= 1 of arctan(gamma / (n [1 - gamma x + (n x)^2])) with
    x = Lambda / 2k, principal branch per term, cubic tail corrected.
    """
    return hulthen_delta0_series(s.gamma, s.k, s.lambda_hulthen, ctrl)


def hulthen_jost_phase(s, n_factors):
    """Phase shift from the truncated Jost product, arg F0(k) - arg F0(-k) over 2.

    Each factor is 1 + i z1 / (n (k - i n Lambda / 2)); the phase of the
    ratio is accumulated factor by factor so it never wraps.
    """
    x = s.x
    _check_s_wave_regime(s.gamma, x)
    n = np.arange(1, int(n_factors) + 1, dtype=float)
    k, lam, z1 = s.k, s.lambda_hulthen, s.z1
    f_plus = 1.0 + 1j * z1 / (n * (k - 0.5j * n * lam))
    f_minus = 1.0 + 1j * z1 / (n * (-k - 0.5j * n * lam))
    return 0.5 * math.fsum(np.angle(f_plus / f_minus))


def born_delta0_hulthen(s):
    """First-order Born s-wave phase shift of the Hulthen potential (digamma form)."""
    u = 2.0 * s.k / s.lambda_hulthen
    return s.z1 * ((re_digamma_1p_iu(u) - PSI_ONE) / s.k)


def born_delta0_yukawa(z1, k, lam):
    """First-order Born s-wave phase shift of the Yukawa potential."""
    if not (k > 0.0 and lam > 0.0):
        raise DomainError("k and lambda must be positive")
    r = 2.0 * k / lam
    return z1 * (0.5 * math.log1p(r * r) / k)


def born_delta_l_closed(p, l, k, ctrl=DEFAULT_CONTROL):
    """Closed-form first-order Born phase shift for any l.

    Yukawa: (z1/k) Q_l(1 + lambda^2/2k^2). Hulthen: a sum over the
    exponentials exp(-n Lambda r) of -n Lambda^2 Q_l'(1 + (n Lambda)^2/2k^2)/k^3,
    with the digamma form for l = 0.
    """
    if p.kind is PotentialKind.COULOMB:
        raise DomainError("Born phase shifts of the bare Coulomb potential diverge")
    lam = p.screening
    if p.kind is PotentialKind.YUKAWA:
        q = legendre_q_table(l, lam * lam / (2.0 * k * k))
        return p.z1 * (q[l] / k)
    if l == 0:
        u = 2.0 * k / lam
        return p.z1 * ((re_digamma_1p_iu(u) - PSI_ONE) / k)

    def term(n):
        zm1 = (n * lam) ** 2 / (2.0 * k * k)
        q = legendre_q_table(l, zm1)
        z = 1.0 + zm1
        dq = l * (z * q[l] - q[l - 1]) / (zm1 * (2.0 + zm1))
        return -n * lam * lam * dq / k**3

    ctrl = SumControl(ctrl.abs_tol, ctrl.max_terms, ctrl.tail_mode, 2.0 * l + 3.0, ctrl.block)
    return p.z1 * sum_series(term, ctrl).value


def born_delta_l(p, l, k, rel_tol=1e-9):
    """First-order Born phase shift by momentum-space quadrature.

    -(1 / 4 pi k) * integral over q in [0, 2k] of q V(q) P_l(1 - q^2 / 2k^2).
    """
    if p.kind not in (PotentialKind.YUKAWA, PotentialKind.HULTHEN):
        raise DomainError("quadrature Born phase shifts need a screened potential")
    if not k > 0.0:
        raise DomainError("k must be positive")
    if p.z1 == 0.0:
        return 0.0
    inv2k2 = 1.0 / (2.0 * k * k)

    def integrand(q):
        x = 1.0 - q * q * inv2k2
        return q * p._v_q_unit(q) * float(legendre_p_array(l, x))

    points = [p.screening] if p.screening < 2.0 * k else None
    unit = integrate(integrand, 0.0, 2.0 * k, rel_tol=rel_tol, limit=1000, points=points)
    return p.z1 * (-unit / (4.0 * math.pi * k))


def build_series(p, k, l_max, source, grid=None, ctrl=DEFAULT_CONTROL, rel_tol=1e-9):
    """Assemble delta_0..delta_l_max from one source.

    ``exact_hulthen_l0`` takes the exact Hulthen s-wave phase shift and the
    closed-form Born values for l >= 1.
    """
    from .numerov import RadialGrid, numerov_delta_l

    source = SeriesSource(source)
    if l_max < 1:
        raise DomainError("a phase-shift series needs l_max >= 1")
    if p.z1 == 0.0:
        return PhaseShiftSeries(k, 0.0, (0.0,) * (l_max + 1), source, potential=p)
    meta = {}
    if source is SeriesSource.NUMEROV:
        grid = grid or RadialGrid()
        values = [numerov_delta_l(p, l, k, grid) for l in range(l_max + 1)]
    elif source is SeriesSource.BORN_QUADRATURE:
        values = [born_delta_l(p, l, k, rel_tol) for l in range(l_max + 1)]
    elif source is SeriesSource.BORN_CLOSED and p.kind is PotentialKind.YUKAWA:
        q = legendre_q_table(l_max, p.screening**2 / (2.0 * k * k))
        values = [p.z1 * (ql / k) for ql in q]
    elif source is SeriesSource.BORN_CLOSED:
        values = [born_delta_l_closed(p, l, k, ctrl) for l in range(l_max + 1)]
    else:
        if p.kind is not PotentialKind.HULTHEN:
            raise DomainError("the exact s-wave phase shift is only known for the Hulthen potential")
        d0 = hulthen_delta0_series(p.z1 / k, k, p.screening, ctrl)
        meta["delta0_terms"] = d0.terms_used
        meta["delta0_converged"] = d0.converged
        values = [d0.value] + [born_delta_l_closed(p, l, k, ctrl) for l in range(1, l_max + 1)]
    return PhaseShiftSeries(k, p.z1, tuple(float(v) for v in values), source, potential=p, meta=meta)
