"""Electron-gas parameters and projectile kinematics in Hartree atomic units.

With e = hbar = m = a0 = 1 the electron wave number in the projectile frame
equals the projectile velocity, k = v, and the Sommerfeld parameter is
gamma = z1 / v.
"""

import math
from dataclasses import dataclass

from .errors import DomainError

#: Ratio of the Hulthen to the Yukawa screening parameter. It equals
#: exp(Euler-Mascheroni) = 1.78107... to four digits; the rounded literal is
#: kept so that e.g. L1 = 0.8905 * omega_p / v**3 * L0 reproduces exactly.
HULTHEN_SCALE = 1.781


@dataclass(frozen=True)
class ElectronGas:
    """Homogeneous degenerate electron gas at density parameter ``r_s``."""

    r_s: float
    n0: float
    omega_p: float
    k_F: float
    v_F: float


@dataclass(frozen=True)
class ScatteringSetup:
    """A projectile of charge ``z1`` moving at ``v`` through a gas.

    ``lambda_yukawa`` is the dynamic screening parameter omega_p / v and
    ``lambda_hulthen`` the matching Hulthen parameter.
    """

    z1: float
    v: float
    k: float
    gamma: float
    lambda_yukawa: float
    lambda_hulthen: float

    @property
    def x(self):
        """Lambda / 2k, the small parameter of the s-wave series."""
        return self.lambda_hulthen / (2.0 * self.k)


def gas_from_rs(r_s):
    """Build an :class:`ElectronGas` from the Wigner-Seitz radius (bohr)."""
    r_s = float(r_s)
    if not math.isfinite(r_s) or r_s <= 0.0:
        raise DomainError(f"r_s must be positive and finite, got {r_s!r}")
    n0 = 3.0 / (4.0 * math.pi * r_s**3)
    k_F = (9.0 * math.pi / 4.0) ** (1.0 / 3.0) / r_s
    return ElectronGas(
        r_s=r_s,
        n0=n0,
        omega_p=math.sqrt(4.0 * math.pi * n0),
        k_F=k_F,
        v_F=k_F,
    )


def setup(gas, z1, v):
    """Derive the scattering kinematics for charge ``z1`` at velocity ``v``."""
    z1 = float(z1)
    v = float(v)
    if not math.isfinite(v) or v <= 0.0:
        raise DomainError(f"velocity must be positive and finite, got {v!r}")
    if not math.isfinite(z1):
        raise DomainError(f"z1 must be finite, got {z1!r}")
    lam = gas.omega_p / v
    return ScatteringSetup(
        z1=z1,
        v=v,
        k=v,
        gamma=z1 / v,
        lambda_yukawa=lam,
        lambda_hulthen=HULTHEN_SCALE * lam,
    )


def relative_velocity(v, mean_sq_electron_velocity=0.0):
    """Mean relative projectile-electron velocity, v * (1 + <v_e^2> / (3 v^2)).

    Passing ``mean_sq_electron_velocity=0`` returns ``v`` unchanged, which is
    the high-velocity limit used by every stopping routine.
    """
    if not v > 0.0:
        raise DomainError(f"velocity must be positive, got {v!r}")
    if mean_sq_electron_velocity < 0.0:
        raise DomainError("mean square electron velocity must be nonnegative")
    if mean_sq_electron_velocity == 0.0:
        return v
    return v * (1.0 + mean_sq_electron_velocity / (3.0 * v * v))
