"""Stopping power of a degenerate electron gas for swift charged projectiles.

Phase-shift based stopping forces, the exact s-wave phase shift of a
Hulthen potential with velocity-dependent screening, first-order Born
phase shifts, and the Bethe/Barkas/Bloch asymptotic decomposition.
Everything is in Hartree atomic units.
"""

from .errors import ConvergenceError, DomainError, RegimeError, RegimeWarning
from .kinematics import (
    HULTHEN_SCALE,
    ElectronGas,
    ScatteringSetup,
    gas_from_rs,
    relative_velocity,
    setup,
)

__version__ = "0.1.0"

__all__ = [
    "ConvergenceError",
    "DomainError",
    "RegimeError",
    "RegimeWarning",
    "HULTHEN_SCALE",
    "ElectronGas",
    "ScatteringSetup",
    "gas_from_rs",
    "relative_velocity",
    "setup",
    "__version__",
]
