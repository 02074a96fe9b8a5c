"""Incident-electron kinematics: wave number and momentum transfer.

The beam energy is interpreted as kinetic energy T; the total energy
E = T + m_e c^2 is carried separately because it feeds the noncommutative
coordinate-shift term. Two dispersion relations are supported:

* relativistic (default):      hbar c k = sqrt(T (T + 2 m_e c^2))
* nonrelativistic:             hbar c k = sqrt(2 m_e c^2 T)
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal, Union

import numpy as np

from .errors import AngleOutOfRange, NegativeEnergy
from .units import CONSTANTS, PhysicalConstants

Mode = Literal["relativistic", "nonrelativistic"]

_MODES = ("relativistic", "nonrelativistic")


def wave_number(T: float, mode: Mode = "relativistic",
                constants: PhysicalConstants = CONSTANTS) -> float:
    """Wave number k in 1/A for kinetic energy T in eV.

    Parameters
    ----------
    T : float
        Kinetic energy in eV; must be >= 0.
    mode : {"relativistic", "nonrelativistic"}
        Dispersion relation selector.

    Raises
    ------
    NegativeEnergy
        If T < 0.
    """
    if T < 0.0:
        raise NegativeEnergy(f"kinetic energy must be >= 0, got {T} eV")
    if mode not in _MODES:
        raise ValueError(f"mode must be one of {_MODES}, got {mode!r}")
    mc2 = constants.electron_rest_energy
    if mode == "relativistic":
        return math.sqrt(T * (T + 2.0 * mc2)) / constants.hbar_c
    return math.sqrt(2.0 * mc2 * T) / constants.hbar_c


@dataclass(frozen=True)
class Kinematics:
    """Derived kinematic state of the incident electron.

    Attributes
    ----------
    energy : float
        Kinetic energy T in eV.
    total_energy : float
        E = T + m_e c^2 in eV (feeds the noncommutative shift term).
    k : float
        Wave number in 1/A.
    mode : str
        Dispersion relation used to derive `k`.
    """

    energy: float
    total_energy: float
    k: float
    mode: Mode

    @classmethod
    def from_energy(cls, T: float, mode: Mode = "relativistic",
                    constants: PhysicalConstants = CONSTANTS) -> "Kinematics":
        """Build the kinematic state from kinetic energy in eV."""
        k = wave_number(T, mode, constants)
        return cls(energy=T, total_energy=T + constants.electron_rest_energy,
                   k=k, mode=mode)


def momentum_transfer(k: float, theta: Union[float, np.ndarray]
                      ) -> Union[float, np.ndarray]:
    """Momentum transfer q = 2 k sin(theta/2) in 1/A.

    Accepts a scalar angle or an array of angles in radians.

    Raises
    ------
    AngleOutOfRange
        If any angle lies outside [0, pi].
    NegativeEnergy
        If k < 0 (a negative wave number implies a negative energy input).
    """
    if k < 0.0:
        raise NegativeEnergy(f"wave number must be >= 0, got {k}")
    theta_arr = np.asarray(theta, dtype=np.float64)
    if np.any(theta_arr < 0.0) or np.any(theta_arr > math.pi + 1e-15):
        raise AngleOutOfRange("scattering angle must lie in [0, pi]")
    q = 2.0 * k * np.sin(0.5 * theta_arr)
    return float(q) if np.isscalar(theta) or theta_arr.ndim == 0 else q
