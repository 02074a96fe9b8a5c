"""First-order Born scattering amplitudes.

Closed forms
------------
For the potential family (V1/r + V2/r^2) exp(-alpha r) the Born transform

    f(q) = -(2m/hbar^2) (1/q) Int_0^inf V(r) r sin(q r) dr

evaluates in closed form to

    f(q) = -B [ V1/(q^2 + alpha^2) + (V2/q) arctan(q/alpha) ]

with B = 2 m_e c^2/(hbar c)^2 realizing 2m/hbar^2 in internal units. The
alpha -> 0 limit replaces arctan(q/alpha) by pi/2 (Kratzer/Coulomb cases),
and the q -> 0 limit of the V2 term is V2/alpha (removable singularity,
handled by a short even Taylor series below q < 1e-8 alpha).

Quadrature oracle
-----------------
`born_amplitude_quadrature` integrates the defining transform numerically
and independently of the closed form: adaptive Gauss-Kronrod while the
integrand oscillates mildly (q r_max <= 50), and otherwise fixed-order
Gauss-Legendre panels between consecutive zeros of sin(q r), summed directly
up to 20000 half-periods or accelerated by repeated averaging of partial
sums beyond that. This provides the package's internal cross-check of every
closed-form result.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal, Optional, Union

import numpy as np
from numpy.polynomial.legendre import leggauss

from . import _kernels
from .errors import (
    AngleOutOfRange,
    DivergentIntegral,
    QuadratureNonConvergence,
    UndefinedAmplitude,
)
from .kinematics import Kinematics, momentum_transfer
from .potentials import PotentialKind, PotentialModel, build_nc_yukawa
from .quadrature import adaptive_gauss_kronrod
from .units import CONSTANTS, PhysicalConstants

#: exp(-alpha r_max) = 1e-16 truncation point of the radial integral.
_RMAX_LOG = -math.log(1e-16)

#: Above q*r_max = 50 the integrand is treated as oscillatory.
_OSC_THRESHOLD = 50.0

#: Half-period count up to which the alternating series is summed directly.
_N_DIRECT = 20000

#: Head terms summed directly before the accelerated tail, and the number of
#: tail terms fed to the repeated-averaging limit estimate.
_EULER_HEAD = 64
_EULER_TERMS = 192

_GL_NODES, _GL_WEIGHTS = leggauss(16)


@dataclass(frozen=True)
class AmplitudeResult:
    """A Born amplitude value in A with its provenance.

    `value` is a float for scalar q and an ndarray for array q;
    `abs_error_estimate` is populated by the quadrature method only.
    """

    value: Union[float, np.ndarray]
    method: Literal["closed_form", "quadrature"]
    abs_error_estimate: Optional[float] = None


def _born_prefactor(mass_energy: Optional[float],
                    constants: PhysicalConstants) -> float:
    me = constants.electron_rest_energy if mass_energy is None else mass_energy
    return 2.0 * me / constants.hbar_c**2


def born_amplitude_closed(model: PotentialModel, q: Union[float, np.ndarray],
                          mass_energy: Optional[float] = None,
                          constants: PhysicalConstants = CONSTANTS
                          ) -> AmplitudeResult:
    """Closed-form Born amplitude at momentum transfer q (1/A).

    Parameters
    ----------
    model : PotentialModel
        Any kind; the uniform (V1, V2, alpha) closed form covers all four.
    q : float or ndarray
        Momentum transfer, >= 0. Unscreened kinds (alpha = 0) require q > 0.
    mass_energy : float, optional
        Projectile rest energy in eV; defaults to the electron rest energy.

    Raises
    ------
    UndefinedAmplitude
        If q = 0 while alpha = 0 (the amplitude diverges there).
    """
    q_arr = np.atleast_1d(np.asarray(q, dtype=np.float64))
    if np.any(q_arr < 0.0):
        raise ValueError("momentum transfer must be >= 0")
    if model.alpha == 0.0 and np.any(q_arr == 0.0):
        raise UndefinedAmplitude(
            "amplitude diverges at q = 0 for an unscreened potential "
            f"(kind {model.kind.value})"
        )
    bp = _born_prefactor(mass_energy, constants)
    values = _kernels.amp_closed_batch(q_arr, model.V1, model.V2, model.alpha,
                                       bp)
    scalar = np.isscalar(q) or np.asarray(q).ndim == 0
    return AmplitudeResult(value=float(values[0]) if scalar else values,
                           method="closed_form")


def _euler_limit(terms: np.ndarray) -> float:
    """Limit estimate of an alternating series by averaging partial sums.

    Each averaging level of the partial-sum sequence damps the leading
    oscillatory error component; the surviving single element estimates the
    series limit including the uncomputed tail.
    """
    s = np.cumsum(terms)
    while len(s) > 1:
        s = 0.5 * (s[:-1] + s[1:])
    return float(s[0])


def _born_integral_oscillatory(q: float, V1: float, V2: float, alpha: float,
                               r_max: float) -> tuple[float, float]:
    """(integral, error estimate) of the Born integrand on [0, r_max].

    Partitions at the zeros r_n = n pi / q of sin(q r) and integrates each
    half-period with 16-point Gauss-Legendre.
    """
    n_half = int(math.ceil(q * r_max / math.pi))
    if n_half <= _N_DIRECT:
        total, abs_total = _kernels.halfperiod_sum(
            q, V1, V2, alpha, 0, n_half, _GL_NODES, _GL_WEIGHTS)
        return total, 1e-15 * abs_total
    head, abs_head = _kernels.halfperiod_sum(
        q, V1, V2, alpha, 0, _EULER_HEAD, _GL_NODES, _GL_WEIGHTS)
    tail_terms = _kernels.halfperiod_terms(
        q, V1, V2, alpha, _EULER_HEAD, _EULER_HEAD + _EULER_TERMS,
        _GL_NODES, _GL_WEIGHTS)
    tail = _euler_limit(tail_terms)
    tail_short = _euler_limit(tail_terms[:-8])
    err = abs(tail - tail_short) + 1e-15 * abs_head
    return head + tail, err


def born_amplitude_quadrature(model: PotentialModel, q: float,
                              mass_energy: Optional[float] = None,
                              abs_tol: float = 1e-10,
                              constants: PhysicalConstants = CONSTANTS
                              ) -> AmplitudeResult:
    """Numerical Born amplitude: the independent check of the closed form.

    Parameters
    ----------
    model : PotentialModel
        Must have alpha > 0 (the radial integral is conditionally
        convergent otherwise).
    q : float
        Momentum transfer in 1/A, > 0.
    abs_tol : float
        Requested absolute tolerance of the returned amplitude in A.

    Raises
    ------
    DivergentIntegral
        If alpha = 0.
    UndefinedAmplitude
        If q <= 0.
    QuadratureNonConvergence
        If the error estimate exceeds abs_tol.
    """
    if model.alpha <= 0.0:
        raise DivergentIntegral(
            "the radial Born integral requires alpha > 0 "
            f"(kind {model.kind.value})"
        )
    if q <= 0.0:
        raise UndefinedAmplitude("quadrature form requires q > 0")
    bp = _born_prefactor(mass_energy, constants)
    r_max = _RMAX_LOG / model.alpha
    V1, V2, alpha = model.V1, model.V2, model.alpha

    if q * r_max <= _OSC_THRESHOLD:
        # rel_tol = 0: the caller's contract is absolute, so the relative
        # branch of the budget must never loosen the target
        res = adaptive_gauss_kronrod(
            lambda r: _kernels.born_integrand(r, q, V1, V2, alpha),
            0.0, r_max,
            rel_tol=0.0,
            abs_tol=0.1 * abs_tol * q / bp,
        )
        integral, err = res.value, res.abs_error
    else:
        integral, err = _born_integral_oscillatory(q, V1, V2, alpha, r_max)
    # truncation of the exponential tail beyond r_max
    tail_bound = (abs(V1) + abs(V2) / r_max) * 1e-16 / alpha
    err += tail_bound

    value = -bp / q * integral
    err_value = bp / q * err
    if err_value > abs_tol:
        raise QuadratureNonConvergence(
            f"Born integral error estimate {err_value:.3e} exceeds "
            f"requested tolerance {abs_tol:.3e} at q={q}"
        )
    return AmplitudeResult(value=value, method="quadrature",
                           abs_error_estimate=err_value)


def nc_amplitude_theta(theta_angle: Union[float, np.ndarray],
                       kin: Kinematics, Z: int, alpha: float,
                       theta_nc: float,
                       electron_target_sign: bool = False,
                       constants: PhysicalConstants = CONSTANTS
                       ) -> AmplitudeResult:
    """Noncommutative Yukawa amplitude as a function of scattering angle.

    Builds the model from (Z, alpha, theta_nc) at the kinematic state's
    total energy and evaluates the closed form at q = 2 k sin(theta/2).
    The forward direction theta = 0 is admitted only for alpha > 0, where
    the q -> 0 limit is finite.

    Raises
    ------
    AngleOutOfRange
        If any angle lies outside (0, pi] (or [0, pi] when alpha > 0).
    """
    model = build_nc_yukawa(Z, alpha, theta_nc, kin.total_energy,
                            electron_target_sign, constants)
    theta_arr = np.asarray(theta_angle, dtype=np.float64)
    if model.alpha == 0.0 and np.any(theta_arr == 0.0):
        raise AngleOutOfRange(
            "theta = 0 requires alpha > 0 for a finite amplitude"
        )
    q = momentum_transfer(kin.k, theta_angle)
    return born_amplitude_closed(model, q, constants=constants)
