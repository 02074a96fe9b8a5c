"""Lower-bound estimation for the noncommutativity parameter Theta.

Detectability criterion: the noncommutative correction is considered
observable at energy T once the relative total-cross-section deviation

    d(Theta) = |sigma(Theta) - sigma(0)| / sigma(0)

reaches a threshold epsilon. Because d is strictly increasing in Theta, the
smallest detectable Theta — the lower bound — is the crossing d(Theta) =
epsilon, located by a coarse one-decade logarithmic scan followed by
bisection on log10(Theta).

epsilon may either be set directly (0 < epsilon < 1) or calibrated so that
a chosen (energy, sqrt_theta) anchor row reproduces exactly; the calibrated
value is whatever the anchor deviation turns out to be and is carried on
the result, not validated against the user-threshold range.

All cross sections entering the deviation are quadrature values (the series
route is invalid at high energy).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Literal, Optional, Sequence, Union

import numpy as np

from .errors import NCScatterError, NegativeTheta, NoBracket
from .cross_section import total_cs_quadrature
from .kinematics import Kinematics, Mode
from .potentials import Preset, build_nc_yukawa, yukawa
from .units import CONSTANTS, PhysicalConstants, sqrt_theta_m, theta_angstrom2

#: Scan window for sqrt(Theta), in meters.
SCAN_SQRT_THETA_MIN_M = 1e-35
SCAN_SQRT_THETA_MAX_M = 1e-8

#: Bisection terminates once the log10(Theta) bracket is narrower than this.
BRACKET_DECADES = 0.05


@dataclass(frozen=True)
class DetectabilityCriterion:
    """Threshold defining when the noncommutative correction is detectable.

    Attributes
    ----------
    epsilon : float
        Relative total-cross-section deviation threshold, in (0, 1).
    calibration_row : (energy_eV, sqrt_theta_m), optional
        When set, epsilon is replaced by the deviation evaluated at this
        anchor, so the anchor row reproduces by construction.
    """

    epsilon: float = 0.01
    calibration_row: Optional[tuple[float, float]] = None

    def __post_init__(self) -> None:
        if not 0.0 < self.epsilon < 1.0:
            raise ValueError(
                f"epsilon must lie strictly between 0 and 1, got {self.epsilon}"
            )


@dataclass(frozen=True)
class BoundScanResult:
    """One estimated Theta lower bound.

    Attributes
    ----------
    target : str
        Target label (preset name or `Z=<n>`).
    energy : float
        Kinetic energy in eV.
    sqrt_theta_bound : float
        Estimated lower bound on sqrt(Theta) in meters.
    epsilon_used : float
        The threshold actually applied (user-set or calibrated).
    method : str
        Always "bisection".
    iterations : int
        Number of bisection steps after the bracket was found.
    """

    target: str
    energy: float
    sqrt_theta_bound: float
    epsilon_used: float
    method: Literal["bisection"]
    iterations: int

    def __post_init__(self) -> None:
        if not self.sqrt_theta_bound > 0.0:
            raise ValueError("sqrt_theta_bound must be > 0")


@dataclass(frozen=True)
class BoundCellFailure:
    """A (target, energy) cell whose bound estimation failed."""

    target: str
    energy: float
    error: str


def _deviation_fn(kin: Kinematics, Z: int, alpha: float,
                  rel_tol: float,
                  constants: PhysicalConstants
                  ) -> Callable[[float], float]:
    """Deviation as a function of Theta (A^2), with sigma(0) precomputed."""
    sigma0 = total_cs_quadrature(kin, yukawa(-Z * constants.coulomb_coupling,
                                             alpha),
                                 rel_tol=rel_tol, constants=constants).value

    def deviation(theta_nc: float) -> float:
        # saturate to infinity once the deformed strengths leave (or the
        # squared amplitude would leave) the double range: cross sections
        # that large are "detectable" at any threshold
        try:
            model = build_nc_yukawa(Z, alpha, theta_nc, kin.total_energy,
                                    constants=constants)
        except OverflowError:
            return math.inf
        if abs(model.V1) > 1e150 or abs(model.V2) > 1e150:
            return math.inf
        sigma = total_cs_quadrature(kin, model, rel_tol=rel_tol,
                                    constants=constants).value
        return abs(sigma - sigma0) / sigma0

    return deviation


def cs_deviation(kin: Kinematics, Z: int, alpha: float, theta_nc: float,
                 rel_tol: float = 1e-8,
                 constants: PhysicalConstants = CONSTANTS) -> float:
    """Relative total-cross-section deviation d(Theta) at one Theta (A^2).

    Raises
    ------
    NegativeTheta
        If theta_nc < 0.
    """
    if theta_nc < 0.0:
        raise NegativeTheta(f"Theta must be >= 0, got {theta_nc} A^2")
    return _deviation_fn(kin, Z, alpha, rel_tol, constants)(theta_nc)


def deviation_curve(kin: Kinematics, Z: int, alpha: float,
                    sqrt_theta_m_grid: Sequence[float],
                    rel_tol: float = 1e-8,
                    constants: PhysicalConstants = CONSTANTS) -> np.ndarray:
    """d(Theta) sampled over a grid of sqrt(Theta) values in meters.

    Diagnostic helper: lets callers compare deviation curves across
    energies when a bound search lands outside an expected window.
    """
    dev = _deviation_fn(kin, Z, alpha, rel_tol, constants)
    return np.array([dev(theta_angstrom2(s)) for s in sqrt_theta_m_grid])


def _resolve_epsilon(criterion: DetectabilityCriterion, kin: Kinematics,
                     Z: int, alpha: float, rel_tol: float,
                     constants: PhysicalConstants) -> float:
    if criterion.calibration_row is None:
        return criterion.epsilon
    anchor_energy, anchor_sqrt_theta = criterion.calibration_row
    anchor_kin = Kinematics.from_energy(anchor_energy, kin.mode, constants)
    eps = cs_deviation(anchor_kin, Z, alpha,
                       theta_angstrom2(anchor_sqrt_theta),
                       rel_tol, constants)
    if not (math.isfinite(eps) and eps > 0.0):
        raise ValueError(
            f"calibration row {criterion.calibration_row} produced an "
            f"unusable threshold {eps}"
        )
    return eps


def estimate_bound(kin: Kinematics, Z: int, alpha: float,
                   criterion: DetectabilityCriterion,
                   target: str = "",
                   rel_tol: float = 1e-8,
                   sqrt_theta_min_m: float = SCAN_SQRT_THETA_MIN_M,
                   sqrt_theta_max_m: float = SCAN_SQRT_THETA_MAX_M,
                   constants: PhysicalConstants = CONSTANTS
                   ) -> BoundScanResult:
    """Locate the Theta where the deviation crosses the threshold.

    A coarse scan in one-decade steps of Theta finds a sign change of
    d(Theta) - epsilon inside the window; bisection on log10(Theta) then
    narrows the bracket below 0.05 decades and the geometric midpoint is
    returned as the bound.

    Raises
    ------
    NoBracket
        If the deviation never reaches epsilon inside the scan window, or
        already exceeds it at the window's lower edge.
    """
    eps = _resolve_epsilon(criterion, kin, Z, alpha, rel_tol, constants)
    dev = _deviation_fn(kin, Z, alpha, rel_tol, constants)
    label = target or f"Z={Z}"

    lg_lo = math.log10(theta_angstrom2(sqrt_theta_min_m))
    lg_hi = math.log10(theta_angstrom2(sqrt_theta_max_m))

    # coarse one-decade scan for a bracket [lg_below, lg_above]
    lg_grid = np.arange(lg_lo, lg_hi + 0.5, 1.0)
    lg_grid[-1] = lg_hi
    prev_lg = lg_grid[0]
    prev_dev = dev(10.0 ** prev_lg)
    if prev_dev >= eps:
        raise NoBracket(
            f"deviation {prev_dev:.3e} already exceeds epsilon {eps:.3e} at "
            f"the scan floor sqrt(Theta) = {sqrt_theta_min_m} m"
        )
    bracket = None
    for lg in lg_grid[1:]:
        d = dev(10.0 ** lg)
        if d >= eps:
            bracket = (prev_lg, float(lg))
            break
        prev_lg, prev_dev = float(lg), d
    if bracket is None:
        raise NoBracket(
            f"deviation never reached epsilon {eps:.3e} up to "
            f"sqrt(Theta) = {sqrt_theta_max_m} m (last value {prev_dev:.3e})"
        )

    lo, hi = bracket
    iterations = 0
    while hi - lo > BRACKET_DECADES:
        mid = 0.5 * (lo + hi)
        if dev(10.0 ** mid) >= eps:
            hi = mid
        else:
            lo = mid
        iterations += 1

    theta_bound = 10.0 ** (0.5 * (lo + hi))
    return BoundScanResult(
        target=label,
        energy=kin.energy,
        sqrt_theta_bound=sqrt_theta_m(theta_bound),
        epsilon_used=eps,
        method="bisection",
        iterations=iterations,
    )


def bound_table(targets: Sequence[Preset], energies: Sequence[float],
                criterion: DetectabilityCriterion,
                mode: Mode = "relativistic",
                rel_tol: float = 1e-8,
                constants: PhysicalConstants = CONSTANTS
                ) -> list[Union[BoundScanResult, BoundCellFailure]]:
    """Bound estimates over the full (target, energy) grid.

    Cell-level failures are recorded as :class:`BoundCellFailure` entries
    instead of aborting the remaining grid.

    Raises
    ------
    ValueError
        If either list is empty.
    """
    if not targets:
        raise ValueError("targets list must be nonempty")
    if not energies:
        raise ValueError("energies list must be nonempty")
    out: list[Union[BoundScanResult, BoundCellFailure]] = []
    for preset in targets:
        for T in energies:
            kin = Kinematics.from_energy(T, mode, constants)
            try:
                out.append(estimate_bound(kin, preset.Z,
                                          preset.alpha_inv_angstrom,
                                          criterion, target=preset.name,
                                          rel_tol=rel_tol,
                                          constants=constants))
            except NCScatterError as exc:
                out.append(BoundCellFailure(target=preset.name, energy=T,
                                            error=str(exc)))
    return out
