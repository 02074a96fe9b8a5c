"""Screened-potential models and their noncommutative corrections.

The family implemented here is, in internal units (eV, A),

    V(r) = (V1 / r + V2 / r^2) * exp(-alpha * r)

which covers four special cases selected by a kind tag:

* Coulomb:          V1 = V0, V2 = 0, alpha = 0
* Yukawa:           V1 = V0, V2 = 0, alpha > 0
* Kratzer:          V1 = V0, V2 = V0 * s, alpha = 0
* screened Kratzer: V1 = exp(alpha s) V0, V2 = V1 * s, alpha > 0

where s = Theta * E / (2 hbar c) is the coordinate-shift length produced by
substituting the shifted radius r - s into the Yukawa form and expanding to
first order in s (keeping the exponential strength prefactor unexpanded).
The screened-Kratzer case is the noncommutative Yukawa potential; Theta -> 0
and alpha -> 0 recover the other three kinds.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Union

import numpy as np

from . import _kernels
from .errors import (
    InvalidZ,
    NegativeTheta,
    NonpositiveRadius,
    UnsupportedReduction,
)
from .units import CONSTANTS, PhysicalConstants

#: Radii below this guard (in A) are rejected: every kind diverges at r = 0.
MIN_RADIUS = 1e-12


class PotentialKind(enum.Enum):
    COULOMB = "coulomb"
    YUKAWA = "yukawa"
    KRATZER = "kratzer"
    SCREENED_KRATZER = "screened_kratzer"


@dataclass(frozen=True)
class PotentialModel:
    """Immutable parameter set of one potential.

    Attributes
    ----------
    kind : PotentialKind
        Which member of the family this is.
    V0 : float
        Bare strength in eV*A (negative for an attractive nucleus).
    alpha : float
        Screening parameter in 1/A (0 for the unscreened kinds).
    theta : float
        Noncommutativity parameter Theta in A^2 (0 for commutative kinds).
    energy_total : float
        Total electron energy E in eV entering the shift length.
    V1 : float
        Derived 1/r strength in eV*A.
    V2 : float
        Derived 1/r^2 strength in eV*A^2.
    """

    kind: PotentialKind
    V0: float
    alpha: float
    theta: float
    energy_total: float
    V1: float
    V2: float

    def __post_init__(self) -> None:
        if self.theta < 0.0:
            raise NegativeTheta(f"Theta must be >= 0, got {self.theta} A^2")
        if self.alpha < 0.0:
            raise ValueError(f"alpha must be >= 0, got {self.alpha} 1/A")

    @property
    def shift_length(self) -> float:
        """s = Theta E / (2 hbar c) in A (uses the default constants)."""
        return self.theta * self.energy_total / (2.0 * CONSTANTS.hbar_c)


def shift_length(theta: float, energy_total: float,
                 constants: PhysicalConstants = CONSTANTS) -> float:
    """The coordinate-shift length s = Theta E / (2 hbar c) in A."""
    if theta < 0.0:
        raise NegativeTheta(f"Theta must be >= 0, got {theta} A^2")
    return theta * energy_total / (2.0 * constants.hbar_c)


def bopp_shift_radius(r: float, theta: float, energy_total: float,
                      constants: PhysicalConstants = CONSTANTS) -> float:
    """Shifted radial coordinate r_hat = r - Theta E / (2 hbar c).

    Raises
    ------
    NonpositiveRadius
        If r <= 0.
    NegativeTheta
        If theta < 0.
    """
    if r <= 0.0:
        raise NonpositiveRadius(f"radius must be > 0, got {r} A")
    return r - shift_length(theta, energy_total, constants)


# =============================================================================
# Model constructors
# =============================================================================

def coulomb(V0: float) -> PotentialModel:
    """Pure 1/r potential with strength V0 (eV*A)."""
    return PotentialModel(PotentialKind.COULOMB, V0, 0.0, 0.0, 0.0, V0, 0.0)


def yukawa(V0: float, alpha: float) -> PotentialModel:
    """Screened 1/r potential V0 exp(-alpha r)/r."""
    return PotentialModel(PotentialKind.YUKAWA, V0, alpha, 0.0, 0.0, V0, 0.0)


def kratzer(V0: float, theta: float, energy_total: float,
            constants: PhysicalConstants = CONSTANTS) -> PotentialModel:
    """1/r + 1/r^2 potential: the alpha -> 0 limit of the screened Kratzer.

    The 1/r^2 coefficient is V0 * Theta E / (2 hbar c).
    """
    s = shift_length(theta, energy_total, constants)
    return PotentialModel(PotentialKind.KRATZER, V0, 0.0, theta, energy_total,
                          V0, V0 * s)


def screened_kratzer(V0: float, alpha: float, theta: float,
                     energy_total: float,
                     constants: PhysicalConstants = CONSTANTS
                     ) -> PotentialModel:
    """Noncommutative Yukawa potential in screened-Kratzer form.

    V1 = exp(alpha s) V0 and V2 = V1 * s with s = Theta E / (2 hbar c).
    """
    s = shift_length(theta, energy_total, constants)
    try:
        V1 = math.exp(alpha * s) * V0
    except OverflowError:
        raise OverflowError(
            f"deformation factor exp(alpha s) with alpha s = {alpha * s:.6g} "
            "exceeds the double range; the model strengths are not "
            "representable"
        ) from None
    V2 = V1 * s
    if not (math.isfinite(V1) and math.isfinite(V2)):
        raise OverflowError(
            f"model strengths overflow the double range (V1 = {V1:.6g}, "
            f"V2 = {V2:.6g}) at Theta = {theta:.6g} A^2, E = "
            f"{energy_total:.6g} eV"
        )
    return PotentialModel(PotentialKind.SCREENED_KRATZER, V0, alpha, theta,
                          energy_total, V1, V2)


def build_nc_yukawa(Z: int, alpha: float, theta: float, energy_total: float,
                    electron_target_sign: bool = False,
                    constants: PhysicalConstants = CONSTANTS
                    ) -> PotentialModel:
    """Noncommutative Yukawa model for a nucleus of charge Z.

    Parameters
    ----------
    Z : int
        Nuclear charge number, >= 1.
    alpha : float
        Screening parameter in 1/A, >= 0.
    theta : float
        Noncommutativity parameter Theta in A^2, >= 0.
    energy_total : float
        Total electron energy E in eV entering the shift length.
    electron_target_sign : bool
        False (default): electron-nucleus interaction, V0 = -Z k_C e^2.
        True: electron-electron (atomic-shell) interaction, V0 = +Z k_C e^2.

    Raises
    ------
    InvalidZ
        If Z < 1 or not integral.
    NegativeTheta
        If theta < 0.
    """
    if not float(Z).is_integer() or int(Z) < 1:
        raise InvalidZ(f"Z must be an integer >= 1, got {Z}")
    if theta < 0.0:
        raise NegativeTheta(f"Theta must be >= 0, got {theta} A^2")
    if alpha < 0.0:
        raise ValueError(f"alpha must be >= 0, got {alpha} 1/A")
    V0 = int(Z) * constants.coulomb_coupling
    if not electron_target_sign:
        V0 = -V0
    return screened_kratzer(V0, alpha, theta, energy_total, constants)


# =============================================================================
# Evaluation and limiting reductions
# =============================================================================

def evaluate(model: PotentialModel, r: Union[float, np.ndarray]
             ) -> Union[float, np.ndarray]:
    """Potential value V(r) in eV at radius r in A (scalar or array).

    Raises
    ------
    NonpositiveRadius
        If any radius is below the guard MIN_RADIUS.
    """
    r_arr = np.asarray(r, dtype=np.float64)
    if np.any(r_arr < MIN_RADIUS):
        raise NonpositiveRadius(
            f"radius must be >= {MIN_RADIUS} A, got minimum {r_arr.min()}"
        )
    values = _kernels.potential_batch(np.atleast_1d(r_arr), model.V1,
                                      model.V2, model.alpha)
    if np.isscalar(r) or r_arr.ndim == 0:
        return float(values[0])
    return values


def reduce(model: PotentialModel,
           limit: str) -> PotentialModel:
    """Limiting reduction of a model.

    Parameters
    ----------
    limit : {"theta_to_zero", "alpha_to_zero"}
        theta_to_zero: screened Kratzer -> Yukawa, Kratzer -> Coulomb.
        alpha_to_zero: screened Kratzer -> Kratzer, Yukawa -> Coulomb.

    Raises
    ------
    UnsupportedReduction
        For (kind, limit) pairs outside the mappings above.
    """
    kind = model.kind
    if limit == "theta_to_zero":
        if kind is PotentialKind.SCREENED_KRATZER:
            return yukawa(model.V0, model.alpha)
        if kind is PotentialKind.KRATZER:
            return coulomb(model.V0)
        if kind is PotentialKind.YUKAWA:
            return model  # Theta is already zero
    elif limit == "alpha_to_zero":
        if kind is PotentialKind.SCREENED_KRATZER:
            return kratzer(model.V0, model.theta, model.energy_total)
        if kind is PotentialKind.YUKAWA:
            return coulomb(model.V0)
    else:
        raise ValueError(
            f"limit must be 'theta_to_zero' or 'alpha_to_zero', got {limit!r}"
        )
    raise UnsupportedReduction(
        f"no {limit} reduction defined for kind {kind.value}"
    )


# =============================================================================
# Noncommutativity matrix
# =============================================================================

@dataclass(frozen=True)
class NCMatrix:
    """Antisymmetric coordinate-commutator matrix with one free parameter.

    Only the (0,1)/(1,0) entries are nonzero: Theta^{01} = -Theta^{10} =
    theta; all space-space entries vanish.
    """

    theta: float

    def __post_init__(self) -> None:
        if self.theta < 0.0:
            raise NegativeTheta(
                f"Theta must be >= 0, got {self.theta} A^2"
            )

    @property
    def matrix(self) -> np.ndarray:
        m = np.zeros((4, 4))
        m[0, 1] = self.theta
        m[1, 0] = -self.theta
        return m


# =============================================================================
# Molecule presets
# =============================================================================

@dataclass(frozen=True)
class Preset:
    """A molecular target: nuclear charge and screening parameter."""

    name: str
    Z: int
    alpha_inv_angstrom: float


BUILTIN_PRESETS: dict[str, Preset] = {
    "H2": Preset("H2", 2, 1.9426),
    "ScH": Preset("ScH", 22, 1.41113),
}

_PRESET_FIELDS = ("name", "Z", "alpha_inv_angstrom")


def load_presets(path: Union[str, Path]) -> dict[str, Preset]:
    """Parse a molecule preset file into name -> Preset.

    Format: blocks of key=value lines (fields: name, Z, alpha_inv_angstrom)
    separated by blank lines; '#' starts a comment.

    Raises
    ------
    ValueError
        On malformed lines or incomplete records, with line diagnostics.
    """
    presets: dict[str, Preset] = {}
    record: dict[str, str] = {}
    record_start = 0

    def flush(line_no: int) -> None:
        if not record:
            return
        missing = [f for f in _PRESET_FIELDS if f not in record]
        if missing:
            raise ValueError(
                f"{path}: record starting at line {record_start} is missing "
                f"field(s) {', '.join(missing)}"
            )
        def convert(field: str, cast):
            try:
                return cast(record[field])
            except ValueError:
                raise ValueError(
                    f"{path}: record starting at line {record_start}: "
                    f"field {field!r} has invalid value {record[field]!r}"
                ) from None

        z = convert("Z", int)
        alpha = convert("alpha_inv_angstrom", float)
        name = record["name"]
        presets[name] = Preset(name, z, alpha)
        record.clear()

    with open(path, encoding="utf-8") as fh:
        line_no = 0
        for line_no, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                flush(line_no)
                continue
            if "=" not in line:
                raise ValueError(
                    f"{path}: line {line_no}: expected key=value, got {raw.strip()!r}"
                )
            key, _, value = line.partition("=")
            key, value = key.strip(), value.strip()
            if key not in _PRESET_FIELDS:
                raise ValueError(
                    f"{path}: line {line_no}: unknown field {key!r} "
                    f"(expected one of {', '.join(_PRESET_FIELDS)})"
                )
            if not record:
                record_start = line_no
            record[key] = value
        flush(line_no + 1)
    return presets


def get_preset(name: str,
               extra: dict[str, Preset] | None = None) -> Preset:
    """Look up a preset by exact name in extras first, then the builtins.

    Raises
    ------
    ValueError
        If unknown; the message lists every available preset name.
    """
    pools: dict[str, Preset] = dict(BUILTIN_PRESETS)
    if extra:
        pools.update(extra)
    if name in pools:
        return pools[name]
    raise ValueError(
        f"unknown preset {name!r}; available: {', '.join(sorted(pools))}"
    )
