"""Unit system, physical constants, and dimensional bookkeeping.

Internal representation used by every other module: energies in eV, lengths
in Angstrom (A), inverse lengths in 1/A, areas (including the
noncommutativity parameter Theta) in A^2. Cross sections are reported in A^2
with converters to barn and m^2. User-facing input/output expresses Theta as
sqrt(Theta) in meters.

The module also provides a small dimension algebra over (energy, length)
exponents plus a catalogue of the dimensional compositions of every formula
exposed by the package, so tests can verify dimensional consistency
mechanically.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import IncompatibleUnits, NegativeTheta

# =============================================================================
# Physical constants
# =============================================================================

#: CODATA-2018 reference values pinning the unit system.
_HBARC_REF = 1973.269804  # eV*A
_ELECTRON_REST_ENERGY_REF = 510998.95  # eV
_COULOMB_COUPLING_REF = 14.399645  # eV*A  (k_C e^2 = hbar*c * alpha_fs)

_PIN_TOLERANCE = 1e-4  # 0.01 % window around the reference values


@dataclass(frozen=True)
class PhysicalConstants:
    """The three constants fixing the internal (eV, Angstrom) unit system.

    Attributes
    ----------
    hbar_c : float
        Reduced Planck constant times light speed, eV*A.
    electron_rest_energy : float
        Electron rest energy m_e c^2, eV.
    coulomb_coupling : float
        Coulomb coupling k_C e^2, eV*A.
    """

    hbar_c: float = _HBARC_REF
    electron_rest_energy: float = _ELECTRON_REST_ENERGY_REF
    coulomb_coupling: float = _COULOMB_COUPLING_REF

    def __post_init__(self) -> None:
        pins = (
            ("hbar_c", self.hbar_c, _HBARC_REF),
            ("electron_rest_energy", self.electron_rest_energy,
             _ELECTRON_REST_ENERGY_REF),
            ("coulomb_coupling", self.coulomb_coupling, _COULOMB_COUPLING_REF),
        )
        for name, value, ref in pins:
            if not value > 0.0:
                raise ValueError(f"{name} must be strictly positive, got {value}")
            if abs(value - ref) > _PIN_TOLERANCE * ref:
                raise ValueError(
                    f"{name} = {value} deviates more than 0.01% from the "
                    f"pinned reference {ref}"
                )

    @property
    def born_prefactor(self) -> float:
        """2 m_e / hbar^2 realized in internal units: 2 m_e c^2/(hbar c)^2, 1/(eV*A^2)."""
        return 2.0 * self.electron_rest_energy / self.hbar_c**2


#: Default constants instance shared across the package.
CONSTANTS = PhysicalConstants()


# =============================================================================
# Dimension algebra
# =============================================================================

@dataclass(frozen=True)
class Dimension:
    """Physical dimension as integer exponents over (energy, length)."""

    energy: int = 0
    length: int = 0

    def __mul__(self, other: "Dimension") -> "Dimension":
        return Dimension(self.energy + other.energy, self.length + other.length)

    def __truediv__(self, other: "Dimension") -> "Dimension":
        return Dimension(self.energy - other.energy, self.length - other.length)

    def __pow__(self, n: int) -> "Dimension":
        return Dimension(self.energy * n, self.length * n)

    def sqrt(self) -> "Dimension":
        if self.energy % 2 or self.length % 2:
            raise ValueError(f"cannot take sqrt of odd-exponent dimension {self}")
        return Dimension(self.energy // 2, self.length // 2)


DIMENSIONLESS = Dimension(0, 0)
ENERGY = Dimension(1, 0)
LENGTH = Dimension(0, 1)
INV_LENGTH = Dimension(0, -1)
AREA = Dimension(0, 2)
ENERGY_LENGTH = ENERGY * LENGTH          # V0, V1, hbar*c, k_C e^2
ENERGY_AREA = ENERGY * AREA              # V2

#: Dimensional composition of every formula the package exposes. Each entry
#: maps a formula name to (derived dimension, expected dimension); the test
#: suite asserts the two sides agree for all rows.
FORMULA_DIMENSIONS: dict[str, tuple[Dimension, Dimension]] = {
    # Theta*E/(2 hbar c): the coordinate shift entering r_hat = r - shift
    "bopp_shift_term": (AREA * ENERGY / ENERGY_LENGTH, LENGTH),
    # alpha * Theta*E/(2 hbar c): argument of the strength prefactor exponential
    "strength_exponent": (INV_LENGTH * AREA * ENERGY / ENERGY_LENGTH,
                          DIMENSIONLESS),
    # V1 = exp(...) * V0
    "v1_strength": (ENERGY_LENGTH, ENERGY_LENGTH),
    # V2 = V1 * Theta*E/(2 hbar c)
    "v2_strength": (ENERGY_LENGTH * AREA * ENERGY / ENERGY_LENGTH, ENERGY_AREA),
    # (V1/r + V2/r^2) e^{-alpha r}: evaluated potential
    "potential_v1_over_r": (ENERGY_LENGTH / LENGTH, ENERGY),
    "potential_v2_over_r2": (ENERGY_AREA / AREA, ENERGY),
    # hbar c k = sqrt(T(T + 2 m_e c^2)) => k = sqrt(E^2)/(E*L)
    "wave_number": ((ENERGY * ENERGY).sqrt() / ENERGY_LENGTH, INV_LENGTH),
    # q = 2 k sin(theta/2)
    "momentum_transfer": (INV_LENGTH, INV_LENGTH),
    # 2 m_e c^2/(hbar c)^2: Born prefactor realizing 2m/hbar^2
    "born_prefactor": (ENERGY / ENERGY_LENGTH**2, ENERGY * AREA**-1 / ENERGY**2),
    # f_1 = born_prefactor * V1 / (q^2 + alpha^2)
    "amplitude_v1_term": (ENERGY / ENERGY_LENGTH**2 * ENERGY_LENGTH
                          / INV_LENGTH**2, LENGTH),
    # f_2 = born_prefactor * V2 * arctan(q/alpha) / q
    "amplitude_v2_term": (ENERGY / ENERGY_LENGTH**2 * ENERGY_AREA / INV_LENGTH,
                          LENGTH),
    # dsigma/dOmega = f^2
    "differential_cross_section": (LENGTH**2, AREA),
    # sigma = (2 pi / k^2) integral f(q)^2 q dq
    "total_cross_section": (INV_LENGTH**-2 * LENGTH**2 * INV_LENGTH
                            * INV_LENGTH, AREA),
    # x = 2k/alpha: series expansion variable
    "series_variable": (INV_LENGTH / INV_LENGTH, DIMENSIONLESS),
    # |sigma(Theta) - sigma(0)| / sigma(0): detectability deviation
    "cs_deviation": (AREA / AREA, DIMENSIONLESS),
}


# =============================================================================
# Units and quantities
# =============================================================================

class Unit(enum.Enum):
    """Supported unit tags with their dimension and factor to internal units."""

    EV = ("eV", ENERGY, 1.0)
    KEV = ("keV", ENERGY, 1e3)
    MEV = ("MeV", ENERGY, 1e6)
    GEV = ("GeV", ENERGY, 1e9)
    ANGSTROM = ("A", LENGTH, 1.0)
    METER = ("m", LENGTH, 1e10)
    INV_ANGSTROM = ("1/A", INV_LENGTH, 1.0)
    ANGSTROM_SQ = ("A^2", AREA, 1.0)
    METER_SQ = ("m^2", AREA, 1e20)
    BARN = ("barn", AREA, 1e-8)

    def __init__(self, label: str, dimension: Dimension, to_internal: float):
        self.label = label
        self.dimension = dimension
        self.to_internal = to_internal


@dataclass(frozen=True)
class Quantity:
    """A value tagged with a unit."""

    value: float
    unit: Unit

    def in_internal(self) -> float:
        """The value expressed in internal units (eV / A / 1/A / A^2)."""
        return self.value * self.unit.to_internal


def convert(x: Quantity, target: Unit) -> Quantity:
    """Convert a quantity to another unit of the same dimension.

    Raises
    ------
    IncompatibleUnits
        If `x.unit` and `target` have different physical dimensions.
    """
    if x.unit.dimension != target.dimension:
        raise IncompatibleUnits(
            f"cannot convert {x.unit.label} ({x.unit.dimension}) "
            f"to {target.label} ({target.dimension})"
        )
    return Quantity(x.value * x.unit.to_internal / target.to_internal, target)


def sqrt_theta_m(theta: float) -> float:
    """sqrt(Theta) in meters for a noncommutativity parameter Theta in A^2.

    Raises
    ------
    NegativeTheta
        If theta < 0.
    """
    if theta < 0.0:
        raise NegativeTheta(f"Theta must be >= 0, got {theta} A^2")
    return math.sqrt(theta) * 1e-10


def theta_angstrom2(sqrt_theta_meters: float) -> float:
    """Theta in A^2 from the user-facing sqrt(Theta) in meters.

    Raises
    ------
    NegativeTheta
        If sqrt_theta_meters < 0.
    """
    if sqrt_theta_meters < 0.0:
        raise NegativeTheta(
            f"sqrt(Theta) must be >= 0, got {sqrt_theta_meters} m"
        )
    return (sqrt_theta_meters * 1e10) ** 2
