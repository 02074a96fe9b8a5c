"""Exception hierarchy for the ncscatter package.

Every domain-specific failure raises a subclass of :class:`NCScatterError`,
so callers can catch the whole family with one except clause while tests and
the CLI can still discriminate individual conditions.
"""

from __future__ import annotations


class NCScatterError(Exception):
    """Base class for all errors raised by this package."""


class IncompatibleUnits(NCScatterError):
    """Unit conversion requested between different physical dimensions."""


class NegativeTheta(NCScatterError):
    """A noncommutativity parameter Theta < 0 was supplied."""


class NegativeEnergy(NCScatterError):
    """A kinetic energy T < 0 was supplied."""


class AngleOutOfRange(NCScatterError):
    """A scattering angle outside [0, pi] was supplied."""


class NonpositiveRadius(NCScatterError):
    """A radius r <= 0 (or below the minimum guard) was supplied."""


class InvalidZ(NCScatterError):
    """A nuclear charge number Z < 1 or non-integral was supplied."""


class UnsupportedReduction(NCScatterError):
    """The requested limiting reduction is not defined for this model."""


class UndefinedAmplitude(NCScatterError):
    """The Born amplitude is undefined for the supplied (q, alpha)."""


class QuadratureNonConvergence(NCScatterError):
    """Adaptive quadrature failed to reach the requested tolerance."""


class DivergentIntegral(NCScatterError):
    """The requested integral does not converge (e.g. alpha = 0)."""


class ZeroScreening(NCScatterError):
    """An operation requiring alpha > 0 received alpha = 0."""


class ZeroWaveNumber(NCScatterError):
    """An operation requiring k > 0 received k = 0."""


class DivergentCrossSection(NCScatterError):
    """The total cross section diverges for this potential (alpha = 0)."""


class NoBracket(NCScatterError):
    """The bound search never bracketed the detectability threshold."""
