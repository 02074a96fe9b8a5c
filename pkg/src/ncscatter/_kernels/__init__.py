"""Numerical kernel dispatch: compiled extension with NumPy fallback.

At import time this package selects the compiled Cython module `_core` when
it is available, else the pure-NumPy `_fallback`. Setting the environment
variable ``NCSCATTER_PURE=1`` forces the fallback (useful for benchmarking
and debugging). The active choice is exposed as :data:`BACKEND`.

All public wrappers accept arbitrary array-likes, coerce to contiguous
float64, allocate outputs, and return NumPy arrays; scalar-result kernels
return floats.
"""

from __future__ import annotations

import os

import numpy as np

if os.environ.get("NCSCATTER_PURE"):
    from . import _fallback as _impl

    BACKEND = "fallback"
else:
    try:
        from . import _core as _impl  # type: ignore[attr-defined]

        BACKEND = "compiled"
    except ImportError:
        from . import _fallback as _impl

        BACKEND = "fallback"

#: Relative q/alpha threshold for the arctan(q/alpha)/q Taylor branch.
SMALL_X = _impl.SMALL_X


def _c(x) -> np.ndarray:
    return np.ascontiguousarray(x, dtype=np.float64)


def potential_batch(r, V1: float, V2: float, alpha: float) -> np.ndarray:
    """(V1/r + V2/r^2) exp(-alpha r) elementwise over r."""
    r = _c(r)
    out = np.empty_like(r)
    _impl.potential_batch(r, float(V1), float(V2), float(alpha), out)
    return out


def born_integrand(r, q: float, V1: float, V2: float,
                   alpha: float) -> np.ndarray:
    """(V1 + V2/r) exp(-alpha r) sin(q r) elementwise over r."""
    r = _c(r)
    out = np.empty_like(r)
    _impl.born_integrand(r, float(q), float(V1), float(V2), float(alpha), out)
    return out


def amp_closed_batch(q, V1: float, V2: float, alpha: float,
                     bp: float) -> np.ndarray:
    """Closed-form Born amplitude -bp*(V1/(q^2+a^2) + V2*arctan(q/a)/q) over q."""
    q = _c(q)
    out = np.empty_like(q)
    _impl.amp_closed_batch(q, float(V1), float(V2), float(alpha), float(bp),
                           out)
    return out


def tcs_q_integrand(q, V1: float, V2: float, alpha: float,
                    bp: float) -> np.ndarray:
    """f(q)^2 * q over q: the q-space total-cross-section integrand."""
    q = _c(q)
    out = np.empty_like(q)
    _impl.tcs_q_integrand(q, float(V1), float(V2), float(alpha), float(bp),
                          out)
    return out


def halfperiod_terms(q: float, V1: float, V2: float, alpha: float,
                     n0: int, n1: int, nodes, weights) -> np.ndarray:
    """Gauss-Legendre half-period integrals of the Born integrand, one per n."""
    out = np.empty(n1 - n0)
    _impl.halfperiod_terms(float(q), float(V1), float(V2), float(alpha),
                           int(n0), int(n1), _c(nodes), _c(weights), out)
    return out


def halfperiod_sum(q: float, V1: float, V2: float, alpha: float,
                   n0: int, n1: int, nodes, weights) -> tuple[float, float]:
    """(sum, sum|.|) of half-period integrals of the Born integrand."""
    total, abs_total = _impl.halfperiod_sum(
        float(q), float(V1), float(V2), float(alpha), int(n0), int(n1),
        _c(nodes), _c(weights))
    return float(total), float(abs_total)
