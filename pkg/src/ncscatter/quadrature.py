"""Vectorized adaptive Gauss-Kronrod quadrature.

The integrand contract is array-in/array-out: ``f(x)`` receives a float64
array of abscissae and returns the integrand values. Each refinement round
evaluates every pending panel in a single call, so the per-call overhead is
amortized and the compiled kernels in :mod:`ncscatter._kernels` get large
batches to chew on.

The rule is the classic 7-15 Gauss-Kronrod pair: the 15-point Kronrod value
is the panel estimate and |K15 - G7| the (conservative) panel error. The
refinement is globally adaptive: every round, panels holding more than a
fair share of the global error budget are bisected, so the effort lands on
the region that actually limits the accuracy. This matters for integrands
whose structure occupies a tiny fraction of the interval (the q-space
cross-section integrand peaks below q ~ alpha inside [0, 2k] with
2k ~ 1e8 at the highest energies).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import QuadratureNonConvergence

# =============================================================================
# 7-15 Gauss-Kronrod rule (abscissae/weights on [-1, 1])
# =============================================================================

#: Kronrod-15 abscissae; every second entry (odd indices) is a Gauss-7 node.
_XK = np.array([
    -0.9914553711208126392068547, -0.9491079123427585245261897,
    -0.8648644233597690727897128, -0.7415311855993944398638648,
    -0.5860872354676911302941448, -0.4058451513773971669066064,
    -0.2077849550078984676006894, 0.0,
    0.2077849550078984676006894, 0.4058451513773971669066064,
    0.5860872354676911302941448, 0.7415311855993944398638648,
    0.8648644233597690727897128, 0.9491079123427585245261897,
    0.9914553711208126392068547,
])

_WK = np.array([
    0.0229353220105292249637320, 0.0630920926299785532907007,
    0.1047900103222501838398763, 0.1406532597155259187451896,
    0.1690047266392679028265834, 0.1903505780647854099132564,
    0.2044329400752988924141620, 0.2094821410847278280129992,
    0.2044329400752988924141620, 0.1903505780647854099132564,
    0.1690047266392679028265834, 0.1406532597155259187451896,
    0.1047900103222501838398763, 0.0630920926299785532907007,
    0.0229353220105292249637320,
])

#: Gauss-7 weights aligned with the Kronrod grid (zeros at pure-Kronrod nodes).
_WG = np.zeros(15)
_WG[1::2] = [0.1294849661688696932706114, 0.2797053914892766679014678,
             0.3818300505051189449503698, 0.4179591836734693877551020,
             0.3818300505051189449503698, 0.2797053914892766679014678,
             0.1294849661688696932706114]


@dataclass(frozen=True)
class QuadratureResult:
    """Outcome of an adaptive integration."""

    value: float
    abs_error: float
    n_evaluations: int
    n_panels: int


def adaptive_gauss_kronrod(
    f: Callable[[np.ndarray], np.ndarray],
    a: float,
    b: float,
    *,
    rel_tol: float = 1e-10,
    abs_tol: float = 1e-13,
    breakpoints: Sequence[float] | None = None,
    max_panels: int = 4096,
) -> QuadratureResult:
    """Integrate a vectorized integrand over [a, b] adaptively.

    Parameters
    ----------
    f : callable
        Vectorized integrand: float64 array in, same-shape array out.
    a, b : float
        Integration limits, a < b.
    rel_tol, abs_tol : float
        The run stops when the summed panel error is below
        max(abs_tol, rel_tol * |integral|).
    breakpoints : sequence of float, optional
        Interior points at which the initial panels are split (useful to
        seed known scales, e.g. logarithmically spaced decades).
    max_panels : int
        Refinement cap; exceeding it raises QuadratureNonConvergence.

    Raises
    ------
    QuadratureNonConvergence
        If the tolerance is not met within `max_panels` panels, or the
        integrand returns non-finite values.
    """
    if not b > a:
        raise ValueError(f"require b > a, got [{a}, {b}]")

    edges = [a, b]
    if breakpoints is not None:
        edges.extend(p for p in breakpoints if a < p < b)
    edges = sorted(set(edges))
    lo = np.array(edges[:-1])
    hi = np.array(edges[1:])
    if lo.size > max_panels:
        raise QuadratureNonConvergence(
            f"exceeded {max_panels} panels on [{a}, {b}]"
        )

    n_eval = 0

    def rule(lo_arr: np.ndarray, hi_arr: np.ndarray):
        nonlocal n_eval
        half = 0.5 * (hi_arr - lo_arr)
        mid = 0.5 * (hi_arr + lo_arr)
        nodes = mid[:, None] + half[:, None] * _XK[None, :]
        y = f(nodes.reshape(-1)).reshape(nodes.shape)
        n_eval += nodes.size
        if not np.all(np.isfinite(y)):
            raise QuadratureNonConvergence(
                "integrand returned non-finite values"
            )
        k15 = half * (y @ _WK)
        g7 = half * (y @ _WG)
        return k15, np.abs(k15 - g7)

    val, err = rule(lo, hi)
    while True:
        total = float(np.sum(val))
        total_err = float(np.sum(err))
        budget = max(abs_tol, rel_tol * abs(total))
        if total_err <= budget:
            break
        # bisect every panel exceeding its fair share of the budget (at
        # minimum the worst one, so each round makes progress)
        split = err > budget / lo.size
        if not np.any(split):
            split = err >= err.max()
        if lo.size + int(np.count_nonzero(split)) > max_panels:
            raise QuadratureNonConvergence(
                f"exceeded {max_panels} panels on [{a}, {b}]"
            )
        lo_s, hi_s = lo[split], hi[split]
        mids = 0.5 * (lo_s + hi_s)
        new_lo = np.concatenate([lo_s, mids])
        new_hi = np.concatenate([mids, hi_s])
        new_val, new_err = rule(new_lo, new_hi)
        lo = np.concatenate([lo[~split], new_lo])
        hi = np.concatenate([hi[~split], new_hi])
        val = np.concatenate([val[~split], new_val])
        err = np.concatenate([err[~split], new_err])

    return QuadratureResult(value=total, abs_error=total_err,
                            n_evaluations=n_eval, n_panels=int(lo.size))


def log_decade_breakpoints(lo: float, hi: float) -> list[float]:
    """Interior decade marks 10^n strictly between lo and hi.

    Seeds panels for integrands whose support spans many orders of
    magnitude (e.g. the q-space cross-section integrand up to 2k at GeV
    energies).
    """
    if not 0.0 < lo < hi:
        raise ValueError(f"require 0 < lo < hi, got [{lo}, {hi}]")
    start = int(np.ceil(np.log10(lo)))
    stop = int(np.floor(np.log10(hi)))
    return [10.0**n for n in range(start, stop + 1) if lo < 10.0**n < hi]
