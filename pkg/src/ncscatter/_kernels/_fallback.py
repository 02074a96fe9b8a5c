"""Pure-NumPy implementations of the hot numerical kernels.

Selected automatically when the compiled extension is unavailable (or when
NCSCATTER_PURE=1). Signatures mirror `_core` exactly: arrays are contiguous
float64, outputs are written into preallocated buffers, scalars are Python
floats. Input validation happens in the dispatch wrappers, not here.
"""

from __future__ import annotations

import numpy as np

#: Relative q/alpha threshold below which arctan(q/alpha)/q switches to its
#: even Taylor series (1 - x^2/3 + x^4/5)/alpha to avoid 0/0.
SMALL_X = 1e-8


def potential_batch(r: np.ndarray, V1: float, V2: float, alpha: float,
                    out: np.ndarray) -> None:
    """out[i] = (V1/r + V2/r^2) * exp(-alpha r)."""
    np.multiply((V1 / r + V2 / r**2), np.exp(-alpha * r), out=out)


def born_integrand(r: np.ndarray, q: float, V1: float, V2: float,
                   alpha: float, out: np.ndarray) -> None:
    """out[i] = (V1 + V2/r) * exp(-alpha r) * sin(q r)."""
    np.multiply((V1 + V2 / r) * np.exp(-alpha * r), np.sin(q * r), out=out)


def _arctan_over_q(q: np.ndarray, alpha: float) -> np.ndarray:
    """arctan(q/alpha)/q with the removable q->0 singularity handled.

    For alpha == 0 the arctan saturates at pi/2 (valid for q > 0, which the
    callers guarantee).
    """
    if alpha == 0.0:
        return (0.5 * np.pi) / q
    x = q / alpha
    small = x < SMALL_X
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.arctan(x) / q
    if np.any(small):
        xs = x[small]
        ratio[small] = (1.0 - xs**2 / 3.0 + xs**4 / 5.0) / alpha
    return ratio


def amp_closed_batch(q: np.ndarray, V1: float, V2: float, alpha: float,
                     bp: float, out: np.ndarray) -> None:
    """Closed-form Born amplitude f(q) = -bp*(V1/(q^2+a^2) + V2*arctan(q/a)/q)."""
    np.multiply(-bp, V1 / (q**2 + alpha**2) + V2 * _arctan_over_q(q, alpha),
                out=out)


def tcs_q_integrand(q: np.ndarray, V1: float, V2: float, alpha: float,
                    bp: float, out: np.ndarray) -> None:
    """out[i] = f(q)^2 * q, the q-space total-cross-section integrand."""
    f = np.empty_like(q)
    amp_closed_batch(q, V1, V2, alpha, bp, f)
    np.multiply(f * f, q, out=out)


def halfperiod_terms(q: float, V1: float, V2: float, alpha: float,
                     n0: int, n1: int, nodes: np.ndarray, weights: np.ndarray,
                     out: np.ndarray) -> None:
    """Gauss-Legendre integrals of the Born integrand over sin half-periods.

    out[j] = integral over [n pi/q, (n+1) pi/q] for n = n0+j, j < n1-n0.
    """
    n = np.arange(n0, n1, dtype=np.float64)
    half = 0.5 * np.pi / q
    mid = (n + 0.5) * np.pi / q
    r = mid[:, None] + half * nodes[None, :]
    vals = (V1 + V2 / r) * np.exp(-alpha * r) * np.sin(q * r)
    np.dot(vals, weights * half, out=out)


def halfperiod_sum(q: float, V1: float, V2: float, alpha: float,
                   n0: int, n1: int, nodes: np.ndarray,
                   weights: np.ndarray) -> tuple[float, float]:
    """(sum, sum of |.|) of half-period integrals for n in [n0, n1).

    Evaluates in bounded-size blocks so the direct-summation regime never
    allocates more than a few MB.
    """
    total = 0.0
    abs_total = 0.0
    block = 4096
    buf = np.empty(block)
    for start in range(n0, n1, block):
        stop = min(start + block, n1)
        view = buf[: stop - start]
        halfperiod_terms(q, V1, V2, alpha, start, stop, nodes, weights, view)
        total += float(np.sum(view))
        abs_total += float(np.sum(np.abs(view)))
    return total, abs_total
