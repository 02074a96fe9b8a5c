# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled implementations of the hot numerical kernels.

Mirrors `_fallback` exactly; see that module for contracts. Tight C loops
replace the NumPy broadcasting, which matters most for the adaptive
quadrature and the half-period summation paths where the integrand is
evaluated millions of times.
"""

from libc.math cimport atan, exp, fabs, sin, M_PI

import numpy as np

#: Relative q/alpha threshold for the arctan(q/alpha)/q Taylor branch.
SMALL_X = 1e-8
cdef double _SMALL_X = SMALL_X


def potential_batch(double[::1] r, double V1, double V2, double alpha,
                    double[::1] out):
    """out[i] = (V1/r + V2/r^2) * exp(-alpha r)."""
    cdef Py_ssize_t i, n = r.shape[0]
    cdef double ri
    for i in range(n):
        ri = r[i]
        out[i] = (V1 / ri + V2 / (ri * ri)) * exp(-alpha * ri)


def born_integrand(double[::1] r, double q, double V1, double V2,
                   double alpha, double[::1] out):
    """out[i] = (V1 + V2/r) * exp(-alpha r) * sin(q r)."""
    cdef Py_ssize_t i, n = r.shape[0]
    cdef double ri
    for i in range(n):
        ri = r[i]
        out[i] = (V1 + V2 / ri) * exp(-alpha * ri) * sin(q * ri)


cdef inline double _arctan_over_q(double q, double alpha) nogil:
    """arctan(q/alpha)/q with the removable q->0 singularity handled."""
    cdef double x, x2
    if alpha == 0.0:
        return (0.5 * M_PI) / q
    x = q / alpha
    if x < _SMALL_X:
        x2 = x * x
        return (1.0 - x2 / 3.0 + x2 * x2 / 5.0) / alpha
    return atan(x) / q


def amp_closed_batch(double[::1] q, double V1, double V2, double alpha,
                     double bp, double[::1] out):
    """Closed-form Born amplitude f(q) = -bp*(V1/(q^2+a^2) + V2*arctan(q/a)/q)."""
    cdef Py_ssize_t i, n = q.shape[0]
    cdef double qi, a2 = alpha * alpha
    for i in range(n):
        qi = q[i]
        out[i] = -bp * (V1 / (qi * qi + a2) + V2 * _arctan_over_q(qi, alpha))


def tcs_q_integrand(double[::1] q, double V1, double V2, double alpha,
                    double bp, double[::1] out):
    """out[i] = f(q)^2 * q, the q-space total-cross-section integrand."""
    cdef Py_ssize_t i, n = q.shape[0]
    cdef double qi, f, a2 = alpha * alpha
    for i in range(n):
        qi = q[i]
        f = -bp * (V1 / (qi * qi + a2) + V2 * _arctan_over_q(qi, alpha))
        out[i] = f * f * qi


cdef inline double _halfperiod_one(double q, double V1, double V2,
                                   double alpha, double n,
                                   double[::1] nodes, double[::1] weights,
                                   Py_ssize_t m) nogil:
    """Gauss-Legendre integral of the Born integrand over one half-period."""
    cdef double half = 0.5 * M_PI / q
    cdef double mid = (n + 0.5) * M_PI / q
    cdef double acc = 0.0, r
    cdef Py_ssize_t j
    for j in range(m):
        r = mid + half * nodes[j]
        acc += weights[j] * (V1 + V2 / r) * exp(-alpha * r) * sin(q * r)
    return acc * half


def halfperiod_terms(double q, double V1, double V2, double alpha,
                     Py_ssize_t n0, Py_ssize_t n1, double[::1] nodes,
                     double[::1] weights, double[::1] out):
    """Half-period integrals for n in [n0, n1), one per output element."""
    cdef Py_ssize_t j, m = nodes.shape[0]
    for j in range(n1 - n0):
        out[j] = _halfperiod_one(q, V1, V2, alpha, <double> (n0 + j),
                                 nodes, weights, m)


def halfperiod_sum(double q, double V1, double V2, double alpha,
                   Py_ssize_t n0, Py_ssize_t n1, double[::1] nodes,
                   double[::1] weights):
    """(sum, sum of |.|) of half-period integrals for n in [n0, n1).

    Kahan-compensated accumulation keeps the heavily cancelling alternating
    sum accurate to machine precision.
    """
    cdef Py_ssize_t j, m = nodes.shape[0]
    cdef double total = 0.0, comp = 0.0, abs_total = 0.0
    cdef double term, y, t
    for j in range(n0, n1):
        term = _halfperiod_one(q, V1, V2, alpha, <double> j, nodes, weights, m)
        y = term - comp
        t = total + y
        comp = (t - total) - y
        total = t
        abs_total += fabs(term)
    return total, abs_total
