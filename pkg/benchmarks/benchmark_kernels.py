#!/usr/bin/env python3
"""Compare the compiled kernel extension against the pure-Python fallback.

Runs the hot kernels (potential evaluation, Born integrand, closed-form
amplitude, total-cross-section integrand, oscillatory half-period summation)
plus two end-to-end workloads (amplitude quadrature, total cross section)
under both backends and reports timings side by side.

Usage:
    python3 benchmarks/benchmark_kernels.py [--repeats N]

The fallback is forced in a subprocess via NCSCATTER_PURE=1 so both variants
run in the same interpreter version with identical inputs.
"""

from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys
import time
from pathlib import Path

import numpy as np


def run_suite(repeats: int) -> dict[str, float]:
    import ncscatter
    from ncscatter import _kernels
    from ncscatter.amplitude import born_amplitude_quadrature
    from ncscatter.cross_section import total_cs_quadrature
    from ncscatter.kinematics import Kinematics
    from ncscatter.potentials import build_nc_yukawa
    from ncscatter.units import theta_angstrom2

    kin = Kinematics.from_energy(1e3, "relativistic")
    model = build_nc_yukawa(1, 1.0, theta_angstrom2(1e-12), kin.total_energy)
    V1, V2, alpha = model.V1, model.V2, model.alpha

    r = np.geomspace(1e-3, 40.0, 20000)
    q_grid = np.geomspace(1e-3, 2.0 * kin.k, 20000)
    big_q = 2.0 * Kinematics.from_energy(1e9, "relativistic").k
    gl_nodes, gl_weights = np.polynomial.legendre.leggauss(16)

    def timeit(fn) -> float:
        best = float("inf")
        for _ in range(repeats):
            t0 = time.perf_counter()
            fn()
            best = min(best, time.perf_counter() - t0)
        return best

    timings = {
        "backend": _kernels.BACKEND,
        "potential_batch_20k": timeit(
            lambda: _kernels.potential_batch(r, V1, V2, alpha)),
        "born_integrand_20k": timeit(
            lambda: _kernels.born_integrand(r, V1, V2, alpha, 0.7)),
        "amp_closed_batch_20k": timeit(
            lambda: _kernels.amp_closed_batch(q_grid, V1, V2, alpha, 1.0)),
        "tcs_q_integrand_20k": timeit(
            lambda: _kernels.tcs_q_integrand(q_grid, V1, V2, alpha, 1.0)),
        "halfperiod_sum_200k": timeit(
            lambda: _kernels.halfperiod_sum(big_q, V1, V2, alpha, 0, 200000,
                                            gl_nodes, gl_weights)),
        "amplitude_quadrature_1keV": timeit(
            lambda: born_amplitude_quadrature(model, 0.7)),
        "total_cs_quadrature_1keV": timeit(
            lambda: total_cs_quadrature(kin, model)),
    }
    return timings


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeats", type=int, default=5,
                        help="take the best of N repeats (default 5)")
    parser.add_argument("--emit-json", action="store_true",
                        help=argparse.SUPPRESS)
    args = parser.parse_args()

    if args.emit_json:
        print(json.dumps(run_suite(args.repeats)))
        return 0

    here = Path(__file__).resolve().parent
    results = {}
    for label, env_extra in (("compiled", {}), ("fallback",
                                                {"NCSCATTER_PURE": "1"})):
        env = dict(os.environ, **env_extra)
        out = subprocess.run(
            [sys.executable, str(here / "benchmark_kernels.py"),
             "--emit-json", "--repeats", str(args.repeats)],
            env=env, capture_output=True, text=True, check=True)
        results[label] = json.loads(out.stdout)

    if results["compiled"]["backend"] != "compiled":
        print("note: compiled extension unavailable; both columns use the "
              "pure-Python fallback", file=sys.stderr)

    keys = [k for k in results["compiled"] if k != "backend"]
    width = max(len(k) for k in keys)
    print(f"{'kernel':<{width}}  {'compiled (s)':>14}  {'fallback (s)':>14}  "
          f"{'speedup':>8}")
    print("-" * (width + 42))
    for key in keys:
        tc = results["compiled"][key]
        tf = results["fallback"][key]
        print(f"{key:<{width}}  {tc:>14.6g}  {tf:>14.6g}  {tf / tc:>8.2f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
