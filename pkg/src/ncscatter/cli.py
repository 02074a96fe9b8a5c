"""Command-line front end.

Subcommands
-----------
potential   V(r) sweep over radius for one or more Theta values.
amplitude   Born amplitude f(theta) sweep over scattering angle.
dcs         Differential cross section sweep over scattering angle.
tcs         Total cross section sweep over energy or sqrt(Theta).
bound       Theta lower-bound table over one or more energies.
presets     List available molecule presets.

Output is CSV (default) or JSON, written to --out or standard output. Every
CSV starts with one '#' comment line recording the full input provenance
(parameters, constants, method tags); float formatting is fixed at 12
significant digits so identical invocations produce byte-identical files.
A key=value config file (--config) can hold any long flag; explicit flags
override it.
"""

from __future__ import annotations

import argparse
import json
import math
import re
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from . import __version__
from ._kernels import BACKEND
from .amplitude import born_amplitude_closed, born_amplitude_quadrature
from .bounds import (
    BoundCellFailure,
    BoundScanResult,
    DetectabilityCriterion,
    bound_table,
)
from .cross_section import (
    differential_cs,
    series_validity,
    total_cs_paper_series,
    total_cs_quadrature,
)
from .errors import DivergentCrossSection, NCScatterError
from .kinematics import Kinematics, momentum_transfer
from .potentials import (
    BUILTIN_PRESETS,
    Preset,
    build_nc_yukawa,
    evaluate,
    get_preset,
    load_presets,
)
from .units import CONSTANTS, theta_angstrom2

#: Calibration anchor used by --calibrate: (energy eV, sqrt(Theta) m).
CALIBRATION_ANCHOR = (1.0, 1e-11)

_MODES = {"rel": "relativistic", "nonrel": "nonrelativistic"}
_ENERGY_RE = re.compile(r"^\s*([-+0-9.eE]+?)\s*(eV|keV|MeV|GeV)?\s*$")
_ENERGY_SCALE = {"eV": 1.0, "keV": 1e3, "MeV": 1e6, "GeV": 1e9, None: 1.0}
_SWEEP_VARIABLES = ("r", "theta", "energy", "theta_nc")


def _fmt(x: object) -> str:
    """Deterministic cell formatting: 12 significant digits for floats."""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, float):
        return f"{x:.12g}"
    return str(x)


def parse_energy_ev(text: str) -> float:
    """Energy in eV from a number with optional eV/keV/MeV/GeV suffix."""
    m = _ENERGY_RE.match(text)
    if not m:
        raise ValueError(f"cannot parse energy {text!r} (expected e.g. 1keV)")
    try:
        value = float(m.group(1))
    except ValueError:
        raise ValueError(f"cannot parse energy {text!r}") from None
    return value * _ENERGY_SCALE[m.group(2)]


def parse_energy_list_ev(text: str) -> list[float]:
    return [parse_energy_ev(tok) for tok in text.split(",") if tok.strip()]


def parse_sqrt_theta_list(text: str) -> list[float]:
    try:
        return [float(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise ValueError(
            f"cannot parse --sqrt-theta-m value {text!r} "
            "(expected comma-separated numbers in meters)"
        ) from None


@dataclass(frozen=True)
class SweepSpec:
    """A parsed --sweep VAR:MIN:MAX:COUNT:{lin|log} request."""

    variable: str
    start: float
    stop: float
    count: int
    spacing: str
    fixed: dict = field(default_factory=dict)

    def values(self) -> np.ndarray:
        if self.spacing == "log":
            return np.geomspace(self.start, self.stop, self.count)
        return np.linspace(self.start, self.stop, self.count)

    def describe(self) -> str:
        return (f"{self.variable}:{_fmt(self.start)}:{_fmt(self.stop)}:"
                f"{self.count}:{self.spacing}")


def parse_sweep(text: str) -> SweepSpec:
    """Parse and validate VAR:MIN:MAX:COUNT:{lin|log}."""
    parts = text.split(":")
    if len(parts) != 5:
        raise ValueError(
            f"malformed --sweep {text!r}: expected VAR:MIN:MAX:COUNT:lin|log"
        )
    var, smin, smax, scount, spacing = parts
    if var not in _SWEEP_VARIABLES:
        raise ValueError(
            f"sweep variable must be one of {', '.join(_SWEEP_VARIABLES)}, "
            f"got {var!r}"
        )
    if var == "energy":
        lo, hi = parse_energy_ev(smin), parse_energy_ev(smax)
    else:
        lo, hi = float(smin), float(smax)
    count = int(scount)
    if spacing not in ("lin", "log"):
        raise ValueError(f"sweep spacing must be lin or log, got {spacing!r}")
    if count < 2:
        raise ValueError(f"sweep count must be >= 2, got {count}")
    if not lo < hi:
        raise ValueError(f"sweep range requires MIN < MAX, got {lo} >= {hi}")
    if spacing == "log" and lo <= 0.0:
        raise ValueError("log spacing requires MIN > 0")
    return SweepSpec(variable=var, start=lo, stop=hi, count=count,
                     spacing=spacing)


# =============================================================================
# Config file
# =============================================================================

def parse_config_file(path: str) -> dict[str, tuple[str, int]]:
    """key=value config; returns key -> (value, line number) for diagnostics."""
    entries: dict[str, tuple[str, int]] = {}
    try:
        lines = Path(path).read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise ValueError(f"cannot read config file {path}: {exc}") from None
    for line_no, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(
                f"{path}: line {line_no}: expected key=value, got {raw.strip()!r}"
            )
        key, _, value = line.partition("=")
        entries[key.strip()] = (value.strip(), line_no)
    return entries


_BOOL_FLAGS = ("calibrate", "positive-v0")


def config_to_argv(entries: dict[str, tuple[str, int]], path: str
                   ) -> list[str]:
    """Translate config entries into CLI tokens (flags later override)."""
    argv: list[str] = []
    for key, (value, line_no) in entries.items():
        flag = f"--{key}"
        if key in _BOOL_FLAGS:
            lowered = value.lower()
            if lowered in ("1", "true", "yes", "on"):
                argv.append(flag)
            elif lowered in ("0", "false", "no", "off"):
                pass
            else:
                raise ValueError(
                    f"{path}: line {line_no}: field {key!r} expects a "
                    f"boolean, got {value!r}"
                )
        else:
            argv.extend([flag, value])
    return argv


# =============================================================================
# Target resolution and provenance
# =============================================================================

@dataclass(frozen=True)
class Target:
    name: str
    Z: int
    alpha: float


def resolve_target(args: argparse.Namespace) -> Target:
    """Exactly one of --preset or (--Z, --alpha-inv-angstrom) must be given."""
    explicit = args.Z is not None or args.alpha_inv_angstrom is not None
    if args.preset and explicit:
        raise ValueError("give either --preset or --Z/--alpha-inv-angstrom, "
                         "not both")
    if args.preset:
        extra = load_presets(args.presets_file) if args.presets_file else None
        p = get_preset(args.preset, extra)
        return Target(p.name, p.Z, p.alpha_inv_angstrom)
    if args.Z is None or args.alpha_inv_angstrom is None:
        raise ValueError("a target is required: --preset NAME or "
                         "--Z N --alpha-inv-angstrom A")
    return Target(f"Z={args.Z}", args.Z, args.alpha_inv_angstrom)


def base_provenance(command: str, target: Target, args: argparse.Namespace
                    ) -> dict[str, str]:
    prov = {
        "command": command,
        "version": __version__,
        "kernel_backend": BACKEND,
        "target": target.name,
        "Z": str(target.Z),
        "alpha_inv_angstrom": _fmt(target.alpha),
        "mode": _MODES[args.mode],
        "hbar_c_eV_A": _fmt(CONSTANTS.hbar_c),
        "electron_rest_energy_eV": _fmt(CONSTANTS.electron_rest_energy),
        "coulomb_coupling_eV_A": _fmt(CONSTANTS.coulomb_coupling),
    }
    return prov


# =============================================================================
# Rendering
# =============================================================================

def render_csv(provenance: dict[str, str], columns: list[str],
               rows: list[list[object]]) -> str:
    comment = "# " + " ".join(f"{k}={provenance[k]}"
                              for k in sorted(provenance))
    lines = [comment, ",".join(columns)]
    lines.extend(",".join(_fmt(cell) for cell in row) for row in rows)
    return "\n".join(lines) + "\n"


def render_json(provenance: dict[str, str], columns: list[str],
                rows: list[list[object]]) -> str:
    payload = {
        "provenance": provenance,
        "columns": columns,
        "rows": [[_fmt(c) if isinstance(c, bool) else c for c in row]
                 for row in rows],
    }
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def emit(args: argparse.Namespace, provenance: dict[str, str],
         columns: list[str], rows: list[list[object]]) -> None:
    text = (render_json if args.format == "json" else render_csv)(
        provenance, columns, rows)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _theta_column_suffixes(sqrt_thetas: list[float]) -> list[str]:
    if len(sqrt_thetas) == 1:
        return [""]
    return [f"[sqrt_theta_m={_fmt(s)}]" for s in sqrt_thetas]


def _single_energy(args: argparse.Namespace, default: Optional[str] = None
                   ) -> float:
    text = args.energy if args.energy else default
    if text is None:
        raise ValueError("--energy is required for this command")
    values = parse_energy_list_ev(text)
    if len(values) != 1:
        raise ValueError("this command takes exactly one --energy value")
    return values[0]


# =============================================================================
# Subcommand implementations
# =============================================================================

def cmd_potential(args: argparse.Namespace) -> int:
    target = resolve_target(args)
    sweep = parse_sweep(args.sweep or "r:0.1:10:100:log")
    if sweep.variable != "r":
        raise ValueError("the potential command sweeps r; use --sweep r:...")
    sqrt_thetas = parse_sqrt_theta_list(args.sqrt_theta_m or "0")
    needs_energy = any(s > 0.0 for s in sqrt_thetas)
    if needs_energy and not args.energy:
        raise ValueError("--energy is required when sqrt(Theta) > 0 "
                         "(the shift term depends on the total energy)")
    energy_total = 0.0
    if args.energy:
        T = _single_energy(args)
        energy_total = Kinematics.from_energy(T, _MODES[args.mode]).total_energy

    r = sweep.values()
    columns = ["r_angstrom"]
    value_cols = []
    for s in sqrt_thetas:
        model = build_nc_yukawa(target.Z, target.alpha, theta_angstrom2(s),
                                energy_total,
                                electron_target_sign=args.positive_v0)
        value_cols.append(evaluate(model, r))
    for suffix in _theta_column_suffixes(sqrt_thetas):
        columns.append(f"V_eV{suffix}")
    rows = [[float(r[i])] + [float(col[i]) for col in value_cols]
            for i in range(len(r))]

    prov = base_provenance("potential", target, args)
    prov.update({
        "sweep": sweep.describe(),
        "sqrt_theta_m": ",".join(_fmt(s) for s in sqrt_thetas),
        "positive_v0": _fmt(bool(args.positive_v0)),
        "energy_eV": _fmt(_single_energy(args)) if args.energy else "none",
    })
    emit(args, prov, columns, rows)
    return 0


def _angle_sweep(args: argparse.Namespace) -> SweepSpec:
    sweep = parse_sweep(args.sweep or "theta:1:179:50:lin")
    if sweep.variable != "theta":
        raise ValueError("this command sweeps theta; use --sweep theta:...")
    return sweep


def cmd_amplitude(args: argparse.Namespace) -> int:
    target = resolve_target(args)
    sweep = _angle_sweep(args)
    method = args.method or "closed-form"
    if method == "paper-series":
        raise ValueError("the amplitude command supports methods "
                         "closed-form and quadrature only")
    T = _single_energy(args)
    kin = Kinematics.from_energy(T, _MODES[args.mode])
    sqrt_thetas = parse_sqrt_theta_list(args.sqrt_theta_m or "0")

    theta_deg = sweep.values()
    theta_rad = np.deg2rad(theta_deg)
    value_cols = []
    for s in sqrt_thetas:
        model = build_nc_yukawa(target.Z, target.alpha, theta_angstrom2(s),
                                kin.total_energy,
                                electron_target_sign=args.positive_v0)
        if method == "quadrature":
            q = momentum_transfer(kin.k, theta_rad)
            col = np.array([born_amplitude_quadrature(model, float(qi)).value
                            for qi in np.atleast_1d(q)])
        else:
            col = born_amplitude_closed(
                model, momentum_transfer(kin.k, theta_rad)).value
        value_cols.append(np.atleast_1d(col))

    columns = ["theta_deg"]
    for suffix in _theta_column_suffixes(sqrt_thetas):
        columns.append(f"f_angstrom{suffix}")
    rows = [[float(theta_deg[i])] + [float(c[i]) for c in value_cols]
            for i in range(len(theta_deg))]

    prov = base_provenance("amplitude", target, args)
    prov.update({
        "sweep": sweep.describe(),
        "sqrt_theta_m": ",".join(_fmt(s) for s in sqrt_thetas),
        "energy_eV": _fmt(T),
        "method": method,
        "positive_v0": _fmt(bool(args.positive_v0)),
    })
    emit(args, prov, columns, rows)
    return 0


def cmd_dcs(args: argparse.Namespace) -> int:
    target = resolve_target(args)
    sweep = _angle_sweep(args)
    method = args.method or "closed-form"
    if method != "closed-form":
        raise ValueError("the dcs command evaluates |f|^2 from the "
                         "closed-form amplitude; use --method closed-form")
    T = _single_energy(args)
    kin = Kinematics.from_energy(T, _MODES[args.mode])
    sqrt_thetas = parse_sqrt_theta_list(args.sqrt_theta_m or "0")

    theta_deg = sweep.values()
    theta_rad = np.deg2rad(theta_deg)
    value_cols = []
    for s in sqrt_thetas:
        model = build_nc_yukawa(target.Z, target.alpha, theta_angstrom2(s),
                                kin.total_energy,
                                electron_target_sign=args.positive_v0)
        value_cols.append(
            np.atleast_1d(differential_cs(theta_rad, kin, model).value))

    columns = ["theta_deg"]
    for suffix in _theta_column_suffixes(sqrt_thetas):
        columns.append(f"dcs_A2_per_sr{suffix}")
    rows = [[float(theta_deg[i])] + [float(c[i]) for c in value_cols]
            for i in range(len(theta_deg))]

    prov = base_provenance("dcs", target, args)
    prov.update({
        "sweep": sweep.describe(),
        "sqrt_theta_m": ",".join(_fmt(s) for s in sqrt_thetas),
        "energy_eV": _fmt(T),
        "method": method,
        "positive_v0": _fmt(bool(args.positive_v0)),
    })
    emit(args, prov, columns, rows)
    return 0


def cmd_tcs(args: argparse.Namespace) -> int:
    target = resolve_target(args)
    sweep = parse_sweep(args.sweep or "energy:1eV:100eV:50:log")
    if sweep.variable not in ("energy", "theta_nc"):
        raise ValueError("the tcs command sweeps energy or theta_nc")
    method = args.method or "quadrature"
    if method == "closed-form":
        raise ValueError("the tcs command supports methods quadrature and "
                         "paper-series only")
    mode = _MODES[args.mode]

    if sweep.variable == "energy":
        sqrt_thetas = parse_sqrt_theta_list(args.sqrt_theta_m or "0")
        grid = sweep.values()
        kins = [Kinematics.from_energy(float(T), mode) for T in grid]
        var_col: list[float] = [float(T) for T in grid]
        var_name = "energy_eV"
        theta_cases = sqrt_thetas
    else:
        T = _single_energy(args)
        kins = [Kinematics.from_energy(T, mode)] * sweep.count
        grid = sweep.values()
        var_col = [float(s) for s in grid]
        var_name = "sqrt_theta_m"
        theta_cases = [None]  # the sweep variable supplies Theta per row

    suffixes = (_theta_column_suffixes(theta_cases)
                if theta_cases != [None] else [""])
    columns = [var_name]
    for suffix in suffixes:
        columns.append(f"tcs_A2{suffix}")
    columns += ["method", "series_valid", "divergent"]

    rows: list[list[object]] = []
    for i, kin in enumerate(kins):
        row: list[object] = [var_col[i]]
        divergent = False
        valid_flag = True
        for case in theta_cases:
            s = var_col[i] if case is None else case
            model = build_nc_yukawa(target.Z, target.alpha,
                                    theta_angstrom2(float(s)),
                                    kin.total_energy,
                                    electron_target_sign=args.positive_v0)
            sv = series_validity(kin, model)
            valid_flag = valid_flag and sv.valid
            try:
                if method == "paper-series":
                    value = total_cs_paper_series(kin, model).value
                else:
                    value = total_cs_quadrature(kin, model).value
                row.append(float(value))
            except DivergentCrossSection:
                divergent = True
                row.append(math.nan)
        row += [method, valid_flag, divergent]
        rows.append(row)

    prov = base_provenance("tcs", target, args)
    prov.update({
        "sweep": sweep.describe(),
        "method": method,
        "positive_v0": _fmt(bool(args.positive_v0)),
    })
    if sweep.variable == "energy":
        prov["sqrt_theta_m"] = ",".join(_fmt(s) for s in theta_cases)
    else:
        prov["energy_eV"] = _fmt(kins[0].energy)
    emit(args, prov, columns, rows)
    return 0


def cmd_bound(args: argparse.Namespace) -> int:
    target = resolve_target(args)
    if not args.energy:
        raise ValueError("--energy is required (comma-separated values "
                         "allowed, e.g. 1eV,1keV,1GeV)")
    energies = parse_energy_list_ev(args.energy)
    if not energies:
        raise ValueError("the energy list must be nonempty")

    if args.calibrate:
        criterion = DetectabilityCriterion(
            calibration_row=CALIBRATION_ANCHOR)
    else:
        criterion = DetectabilityCriterion(epsilon=args.epsilon)

    preset = Preset(target.name, target.Z, target.alpha)
    results = bound_table([preset], energies, criterion,
                          mode=_MODES[args.mode])

    header = (f"{'target':<10} {'energy_eV':>14} {'sqrt_theta_m':>14} "
              f"{'epsilon':>14} {'iterations':>10}")
    print(header)
    print("-" * len(header))
    columns = ["target", "energy_eV", "sqrt_theta_m", "epsilon", "iterations"]
    rows: list[list[object]] = []
    failures: list[BoundCellFailure] = []
    for res in results:
        if isinstance(res, BoundScanResult):
            print(f"{res.target:<10} {_fmt(res.energy):>14} "
                  f"{_fmt(res.sqrt_theta_bound):>14} "
                  f"{_fmt(res.epsilon_used):>14} {res.iterations:>10}")
            rows.append([res.target, res.energy, res.sqrt_theta_bound,
                         res.epsilon_used, res.iterations])
        else:
            failures.append(res)
            print(f"{res.target:<10} {_fmt(res.energy):>14} "
                  f"{'-':>14} {'-':>14} {'-':>10}  ! {res.error}")

    prov = base_provenance("bound", target, args)
    prov.update({
        "energies_eV": ",".join(_fmt(e) for e in energies),
        "calibrate": _fmt(bool(args.calibrate)),
        "epsilon": ("calibrated" if args.calibrate else _fmt(args.epsilon)),
        "calibration_anchor": (f"{_fmt(CALIBRATION_ANCHOR[0])}eV:"
                               f"{_fmt(CALIBRATION_ANCHOR[1])}m"
                               if args.calibrate else "none"),
    })
    if args.out or args.format == "json":
        if args.format == "json":
            payload = {
                "provenance": prov,
                "columns": columns,
                "rows": rows,
                "failures": [
                    {"target": f.target, "energy_eV": f.energy,
                     "error": f.error} for f in failures
                ],
            }
            text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
            if args.out:
                Path(args.out).write_text(text, encoding="utf-8")
            else:
                sys.stdout.write(text)
        else:
            text = render_csv(prov, columns, rows)
            if args.out:
                Path(args.out).write_text(text, encoding="utf-8")
            else:
                sys.stdout.write(text)
    return 0 if not failures else 1


def cmd_presets(args: argparse.Namespace) -> int:
    presets = dict(BUILTIN_PRESETS)
    if args.presets_file:
        presets.update(load_presets(args.presets_file))
    columns = ["name", "Z", "alpha_inv_angstrom"]
    rows: list[list[object]] = [
        [p.name, p.Z, float(p.alpha_inv_angstrom)]
        for _, p in sorted(presets.items())
    ]
    prov = {"command": "presets", "version": __version__,
            "count": str(len(rows))}
    emit(args, prov, columns, rows)
    return 0


# =============================================================================
# Parser assembly and entry point
# =============================================================================

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ncscatter",
        description="Elastic electron scattering from screened potentials "
                    "with a noncommutative-geometry correction.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key=value file mirroring long "
                        "flags; explicit flags override it")
    common.add_argument("--preset", help="molecule preset name (see the "
                        "presets subcommand)")
    common.add_argument("--Z", type=int, help="nuclear charge number")
    common.add_argument("--alpha-inv-angstrom", type=float,
                        help="screening parameter in 1/A")
    common.add_argument("--presets-file", help="extra molecule presets file")
    common.add_argument("--energy", help="kinetic energy with optional "
                        "eV/keV/MeV/GeV suffix")
    common.add_argument("--sqrt-theta-m", help="sqrt(Theta) in meters; "
                        "comma-separated values produce one column each")
    common.add_argument("--mode", choices=("rel", "nonrel"), default="rel",
                        help="dispersion relation (default rel)")
    common.add_argument("--method",
                        choices=("quadrature", "paper-series", "closed-form"),
                        help="evaluation route where applicable")
    common.add_argument("--sweep", help="VAR:MIN:MAX:COUNT:{lin|log}")
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--out", help="output file path (default stdout)")
    common.add_argument("--epsilon", type=float, default=0.01,
                        help="detectability threshold in (0,1) "
                        "(default 0.01)")
    common.add_argument("--calibrate", action="store_true",
                        help="calibrate epsilon to the anchor row "
                        f"({CALIBRATION_ANCHOR[0]} eV, "
                        f"{CALIBRATION_ANCHOR[1]} m)")
    common.add_argument("--positive-v0", action="store_true",
                        help="flip the interaction sign to +Z k_C e^2 "
                        "(electron-shell scenario)")

    sub.add_parser("potential", parents=[common],
                   help="V(r) sweep over radius")
    sub.add_parser("amplitude", parents=[common],
                   help="Born amplitude sweep over angle")
    sub.add_parser("dcs", parents=[common],
                   help="differential cross section sweep over angle")
    sub.add_parser("tcs", parents=[common],
                   help="total cross section sweep over energy or Theta")
    sub.add_parser("bound", parents=[common],
                   help="Theta lower-bound table over energies")
    sub.add_parser("presets", parents=[common],
                   help="list available molecule presets")
    return parser


_DISPATCH = {
    "potential": cmd_potential,
    "amplitude": cmd_amplitude,
    "dcs": cmd_dcs,
    "tcs": cmd_tcs,
    "bound": cmd_bound,
    "presets": cmd_presets,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.config:
            entries = parse_config_file(args.config)
            injected = config_to_argv(entries, args.config)
            # re-parse with config tokens first so explicit flags override
            args = parser.parse_args([argv[0]] + injected + argv[1:])
        return _DISPATCH[args.subcommand](args)
    except SystemExit as exc:  # argparse usage errors / --help
        return int(exc.code or 0)
    except (NCScatterError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
