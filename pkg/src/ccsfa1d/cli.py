"""Command-line front end: parameter scans, PMD export, self checks.

Subcommands
    scan-field   Coulomb shift and peak observables vs reduced field f
    scan-gamma   same observables vs Keldysh parameter gamma
    pmd          momentum distribution w(p) per variant on a p-grid
    hqa          complex-trajectory solver vs the S2qc shift over f
    check        oracle cross-validation suite (exit 2 on failure)

Output is CSV (comma separated, '.' decimal, header line preceded by a
"# schema=1" comment) plus a companion gnuplot script next to it.
Reruns with identical inputs produce byte-identical files.  Exit codes:
0 success, 1 bad invocation/parameters, 2 internal check failure.
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import Ccsfa1dError
from .model import AtomicSystem, HalfCyclePulse, derived_params
from .amplitude import (VARIANTS, peak, pmd, ppt_reference, shift_estimate)
from . import hqa as hqa_mod
from . import oracle as oracle_mod
from .actions import zeta_jet
from .saddle import solve_zeroth

__all__ = ["ScanSpec", "main"]

SCHEMA_COMMENT = "# schema=1"


class SpecError(Exception):
    """Invalid invocation or parameter set (exit code 1)."""


@dataclass(frozen=True)
class ScanSpec:
    """Validated description of one scan run."""

    kind: str                       # scan-field | scan-gamma | pmd | hqa
    kappa: float
    charge: float
    start: float
    stop: float
    points: int
    spacing: str = "lin"            # lin | log
    fixed: dict = field(default_factory=dict)   # gamma or omega etc.
    variants: tuple[str, ...] = VARIANTS
    out: Path | None = None

    def __post_init__(self):
        if self.points < 2:
            raise SpecError("range needs at least 2 points")
        if self.start <= 0.0 or self.stop <= 0.0 or self.stop <= self.start:
            raise SpecError("range bounds must be positive and increasing")
        if self.spacing not in ("lin", "log"):
            raise SpecError(f"unknown spacing {self.spacing!r}")
        if not self.variants:
            raise SpecError("variant list is empty")
        for v in self.variants:
            if v not in VARIANTS:
                raise SpecError(f"unknown variant {v!r}")

    def grid(self) -> np.ndarray:
        if self.spacing == "log":
            return np.geomspace(self.start, self.stop, self.points)
        return np.linspace(self.start, self.stop, self.points)


def _parse_range(text: str) -> tuple[float, float, int, str]:
    """a:b:n with an optional :log suffix."""
    parts = text.split(":")
    spacing = "lin"
    if len(parts) == 4:
        spacing = parts.pop()
    if len(parts) != 3:
        raise SpecError(f"range {text!r} is not of the form a:b:n")
    try:
        return float(parts[0]), float(parts[1]), int(parts[2]), spacing
    except ValueError as exc:
        raise SpecError(f"range {text!r}: {exc}") from None


def _parse_variants(text: str) -> tuple[str, ...]:
    chosen = tuple(v.strip() for v in text.split(",") if v.strip())
    # keep canonical hierarchy order regardless of flag order
    ordered = tuple(v for v in VARIANTS if v in chosen)
    for v in chosen:
        if v not in VARIANTS:
            raise SpecError(f"unknown variant {v!r}")
    return ordered


def _read_config(path: str) -> dict[str, str]:
    """Flat key=value file; blank lines and '#' comments ignored."""
    out = {}
    p = Path(path)
    if not p.is_file():
        raise SpecError(f"config file {path!r} not found")
    for lineno, line in enumerate(p.read_text().splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise SpecError(f"{path}:{lineno}: expected key=value")
        key, _, value = line.partition("=")
        out[key.strip()] = value.strip()
    return out


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, str):
        return x
    if isinstance(x, float) and math.isnan(x):
        return "nan"
    return format(float(x), ".12g")


def _write_csv(path: Path, header: list[str], rows: list[list]) -> None:
    lines = [SCHEMA_COMMENT, ",".join(header)]
    for row in rows:
        lines.append(",".join(_fmt(v) for v in row))
    path.write_text("\n".join(lines) + "\n")


def _write_plot_script(path: Path, csv_name: str, xlabel: str,
                       curves: list[tuple[int, str]], logscale: bool) -> None:
    """Companion gnuplot script: column indices are 1-based."""
    lines = [
        f"# gnuplot script for {csv_name}",
        "set datafile separator ','",
        f"set xlabel '{xlabel}'",
        "set key left top",
    ]
    if logscale:
        lines.append("set logscale y")
    plots = ", \\\n     ".join(
        f"'{csv_name}' using 1:{col} with linespoints title '{label}'"
        for col, label in curves)
    lines.append(f"plot {plots}")
    path.write_text("\n".join(lines) + "\n")


# ---------------------------------------------------------------------------
# subcommand runners

def _system_for_f(kappa: float, charge: float, f: float, gamma: float):
    atom = AtomicSystem(kappa, charge)
    e0 = f * kappa**3
    return atom, HalfCyclePulse(e0, gamma * e0 / kappa)


def _system_for_gamma(kappa: float, charge: float, gamma: float,
                      omega: float):
    atom = AtomicSystem(kappa, charge)
    return atom, HalfCyclePulse(omega * kappa / gamma, omega)


def _scan_rows(spec: ScanSpec):
    header = [("f" if spec.kind != "scan-gamma" else "gamma"),
              "gamma" if spec.kind != "scan-gamma" else "f", "E0", "omega"]
    for v in spec.variants:
        header += [f"shift_{v}", f"peak_probability_{v}", f"ratio_to_arm_{v}"]
    header += ["estimate_static" if spec.kind != "scan-gamma"
               else "estimate_nonadiabatic", "error"]

    rows = []
    for value in spec.grid():
        if spec.kind == "scan-gamma":
            gamma = float(value)
            atom, pulse = _system_for_gamma(spec.kappa, spec.charge, gamma,
                                            spec.fixed["omega"])
            regime = "nonadiabatic"
        else:
            gamma = spec.fixed["gamma"]
            atom, pulse = _system_for_f(spec.kappa, spec.charge, float(value),
                                        gamma)
            regime = "static"
        par = derived_params(atom, pulse, warn=False)
        other = par.f if spec.kind == "scan-gamma" else par.gamma
        lead = [float(value), other, pulse.e0, pulse.omega]
        cells, err = [], ""
        try:
            for v in spec.variants:
                res = peak(atom, pulse, v)
                cells += [res.coulomb_shift, res.probability,
                          res.ratio_to_arm]
            est = shift_estimate(atom, pulse, regime)
        except Ccsfa1dError as exc:
            cells = [math.nan] * (3 * len(spec.variants))
            est = math.nan
            err = type(exc).__name__
        rows.append(lead + cells + [est, err])
    return header, rows


def _hqa_rows(spec: ScanSpec):
    header = ["f", "gamma", "E0", "omega", "hqa_p_final", "hqa_shift",
              "hqa_probability", "shift_S2qc", "shift_ratio", "error"]
    rows = []
    for f in spec.grid():
        gamma = spec.fixed["gamma"]
        atom, pulse = _system_for_f(spec.kappa, spec.charge, float(f), gamma)
        par = derived_params(atom, pulse, warn=False)
        try:
            sol = hqa_mod.shoot(atom, pulse)
            prob = hqa_mod.hqa_probability(atom, pulse, sol)
            shift = par.p0 - sol.p_final
            ref = peak(atom, pulse, "S2qc")
            ratio = shift / ref.coulomb_shift if ref.coulomb_shift else math.nan
            rows.append([float(f), gamma, pulse.e0, pulse.omega,
                         sol.p_final, shift, prob, ref.coulomb_shift,
                         ratio, ""])
        except Ccsfa1dError as exc:
            rows.append([float(f), gamma, pulse.e0, pulse.omega,
                         math.nan, math.nan, math.nan, math.nan, math.nan,
                         type(exc).__name__])
    return header, rows


def _pmd_rows(kappa, charge, e0, omega, variants, points=201):
    atom = AtomicSystem(kappa, charge)
    pulse = HalfCyclePulse(e0, omega)
    ref = ppt_reference(atom, pulse)
    grid = np.linspace(ref.p0 - 3.0 * ref.width, ref.p0 + 3.0 * ref.width,
                       points)
    header = ["p"]
    header += [f"probability_{v}" for v in variants]
    header += [f"normalized_{v}" for v in variants]
    header += ["error"]

    columns, errors = {}, [""] * grid.size
    for v in variants:
        pts = pmd(atom, pulse, grid, v)
        probs = np.array([pt.probability for pt in pts])
        for i, pt in enumerate(pts):
            if pt.error and not errors[i]:
                errors[i] = pt.error
        top = np.nanmax(probs) if np.isfinite(probs).any() else math.nan
        columns[v] = (probs, probs / top if top else probs * math.nan)
    rows = []
    for i, p in enumerate(grid):
        row = [float(p)]
        row += [columns[v][0][i] for v in variants]
        row += [columns[v][1][i] for v in variants]
        row.append(errors[i])
        rows.append(row)
    return header, rows


def _run_check() -> int:
    """Oracle cross-validation; prints one line per check."""
    kappa, f, gamma = 1.0, 0.02, 0.1
    e0 = f * kappa**3
    pulse = HalfCyclePulse(e0, gamma * e0 / kappa)
    atom0 = AtomicSystem(kappa, 0.0)
    atom1 = AtomicSystem(kappa, 1.0)
    p = e0 / (gamma * e0 / kappa)

    results = []

    def record(name, ok, detail):
        results.append((name, ok, detail))

    from .amplitude import amplitude
    rep = oracle_mod.exact_x_amplitude(atom0, pulse, p, "S0")
    ratio = abs(amplitude(atom0, pulse, p, "S0").m) ** 2 / abs(rep.value) ** 2
    record("exact-x probability ratio near pi/e", abs(ratio / (math.pi / math.e) - 1.0) < 0.05,
           f"ratio={ratio:.4f}")

    t0, x0 = solve_zeroth(atom1, pulse, p)
    jet = zeta_jet(atom1, pulse, x0, t0, p, order=2)
    rq = oracle_mod.nested_riemann_s2(atom1, pulse, x0, t0, p, part="qc")
    ru = oracle_mod.nested_riemann_s2(atom1, pulse, x0, t0, p, part="qu")
    dqc = abs(rq.value - 1j * jet.zeta2_qc) / abs(rq.value)
    dqu = abs(ru.value - jet.zeta2_qu) / abs(ru.value)
    record("nested Riemann s2 (qc)", dqc < 1e-6, f"rel={dqc:.2e}")
    record("nested Riemann s2 (qu)", dqu < 1e-6, f"rel={dqu:.2e}")

    fd = oracle_mod.finite_difference_jet(atom1, pulse, x0, t0, p, order=2)
    scale = max(abs(getattr(jet, n)) for n in
                ("z0_xx", "z0_xt", "z0_tt", "z1_x", "z1_t"))
    worst = 0.0
    for n in ("z0_x", "z0_t", "z0_xx", "z0_xt", "z0_tt",
              "z1_x", "z1_t", "z1_xx", "z1_xt", "z1_tt",
              "z2qc_x", "z2qc_t", "z2qu_x", "z2qu_t"):
        worst = max(worst, abs(getattr(jet, n) - getattr(fd, n)))
    record("finite-difference jet", worst < 1e-6 * (1.0 + scale),
           f"worst abs dev={worst:.2e}")

    est = oracle_mod.third_order_spi_estimate(jet)
    record("third-order SPI estimate", est < f / 36.0,
           f"est={est:.2e} bound={f/36.0:.2e}")

    width = max(len(name) for name, _, _ in results)
    failed = 0
    for name, ok, detail in results:
        status = "pass" if ok else "FAIL"
        print(f"{name:<{width}}  {status}  {detail}")
        failed += 0 if ok else 1
    return 2 if failed else 0


# ---------------------------------------------------------------------------
# argument handling

class _Parser(argparse.ArgumentParser):
    def error(self, message):            # argparse default exits with 2
        raise SpecError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="ccsfa1d", description=__doc__,
                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("scan-field", "scan-gamma", "pmd", "hqa", "check"):
        sp = sub.add_parser(name)
        sp.add_argument("--kappa", type=float)
        sp.add_argument("--Z", type=float)
        sp.add_argument("--E0", type=float)
        sp.add_argument("--omega", type=float)
        sp.add_argument("--gamma", type=float)
        sp.add_argument("--f-range", dest="f_range")
        sp.add_argument("--gamma-range", dest="gamma_range")
        sp.add_argument("--variants")
        sp.add_argument("--out")
        sp.add_argument("--config")
    return parser


_CONFIG_KEYS = {"kappa": float, "Z": float, "E0": float, "omega": float,
                "gamma": float, "f-range": str, "gamma-range": str,
                "variants": str, "out": str}


def _merged_options(args) -> dict:
    """Config file values overridden by explicit flags."""
    opts = {"kappa": 1.0, "Z": 0.0, "E0": None, "omega": None, "gamma": None,
            "f-range": None, "gamma-range": None, "variants": None,
            "out": None}
    if args.config:
        cfg = _read_config(args.config)
        for key, raw in cfg.items():
            if key not in _CONFIG_KEYS:
                raise SpecError(f"unknown config key {key!r}")
            try:
                opts[key] = _CONFIG_KEYS[key](raw)
            except ValueError as exc:
                raise SpecError(f"config key {key!r}: {exc}") from None
    flag_map = {"kappa": args.kappa, "Z": args.Z, "E0": args.E0,
                "omega": args.omega, "gamma": args.gamma,
                "f-range": args.f_range, "gamma-range": args.gamma_range,
                "variants": args.variants, "out": args.out}
    for key, value in flag_map.items():
        if value is not None:
            opts[key] = value
    return opts


def _require(opts, key):
    if opts[key] is None:
        raise SpecError(f"--{key} is required for this command")
    return opts[key]


def _run(args) -> int:
    if args.command == "check":
        return _run_check()

    opts = _merged_options(args)
    variants = _parse_variants(opts["variants"]) if opts["variants"] \
        else VARIANTS
    out = Path(opts["out"]) if opts["out"] else None

    if args.command == "pmd":
        kappa, charge = opts["kappa"], opts["Z"]
        e0, omega = opts["E0"], opts["omega"]
        gamma = opts["gamma"]
        # any two of (E0, omega, gamma) fix the pulse
        if e0 is None and omega is not None and gamma is not None:
            e0 = omega * kappa / gamma
        elif omega is None and e0 is not None and gamma is not None:
            omega = gamma * e0 / kappa
        if e0 is None or omega is None:
            raise SpecError("pmd needs two of --E0, --omega, --gamma")
        header, rows = _pmd_rows(kappa, charge, e0, omega, variants)
        xlabel = "p"
        curves = [(2 + len(variants) + i, f"{v} normalized")
                  for i, v in enumerate(variants)]
        logscale = False
    elif args.command in ("scan-field", "hqa"):
        start, stop, points, spacing = _parse_range(_require(opts, "f-range"))
        spec = ScanSpec(kind=args.command, kappa=opts["kappa"],
                        charge=opts["Z"], start=start, stop=stop,
                        points=points, spacing=spacing,
                        fixed={"gamma": _require(opts, "gamma")},
                        variants=variants, out=out)
        header, rows = (_hqa_rows(spec) if args.command == "hqa"
                        else _scan_rows(spec))
        xlabel = "f"
        if args.command == "hqa":
            curves = [(6, "HQA shift"), (8, "S2qc shift")]
        else:
            curves = [(5 + 3 * i, f"shift {v}")
                      for i, v in enumerate(variants)]
        logscale = False
    elif args.command == "scan-gamma":
        start, stop, points, spacing = _parse_range(
            _require(opts, "gamma-range"))
        spec = ScanSpec(kind="scan-gamma", kappa=opts["kappa"],
                        charge=opts["Z"], start=start, stop=stop,
                        points=points, spacing=spacing,
                        fixed={"omega": _require(opts, "omega")},
                        variants=variants, out=out)
        header, rows = _scan_rows(spec)
        xlabel = "gamma"
        curves = [(5 + 3 * i, f"shift {v}") for i, v in enumerate(variants)]
        logscale = False
    else:                               # pragma: no cover
        raise SpecError(f"unknown command {args.command!r}")

    if out is None:
        print(SCHEMA_COMMENT)
        print(",".join(header))
        for row in rows:
            print(",".join(_fmt(v) for v in row))
    else:
        out.parent.mkdir(parents=True, exist_ok=True)
        _write_csv(out, header, rows)
        _write_plot_script(out.with_suffix(".gp"), out.name, xlabel,
                           curves, logscale)
    return 0


def main(argv=None) -> int:
    try:
        args = _build_parser().parse_args(argv)
        return _run(args)
    except SpecError as exc:
        print(f"ccsfa1d: error: {exc}", file=sys.stderr)
        return 1
    except Ccsfa1dError as exc:
        print(f"ccsfa1d: internal check failure: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
