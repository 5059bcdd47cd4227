"""
Command-line front end.

    lazywalk simulate   --chi ... --steps 100 --output position
    lazywalk converge   --family 1 --theta 0.785 --phi 0 --steps 1000
    lazywalk sweep      --family 1 --observable entropy_inf --grid 101x101
    lazywalk asymptotic --chi 0,0.7071067811865476,0,0,0.7071067811865476,0

Exit status: 0 success, 2 usage error, 3 numerical-domain error.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import __version__
from .asymptotics import asymptotic_result, bloch_difference_series
from .observables import (
    InvalidDensityError,
    bloch_norm,
    coin_density,
    gcp,
    interference_terms,
    position_distribution,
)
from .records import RunRecord, dumps
from .sweep import FAMILIES, OBSERVABLES, SweepConfig, sweep_values
from .thermo import ThermoDomainError, spectrum_temperature_per_mean_energy, thermo_report, von_neumann_entropy
from .walk import GROVER, ChiralityState, evolve, make_initial_state, step

EXIT_USAGE = 2
EXIT_DOMAIN = 3
CHI_NORMALIZE_TOL = 1e-6
SCALAR_OUTPUTS = ("gcp", "interference", "density", "bloch", "entropy")
TOLERANCES = {"norm": 1e-12, "psd": 1e-10, "degeneracy": 1e-12, "chi_normalize": CHI_NORMALIZE_TOL}


def parse_chi(text: str) -> ChiralityState:
    """'a_re,a_im,b_re,b_im,c_re,c_im' -> normalized ChiralityState."""
    try:
        parts = [float(x) for x in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"chirality must be six comma-separated reals, got {text!r}")
    if len(parts) != 6 or not all(np.isfinite(parts)):
        raise argparse.ArgumentTypeError(f"chirality must be six comma-separated reals, got {text!r}")
    v = [complex(parts[i], parts[i + 1]) for i in (0, 2, 4)]
    try:
        return ChiralityState.from_vector(v, normalize_tol=CHI_NORMALIZE_TOL)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def parse_grid(text: str) -> tuple[int, int]:
    try:
        t, p = (int(x) for x in text.lower().split("x"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"grid must look like 101x101, got {text!r}")
    if t < 2 or p < 2:
        raise argparse.ArgumentTypeError("grid sizes must be >= 2")
    return t, p


def parse_range(text: str) -> tuple[float, float]:
    try:
        lo, hi = (float(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"range must be 'lo,hi', got {text!r}")
    if not hi > lo:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return lo, hi


def parse_outputs(text: str) -> list[str]:
    names = [x.strip() for x in text.split(",") if x.strip()]
    allowed = ("position",) + SCALAR_OUTPUTS
    bad = [n for n in names if n not in allowed]
    if bad or not names:
        raise argparse.ArgumentTypeError(f"unknown output(s) {bad}; choose from {allowed}")
    if "position" in names and len(names) > 1:
        raise argparse.ArgumentTypeError("'position' cannot be combined with other outputs")
    return names


def _chi_meta(chi: ChiralityState) -> list[float]:
    return [x for z in chi.vector for x in (float(z.real), float(z.imag))]


def _meta(command: str, chi: ChiralityState | None = None, **extra) -> dict:
    meta = {"tool": "lazywalk", "version": __version__, "command": command}
    if chi is not None:
        meta["chi"] = _chi_meta(chi)
        meta["coin"] = "grover"
    meta.update(extra)
    meta["tolerances"] = TOLERANCES
    return meta


def _scalar_columns(outputs: list[str]) -> list[str]:
    cols = ["t"]
    if "gcp" in outputs:
        cols += ["P_L", "P_S", "P_R"]
    if "interference" in outputs:
        cols += [f"{q}_{part}" for q in ("Q1", "Q2", "Q3") for part in ("re", "im")]
    if "density" in outputs:
        cols += [f"rho_{j}{k}_{part}" for j in (1, 2, 3) for k in (1, 2, 3) for part in ("re", "im")]
    if "bloch" in outputs:
        cols.append("bloch_norm")
    if "entropy" in outputs:
        cols.append("entropy")
    return cols


def _scalar_row(s, outputs: list[str]) -> list:
    row: list = [s.t]
    rho = coin_density(s)
    if "gcp" in outputs:
        row += list(gcp(s))
    if "interference" in outputs:
        row += [x for q in interference_terms(s) for x in (q.real, q.imag)]
    if "density" in outputs:
        row += [float(x) for z in rho.ravel() for x in (z.real, z.imag)]
    if "bloch" in outputs:
        row.append(bloch_norm(rho))
    if "entropy" in outputs:
        row.append(von_neumann_entropy(rho))
    return row


def _position_rows(s) -> list[list]:
    sites, probs = position_distribution(s)
    return [[s.t, int(n), float(p)] for n, p in zip(sites, probs)]


def cmd_simulate(chi: ChiralityState, steps: int, outputs: list[str], series: bool = False) -> RunRecord:
    """Evolve from chi|0> and tabulate the requested observables (final step or every step)."""
    s = make_initial_state(chi)
    position = outputs == ["position"]
    emit = _position_rows if position else (lambda st: [_scalar_row(st, outputs)])
    rows = []
    if series:
        rows += emit(s)
        for _ in range(steps):
            s = step(s, GROVER)
            rows += emit(s)
    else:
        rows += emit(evolve(s, GROVER, steps))
    columns = ["t", "n", "probability"] if position else _scalar_columns(outputs)
    return RunRecord(_meta("simulate", chi, steps=steps, outputs=outputs, series=series), columns, rows)


def cmd_converge(chi: ChiralityState, steps: int) -> RunRecord:
    """Series (t, | |B(t)| - |B_inf| |) for t = 1..steps."""
    diffs = bloch_difference_series(chi, steps)
    res = asymptotic_result(chi)
    rows = [[t, float(d)] for t, d in enumerate(diffs, start=1)]
    return RunRecord(
        _meta("converge", chi, steps=steps, bloch_norm_inf=res.bloch_norm_inf),
        ["t", "abs_bloch_norm_difference"],
        rows,
    )


def cmd_sweep(cfg: SweepConfig, workers: int = 1) -> RunRecord:
    """(theta, phi, value) grid; undefined cells (degenerate temperature) are None."""
    rows = [list(r) for r in sweep_values(cfg, workers=workers)]
    meta = _meta(
        "sweep",
        family=cfg.family,
        observable=cfg.observable,
        grid=[cfg.theta_steps, cfg.phi_steps],
        theta_range=list(cfg.theta_range),
        phi_range=list(cfg.phi_range),
        t=cfg.t if cfg.observable == "entropy_t" else None,
    )
    return RunRecord(meta, ["theta", "phi", cfg.observable], rows)


def cmd_asymptotic(chi: ChiralityState) -> RunRecord:
    """
    Long-time coin density, |B_inf|, S_inf, signed T_G/E and P(0, inf).

    Raises ThermoDomainError when T_G/E is undefined for this state.
    """
    res = asymptotic_result(chi)
    report = thermo_report(res.rho_inf)
    temp = spectrum_temperature_per_mean_energy(report.spectrum)
    rows = [
        [f"rho_{j + 1}{k + 1}", float(res.rho_inf[j, k].real), float(res.rho_inf[j, k].imag)]
        for j in range(3)
        for k in range(3)
    ]
    rows += [
        ["bloch_norm", res.bloch_norm_inf, 0.0],
        ["entropy", report.entropy, 0.0],
        ["temperature_per_mean_energy", temp, 0.0],
        ["localization", res.localization, 0.0],
    ]
    return RunRecord(_meta("asymptotic", chi), ["quantity", "value_re", "value_im"], rows)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_chi_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--chi", type=parse_chi, help="a_re,a_im,b_re,b_im,c_re,c_im")
    p.add_argument("--family", type=int, choices=sorted(FAMILIES))
    p.add_argument("--theta", type=float)
    p.add_argument("--phi", type=float)


def _add_output_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--out", help="output path (default: stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="lazywalk", description="Three-state Grover walk on the line.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("simulate", help="evolve one initial condition")
    _add_chi_args(p)
    p.add_argument("--steps", type=int, default=100)
    p.add_argument("--output", type=parse_outputs, default=["position"],
                   help="position, or a comma list of " + ",".join(SCALAR_OUTPUTS))
    p.add_argument("--series", action="store_true", help="emit every step, not only the last")
    _add_output_args(p)

    p = sub.add_parser("converge", help="| |B(t)| - |B_inf| | series")
    _add_chi_args(p)
    p.add_argument("--steps", type=int, default=1000)
    _add_output_args(p)

    p = sub.add_parser("sweep", help="(theta, phi) grid over an initial-condition family")
    p.add_argument("--family", type=int, choices=sorted(FAMILIES), default=1)
    p.add_argument("--observable", choices=OBSERVABLES, required=True)
    p.add_argument("--grid", type=parse_grid, default=(101, 101), help="THETAxPHI")
    p.add_argument("--steps", type=int, default=100, help="time for entropy_t")
    p.add_argument("--theta-range", type=parse_range, default=(0.0, np.pi))
    p.add_argument("--phi-range", type=parse_range, default=(0.0, 2.0 * np.pi))
    p.add_argument("--workers", type=int, default=1)
    _add_output_args(p)

    p = sub.add_parser("asymptotic", help="long-time quantities for one initial condition")
    _add_chi_args(p)
    _add_output_args(p)
    return parser


def _resolve_chi(parser, args) -> ChiralityState:
    shorthand = (args.family, args.theta, args.phi)
    if args.chi is not None:
        if any(x is not None for x in shorthand):
            parser.error("--chi cannot be combined with --family/--theta/--phi")
        return args.chi
    if any(x is None for x in shorthand):
        parser.error("give --chi, or all of --family, --theta and --phi")
    return FAMILIES[args.family](args.theta, args.phi)


def _emit(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", newline="") as fh:
            fh.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    sub = parser._subparsers._group_actions[0].choices[args.command]

    if getattr(args, "steps", 0) < 0:
        sub.error("--steps must be >= 0")

    try:
        if args.command == "simulate":
            rec = cmd_simulate(_resolve_chi(sub, args), args.steps, args.output, args.series)
        elif args.command == "converge":
            rec = cmd_converge(_resolve_chi(sub, args), args.steps)
        elif args.command == "sweep":
            if args.workers < 1:
                sub.error("--workers must be >= 1")
            try:
                cfg = SweepConfig(
                    family=args.family,
                    observable=args.observable,
                    theta_steps=args.grid[0],
                    phi_steps=args.grid[1],
                    theta_range=args.theta_range,
                    phi_range=args.phi_range,
                    t=args.steps,
                )
            except ValueError as exc:
                sub.error(str(exc))
            rec = cmd_sweep(cfg, workers=args.workers)
        else:
            rec = cmd_asymptotic(_resolve_chi(sub, args))
    except (ThermoDomainError, InvalidDensityError) as exc:
        print(f"lazywalk: numerical-domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN

    _emit(dumps(rec, args.format), args.out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
