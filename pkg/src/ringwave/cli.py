"""Command-line front end.

Four subcommands:

    profile    site-occupancy snapshots P_j at requested times
    fidelity   F_d(t) per receiver, with peak summaries and optional
               analytic overlay column
    maxcurve   peak fidelity vs distance for several hopping phases
    validate   run the built-in self-check suites

Every delimited output starts with a manifest comment block (the exact
normalized command line, tool version, ordering note); re-running the
manifest command reproduces the file byte for byte.  Floats are printed with
17 significant digits, '.' decimal separator and '\n' line endings.  Exit
codes: 0 success, 1 validation failure, 2 invalid arguments, 3 wrap-horizon
violation without --allow-wrap.  Figures (--plot) are rendered alongside the
delimited output, never instead of it.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass, replace

import numpy as np

from . import __version__
from .analytic import atomic_fidelity_limit, gaussian_fidelity
from .observables import (
    HorizonError,
    TIME_STEP_FACTOR,
    fidelity_series,
    first_peak,
    max_fidelity_vs_distance,
    no_wrap_horizon,
    probability_distribution,
    time_grid,
)
from .ring import Atomic, Gaussian, RingConfig, Square, evolve, half_extent, prepare, signed_offsets
from .validate import SUITE_NAMES, run_validation

PROG = "ringwave"

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_USAGE = 2
EXIT_HORIZON = 3

_RULES = {"first": "first-local", "global": "global"}


def parse_theta(text: str) -> float:
    """Phase in radians; accepts plain floats and pi literals like -pi/2."""
    s = text.strip().lower().replace(" ", "")
    sign = 1.0
    if s.startswith(("+", "-")):
        sign = -1.0 if s[0] == "-" else 1.0
        s = s[1:]
    if s == "pi":
        return sign * math.pi
    if s.startswith("pi/"):
        return sign * math.pi / float(s[3:])
    return float(text)


def parse_times(text: str) -> list[float]:
    try:
        return [float(part) for part in text.split(",") if part.strip()]
    except ValueError as err:
        raise argparse.ArgumentTypeError(f"bad time list {text!r}") from err


def _fmt(value) -> str:
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return format(float(value), ".17g")


def _add_problem_flags(sub: argparse.ArgumentParser, single_theta: bool = True) -> None:
    sub.add_argument("--sites", type=int, default=500, help="number of ring sites (default 500)")
    sub.add_argument("--hopping", type=float, default=1.0, help="half bandwidth w (default 1)")
    if single_theta:
        sub.add_argument(
            "--theta",
            type=parse_theta,
            default=0.0,
            help="hopping phase in radians; literals pi/2, -pi/2, pi/4 accepted",
        )
    sub.add_argument(
        "--prep", choices=("atomic", "square", "gaussian"), default="square", help="initial packet"
    )
    sub.add_argument("--halfwidth", type=int, default=None, help="square packet half-width M")
    sub.add_argument("--gwidth", type=float, default=None, help="gaussian packet width (sites)")
    sub.add_argument("--allow-wrap", action="store_true", help="permit times past the wrap horizon")
    sub.add_argument("--out", default=None, help="output file (default: stdout)")
    sub.add_argument("--plot", default=None, help="also render a figure to this file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog=PROG,
        description="Wavepacket transport on a tight-binding ring with a tunable hopping phase.",
    )
    parser.add_argument("--version", action="version", version=f"{PROG} {__version__}")
    commands = parser.add_subparsers(dest="command", required=True)

    profile = commands.add_parser("profile", help="site-occupancy snapshots at chosen times")
    _add_problem_flags(profile)
    profile.add_argument(
        "--times", type=parse_times, default=[0.0, 10.0, 20.0, 30.0], help="comma-separated times"
    )
    profile.set_defaults(func=cmd_profile)

    fid = commands.add_parser("fidelity", help="transfer fidelity F_d(t) with peak summaries")
    _add_problem_flags(fid)
    fid.add_argument(
        "--receiver",
        type=int,
        action="append",
        default=None,
        help="receiver offset d (repeatable; default 10 30 60 90)",
    )
    fid.add_argument("--tmax", type=float, default=None, help="time window (default: wrap horizon per d)")
    fid.add_argument("--dt", type=float, default=None, help="sampling step (default 0.05/w)")
    fid.add_argument("--peak-rule", choices=("first", "global"), default="first")
    fid.add_argument(
        "--analytic",
        choices=("bessel", "gaussian"),
        default=None,
        help="emit a parallel analytic column for overlay",
    )
    fid.set_defaults(func=cmd_fidelity)

    curve = commands.add_parser("maxcurve", help="peak fidelity vs distance per phase")
    _add_problem_flags(curve, single_theta=False)
    curve.add_argument(
        "--theta",
        dest="thetas",
        type=parse_theta,
        action="append",
        default=None,
        help="hopping phase (repeatable; default 0, -pi/4, -pi/2)",
    )
    curve.add_argument(
        "--receiver",
        type=int,
        action="append",
        default=None,
        help="receiver offset (repeatable; default 10..100 step 10)",
    )
    curve.add_argument("--tmax", type=float, default=None)
    curve.add_argument("--dt", type=float, default=None)
    curve.add_argument("--peak-rule", choices=("first", "global"), default="first")
    curve.set_defaults(func=cmd_maxcurve)

    val = commands.add_parser("validate", help="run the built-in self-check suites")
    val.add_argument("--json", action="store_true", help="machine-readable report")
    val.add_argument(
        "--inject-phase-flip",
        action="store_true",
        help="testing hook: mirror the hopping phase so the convention checks must fail",
    )
    val.add_argument("--out", default=None, help="write the report to a file as well")
    val.set_defaults(func=cmd_validate)
    return parser


def _prep_from_args(args) -> Atomic | Square | Gaussian:
    if args.prep == "atomic":
        return Atomic()
    if args.prep == "square":
        if args.halfwidth is None:
            raise ValueError("--halfwidth is required with --prep square")
        return Square(half_width=args.halfwidth)
    if args.gwidth is None:
        raise ValueError("--gwidth is required with --prep gaussian")
    return Gaussian(width=args.gwidth)


def _prep_tokens(args) -> list[str]:
    tokens = ["--prep", args.prep]
    if args.prep == "square":
        tokens += ["--halfwidth", str(args.halfwidth)]
    elif args.prep == "gaussian":
        tokens += ["--gwidth", _fmt(args.gwidth)]
    return tokens


def _io_tokens(args) -> list[str]:
    tokens = []
    if getattr(args, "allow_wrap", False):
        tokens.append("--allow-wrap")
    if args.plot:
        tokens += ["--plot", args.plot]
    if args.out:
        tokens += ["--out", args.out]
    return tokens


@dataclass(frozen=True)
class RunManifest:
    """Header block carried by every delimited output.

    Holds the subcommand, the fully normalized parameter tokens and the tool
    version; re-running the recorded command line reproduces the output file
    byte for byte.
    """

    command: str
    tokens: tuple[str, ...]
    version: str = __version__

    def lines(self) -> list[str]:
        return [
            f"# {PROG} {self.command} v{self.version}",
            "# command: " + " ".join([PROG, self.command, *self.tokens]),
            "# ordering: momentum sums ascend by mode index; rows follow the flag order; floats %.17g",
        ]


def _manifest(command: str, tokens: list[str]) -> list[str]:
    return RunManifest(command=command, tokens=tuple(tokens)).lines()


def _write_text(path: str | None, text: str) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(text)


def _problem_title(config: RingConfig, prep) -> str:
    bits = [f"N={config.n_sites}", f"w={config.half_bandwidth:g}", f"theta={config.phase:.4g}"]
    if isinstance(prep, Atomic):
        bits.append("atomic start")
    elif isinstance(prep, Square):
        bits.append(f"square start M={prep.half_width}")
    else:
        bits.append(f"gaussian start width={prep.width:g}")
    return ", ".join(bits)


def cmd_profile(args) -> int:
    config = RingConfig(n_sites=args.sites, half_bandwidth=args.hopping, phase=args.theta)
    prep = _prep_from_args(args)
    if not args.times:
        raise ValueError("no times requested")
    horizon = (config.n_sites / 2.0 - half_extent(prep)) / (2.0 * config.half_bandwidth)
    if not args.allow_wrap and max(args.times) > horizon + 1e-9:
        raise HorizonError(
            f"requested time {max(args.times):g} exceeds the wrap horizon {horizon:g}"
        )
    tokens = (
        ["--sites", str(config.n_sites), "--hopping", _fmt(config.half_bandwidth)]
        + ["--theta", _fmt(config.phase)]
        + _prep_tokens(args)
        + ["--times", ",".join(_fmt(t) for t in args.times)]
        + _io_tokens(args)
    )
    packet = prepare(config, prep)
    offsets = signed_offsets(config.n_sites)
    order = np.argsort(offsets, kind="stable")
    lines = _manifest("profile", tokens)
    lines.append("t,j,P")
    blocks = []
    for t in args.times:
        probs = probability_distribution(evolve(config, packet, t))
        blocks.append((t, offsets[order], probs[order]))
        for k in order:
            lines.append(f"{_fmt(t)},{offsets[k]},{_fmt(probs[k])}")
    _write_text(args.out, "\n".join(lines) + "\n")
    if args.plot:
        from .plotting import save_profile_figure

        save_profile_figure(args.plot, blocks, _problem_title(config, prep))
    return EXIT_OK


def _analytic_column(args, prep, config, d: int, times: np.ndarray) -> np.ndarray:
    if args.analytic == "bessel":
        return atomic_fidelity_limit(d, config.half_bandwidth, times)
    if not isinstance(prep, Square) or prep.half_width < 1:
        raise ValueError("--analytic gaussian needs --prep square with --halfwidth >= 1")
    lam = 2 * prep.half_width + 1
    return np.array(
        [gaussian_fidelity(lam, d, config.half_bandwidth, config.phase, t) for t in times]
    )


def cmd_fidelity(args) -> int:
    config = RingConfig(n_sites=args.sites, half_bandwidth=args.hopping, phase=args.theta)
    prep = _prep_from_args(args)
    receivers = args.receiver if args.receiver else [10, 30, 60, 90]
    dt = args.dt if args.dt is not None else TIME_STEP_FACTOR / config.half_bandwidth
    tokens = (
        ["--sites", str(config.n_sites), "--hopping", _fmt(config.half_bandwidth)]
        + ["--theta", _fmt(config.phase)]
        + _prep_tokens(args)
        + [tok for d in receivers for tok in ("--receiver", str(d))]
        + (["--tmax", _fmt(args.tmax)] if args.tmax is not None else [])
        + ["--dt", _fmt(dt), "--peak-rule", args.peak_rule]
        + (["--analytic", args.analytic] if args.analytic else [])
        + _io_tokens(args)
    )
    lines = _manifest("fidelity", tokens)
    header = "d,t,F"
    if args.analytic:
        header += ",F_bessel" if args.analytic == "bessel" else ",F_gaussian"
    lines.append(header)
    curves = []
    peaks = []
    for d in receivers:
        stop = args.tmax if args.tmax is not None else no_wrap_horizon(config, prep, d)
        if args.tmax is not None and args.tmax > no_wrap_horizon(config, prep, d) + 1e-9:
            if not args.allow_wrap:
                raise HorizonError(
                    f"--tmax {args.tmax:g} exceeds the wrap horizon for receiver {d}"
                )
        series = fidelity_series(config, prep, d, time_grid(stop, dt), allow_wrap=args.allow_wrap)
        overlay = _analytic_column(args, prep, config, d, series.times) if args.analytic else None
        peaks.append((d, first_peak(series, rule=_RULES[args.peak_rule])))
        curves.append((d, series.times, series.values, overlay))
        for i, t in enumerate(series.times):
            row = f"{d},{_fmt(t)},{_fmt(series.values[i])}"
            if overlay is not None:
                row += f",{_fmt(overlay[i])}"
            lines.append(row)
    lines.append("# peak,d,t_star,f_star,rule")
    for d, peak in peaks:
        lines.append(f"# peak,{d},{_fmt(peak.t_star)},{_fmt(peak.f_star)},{peak.kind}")
    _write_text(args.out, "\n".join(lines) + "\n")
    if args.plot:
        from .plotting import save_fidelity_figure

        label = f"analytic ({args.analytic})" if args.analytic else None
        save_fidelity_figure(args.plot, curves, _problem_title(config, prep), label)
    return EXIT_OK


def cmd_maxcurve(args) -> int:
    base = RingConfig(n_sites=args.sites, half_bandwidth=args.hopping, phase=0.0)
    prep = _prep_from_args(args)
    thetas = args.thetas if args.thetas else [0.0, -math.pi / 4, -math.pi / 2]
    receivers = args.receiver if args.receiver else list(range(10, 101, 10))
    dt = args.dt if args.dt is not None else TIME_STEP_FACTOR / base.half_bandwidth
    tokens = (
        ["--sites", str(base.n_sites), "--hopping", _fmt(base.half_bandwidth)]
        + [tok for th in thetas for tok in ("--theta", _fmt(th))]
        + _prep_tokens(args)
        + [tok for d in receivers for tok in ("--receiver", str(d))]
        + (["--tmax", _fmt(args.tmax)] if args.tmax is not None else [])
        + ["--dt", _fmt(dt), "--peak-rule", args.peak_rule]
        + _io_tokens(args)
    )
    lines = _manifest("maxcurve", tokens)
    lines.append("theta,d,t_star,f_star")
    curves = []
    for theta in thetas:
        config = replace(base, phase=theta)
        rows = max_fidelity_vs_distance(
            config,
            prep,
            receivers,
            t_window=args.tmax,
            dt=dt,
            rule=_RULES[args.peak_rule],
            allow_wrap=args.allow_wrap,
        )
        curves.append((theta, [r[0] for r in rows], [r[2] for r in rows]))
        for d, t_star, f_star in rows:
            lines.append(f"{_fmt(theta)},{d},{_fmt(t_star)},{_fmt(f_star)}")
    _write_text(args.out, "\n".join(lines) + "\n")
    if args.plot:
        from .plotting import save_maxcurve_figure

        save_maxcurve_figure(args.plot, curves, _problem_title(base, prep).replace("theta=0, ", ""))
    return EXIT_OK


def cmd_validate(args) -> int:
    suites = run_validation(inject_phase_flip=args.inject_phase_flip)
    passed = all(suite.passed for suite in suites.values())
    if args.json:
        payload = {name: suites[name].passed for name in SUITE_NAMES}
        payload["passed"] = passed
        text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    else:
        lines = [f"{PROG} validate v{__version__}"]
        for name in SUITE_NAMES:
            suite = suites[name]
            lines.append(f"suite {name}: {'PASS' if suite.passed else 'FAIL'}")
            for check in suite.checks:
                mark = "ok " if check.passed else "BAD"
                lines.append(f"  [{mark}] {check.name}: {check.detail}")
        lines.append(f"validation: {'PASS' if passed else 'FAIL'}")
        text = "\n".join(lines) + "\n"
    _write_text(args.out, text)
    if args.out is not None:
        sys.stdout.write(text)
    return EXIT_OK if passed else EXIT_VALIDATION


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except HorizonError as err:
        print(f"{PROG}: {err}", file=sys.stderr)
        return EXIT_HORIZON
    except (ValueError, TypeError, IndexError) as err:
        print(f"{PROG}: {err}", file=sys.stderr)
        return EXIT_USAGE


def run() -> None:
    sys.exit(main())


if __name__ == "__main__":
    run()
