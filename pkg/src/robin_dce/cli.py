"""Command-line interface: ``robin-dce {spectrum,rate,figures,validate}``.

Exit codes: 0 success, 1 validation failure, 2 invalid input,
3 numerical non-convergence, 4 I/O failure.
"""
from __future__ import annotations

import argparse
import io
import sys

from .core import Method, PhysicalParams, ThermalConvention, validate_params
from .errors import InvalidParameterError, QuadratureError
from .kernels import Tabulated
from .tables import fmt, parse_temperatures, rate_table, spectrum_table, write_text

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_INVALID = 2
EXIT_NO_CONVERGENCE = 3
EXIT_IO = 4


def _add_physics(p: argparse.ArgumentParser, omega0: bool = True) -> None:
    p.add_argument("--gamma0", type=float, default=1.0, help="static Robin parameter (> 0)")
    p.add_argument("--epsilon0", type=float, default=0.01, help="drive amplitude")
    if omega0:
        p.add_argument("--omega0", type=float, default=1.0, help="drive frequency")
    p.add_argument("--tau", type=float, default=100.0, help="drive damping time")
    p.add_argument("--convention", choices=[c.value for c in ThermalConvention],
                   default=ThermalConvention.SELF_CONSISTENT.value)
    p.add_argument("--method", choices=[m.value for m in Method], default=Method.CLOSED_FORM.value)
    p.add_argument("--rel-tol", type=float, default=1e-10)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="robin-dce",
        description="Particle creation by a static mirror with a time-dependent Robin parameter.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("spectrum", help="scaled spectral densities on a frequency grid")
    _add_physics(sp)
    sp.add_argument("--temperature", type=float, default=0.0)
    sp.add_argument("--grid", default="0:1.5:301", help="start:stop:count")
    sp.add_argument("--profile-file", help="two-column (time, delta_gamma) text file")
    sp.add_argument("--out", help="output CSV (default: stdout)")

    rp = sub.add_parser("rate", help="scaled creation rates over an omega0 sweep")
    _add_physics(rp, omega0=False)
    rp.add_argument("--omega0-sweep", required=True, help="start:stop:count")
    rp.add_argument("--temperatures", "--temperature", default="0",
                    help="comma-separated temperatures")
    rp.add_argument("--out", help="output CSV (default: stdout)")

    fp = sub.add_parser("figures", help="write the figure CSVs and a plotting script")
    fp.add_argument("--outdir", "--out", default="figures")
    fp.add_argument("--epsilon0", type=float, default=0.01)
    fp.add_argument("--tau", type=float, default=100.0)
    fp.add_argument("--convention", choices=[c.value for c in ThermalConvention],
                    default=ThermalConvention.SELF_CONSISTENT.value)
    fp.add_argument("--rel-tol", type=float, default=1e-10)

    vp = sub.add_parser("validate", help="run the built-in cross-checks")
    vp.add_argument("--out", help="also write the report as CSV")
    return parser


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        write_text(out, text)


def _check_params(p: PhysicalParams) -> None:
    report = validate_params(p)
    print(f"validation: {', '.join(report.labels())}" + ("" if report.ok else f" ({report})"),
          file=sys.stderr)
    if report.hard:
        raise InvalidParameterError(str(report))


def cmd_spectrum(args) -> int:
    p = PhysicalParams(args.gamma0, args.epsilon0, args.omega0, args.tau, args.temperature)
    _check_params(p)
    profile = Tabulated.from_file(args.profile_file) if args.profile_file else None
    text = spectrum_table(p, args.grid, args.convention, args.method, args.rel_tol,
                          profile, args.profile_file)
    _emit(text, args.out)
    return EXIT_OK


def cmd_rate(args) -> int:
    temps = parse_temperatures(args.temperatures)
    p = PhysicalParams(args.gamma0, args.epsilon0, 1.0, args.tau, max(temps))
    _check_params(p)
    text = rate_table(p, args.omega0_sweep, temps, args.convention, args.method, args.rel_tol)
    _emit(text, args.out)
    return EXIT_OK


def cmd_figures(args) -> int:
    from .figures import write_figures

    p = PhysicalParams(1.0, args.epsilon0, 1.0, args.tau)
    _check_params(p)
    paths = write_figures(args.outdir, args.convention, args.epsilon0, args.tau, args.rel_tol)
    for path in paths:
        print(path, file=sys.stderr)
    return EXIT_OK


def cmd_validate(args) -> int:
    from .validation import run_checks

    results = run_checks()
    for r in results:
        status = "PASS" if r.passed else "FAIL"
        line = f"[{status}] {r.name}: measured={r.measured:.6g} threshold={r.threshold:.3g}"
        if r.detail:
            line += f"  ({r.detail})"
        print(line)
    failed = [r.name for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} checks passed"
          + (f"; failed: {', '.join(failed)}" if failed else ""))
    if args.out:
        buf = io.StringIO()
        buf.write("check,passed,measured,threshold,detail\n")
        for r in results:
            detail = r.detail.replace('"', "'")
            buf.write(f'{r.name},{int(r.passed)},{fmt(r.measured)},{fmt(r.threshold)},"{detail}"\n')
        write_text(args.out, buf.getvalue())
    return EXIT_VALIDATION if failed else EXIT_OK


COMMANDS = {
    "spectrum": cmd_spectrum,
    "rate": cmd_rate,
    "figures": cmd_figures,
    "validate": cmd_validate,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (InvalidParameterError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except QuadratureError as exc:
        print(f"error: numerical non-convergence: {exc}", file=sys.stderr)
        return EXIT_NO_CONVERGENCE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
