"""Command-line front end.

Exit codes: 0 success, 1 validation-suite failure, 2 bad input, 3 I/O failure.
"""
from __future__ import annotations

import argparse
import math
import os
import re
import sys

from .errors import KerrJCError, ParameterError
from .sweep import ENGINES, FIGURES, PARAM_NAMES, Axis, SweepSpec, figure_spec, run_sweep

EXIT_OK, EXIT_FAILED, EXIT_INPUT, EXIT_IO = 0, 1, 2, 3

COMMANDS = ("point", *sorted(FIGURES), "sweep", "audit", "validate")
CSV_HEADER = "T,eta,zeta,theta,n1,n2,negativity,negativity_closed_form,engine_gap"
ENGINE_FLAGS = {"closed": "closed_form", "oracle": "oracle", "both": "both"}
# defaults for ``sweep`` when a parameter is neither swept nor given
SWEEP_DEFAULTS = {"T": 1.0, "eta": 1.0, "zeta": 0.0, "theta": math.pi / 4, "n1": 0, "n2": 0}
# option dest -> parameter name
PARAM_DESTS = {"n1": "n1", "n2": "n2", "eta": "eta", "zeta": "zeta", "theta": "theta", "t": "T"}

_PI_TOKEN = re.compile(r"^([+-]?)(\d+(?:\.\d*)?)?\*?pi(?:/(\d+(?:\.\d*)?))?$")


class UsageError(Exception):
    pass


class InputError(Exception):
    pass


def parse_real(text: str) -> float:
    """Float, or a multiple of pi such as ``pi/4``, ``3pi/4``, ``-2*pi``."""
    s = str(text).strip().lower().replace(" ", "")
    m = _PI_TOKEN.match(s)
    if m:
        sign, mult, div = m.groups()
        value = math.pi
        if mult:
            value = float(mult) * value
        if div:
            value = value / float(div)
        return -value if sign == "-" else value
    try:
        value = float(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a real number: {text!r}") from None
    if not math.isfinite(value):
        raise argparse.ArgumentTypeError(f"not finite: {text!r}")
    return value


def parse_axis(text: str) -> Axis:
    parts = str(text).split(":")
    if len(parts) != 4:
        raise argparse.ArgumentTypeError(f"axis must look like NAME:START:STOP:COUNT, got {text!r}")
    name, start, stop, count = parts
    try:
        return Axis(name, parse_real(start), parse_real(stop), int(count))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="kerrjc", description="Negativity dynamics of a two-mode Kerr Jaynes-Cummings system.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--n1", type=int)
    p.add_argument("--n2", type=int)
    p.add_argument("--eta", type=parse_real)
    p.add_argument("--zeta", type=parse_real)
    p.add_argument("--theta", type=parse_real, help="radians; accepts pi/4 style tokens")
    p.add_argument("--t", type=parse_real, help="scaled time T")
    p.add_argument("--t-max", type=parse_real, help="end of the T axis")
    p.add_argument("--samples", type=int, help="grid points on the first axis (draws for validate)")
    p.add_argument("--axis", type=parse_axis, help="NAME:START:STOP:COUNT")
    p.add_argument("--axis2", type=parse_axis, help="NAME:START:STOP:COUNT")
    p.add_argument("--engine", choices=tuple(ENGINE_FLAGS), default="closed")
    p.add_argument("--output", help="output path (default: stdout)")
    p.add_argument("--format", choices=("csv", "ascii"), default="csv")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--config", help="key=value file; command-line flags take precedence")
    p.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)
    return p


def read_config(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read config {path!r}: {exc.strerror}") from None
    values = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise InputError(f"{path}:{lineno}: expected key=value")
        key, value = (s.strip() for s in line.split("=", 1))
        values[key] = value
    return values


def parse_args(argv):
    parser = build_parser()
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config")
    known, _ = pre.parse_known_args(argv)
    if known.config:
        dests = {a.dest: a for a in parser._actions}
        defaults = {}
        for key, value in read_config(known.config).items():
            dest = key.lstrip("-").replace("-", "_")
            if dest in ("command", "config", "help") or dest not in dests:
                raise InputError(f"unknown config key {key!r}")
            if dest == "inject_fault":
                defaults[dest] = value.lower() in ("1", "true", "yes")
            else:
                defaults[dest] = value  # argparse converts string defaults with the option's type
        parser.set_defaults(**defaults)
    return parser.parse_args(argv)


def _given_params(args) -> dict:
    return {name: getattr(args, dest) for dest, name in PARAM_DESTS.items()
            if getattr(args, dest) is not None}


def _fmt(x) -> str:
    return str(x) if isinstance(x, int) else format(float(x), ".17g")


def csv_lines(result):
    yield CSV_HEADER
    for r in result.rows:
        yield ",".join(_fmt(v) for v in (r.T, r.eta, r.zeta, r.theta, r.n1, r.n2,
                                         r.negativity, r.negativity_closed_form, r.engine_gap))


def ascii_render(result) -> str:
    from .asciiplot import plot_curve, plot_surface

    spec = result.spec
    if spec.axis2 is None:
        x = [result.axis_values(r)[0] for r in result.rows]
        return plot_curve(x, result.column("negativity"), label=f"negativity vs {spec.axis1.name}")
    a1, a2 = spec.axis1, spec.axis2
    return plot_surface(result.grid("negativity"), a1.name, a2.name,
                        (a1.start, a1.stop), (a2.start, a2.stop))


def emit(text: str, path) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(f"cannot write {path!r}: {exc.strerror}") from None


def _write_result(result, args):
    if args.format == "ascii":
        emit(ascii_render(result) + "\n", args.output)
    else:
        emit("\n".join(csv_lines(result)) + "\n", args.output)


def figure_command(args) -> SweepSpec:
    if args.axis is not None or args.axis2 is not None:
        raise ParameterError("axis", f"{args.command} has fixed axes; use the sweep command")
    spec = figure_spec(args.command, ENGINE_FLAGS[args.engine])
    fixed = dict(spec.fixed)
    swept = {ax.name for ax in spec.axes}
    for name, value in _given_params(args).items():
        if name in swept:
            raise ParameterError(name, f"is swept by {args.command}")
        fixed[name] = value
    axis1, axis2 = spec.axis1, spec.axis2
    if args.t_max is not None:
        if axis1.name == "T":
            axis1 = Axis("T", axis1.start, args.t_max, axis1.count)
        else:
            raise ParameterError("t-max", f"{args.command} does not sweep T")
    if args.samples is not None:
        axis1 = Axis(axis1.name, axis1.start, axis1.stop, args.samples)
    return SweepSpec(fixed, axis1, axis2, spec.engine)


def sweep_command(args) -> SweepSpec:
    axis1 = args.axis
    if axis1 is None:
        if args.t_max is None:
            raise ParameterError("axis", "sweep needs --axis (or --t-max for a T sweep)")
        axis1 = Axis("T", 0.0, args.t_max, args.samples if args.samples is not None else 1001)
    elif args.samples is not None:
        axis1 = Axis(axis1.name, axis1.start, axis1.stop, args.samples)
    swept = {axis1.name} | ({args.axis2.name} if args.axis2 else set())
    fixed = dict(SWEEP_DEFAULTS) | _given_params(args)
    fixed = {k: v for k, v in fixed.items() if k not in swept}
    return SweepSpec(fixed, axis1, args.axis2, ENGINE_FLAGS[args.engine])


def cmd_point(args) -> int:
    from .entanglement import mode_density, negativity
    from .model import ModelParams, amplitudes
    from .oracle import amplitudes_oracle

    given = _given_params(args)
    missing = [name for name in PARAM_NAMES if name not in given]
    if missing:
        flags = ", ".join("--t" if m == "T" else f"--{m}" for m in missing)
        raise ParameterError(missing[0], f"point needs values for {flags}")
    params = ModelParams(n1=given["n1"], n2=given["n2"], theta=given["theta"],
                         eta=given["eta"], zeta=given["zeta"])
    t = given["T"]
    engine = ENGINE_FLAGS[args.engine]
    amps = amplitudes_oracle(params, t) if engine == "oracle" else amplitudes(params, t)
    rho = mode_density(amps, params.n1, params.n2)
    res = negativity(rho)
    out = [f"{k}={_fmt(given[k])}" for k in PARAM_NAMES]
    out.append(f"engine={engine}")
    for k, z in zip("abcd", amps.as_tuple()):
        out.append(f"{k}={_fmt(z.real)}{'+' if z.imag >= 0 else '-'}{_fmt(abs(z.imag))}j")
    for i, j in zip(*rho.entries.nonzero()):
        z = rho.entries[i, j]
        out.append(f"rho[{i},{j}]={_fmt(z.real)}{'+' if z.imag >= 0 else '-'}{_fmt(abs(z.imag))}j")
    out.append("pt_eigenvalues=" + ",".join(_fmt(x) for x in res.pt_eigenvalues))
    out.append(f"negativity={_fmt(res.value)}")
    out.append(f"negativity_closed_form={_fmt(res.closed_form_value)}")
    if engine == "both":
        ref = negativity(mode_density(amplitudes_oracle(params, t), params.n1, params.n2)).value
        out.append(f"negativity_oracle={_fmt(ref)}")
        out.append(f"engine_gap={_fmt(abs(ref - res.value))}")
    emit("\n".join(out) + "\n", args.output)
    return EXIT_OK


def cmd_audit(args) -> int:
    from .audit import run_audit

    if args.samples is not None and args.samples < 2:
        raise ParameterError("samples", f"need >= 2 grid points, got {args.samples}")
    overrides = {k: v for k, v in _given_params(args).items() if k in ("eta", "zeta", "theta")}
    report = run_audit(overrides, args.samples)
    sys.stdout.write(report.text())
    if args.output:
        emit("\n".join(report.csv_lines()) + "\n", args.output)
    return EXIT_OK


def cmd_validate(args) -> int:
    from .validate import faulty_amplitudes, run_suite
    from .model import amplitudes

    draws = 100 if args.samples is None else args.samples
    if draws < 1:
        raise ParameterError("samples", f"need at least one draw, got {draws}")
    checks = run_suite(args.seed, draws, faulty_amplitudes if args.inject_fault else amplitudes)
    lines = [f"validate seed={args.seed} draws={draws}"]
    for c in checks:
        lines.append(f"{'PASS' if c.passed else 'FAIL'} {c.name:<14} max_violation={c.violation:.3e} "
                     f"tol={c.tol:.0e}")
    failed = [c.name for c in checks if not c.passed]
    lines.append("all properties pass" if not failed else "failed: " + ", ".join(failed))
    emit("\n".join(lines) + "\n", args.output)
    return EXIT_FAILED if failed else EXIT_OK


def run(args) -> int:
    if args.command == "point":
        return cmd_point(args)
    if args.command == "audit":
        return cmd_audit(args)
    if args.command == "validate":
        return cmd_validate(args)
    spec = sweep_command(args) if args.command == "sweep" else figure_command(args)
    if args.workers < 1:
        raise ParameterError("workers", f"need >= 1, got {args.workers}")
    _write_result(run_sweep(spec, args.workers), args)
    return EXIT_OK


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        args = parse_args(argv)
        return run(args)
    except (UsageError, InputError, KerrJCError, ValueError) as exc:
        print(f"kerrjc: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except BrokenPipeError:
        # downstream reader closed early (e.g. piped into head)
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        return EXIT_OK
    except OSError as exc:
        print(f"kerrjc: error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
