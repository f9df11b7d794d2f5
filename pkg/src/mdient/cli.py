"""Command-line front end: ``eval``, ``sweep``, ``verify`` and ``thermal``.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace

from . import measures as me
from . import model
from . import sweep as sw
from . import verification
from .errors import ConfigError, InvalidArgumentError
from .output import FORMATS, write_records
from .states import format_state_spec, parse_state_spec

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _float(text: str) -> float:
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def _vector(text: str):
    parts = text.split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected x,y,z, got {text!r}")
    return tuple(_float(p) for p in parts)


def _assignment(text: str):
    key, eq, value = text.partition("=")
    if not eq:
        raise argparse.ArgumentTypeError(f"expected name=value, got {text!r}")
    return key.strip(), _float(value)


def _hamiltonian_axis(args) -> model.DipoleAxis:
    try:
        return model.DipoleAxis.from_direction(args.axis, args.coupling_d)
    except InvalidArgumentError as exc:
        raise UsageError(str(exc)) from None


def _add_axis_flags(p):
    p.add_argument("--axis", type=_vector, default=(0.0, 0.0, 1.0),
                   help="dipole axis direction x,y,z (normalized; default 0,0,1)")
    p.add_argument("--coupling-d", type=_float, default=1.0,
                   help="coupling strength D; time is in units of 1/D (default 1)")


def _emit(record: dict, fmt: str):
    write_records([record], list(record), sys.stdout, fmt)


def cmd_eval(args) -> int:
    try:
        spec = parse_state_spec(args.state)
    except InvalidArgumentError as exc:
        raise UsageError(str(exc)) from None
    axis = _hamiltonian_axis(args)
    report = me.measure_report(sw.evolve_point(spec, args.t, axis))
    record = {"state": format_state_spec(spec), "t": args.t}
    record.update({k: v for k, v in report.as_dict().items() if k != "wootters_lambdas"})
    _emit(record, args.format)
    return EXIT_OK


def _sweep_config(args) -> sw.SweepConfig:
    if (args.preset is None) == (args.config is None):
        raise UsageError("give exactly one of --preset or --config")
    if args.config is not None:
        try:
            with open(args.config) as fh:
                cfg = sw.parse_config(fh.read())
        except OSError as exc:
            raise UsageError(f"cannot read config: {exc}") from None
    else:
        fixed = dict(args.fix)
        if args.t is not None:
            fixed["t"] = args.t
        cfg = sw.preset(args.preset, args.count, **fixed)
    changes = {}
    if args.quantities:
        changes["quantities"] = tuple(q.strip() for q in args.quantities.split(","))
    if args.axis is not None or args.coupling_d is not None:
        axis = cfg.hamiltonian
        changes["hamiltonian"] = model.DipoleAxis.from_direction(
            args.axis if args.axis is not None else axis.n_hat,
            args.coupling_d if args.coupling_d is not None else axis.coupling_d,
        )
    if changes:
        cfg = replace(cfg, **changes)
    return cfg


def cmd_sweep(args) -> int:
    cfg = _sweep_config(args)
    records = sw.run_sweep(cfg)
    if args.out in (None, "-"):
        write_records(records, cfg.columns, sys.stdout, args.format)
        return EXIT_OK
    try:
        with open(args.out, "w", newline="") as fh:
            n = write_records(records, cfg.columns, fh, args.format)
    except OSError as exc:
        raise UsageError(f"cannot write {args.out}: {exc}") from None
    print(f"wrote {n} records to {args.out}", file=sys.stderr)
    return EXIT_OK


def cmd_verify(args) -> int:
    suites = list(verification.SUITES) if args.suite == "all" else [args.suite]
    failed = 0
    for name in suites:
        print(f"# {name}")
        for check in verification.SUITES[name]():
            print(check)
            failed += not check.passed
    print(f"{'FAILED' if failed else 'OK'}: {failed} failing check(s)")
    return EXIT_FAIL if failed else EXIT_OK


def cmd_thermal(args) -> int:
    if args.beta < 0:
        raise UsageError("--beta must be >= 0")
    axis = _hamiltonian_axis(args)
    rho = model.gibbs_state(model.build_hamiltonian(axis), args.beta)
    report = me.measure_report(rho)
    record = {"beta": args.beta, "concurrence": report.concurrence, "purity": report.purity,
              "coherence": float(me.l1_coherence(rho)),
              "coherence_a": report.coherence_a, "coherence_b": report.coherence_b}
    _emit(record, args.format)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mdient",
        description="Two-qubit dynamics under the magnetic dipolar interaction.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", help="measures of one evolved state")
    p.add_argument("--state", required=True,
                   help="e.g. pure:theta_a=0,theta_b=3.14159 | mixed:axis=z,ra=0.5,rb=-0.5 "
                        "| ent:w=0.25 | depol:w=0.25,p=0.8")
    p.add_argument("--t", type=_float, required=True, help="time in units of 1/D")
    _add_axis_flags(p)
    p.add_argument("--format", choices=FORMATS, default="jsonl")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("sweep", help="grid sweep for a figure preset or config file")
    p.add_argument("--preset", choices=sw.PRESETS)
    p.add_argument("--config", help="key = value sweep description")
    p.add_argument("--t", type=_float, help="override the preset's fixed time")
    p.add_argument("--fix", type=_assignment, action="append", default=[],
                   metavar="NAME=VALUE", help="override a preset's fixed parameter")
    p.add_argument("--count", type=int, default=101, help="points per preset axis")
    p.add_argument("--quantities", help="comma list from " + ",".join(sw.QUANTITIES))
    p.add_argument("--axis", type=_vector, default=None)
    p.add_argument("--coupling-d", type=_float, default=None)
    p.add_argument("--out", help="output path (default stdout)")
    p.add_argument("--format", choices=FORMATS, default="csv")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("verify", help="run a property suite")
    p.add_argument("--suite", choices=[*verification.SUITES, "all"], default="all")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("thermal", help="measures of the Gibbs state")
    p.add_argument("--beta", type=_float, required=True)
    _add_axis_flags(p)
    p.add_argument("--format", choices=FORMATS, default="jsonl")
    p.set_defaults(func=cmd_thermal)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ConfigError, InvalidArgumentError) as exc:
        print(f"mdient {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
