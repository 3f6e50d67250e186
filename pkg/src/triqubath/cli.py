"""Command-line front end.

Subcommands: sweep, curve, point, asymptotic, bathpath. Each takes
--config <path> plus targeted overrides. Exit codes: 0 success, 1 config
error, 2 numerical failure; diagnostics go to stderr as JSON lines.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from . import sweep as sweep_mod
from .config import SweepConfig, load_config
from .errors import ConfigError, NumericalError, TriqubathError, ValidationError
from .model import CouplingParams, DephasingPoint, parse_coupling_value


class _Parser(argparse.ArgumentParser):
    """argparse that reports usage problems as config errors (exit 1)."""

    def error(self, message):
        raise ConfigError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="triqubath",
                     description="three dephasing qubits in a common bath")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, text in (
            ("sweep", "classify an (f, phi) grid"),
            ("curve", "negativity and bound curves over f at fixed phi"),
            ("point", "inspect a single (f, phi) point"),
            ("asymptotic", "f -> infinity state report"),
            ("bathpath", "bath-induced (t, f, phi) trajectory")):
        p = sub.add_parser(name, help=text)
        p.add_argument("--config", help="JSON configuration file")
        p.add_argument("--lambda2", help="override coupling lambda2 (float or p/q)")
        p.add_argument("--lambda3", help="override coupling lambda3 (float or p/q)")
        p.add_argument("--seed", type=int, help="override optimizer seed")
        p.add_argument("--out", help="output path stem")
        p.add_argument("--no-figure", action="store_true",
                       help="skip the rendered png")
        if name in ("curve", "point"):
            p.add_argument("--phi", type=float, help="override phi value")
        if name == "point":
            p.add_argument("--f", type=float, help="override f value")
    return parser


def _apply_overrides(cfg: SweepConfig, args) -> SweepConfig:
    if args.lambda2 is not None or args.lambda3 is not None:
        if args.lambda2 is None or args.lambda3 is None:
            base = cfg.coupling
            if base is None:
                raise ConfigError("--lambda2/--lambda3 must be given together "
                                  "when the config has no coupling")
            l2 = args.lambda2 if args.lambda2 is not None else base.lambda2
            l3 = args.lambda3 if args.lambda3 is not None else base.lambda3
        else:
            l2, l3 = args.lambda2, args.lambda3
        try:
            cfg.coupling = CouplingParams.parse(l2, l3)
        except ValidationError as exc:
            raise ConfigError(str(exc)) from exc
    if args.seed is not None:
        opt = cfg.optimizer
        cfg.optimizer = type(opt)(starts=opt.starts,
                                  max_iterations=opt.max_iterations,
                                  tolerance=opt.tolerance, seed=args.seed)
    if getattr(args, "phi", None) is not None:
        if args.phi < 0:
            raise ConfigError("--phi must be >= 0")
        cfg.phi_value = args.phi
    if getattr(args, "f", None) is not None:
        if args.f < 0:
            raise ConfigError("--f must be >= 0")
        cfg.f_value = args.f
    if args.out is not None:
        cfg.out_path = args.out
    return cfg


def _load(args) -> SweepConfig:
    cfg = load_config(args.config) if args.config else SweepConfig()
    if cfg.rho0 is None:
        from .config import parse_config
        cfg.rho0 = parse_config({}).rho0
    return _apply_overrides(cfg, args)


def _ensure_parent(path: str) -> None:
    parent = os.path.dirname(os.path.abspath(path))
    os.makedirs(parent, exist_ok=True)


def _out_stem(cfg: SweepConfig, default: str) -> str:
    stem = cfg.out_path or default
    _ensure_parent(stem + ".csv")
    return stem


def _row_json(row) -> dict:
    return {
        "f": row.f, "phi": row.phi,
        "negativity": [row.neg1, row.neg2, row.neg3],
        "two_negativity": [2 * row.neg1, 2 * row.neg2, 2 * row.neg3],
        "tau3_lb": row.tau3_lb, "cgme_lb": row.cgme_lb,
        "ghz_fidelity_opt": row.ghz_fidelity_opt,
        "class": row.class_label,
    }


def _cmd_sweep(args) -> int:
    cfg = _load(args)
    rows = sweep_mod.run_sweep(cfg)
    stem = _out_stem(cfg, "sweep")
    sweep_mod.write_csv(rows, stem + ".csv")
    sweep_mod.emit_map(rows, stem + ".ppm")
    if not args.no_figure:
        from . import plotting
        plotting.class_map_figure(rows, stem + ".png")
    print(stem + ".csv")
    return 0


def _cmd_curve(args) -> int:
    cfg = _load(args)
    rows = sweep_mod.run_curve(cfg)
    stem = _out_stem(cfg, "curve")
    sweep_mod.write_csv(rows, stem + ".csv")
    if not args.no_figure:
        from . import plotting
        plotting.curve_figure(rows, stem + ".png")
    print(stem + ".csv")
    return 0


def _cmd_point(args) -> int:
    cfg = _load(args)
    row = sweep_mod.run_point(cfg)
    doc = _row_json(row)
    if cfg.out_path:
        _ensure_parent(cfg.out_path)
        with open(cfg.out_path, "w", encoding="utf-8") as fh:
            json.dump(doc, fh, indent=2)
            fh.write("\n")
    print(json.dumps(doc, indent=2))
    return 0


def _cmd_asymptotic(args) -> int:
    cfg = _load(args)
    if cfg.coupling is None:
        raise ConfigError("asymptotic requires a coupling "
                          "(config or --lambda2/--lambda3)")
    report = sweep_mod.run_asymptotic(cfg.coupling)
    doc = {
        "case": report.case_label,
        "matrix_re": [[float(x.real) for x in row] for row in report.matrix],
        "matrix_im": [[float(x.imag) for x in row] for row in report.matrix],
        "negativity": list(report.negativity),
    }
    if report.matrix_exact is not None:
        doc["matrix_exact"] = report.matrix_exact
    if cfg.out_path:
        _ensure_parent(cfg.out_path)
        with open(cfg.out_path, "w", encoding="utf-8") as fh:
            json.dump(doc, fh, indent=2)
            fh.write("\n")
    print(json.dumps(doc, indent=2))
    return 0


def _cmd_bathpath(args) -> int:
    cfg = _load(args)
    if cfg.bath is None:
        raise ConfigError("bathpath requires a 'bath' block in the config")
    if cfg.times is None:
        raise ConfigError("bathpath requires 'times' in the config")
    bp = sweep_mod.run_bath_path(cfg.bath, cfg.times)
    stem = _out_stem(cfg, "bathpath")
    with open(stem + ".csv", "w", encoding="utf-8", newline="\n") as fh:
        fh.write(sweep_mod.bath_path_to_csv(bp))
    if not args.no_figure:
        from . import plotting
        plotting.bath_path_figure(bp, stem + ".png")
    print(stem + ".csv")
    return 0


_COMMANDS = {
    "sweep": _cmd_sweep,
    "curve": _cmd_curve,
    "point": _cmd_point,
    "asymptotic": _cmd_asymptotic,
    "bathpath": _cmd_bathpath,
}


def _emit_error(kind: str, message: str) -> None:
    print(json.dumps({"error": kind, "message": message}), file=sys.stderr)


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args)
    except ConfigError as exc:
        _emit_error("config", str(exc))
        return 1
    except (NumericalError, ValidationError) as exc:
        _emit_error("numerical", str(exc))
        return 2
    except TriqubathError as exc:
        _emit_error("internal", str(exc))
        return 2


if __name__ == "__main__":
    sys.exit(main())
