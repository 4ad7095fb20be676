"""Command-line front end.

Every run echoes its fully resolved configuration as YAML on stderr; feeding
that file back through ``--config`` reproduces the output byte for byte.

Exit codes: 0 success, 1 numerical failure, 2 usage error.
"""
from __future__ import annotations

import argparse
import dataclasses
import sys
import warnings

from .config import COMMANDS, FIGURES, FORMATS, RunConfig, atom_by_name, load_config
from .errors import WgmError
from .report import humanize, to_csv, to_human
from .tables import build_table

EXIT_OK, EXIT_NUMERIC, EXIT_USAGE = 0, 1, 2


def _common(p: argparse.ArgumentParser):
    p.add_argument("--config", help="YAML run configuration; flags override its values")
    p.add_argument("--lambda", dest="lambda0", type=float, help="vacuum wavelength (m)")
    p.add_argument("--n-fixed", type=float, help="wavelength-independent refractive index")
    p.add_argument("--atom", help="atomic transition name, e.g. cs-d2")
    p.add_argument("--q-fixed", type=float, help="fixed cavity Q replacing the loss model")
    p.add_argument("--l", type=int, help="angular mode number l = m")
    p.add_argument("--l-min", type=int)
    p.add_argument("--l-max", type=int)
    p.add_argument("--n", dest="indices", type=float, nargs="+",
                   help="refractive indices for the dimensionless figures")
    p.add_argument("--radius", type=float, help="sphere radius for a scenario (m)")
    p.add_argument("--volume-policy", choices=("shell", "adaptive"))
    p.add_argument("--workers", type=int)
    p.add_argument("--out", help="write the table here instead of stdout")
    p.add_argument("--format", choices=FORMATS)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wgmcqed",
        description="Whispering-gallery microsphere modes, Q budgets and cavity-QED parameters.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "mode": "report one resonance",
        "sweep": "tabulate an l range",
        "optimize": "minima of n0, N0, their geometric mean and the n0 = N0 crossing",
        "qbudget": "loss budget per l",
        "scenario": "fixed-radius scenarios and literature comparison points",
    }
    for name in COMMANDS:
        if name == "reproduce":
            p = sub.add_parser("reproduce", help="emit the data behind one figure")
            p.add_argument("figure", choices=FIGURES)
        else:
            p = sub.add_parser(name, help=helps[name])
        _common(p)
    p = sub.add_parser("run", help="run the command stored in a config file")
    _common(p)
    return parser


def resolve_config(args: argparse.Namespace) -> RunConfig:
    base = load_config(args.config) if args.config else RunConfig()
    updates = {}
    if args.command != "run":
        updates["command"] = args.command
        updates["figure"] = getattr(args, "figure", None)
    for key in ("lambda0", "q_fixed", "l", "l_min", "l_max", "radius", "volume_policy",
                "workers", "out", "format"):
        value = getattr(args, key)
        if value is not None:
            updates[key] = value
    if args.indices is not None:
        updates["indices"] = tuple(args.indices)
    if args.atom is not None:
        atom = atom_by_name(args.atom)
        updates["atom"] = atom
        if args.lambda0 is None:
            updates["lambda0"] = atom.lambda0
    if args.n_fixed is not None:
        updates["material"] = base.material.with_index(args.n_fixed)
    cfg = dataclasses.replace(base, **updates).resolved()
    if cfg.command == "mode" and cfg.l is None:
        raise ValueError("mode needs --l")
    if cfg.command == "reproduce" and cfg.figure is None:
        raise ValueError(f"reproduce needs a figure id from {FIGURES}")
    return cfg


def render(cfg: RunConfig, table) -> str:
    return to_human(humanize(table)) if cfg.format == "human" else to_csv(table)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        cfg = resolve_config(args)
    except (ValueError, OSError) as exc:
        print(f"wgmcqed: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    sys.stderr.write("# resolved configuration\n" + cfg.to_yaml())
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("default")
            table = build_table(cfg)
    except (WgmError, ArithmeticError) as exc:
        print(f"wgmcqed: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ValueError as exc:
        print(f"wgmcqed: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = render(cfg, table)
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
