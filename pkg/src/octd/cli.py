"""Command-line entry point.

    octd recipes
    octd <experiment> --config <file> [--out <dir>] [--seed <u64>] [--threads <n>]
    octd <experiment> --recipe <name> [--out <dir>] [--seed <u64>] [--threads <n>]

Exit codes: 0 success, 2 configuration error, 3 numerical failure,
4 run finished but the Fock-truncation leakage guard tripped.
"""

from __future__ import annotations

import argparse
import os
import sys
import time

from .classical import IntegrationError
from .experiments import (
    EXPERIMENTS,
    ConfigError,
    config_from_recipe,
    list_recipes,
    load_config,
    run,
)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERIC = 3
EXIT_LEAKAGE = 4


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="octd", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("recipes", help="list the named figure recipes")
    for exp in EXPERIMENTS:
        p = sub.add_parser(exp, help=f"run the {exp} experiment")
        src = p.add_mutually_exclusive_group(required=True)
        src.add_argument("--config", help="INI config file with [model] and [run] sections")
        src.add_argument("--recipe", help="named recipe providing all parameters")
        p.add_argument("--out", help="output directory (default: $OCTD_OUT_ROOT/<experiment>-<stamp>)")
        p.add_argument("--seed", type=int, default=0, help="base RNG seed (unsigned 64-bit)")
        p.add_argument("--threads", type=int, default=1, help="worker threads for ensembles")
    return parser


def _default_out(experiment: str) -> str:
    root = os.environ.get("OCTD_OUT_ROOT", "octd_runs")
    return os.path.join(root, f"{experiment}-{time.strftime('%Y%m%dT%H%M%S')}")


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    if args.command == "recipes":
        for r in list_recipes():
            print(f"{r['name']:32s} {r['experiment']:18s} {r['description']}")
        return EXIT_OK
    if args.seed < 0 or args.seed >= 2**64:
        print("error: --seed must be an unsigned 64-bit integer", file=sys.stderr)
        return EXIT_CONFIG
    out_dir = args.out or _default_out(args.command)
    try:
        if args.recipe is not None:
            cfg = config_from_recipe(args.recipe, out_dir, seed=args.seed, threads=args.threads)
            if cfg.experiment != args.command:
                raise ConfigError(
                    f"recipe {args.recipe!r} belongs to experiment {cfg.experiment!r}, "
                    f"not {args.command!r}"
                )
        else:
            cfg = load_config(args.config, args.command, out_dir,
                              seed=args.seed, threads=args.threads)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        manifest = run(cfg)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (IntegrationError, RuntimeError, FloatingPointError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    print(f"wrote {', '.join(manifest['artifacts'])} to {cfg.out_dir}")
    if manifest.get("leakage_flag"):
        print(
            f"warning: Fock-truncation leakage {manifest['leakage']:.2e} exceeded the guard; "
            "re-run with a larger n_max",
            file=sys.stderr,
        )
        return EXIT_LEAKAGE
    return EXIT_OK


if __name__ == "__main__":
    raise SystemExit(main())
