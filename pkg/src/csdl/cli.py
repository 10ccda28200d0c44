"""Command-line interface.

Subcommands: ``exp1``..``exp4`` run the experiments, ``fit`` decomposes one
signal file, ``summarize`` aggregates an existing per-trial CSV. A config
file of ``key = value`` lines can pre-set any flag of the chosen
subcommand; flags given on the command line override it.

Exit codes: 0 success, 1 input error, 2 I/O error, 3 internal numerical
failure.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .exceptions import InputError, NumericalError, OutputError
from .harness import (
    EXPERIMENTS,
    ExperimentConfig,
    NOISE_FLAGS,
    PROFILES,
    SPARSITY_RULES,
    run_experiment,
    run_fit,
    summarize,
)

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_IO = 2
EXIT_NUMERICAL = 3


class _Parser(argparse.ArgumentParser):
    """argparse that reports problems through the package's exit codes."""

    def error(self, message):
        raise InputError(message)


def _add_experiment_parser(subparsers, name: str) -> None:
    p = subparsers.add_parser(name, help=f"run {name}")
    p.add_argument("--trials", type=int, default=None, help="trials per grid point")
    p.add_argument("--seed", type=int, default=0, help="master seed")
    p.add_argument("--out", default="out", help="output directory")
    p.add_argument("--profile", choices=PROFILES, default="desk")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--timing", choices=("off", "wall"), default="off",
                   help="'wall' records per-trial wall time (breaks byte reproducibility)")
    if name in ("exp1", "exp4"):
        p.add_argument("--sparsity-rule", choices=SPARSITY_RULES, default=None)
    if name == "exp2":
        p.add_argument("--noise", choices=NOISE_FLAGS, default="iid")


def build_parser() -> _Parser:
    parser = _Parser(prog="csdl", description=__doc__)
    parser.add_argument("--config", default=None, help="key = value file of flag defaults")
    subparsers = parser.add_subparsers(dest="command", required=True)

    for name in EXPERIMENTS:
        _add_experiment_parser(subparsers, name)

    fit = subparsers.add_parser("fit", help="decompose one signal file")
    fit.add_argument("--input", required=True, help="CSV with a single 'value' column")
    fit.add_argument("--n", type=int, required=True, help="dictionary atom length")
    fit.add_argument("--k", type=int, required=True, help="number of atoms")
    fit.add_argument("--lambda", dest="lam", type=float, default=None,
                     help="L_{1,1} budget (constrained mode)")
    fit.add_argument("--lambda-prime", dest="lam_prime", type=float, default=None,
                     help="penalty weight (penalized mode)")
    fit.add_argument("--delta", type=float, default=None,
                     help="failure probability; with --sigma selects the recommended penalty")
    fit.add_argument("--sigma", type=float, default=None,
                     help="noise scale for bound certificates")
    fit.add_argument("--proof-lambda-prime", action="store_true",
                     help="use the derivation's sqrt(n)-inflated penalty weight")
    fit.add_argument("--truth", default=None, help="optional ground-truth signal CSV")
    fit.add_argument("--out", default="fit_out", help="output directory")
    fit.add_argument("--seed", type=int, default=0)
    fit.add_argument("--iterations", type=int, default=200)
    fit.add_argument("--step-scale", type=float, default=0.01)

    summ = subparsers.add_parser("summarize", help="aggregate a per-trial CSV")
    summ.add_argument("--input", required=True)
    summ.add_argument("--out", required=True)
    return parser


def _load_config_file(path: str) -> dict:
    try:
        lines = Path(path).read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        raise InputError(f"cannot read config file {path}: {exc}") from exc
    values: dict[str, str] = {}
    for line_no, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise InputError(f"{path} line {line_no}: expected 'key = value', got {raw!r}")
        key, _, value = line.partition("=")
        values[key.strip().replace("-", "_")] = value.strip()
    return values


def _apply_config(parser: _Parser, argv: list[str]) -> list[str]:
    """Turn --config file entries into defaults of the chosen subparser."""
    if "--config" not in argv:
        return argv
    at = argv.index("--config")
    if at + 1 >= len(argv):
        raise InputError("--config needs a file path")
    values = _load_config_file(argv[at + 1])
    rest = argv[:at] + argv[at + 2 :]
    if not rest:
        raise InputError("a subcommand is required")
    command = rest[0]
    sub_actions = next(
        a for a in parser._actions if isinstance(a, argparse._SubParsersAction)
    )
    if command not in sub_actions.choices:
        raise InputError(f"unknown subcommand {command!r}")
    sub = sub_actions.choices[command]
    known = {a.dest: a for a in sub._actions if a.dest != "help"}
    defaults = {}
    for key, raw in values.items():
        if key not in known:
            raise InputError(f"config key {key!r} is not a flag of {command!r}")
        action = known[key]
        if isinstance(action, argparse._StoreTrueAction):
            defaults[key] = raw.lower() in ("1", "true", "yes", "on")
        elif action.type is not None:
            try:
                defaults[key] = action.type(raw)
            except ValueError as exc:
                raise InputError(f"config key {key!r}: bad value {raw!r}") from exc
        else:
            defaults[key] = raw
        if action.choices is not None and defaults[key] not in action.choices:
            raise InputError(
                f"config key {key!r}: {raw!r} not in {sorted(action.choices)}"
            )
    sub.set_defaults(**defaults)
    return rest


def _run(args) -> int:
    if args.command in EXPERIMENTS:
        cfg = ExperimentConfig(
            experiment=args.command,
            trials=args.trials,
            master_seed=args.seed,
            out_dir=args.out,
            profile=args.profile,
            workers=args.workers,
            sparsity_rule=getattr(args, "sparsity_rule", None),
            noise_kind=getattr(args, "noise", None),
            timing=args.timing,
        )
        trials_path, summary_path = run_experiment(cfg)
        print(f"wrote {trials_path}")
        print(f"wrote {summary_path}")
        return EXIT_OK
    if args.command == "fit":
        report = run_fit(
            args.input,
            args.out,
            n=args.n,
            K=args.k,
            lam=args.lam,
            lam_prime=args.lam_prime,
            delta=args.delta,
            sigma=args.sigma,
            truth_path=args.truth,
            seed=args.seed,
            iterations=args.iterations,
            step_scale=args.step_scale,
            proof_rule=args.proof_lambda_prime,
        )
        for key, value in report.items():
            print(f"{key}: {value}")
        print(f"wrote {Path(args.out) / 'report.csv'}")
        return EXIT_OK
    # summarize
    out = summarize(args.input, args.out)
    print(f"wrote {out}")
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        argv = _apply_config(parser, argv)
        args = parser.parse_args(argv)
        return _run(args)
    except (InputError, ValueError) as exc:  # ParameterError/DimensionError included
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (OutputError, OSError) as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (NumericalError, ArithmeticError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
