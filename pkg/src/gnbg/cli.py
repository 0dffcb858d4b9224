"""Command-line surface: instance generation, evaluation, experiments,
grids, and self-checks.

Exit codes: 0 success, 1 usage error, 2 data or validation error.  The
GNBG_SEED environment variable supplies the default seed when no --seed
flag is given.  All outputs are deterministic for fixed inputs.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from functools import partial

import numpy as np

from . import generators
from .core import classify, dominated_components, evaluate
from .generators import ScenarioConfig, suite_instance
from .harness import (
    DEFAULT_BUDGET,
    DEFAULT_MILESTONES,
    DEFAULT_RUNS,
    DEFAULT_THRESHOLD,
    ExperimentSpec,
    run_experiment,
    sweep,
)
from .instance_io import (
    InstanceFormatError,
    csv_report_text,
    dump_instance,
    export_grid,
    load_instance,
    report_to_dict,
)
from .optimizers import OptimizerConfig

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad flags; the contract here is 1
    def error(self, message):
        raise _UsageError(message)


def _default_seed() -> int:
    raw = os.environ.get("GNBG_SEED")
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise _UsageError(f"GNBG_SEED must be an integer, got {raw!r}") from None


def _write_out(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w") as fh:
            fh.write(text)


def _read_instance(path: str):
    with open(path) as fh:
        return load_instance(fh.read())


def _read_points(path: str) -> np.ndarray:
    with open(path) as fh:
        text = fh.read()
    try:
        data = json.loads(text)
    except json.JSONDecodeError:
        data = [float(tok) for tok in text.replace(",", " ").split()]
    points = np.asarray(data, dtype=float)
    if points.ndim == 1:
        points = points[None, :]
    return points


def _scenario_instance(name: str, value: float, args) -> "generators.ProblemInstance":
    cfg = ScenarioConfig(dim=args.dim, seed=args.seed)
    if name == "linearity":
        return generators.gen_linearity(value, cfg)
    if name == "conditioning":
        return generators.gen_conditioning(value, cfg=cfg)
    if name == "interaction":
        return generators.gen_interaction(p_prob=value, cfg=cfg)
    if name == "multimodal":
        return generators.gen_multimodal(value, args.omega, cfg)
    if name == "multicomponent":
        return generators.gen_multicomponent(int(value), cfg)
    raise _UsageError(f"unknown scenario {name!r}")


def _add_scenario_flags(p):
    p.add_argument("--scenario", required=True,
                   choices=["linearity", "conditioning", "interaction",
                            "multimodal", "multicomponent"])
    p.add_argument("--dim", type=int, default=generators.DEFAULT_DIM)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--omega", type=float, default=0.0,
                   help="shared frequency for the multimodal scenario")


def _add_protocol_flags(p, with_seed=True):
    p.add_argument("--optimizer", required=True, choices=["ps", "pso", "de"])
    p.add_argument("--runs", type=int, default=DEFAULT_RUNS)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--milestones", type=str, default=None,
                   help="comma-separated FE milestones")
    p.add_argument("--threshold", type=float, default=DEFAULT_THRESHOLD)
    p.add_argument("--population", type=int, default=100)
    if with_seed:
        p.add_argument("--seed", type=int, default=None)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--csv", type=str, default=None, help="write the CSV report here")
    p.add_argument("--json", type=str, default=None, help="write the full JSON report here")


def _build_parser() -> _Parser:
    parser = _Parser(prog="gnbg")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="emit one scenario instance as JSON")
    _add_scenario_flags(p)
    p.add_argument("--value", type=float, required=True,
                   help="the scenario's knob value (lambda, condition number, ...)")
    p.add_argument("--out", type=str, default=None)

    p = sub.add_parser("suite", help="emit suite instances f1..f24")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--id", type=int)
    group.add_argument("--all", action="store_true")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out", type=str, default=None,
                   help="file for --id, directory for --all")

    p = sub.add_parser("evaluate", help="evaluate an instance at stored points")
    p.add_argument("--instance", required=True)
    p.add_argument("--point", required=True,
                   help="file with a JSON array (or rows of numbers)")

    p = sub.add_parser("run", help="run one aggregated experiment")
    p.add_argument("--instance", type=str, default=None)
    p.add_argument("--suite", type=int, default=None)
    p.add_argument("--instance-seed", type=int, default=0)
    _add_protocol_flags(p)

    p = sub.add_parser("sweep", help="run an experiment per knob value")
    _add_scenario_flags(p)
    p.add_argument("--values", type=str, required=True,
                   help="comma-separated knob values")
    _add_protocol_flags(p, with_seed=False)

    p = sub.add_parser("grid", help="export a 2-D slice of the landscape")
    p.add_argument("--instance", required=True)
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--j", type=int, required=True)
    p.add_argument("--resolution", type=int, default=101)
    p.add_argument("--fixed", type=str, default=None,
                   help="file with the pinned coordinates (default: optimum)")
    p.add_argument("--out", type=str, default=None)

    p = sub.add_parser("classify", help="print an instance's characteristics")
    p.add_argument("--instance", required=True)

    p = sub.add_parser("verify", help="self-check an instance document")
    p.add_argument("--instance", required=True)
    return parser


def _seed_or_env(args) -> int:
    return _default_seed() if args.seed is None else args.seed


def _cmd_generate(args) -> int:
    args.seed = _seed_or_env(args)
    instance = _scenario_instance(args.scenario, args.value, args)
    _write_out(dump_instance(instance), args.out)
    return EXIT_OK


def _cmd_suite(args) -> int:
    seed = _seed_or_env(args)
    if args.all:
        if args.out is None:
            raise _UsageError("--all requires --out DIRECTORY")
        os.makedirs(args.out, exist_ok=True)
        for k in range(1, generators.SUITE_SIZE + 1):
            path = os.path.join(args.out, f"f{k}.gnbg.json")
            _write_out(dump_instance(suite_instance(k, seed)), path)
        return EXIT_OK
    _write_out(dump_instance(suite_instance(args.id, seed)), args.out)
    return EXIT_OK


def _cmd_evaluate(args) -> int:
    instance = _read_instance(args.instance)
    points = _read_points(args.point)
    if points.shape[1] != instance.dim:
        raise InstanceFormatError(
            f"point: expected {instance.dim} coordinates, got {points.shape[1]}"
        )
    for x in points:
        sys.stdout.write(repr(evaluate(instance, x)) + "\n")
    return EXIT_OK


def _milestones(args) -> tuple[int, ...]:
    if args.milestones is None:
        ms = tuple(m for m in DEFAULT_MILESTONES if m <= args.budget)
        return ms or (args.budget,)
    return tuple(int(v) for v in args.milestones.split(","))


def _emit_reports(args, reports) -> None:
    text = csv_report_text(reports)
    if args.csv is not None:
        _write_out(text, args.csv)
    else:
        sys.stdout.write(text)
    if args.json is not None:
        payload = json.dumps([report_to_dict(r) for r in reports], indent=2) + "\n"
        _write_out(payload, args.json)


def _cmd_run(args) -> int:
    if (args.instance is None) == (args.suite is None):
        raise _UsageError("exactly one of --instance / --suite is required")
    if args.instance is not None:
        instance = _read_instance(args.instance)
    else:
        instance = suite_instance(args.suite, args.instance_seed)
    spec = ExperimentSpec(
        instance=instance,
        optimizer=OptimizerConfig(kind=args.optimizer, population=args.population),
        runs=args.runs,
        budget=args.budget,
        milestones=_milestones(args),
        threshold=args.threshold,
        base_seed=_seed_or_env(args),
    )
    _emit_reports(args, [run_experiment(spec, workers=args.workers)])
    return EXIT_OK


def _cmd_sweep(args) -> int:
    args.seed = _seed_or_env(args)
    values = [float(v) for v in args.values.split(",")]
    template = ExperimentSpec(
        instance=_scenario_instance(args.scenario, values[0], args),
        optimizer=OptimizerConfig(kind=args.optimizer, population=args.population),
        runs=args.runs,
        budget=args.budget,
        milestones=_milestones(args),
        threshold=args.threshold,
        base_seed=args.seed,
    )
    make = partial(_scenario_instance, args.scenario, args=args)
    _emit_reports(args, sweep(template, values, make, workers=args.workers))
    return EXIT_OK


def _cmd_grid(args) -> int:
    instance = _read_instance(args.instance)
    if args.fixed is not None:
        fixed = _read_points(args.fixed)[0]
    else:
        fixed = instance.optimum_position
    doc = export_grid(instance, args.i, args.j, args.resolution, fixed)
    _write_out(json.dumps(doc, indent=2) + "\n", args.out)
    return EXIT_OK


def _cmd_classify(args) -> int:
    record = classify(_read_instance(args.instance))
    sys.stdout.write(json.dumps(record, indent=2) + "\n")
    return EXIT_OK


def _cmd_verify(args) -> int:
    instance = _read_instance(args.instance)
    problems = []
    gap = evaluate(instance, instance.optimum_position) - instance.optimum_value
    if not abs(gap) <= 1e-9:
        problems.append(f"optimum mismatch: f(m*) - sigma* = {gap:.3e}")
    if instance.optimum_index in dominated_components(instance):
        problems.append("optimum component is dominated")
    reparsed = load_instance(dump_instance(instance))
    rng = np.random.default_rng(0)
    probes = rng.uniform(instance.lower, instance.upper, size=(100, instance.dim))
    for x in probes:
        a, b = evaluate(instance, x), evaluate(reparsed, x)
        if abs(a - b) > 1e-15 * max(1.0, abs(a)):
            problems.append("round-trip evaluation mismatch")
            break
    if problems:
        for line in problems:
            sys.stderr.write(f"verify: {line}\n")
        return EXIT_DATA
    sys.stdout.write("ok\n")
    return EXIT_OK


_COMMANDS = {
    "generate": _cmd_generate,
    "suite": _cmd_suite,
    "evaluate": _cmd_evaluate,
    "run": _cmd_run,
    "sweep": _cmd_sweep,
    "grid": _cmd_grid,
    "classify": _cmd_classify,
    "verify": _cmd_verify,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args)
    except _UsageError as exc:
        sys.stderr.write(f"gnbg: {exc}\n")
        return EXIT_USAGE
    except (InstanceFormatError, ValueError, OSError) as exc:
        sys.stderr.write(f"gnbg: {exc}\n")
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
