"""``bench`` command line: run experiments, generate and validate instances."""

from __future__ import annotations

import argparse
import dataclasses
import json
import logging
import sys

from .bench import (ExperimentSpec, SchedulerSpec, SpecError, format_table, load_experiment_instance,
                    run_experiment)
from .model import RESOURCES, Instance, ScheduleValidationError
from .schedulers import SchedulerConfig, SortOrder
from .workload import (GeneratorConfig, SwfFormatError, dump_instance, generate_synthetic,
                       load_instance, reference_fleet)

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_IO = 3

log = logging.getLogger("bench")


def parse_weights(text: str) -> dict[str, float]:
    """``"time=0.01,cores=1,ram=0.5"`` -> dict; ``time`` is the busy-time weight."""
    out = {}
    for part in filter(None, (p.strip() for p in text.split(","))):
        key, sep, value = part.partition("=")
        key = key.strip().lower()
        if not sep or key not in ("time", *RESOURCES):
            raise argparse.ArgumentTypeError(f"bad weight {part!r}; keys: time, {', '.join(RESOURCES)}")
        try:
            out[key] = float(value)
        except ValueError:
            raise argparse.ArgumentTypeError(f"bad weight value in {part!r}") from None
    return out


def _apply_overrides(spec: ExperimentSpec, args) -> ExperimentSpec:
    changes = {}
    if args.hosts is not None:
        changes["host_count"] = args.hosts
    if args.baseline is not None:
        changes["baseline"] = args.baseline
    if args.csv is not None:
        changes["csv_path"] = args.csv
    if args.json is not None:
        changes["json_path"] = args.json
    if args.timing:
        changes["timing"] = True
    if args.weights is not None or args.sort is not None:
        scheds = []
        for s in spec.schedulers:
            if s.name == "emintre-lft":
                weights = dict(args.weights or {})
                w_time = weights.pop("time", s.config.weight_time)
                resources = {**s.config.weight_resources, **weights}
                order = SortOrder.parse(args.sort) if args.sort else s.config.sort_order
                s = SchedulerSpec.make(s.name, config=SchedulerConfig(w_time, resources, order))
            if s.label not in {x.label for x in scheds}:
                scheds.append(s)
        changes["schedulers"] = scheds
    return dataclasses.replace(spec, **changes) if changes else spec


def cmd_run(args) -> int:
    spec = ExperimentSpec.load(args.spec) if args.spec else ExperimentSpec()
    spec = _apply_overrides(spec, args)
    instance = load_experiment_instance(spec)
    print(f"instance: {len(instance.vms)} VMs on {len(instance.hosts)} hosts", file=sys.stderr)
    rows = run_experiment(spec, instance)
    print(format_table(rows))
    return EXIT_OK


def cmd_gen(args) -> int:
    config = GeneratorConfig(seed=args.seed, jobs=args.jobs)
    instance = Instance(tuple(generate_synthetic(config)), reference_fleet(args.hosts))
    dump_instance(instance, args.out)
    print(f"wrote {len(instance.vms)} VMs and {len(instance.hosts)} hosts to {args.out}", file=sys.stderr)
    return EXIT_OK


def cmd_validate(args) -> int:
    instance = load_instance(args.instance)
    problems = [f"VM {vm_id} exceeds every host" for vm_id in instance.oversized_vms()]
    if not instance.hosts:
        problems.append("instance has no hosts")
    for p in problems:
        print(p, file=sys.stderr)
    if problems:
        return EXIT_VALIDATION
    print(f"ok: {len(instance.vms)} VMs, {len(instance.hosts)} hosts")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bench", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run schedulers on one instance and compare energy")
    run.add_argument("--spec", help="experiment spec (JSON); defaults to the synthetic benchmark")
    run.add_argument("--hosts", type=int, help="replace the fleet with N reference hosts")
    run.add_argument("--weights", type=parse_weights, help="EMinTRE weights, e.g. time=0.01,cores=1")
    run.add_argument("--sort", choices=["lft", "ldtf"], help="EMinTRE VM order")
    run.add_argument("--baseline", help="scheduler to normalize against (default tian-mffde)")
    run.add_argument("--csv", help="write the CSV report here")
    run.add_argument("--json", help="write the JSON report here")
    run.add_argument("--timing", action="store_true", help="record wall time per scheduler")
    run.set_defaults(func=cmd_run)

    gen = sub.add_parser("gen", help="generate a synthetic instance")
    gen.add_argument("--seed", type=int, default=42)
    gen.add_argument("--jobs", type=int, default=1000)
    gen.add_argument("--hosts", type=int, default=5000)
    gen.add_argument("--out", required=True)
    gen.set_defaults(func=cmd_gen)

    val = sub.add_parser("validate", help="check an instance file")
    val.add_argument("--instance", required=True)
    val.set_defaults(func=cmd_validate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except ScheduleValidationError as exc:
        print(f"validation failed: {exc}", file=sys.stderr)
        print(json.dumps(exc.witness), file=sys.stderr)
        return EXIT_VALIDATION
    except (SpecError, ValueError, KeyError) as exc:
        if isinstance(exc, (SwfFormatError, json.JSONDecodeError)):
            print(f"cannot read input: {exc}", file=sys.stderr)
            return EXIT_IO
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
