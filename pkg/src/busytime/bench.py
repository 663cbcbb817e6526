"""Experiment runner: one instance, several schedulers, an energy comparison table."""

from __future__ import annotations

import csv
import io
import json
import logging
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .model import RESOURCES, HostConfig, Instance, ResourceVector, ScheduleValidationError, schedule_cost
from .power import JOULES_PER_KWH, schedule_energy
from .schedulers import ALGORITHMS, SchedulerConfig, SortOrder, run_scheduler
from .workload import (GeneratorConfig, convert_jobs, generate_synthetic, load_instance,
                       read_swf, reference_fleet)
from .workload.catalog import REFERENCE_HOST_CAPACITY, REFERENCE_P_IDLE, REFERENCE_P_MAX

log = logging.getLogger(__name__)

CSV_HEADER = ("algorithm", "energy_kwh", "norm_energy", "saving_pct", "busy_time_s", "unplaced", "wall_ms")
DEFAULT_HOSTS = 5000
DEFAULT_TIME_WEIGHTS = (1, 0.01, 0.001)


class SpecError(ValueError):
    pass


@dataclass(frozen=True)
class SchedulerSpec:
    name: str
    label: str
    config: SchedulerConfig | None = None
    weights: tuple[float, ...] | None = None

    @classmethod
    def make(cls, name: str, label: str | None = None, config: SchedulerConfig | None = None,
             weights=None) -> SchedulerSpec:
        name = name.lower()
        if name not in ALGORITHMS:
            raise SpecError(f"unknown scheduler {name!r}; choose from {sorted(ALGORITHMS)}")
        if name == "emintre-lft":
            config = config or SchedulerConfig()
        if label is None:
            label = ALGORITHMS[name]
            if name == "emintre-lft":
                label += f" wt{config.weight_time:g}"
                if config.sort_order is not SortOrder.LATEST_FINISH_FIRST:
                    label += f" ({config.sort_order.value})"
        return cls(name, label, config, None if weights is None else tuple(weights))

    @classmethod
    def from_dict(cls, data: dict) -> SchedulerSpec:
        data = dict(data)
        name = data.pop("name")
        label = data.pop("label", None)
        weights = data.pop("weights", None)
        config = None
        if name.lower() == "emintre-lft":
            config = SchedulerConfig(weight_time=float(data.pop("weight_time", 1.0)),
                                     weight_resources=dict(weights or {}),
                                     sort_order=data.pop("sort", SortOrder.LATEST_FINISH_FIRST))
            weights = None
        elif isinstance(weights, dict):
            weights = [float(weights.get(r, 1.0)) for r in RESOURCES]
        if data:
            raise SpecError(f"unexpected keys for scheduler {name!r}: {sorted(data)}")
        return cls.make(name, label, config, weights)


def default_schedulers() -> list[SchedulerSpec]:
    specs = [SchedulerSpec.make(n) for n in ("pabfd", "vbp-norm-l2", "mindft-ldtf", "tian-mffde")]
    specs += [SchedulerSpec.make("emintre-lft", config=SchedulerConfig(weight_time=w))
              for w in DEFAULT_TIME_WEIGHTS]
    return specs


@dataclass
class ExperimentSpec:
    """Where the instance comes from, which schedulers to run, where to write.

    ``source`` is one of ``{"generator": {...}}``, ``{"swf": path}`` or
    ``{"json": path}``.  ``host_count`` replaces the instance's hosts with
    that many reference hosts (or copies of ``host_template``).
    """

    source: dict = field(default_factory=lambda: {"generator": {}})
    host_count: int | None = None
    host_template: HostConfig | None = None
    schedulers: list[SchedulerSpec] = field(default_factory=default_schedulers)
    baseline: str = "tian-mffde"
    csv_path: Path | None = None
    json_path: Path | None = None
    timing: bool = False

    def __post_init__(self) -> None:
        if len(self.source) != 1 or next(iter(self.source)) not in ("generator", "swf", "json"):
            raise SpecError("instance source must be exactly one of generator / swf / json")
        if not self.schedulers:
            raise SpecError("no schedulers given")
        labels = [s.label for s in self.schedulers]
        if len(set(labels)) != len(labels):
            raise SpecError(f"duplicate scheduler labels: {labels}")
        self.baseline_label  # raises if the baseline is not among the schedulers

    @property
    def baseline_label(self) -> str:
        for s in self.schedulers:
            if s.label == self.baseline:
                return s.label
        matches = [s.label for s in self.schedulers if s.name == self.baseline.lower()]
        if len(matches) == 1:
            return matches[0]
        if not matches:
            raise SpecError(f"baseline {self.baseline!r} is not among the schedulers")
        raise SpecError(f"baseline {self.baseline!r} is ambiguous: {matches}")

    @classmethod
    def from_dict(cls, data: dict, base_dir: Path | None = None) -> ExperimentSpec:
        data = dict(data)
        base_dir = base_dir or Path(".")

        def resolve(p):
            return None if p is None else (base_dir / p if not Path(p).is_absolute() else Path(p))

        source = dict(data.pop("instance", {"generator": {}}))
        for key in ("swf", "json"):
            if key in source:
                source[key] = resolve(source[key])
        hosts = dict(data.pop("hosts", {}))
        template = None
        if any(k in hosts for k in ("capacity", "p_idle", "p_max")):
            capacity = hosts.pop("capacity", None)
            template = HostConfig(0, ResourceVector.from_dict(capacity) if capacity else REFERENCE_HOST_CAPACITY,
                                  hosts.pop("p_idle", REFERENCE_P_IDLE), hosts.pop("p_max", REFERENCE_P_MAX))
        count = hosts.pop("count", None)
        if hosts:
            raise SpecError(f"unexpected host keys: {sorted(hosts)}")
        scheds = data.pop("schedulers", None)
        schedulers = ([SchedulerSpec.from_dict(s) for s in scheds] if scheds is not None
                      else default_schedulers())
        output = data.pop("output", {})
        spec = cls(source=source, host_count=count, host_template=template, schedulers=schedulers,
                   baseline=data.pop("baseline", "tian-mffde"),
                   csv_path=resolve(output.get("csv")), json_path=resolve(output.get("json")),
                   timing=bool(data.pop("timing", False)))
        if data:
            raise SpecError(f"unexpected spec keys: {sorted(data)}")
        return spec

    @classmethod
    def load(cls, path) -> ExperimentSpec:
        path = Path(path)
        with open(path, encoding="utf-8") as fh:
            return cls.from_dict(json.load(fh), path.parent)


def _fleet(count: int, template: HostConfig | None) -> tuple[HostConfig, ...]:
    if template is None:
        return reference_fleet(count)
    return tuple(HostConfig(i, template.capacity, template.p_idle, template.p_max) for i in range(count))


def load_experiment_instance(spec: ExperimentSpec) -> Instance:
    kind, value = next(iter(spec.source.items()))
    count = spec.host_count
    if kind == "json":
        inst = load_instance(value)
        if count is None and inst.hosts:
            return inst
        return Instance(inst.vms, _fleet(count or DEFAULT_HOSTS, spec.host_template))
    if kind == "swf":
        vms = convert_jobs(read_swf(value).jobs).vms
    else:
        vms = generate_synthetic(GeneratorConfig.from_dict(dict(value)))
    return Instance(tuple(vms), _fleet(count or DEFAULT_HOSTS, spec.host_template))


@dataclass(frozen=True)
class ResultRow:
    algorithm: str
    energy_ws: Fraction
    norm_energy: Fraction
    busy_time_s: int
    unplaced: int
    increment_ws: Fraction
    wall_ms: float | None = None

    @property
    def energy_kwh(self) -> Fraction:
        return self.energy_ws / JOULES_PER_KWH

    @property
    def saving_pct(self) -> Fraction:
        return (1 - self.norm_energy) * 100

    def csv_fields(self) -> list[str]:
        return [self.algorithm, f"{float(self.energy_kwh):.3f}", f"{float(self.norm_energy):.3f}",
                f"{float(self.saving_pct):.3f}", str(self.busy_time_s), str(self.unplaced),
                "" if self.wall_ms is None else f"{self.wall_ms:.3f}"]


@dataclass(frozen=True)
class _RunOutcome:
    label: str
    energy_ws: Fraction
    increment_ws: Fraction
    busy_time: int
    unplaced: int
    wall_ms: float


def _run_one(sched: SchedulerSpec, instance: Instance) -> _RunOutcome:
    t0 = time.perf_counter()
    schedule = run_scheduler(sched.name, instance, sched.config, sched.weights)
    wall_ms = (time.perf_counter() - t0) * 1000
    schedule.algorithm = sched.label
    busy = schedule_cost(schedule)  # validates; raises ScheduleValidationError
    report = schedule_energy(schedule)
    return _RunOutcome(sched.label, report.total, report.increment_total, busy,
                       len(schedule.unplaced), wall_ms)


def _workers() -> int:
    raw = os.environ.get("BENCH_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise SpecError(f"BENCH_THREADS must be an integer, got {raw!r}") from None


def run_experiment(spec: ExperimentSpec, instance: Instance | None = None) -> list[ResultRow]:
    """Run every scheduler on the same instance and compare energies.

    Rows come back sorted by energy (then label).  If the spec names
    output paths the report is written there too.
    """
    instance = instance if instance is not None else load_experiment_instance(spec)
    oversized = instance.oversized_vms()
    if oversized:
        log.warning("%d VMs exceed every host and can never be placed", len(oversized))
    workers = min(_workers(), len(spec.schedulers))
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(_run_one, spec.schedulers, [instance] * len(spec.schedulers)))
    else:
        outcomes = [_run_one(s, instance) for s in spec.schedulers]

    if len({o.unplaced for o in outcomes}) > 1:
        log.warning("ASYMMETRIC PLACEMENT: unplaced counts differ (%s); energies are not comparable",
                    ", ".join(f"{o.label}={o.unplaced}" for o in outcomes))
    elif instance.homogeneous and len({o.increment_ws for o in outcomes}) > 1:
        log.warning("per-VM energy increments differ across schedulers")

    base = next(o for o in outcomes if o.label == spec.baseline_label)
    if base.energy_ws == 0:
        raise SpecError("baseline consumed no energy; cannot normalize")
    rows = [ResultRow(o.label, o.energy_ws, o.energy_ws / base.energy_ws, o.busy_time, o.unplaced,
                      o.increment_ws, o.wall_ms if spec.timing else None) for o in outcomes]
    rows.sort(key=lambda r: (r.energy_ws, r.algorithm))
    if spec.csv_path or spec.json_path:
        emit_report(rows, csv_path=spec.csv_path, json_path=spec.json_path)
    return rows


def format_csv(rows: list[ResultRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for row in rows:
        writer.writerow(row.csv_fields())
    return buf.getvalue()


def format_json(rows: list[ResultRow]) -> str:
    records = []
    for row in rows:
        record = dict(zip(CSV_HEADER, row.csv_fields()))
        for key in ("energy_kwh", "norm_energy", "saving_pct"):
            record[key] = float(record[key])
        record["busy_time_s"] = row.busy_time_s
        record["unplaced"] = row.unplaced
        record["wall_ms"] = None if row.wall_ms is None else round(row.wall_ms, 3)
        records.append(record)
    return json.dumps({"rows": records}, indent=2, sort_keys=True) + "\n"


def emit_report(rows: list[ResultRow], csv_path=None, json_path=None) -> None:
    if not rows:
        raise ValueError("nothing to report")
    for path, text in ((csv_path, format_csv(rows)), (json_path, format_json(rows))):
        if path is not None:
            Path(path).write_text(text, encoding="utf-8")


def format_table(rows: list[ResultRow]) -> str:
    """Human-readable comparison: energy, normalized energy, saving, busy time."""
    width = max(len("Algorithm"), *(len(r.algorithm) for r in rows))
    lines = [f"{'Algorithm':<{width}}  {'Energy (kWh)':>12}  {'Norm.':>6}  {'Saving':>8}  {'Busy (s)':>11}  Unplaced"]
    for r in rows:
        lines.append(f"{r.algorithm:<{width}}  {float(r.energy_kwh):>12,.2f}  {float(r.norm_energy):>6.3f}  "
                     f"{float(r.saving_pct):>7.1f}%  {r.busy_time_s:>11}  {r.unplaced}")
    return "\n".join(lines)


__all__ = ["CSV_HEADER", "ExperimentSpec", "ResultRow", "SchedulerSpec", "ScheduleValidationError",
           "SpecError", "default_schedulers", "emit_report", "format_csv", "format_json",
           "format_table", "load_experiment_instance", "run_experiment"]
