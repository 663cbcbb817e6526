"""Domain types, interval algebra and timeline-based feasibility checks.

Time is integer ticks (one tick = one second of trace time) and every
interval is half-open ``[start, finish)``, so a VM finishing at ``t`` and
another starting at ``t`` never contend for a host.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence

RESOURCES = ("cores", "mips", "ram", "netbw", "storage")

_ZERO = (0, 0, 0, 0, 0)


@dataclass(frozen=True, slots=True)
class Interval:
    start: int
    finish: int

    def __post_init__(self) -> None:
        if self.finish <= self.start:
            raise ValueError(f"empty interval [{self.start}, {self.finish})")

    @property
    def length(self) -> int:
        return self.finish - self.start

    def overlaps(self, other: Interval) -> bool:
        return self.start < other.finish and other.start < self.finish


@dataclass(frozen=True, slots=True)
class ResourceVector:
    """Integer demand or capacity vector.

    ``mips`` is the total compute rate (cores x MIPS per core) and
    ``storage`` is counted in hundredths of a GB.
    """

    cores: int = 0
    mips: int = 0
    ram: int = 0
    netbw: int = 0
    storage: int = 0

    def __post_init__(self) -> None:
        for name in RESOURCES:
            value = getattr(self, name)
            if not isinstance(value, int) or value < 0:
                raise ValueError(f"{name} must be a non-negative integer, got {value!r}")

    @classmethod
    def from_tuple(cls, values: Sequence[int]) -> ResourceVector:
        return cls(*values)

    def as_tuple(self) -> tuple[int, int, int, int, int]:
        return (self.cores, self.mips, self.ram, self.netbw, self.storage)

    def __add__(self, other: ResourceVector) -> ResourceVector:
        return ResourceVector.from_tuple([a + b for a, b in zip(self.as_tuple(), other.as_tuple())])

    def __sub__(self, other: ResourceVector) -> ResourceVector:
        return ResourceVector.from_tuple([a - b for a, b in zip(self.as_tuple(), other.as_tuple())])

    def fits_in(self, capacity: ResourceVector) -> bool:
        """Componentwise ``self <= capacity``."""
        return all(a <= b for a, b in zip(self.as_tuple(), capacity.as_tuple()))

    def to_dict(self) -> dict[str, int]:
        return dict(zip(RESOURCES, self.as_tuple()))

    @classmethod
    def from_dict(cls, data: dict) -> ResourceVector:
        unknown = set(data) - set(RESOURCES)
        if unknown:
            raise ValueError(f"unknown resource keys: {sorted(unknown)}")
        return cls(**{k: int(data.get(k, 0)) for k in RESOURCES})


@dataclass(frozen=True, slots=True)
class VmRequest:
    id: int
    interval: Interval
    demand: ResourceVector
    vm_type: str | None = None

    @classmethod
    def make(cls, id: int, start: int, duration: int, demand: ResourceVector,
             vm_type: str | None = None) -> VmRequest:
        return cls(id, Interval(start, start + duration), demand, vm_type)

    @property
    def start(self) -> int:
        return self.interval.start

    @property
    def finish(self) -> int:
        return self.interval.finish

    @property
    def duration(self) -> int:
        return self.interval.length


def _as_fraction(value) -> Fraction:
    if isinstance(value, float):
        return Fraction(str(value))
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    return Fraction(str(value))


@dataclass(frozen=True, slots=True)
class HostConfig:
    id: int
    capacity: ResourceVector
    p_idle: Fraction
    p_max: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "p_idle", _as_fraction(self.p_idle))
        object.__setattr__(self, "p_max", _as_fraction(self.p_max))
        if not 0 < self.p_idle <= self.p_max:
            raise ValueError(f"host {self.id}: need 0 < p_idle <= p_max")

    @property
    def alpha(self) -> Fraction:
        return self.p_idle / self.p_max

    @property
    def hardware(self) -> tuple:
        """Everything but the id; hosts with equal ``hardware`` are interchangeable."""
        return (self.capacity, self.p_idle, self.p_max)


@dataclass(frozen=True)
class Instance:
    vms: tuple[VmRequest, ...]
    hosts: tuple[HostConfig, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "vms", tuple(self.vms))
        object.__setattr__(self, "hosts", tuple(self.hosts))
        for kind, items in (("VM", self.vms), ("host", self.hosts)):
            ids = [x.id for x in items]
            if len(set(ids)) != len(ids):
                raise ValueError(f"duplicate {kind} ids")

    @property
    def homogeneous(self) -> bool:
        return len({h.hardware for h in self.hosts}) <= 1

    def vm(self, vm_id: int) -> VmRequest:
        return self._vm_index()[vm_id]

    def host(self, host_id: int) -> HostConfig:
        return self._host_index()[host_id]

    def _vm_index(self) -> dict[int, VmRequest]:
        idx = self.__dict__.get("_vms_by_id")
        if idx is None:
            idx = {vm.id: vm for vm in self.vms}
            object.__setattr__(self, "_vms_by_id", idx)
        return idx

    def _host_index(self) -> dict[int, HostConfig]:
        idx = self.__dict__.get("_hosts_by_id")
        if idx is None:
            idx = {h.id: h for h in self.hosts}
            object.__setattr__(self, "_hosts_by_id", idx)
        return idx

    def oversized_vms(self) -> list[int]:
        """VMs whose demand exceeds the largest host on some resource."""
        if not self.hosts:
            return [vm.id for vm in self.vms]
        biggest = [max(h.capacity.as_tuple()[r] for h in self.hosts) for r in range(len(RESOURCES))]
        return [vm.id for vm in self.vms
                if any(d > c for d, c in zip(vm.demand.as_tuple(), biggest))]


# -- interval algebra -------------------------------------------------------

def interval_union_length(intervals: Iterable[Interval]) -> int:
    """Length of the union of ``intervals`` (the span)."""
    total = 0
    cur_start = cur_end = None
    for iv in sorted(intervals, key=lambda iv: iv.start):
        if cur_end is None or iv.start > cur_end:
            if cur_end is not None:
                total += cur_end - cur_start
            cur_start, cur_end = iv.start, iv.finish
        elif iv.finish > cur_end:
            cur_end = iv.finish
    if cur_end is not None:
        total += cur_end - cur_start
    return total


def total_length(intervals: Iterable[Interval]) -> int:
    return sum(iv.length for iv in intervals)


# -- host timeline ----------------------------------------------------------

class HostState:
    """A host plus the VMs assigned to it so far.

    The usage timeline is a step function kept as sorted breakpoints; the
    segment starting at ``_points[i]`` carries the number of active VMs and
    their summed demand up to ``_points[i + 1]``.  The final breakpoint
    always opens an empty segment.
    """

    __slots__ = ("config", "vms", "busy_time", "_ids", "_points", "_count", "_usage", "_cap")

    def __init__(self, config: HostConfig, vms: Iterable[VmRequest] = ()) -> None:
        self.config = config
        self.vms: list[VmRequest] = []
        self.busy_time = 0
        self._ids: set[int] = set()
        self._points: list[int] = []
        self._count: list[int] = []
        self._usage: list[tuple[int, ...]] = []
        self._cap = config.capacity.as_tuple()
        for vm in vms:
            self.add(vm)

    def __repr__(self) -> str:
        return f"HostState(host={self.config.id}, vms={[vm.id for vm in self.vms]})"

    @property
    def is_empty(self) -> bool:
        return not self.vms

    def probe(self, start: int, finish: int) -> tuple[int, tuple[int, ...]]:
        """Return ``(covered, peak)`` over ``[start, finish)``.

        ``covered`` is how many ticks of the window the host is already busy,
        ``peak`` the componentwise maximum of the summed demand there.
        """
        pts = self._points
        if not pts or finish <= pts[0] or start >= pts[-1]:
            return 0, _ZERO
        i = bisect_right(pts, start) - 1
        if i < 0:
            i = 0
        last = len(pts) - 1
        covered = 0
        c0 = c1 = c2 = c3 = c4 = 0
        count, usage = self._count, self._usage
        while i < last and pts[i] < finish:
            if count[i]:
                lo = pts[i] if pts[i] > start else start
                nxt = pts[i + 1]
                covered += (nxt if nxt < finish else finish) - lo
                u = usage[i]
                if u[0] > c0:
                    c0 = u[0]
                if u[1] > c1:
                    c1 = u[1]
                if u[2] > c2:
                    c2 = u[2]
                if u[3] > c3:
                    c3 = u[3]
                if u[4] > c4:
                    c4 = u[4]
            i += 1
        return covered, (c0, c1, c2, c3, c4)

    def fits(self, demand: tuple[int, ...], peak: tuple[int, ...]) -> bool:
        cap = self._cap
        return (peak[0] + demand[0] <= cap[0] and peak[1] + demand[1] <= cap[1]
                and peak[2] + demand[2] <= cap[2] and peak[3] + demand[3] <= cap[3]
                and peak[4] + demand[4] <= cap[4])

    def window_load(self, start: int, finish: int) -> tuple[int, ...]:
        """Per-resource integral of the summed demand over ``[start, finish)``."""
        pts = self._points
        if not pts or finish <= pts[0] or start >= pts[-1]:
            return _ZERO
        i = bisect_right(pts, start) - 1
        if i < 0:
            i = 0
        last = len(pts) - 1
        acc = [0, 0, 0, 0, 0]
        while i < last and pts[i] < finish:
            if self._count[i]:
                lo = pts[i] if pts[i] > start else start
                nxt = pts[i + 1]
                width = (nxt if nxt < finish else finish) - lo
                u = self._usage[i]
                for r in range(5):
                    acc[r] += u[r] * width
            i += 1
        return tuple(acc)

    def usage_at(self, t: int) -> tuple[int, tuple[int, ...]]:
        """``(active VM count, summed demand)`` at instant ``t``."""
        i = bisect_right(self._points, t) - 1
        if i < 0:
            return 0, _ZERO
        return self._count[i], self._usage[i]

    def _split(self, t: int) -> int:
        pts = self._points
        i = bisect_left(pts, t)
        if i < len(pts) and pts[i] == t:
            return i
        pts.insert(i, t)
        if i == 0:
            self._count.insert(0, 0)
            self._usage.insert(0, _ZERO)
        else:
            self._count.insert(i, self._count[i - 1])
            self._usage.insert(i, self._usage[i - 1])
        return i

    def add(self, vm: VmRequest) -> None:
        """Assign ``vm`` without checking capacity (see :func:`can_place`)."""
        if vm.id in self._ids:
            raise ValueError(f"VM {vm.id} already on host {self.config.id}")
        covered, _ = self.probe(vm.start, vm.finish)
        i = self._split(vm.start)
        j = self._split(vm.finish)
        d = vm.demand.as_tuple()
        for k in range(i, j):
            self._count[k] += 1
            u = self._usage[k]
            self._usage[k] = (u[0] + d[0], u[1] + d[1], u[2] + d[2], u[3] + d[3], u[4] + d[4])
        self.busy_time += vm.duration - covered
        self.vms.append(vm)
        self._ids.add(vm.id)

    def copy(self) -> HostState:
        new = HostState.__new__(HostState)
        new.config = self.config
        new.vms = list(self.vms)
        new.busy_time = self.busy_time
        new._ids = set(self._ids)
        new._points = list(self._points)
        new._count = list(self._count)
        new._usage = list(self._usage)
        new._cap = self._cap
        return new

    def __contains__(self, vm: VmRequest) -> bool:
        return vm.id in self._ids


def can_place(host: HostState, vm: VmRequest) -> bool:
    """Whether adding ``vm`` keeps every resource within capacity at all times."""
    if vm in host:
        raise ValueError(f"VM {vm.id} already assigned to host {host.config.id}")
    _, peak = host.probe(vm.start, vm.finish)
    return host.fits(vm.demand.as_tuple(), peak)


def host_busy_time(host: HostState) -> int:
    return interval_union_length(vm.interval for vm in host.vms)


# -- schedules --------------------------------------------------------------

@dataclass(frozen=True)
class PlacementDecision:
    """Trace record of one greedy placement step."""

    vm_id: int
    host_id: int | None
    metric_value: float
    candidates_examined: int


@dataclass
class Schedule:
    instance: Instance
    mapping: dict[int, int] = field(default_factory=dict)
    unplaced: list[int] = field(default_factory=list)
    algorithm: str = ""
    decisions: list[PlacementDecision] = field(default_factory=list)

    @property
    def complete(self) -> bool:
        return not self.unplaced and len(self.mapping) == len(self.instance.vms)

    def assignments(self) -> dict[int, list[VmRequest]]:
        """Host id -> VMs placed there, for every host of the instance."""
        out: dict[int, list[VmRequest]] = {h.id: [] for h in self.instance.hosts}
        for vm in self.instance.vms:
            host_id = self.mapping.get(vm.id)
            if host_id is not None:
                out[host_id].append(vm)
        return out

    def host_states(self) -> dict[int, HostState]:
        return {host_id: HostState(self.instance.host(host_id), vms)
                for host_id, vms in self.assignments().items()}

    def busy_times(self) -> dict[int, int]:
        return {host_id: interval_union_length(vm.interval for vm in vms)
                for host_id, vms in self.assignments().items()}


class ScheduleValidationError(Exception):
    """A schedule violates one of the placement constraints.

    ``witness`` names the offending VM, host and (for capacity violations)
    the instant and resource.
    """

    def __init__(self, message: str, *, algorithm: str = "", vm_id=None, host_id=None,
                 time: int | None = None, resource: str | None = None) -> None:
        self.algorithm = algorithm
        self.vm_id = vm_id
        self.host_id = host_id
        self.time = time
        self.resource = resource
        prefix = f"[{algorithm}] " if algorithm else ""
        super().__init__(prefix + message)

    @property
    def witness(self) -> dict:
        return {"algorithm": self.algorithm, "vm": self.vm_id, "host": self.host_id,
                "time": self.time, "resource": self.resource}


def validate_schedule(schedule: Schedule) -> None:
    """Re-check a schedule from scratch; raise :class:`ScheduleValidationError`.

    Checks that every VM is either mapped to exactly one existing host or
    listed as unplaced, that no VM exceeds its host on its own, and that at
    every event point the summed demand on each host stays within capacity.
    """
    inst = schedule.instance
    algo = schedule.algorithm
    vm_ids = {vm.id for vm in inst.vms}
    host_ids = {h.id for h in inst.hosts}

    for vm_id, host_id in schedule.mapping.items():
        if vm_id not in vm_ids:
            raise ScheduleValidationError(f"unknown VM {vm_id} in mapping", algorithm=algo, vm_id=vm_id)
        if host_id not in host_ids:
            raise ScheduleValidationError(f"VM {vm_id} mapped to unknown host {host_id}",
                                          algorithm=algo, vm_id=vm_id, host_id=host_id)
    unplaced = set(schedule.unplaced)
    if len(unplaced) != len(schedule.unplaced):
        raise ScheduleValidationError("duplicate ids in unplaced list", algorithm=algo)
    for vm_id in vm_ids:
        if (vm_id in schedule.mapping) == (vm_id in unplaced):
            state = "both placed and unplaced" if vm_id in unplaced else "neither placed nor unplaced"
            raise ScheduleValidationError(f"VM {vm_id} is {state}", algorithm=algo, vm_id=vm_id)
    if unplaced - vm_ids:
        raise ScheduleValidationError("unknown VM in unplaced list", algorithm=algo)

    for host_id, vms in schedule.assignments().items():
        cap = inst.host(host_id).capacity.as_tuple()
        for vm in vms:
            for r, (d, c) in enumerate(zip(vm.demand.as_tuple(), cap)):
                if d > c:
                    raise ScheduleValidationError(
                        f"VM {vm.id} requests more {RESOURCES[r]} than host {host_id} has",
                        algorithm=algo, vm_id=vm.id, host_id=host_id, resource=RESOURCES[r])
        # releases sort before arrivals at the same instant (half-open intervals)
        events = sorted([(vm.start, 1, vm) for vm in vms] + [(vm.finish, 0, vm) for vm in vms],
                        key=lambda e: (e[0], e[1], e[2].id))
        load = [0] * len(RESOURCES)
        for t, arriving, vm in events:
            d = vm.demand.as_tuple()
            if not arriving:
                for r in range(len(load)):
                    load[r] -= d[r]
                continue
            for r in range(len(load)):
                load[r] += d[r]
                if load[r] > cap[r]:
                    raise ScheduleValidationError(
                        f"host {host_id} over {RESOURCES[r]} capacity at t={t} "
                        f"({load[r]} > {cap[r]}) after adding VM {vm.id}",
                        algorithm=algo, vm_id=vm.id, host_id=host_id, time=t, resource=RESOURCES[r])


def sweep_cost(schedule: Schedule) -> int:
    """Integrate the number of hosts with at least one active VM over time."""
    events: list[tuple[int, int, int]] = []
    for vm in schedule.instance.vms:
        host_id = schedule.mapping.get(vm.id)
        if host_id is not None:
            events.append((vm.start, 1, host_id))
            events.append((vm.finish, -1, host_id))
    events.sort(key=lambda e: (e[0], e[1]))
    active: dict[int, int] = {}
    hosts_on = 0
    total = 0
    prev = None
    for t, delta, host_id in events:
        if prev is not None:
            total += hosts_on * (t - prev)
        prev = t
        before = active.get(host_id, 0)
        after = before + delta
        active[host_id] = after
        if before == 0 and after > 0:
            hosts_on += 1
        elif before > 0 and after == 0:
            hosts_on -= 1
    return total


def schedule_cost(schedule: Schedule, *, validate: bool = True) -> int:
    """Total busy time summed over hosts.

    Computed both as the sum of per-host spans and as the time integral of
    the number of powered-on hosts; the two must agree.
    """
    if validate:
        validate_schedule(schedule)
    by_span = sum(schedule.busy_times().values())
    by_sweep = sweep_cost(schedule)
    if by_span != by_sweep:
        raise AssertionError(f"cost mismatch: span sum {by_span} != sweep {by_sweep}")
    return by_span


@dataclass(frozen=True)
class InstanceBounds:
    length: int
    span: int
    g: int


def concurrency_cap(vms: Sequence[VmRequest], hosts: Sequence[HostConfig]) -> int:
    """Upper bound on how many of ``vms`` one host can run at once.

    Exact for uniform demands; for mixed demands it is computed against the
    componentwise-minimum demand, which can only over-estimate.
    """
    if not vms or not hosts:
        return 0
    smallest = [min(vm.demand.as_tuple()[r] for vm in vms) for r in range(len(RESOURCES))]
    best = 0
    for host in hosts:
        per_host = len(vms)
        for d, c in zip(smallest, host.capacity.as_tuple()):
            if d > 0:
                per_host = min(per_host, c // d)
        best = max(best, per_host)
    return best


def bounds_for_instance(instance: Instance) -> InstanceBounds:
    intervals = [vm.interval for vm in instance.vms]
    return InstanceBounds(total_length(intervals), interval_union_length(intervals),
                          concurrency_cap(instance.vms, instance.hosts))
