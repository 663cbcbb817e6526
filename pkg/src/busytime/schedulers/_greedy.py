"""Shared machinery for the greedy placement heuristics."""

from __future__ import annotations

import enum
import heapq
import math
from dataclasses import dataclass, field
from typing import Callable, Iterator

from ..model import (RESOURCES, HostConfig, HostState, Instance, PlacementDecision,
                     Schedule, VmRequest)


class SortOrder(str, enum.Enum):
    LATEST_FINISH_FIRST = "latest-finish-first"
    LONGEST_DURATION_FIRST = "longest-duration-first"
    EARLIEST_START_FIRST = "earliest-start-first"
    CPU_UTILIZATION_DECREASING = "cpu-utilization-decreasing"

    @classmethod
    def parse(cls, text: str | SortOrder) -> SortOrder:
        if isinstance(text, SortOrder):
            return text
        aliases = {"lft": cls.LATEST_FINISH_FIRST, "ldtf": cls.LONGEST_DURATION_FIRST,
                   "ldf": cls.LONGEST_DURATION_FIRST, "est": cls.EARLIEST_START_FIRST,
                   "cpu": cls.CPU_UTILIZATION_DECREASING}
        key = text.strip().lower()
        return aliases[key] if key in aliases else cls(key)


_SORT_KEYS: dict[SortOrder, Callable[[VmRequest], tuple]] = {
    SortOrder.LATEST_FINISH_FIRST: lambda vm: (-vm.finish, -vm.duration, vm.id),
    SortOrder.LONGEST_DURATION_FIRST: lambda vm: (-vm.duration, vm.start, vm.id),
    SortOrder.EARLIEST_START_FIRST: lambda vm: (vm.start, vm.finish, vm.id),
    SortOrder.CPU_UTILIZATION_DECREASING: lambda vm: (-vm.demand.mips, vm.id),
}


def sort_vms(vms, order: SortOrder) -> list[VmRequest]:
    return sorted(vms, key=_SORT_KEYS[SortOrder.parse(order)])


@dataclass(frozen=True)
class SchedulerConfig:
    """Knobs for the TRE metric.

    ``weight_resources`` maps each resource in ``RESOURCES`` to its weight in
    the residual-capacity norm; missing resources default to 1.
    """

    weight_time: float = 1.0
    weight_resources: dict[str, float] = field(default_factory=dict)
    sort_order: SortOrder = SortOrder.LATEST_FINISH_FIRST
    tie_break: str = "lowest-host-id"

    def __post_init__(self) -> None:
        object.__setattr__(self, "sort_order", SortOrder.parse(self.sort_order))
        unknown = set(self.weight_resources) - set(RESOURCES)
        if unknown:
            raise ValueError(f"unknown resource weights: {sorted(unknown)}")
        if self.weight_time < 0 or any(w < 0 for w in self.weight_resources.values()):
            raise ValueError("weights must be non-negative")
        if self.tie_break != "lowest-host-id":
            raise ValueError(f"unsupported tie break {self.tie_break!r}")

    @property
    def resource_weights(self) -> tuple[float, ...]:
        return tuple(float(self.weight_resources.get(r, 1.0)) for r in RESOURCES)


class Fleet:
    """Host states in id order, with idle identical hosts collapsed.

    Every empty host with the same hardware scores identically, so only the
    lowest-id one of each hardware class needs evaluating; ties resolve to
    the lowest id anyway.
    """

    def __init__(self, hosts: tuple[HostConfig, ...]) -> None:
        ordered = sorted(hosts, key=lambda h: h.id)
        self.states = [HostState(h) for h in ordered]
        self._used: list[int] = []
        self._idle: dict[tuple, list[int]] = {}
        for pos, h in enumerate(ordered):
            self._idle.setdefault(h.hardware, []).append(pos)
        for heap in self._idle.values():
            heapq.heapify(heap)

    def candidates(self) -> list[int]:
        reps = [heap[0] for heap in self._idle.values() if heap]
        if not reps:
            return self._used
        return sorted(self._used + reps)

    def assign(self, pos: int, vm: VmRequest) -> None:
        state = self.states[pos]
        if state.is_empty:
            heap = self._idle[state.config.hardware]
            if heap[0] != pos:
                raise AssertionError("only the representative idle host may be opened")
            heapq.heappop(heap)
            self._used.append(pos)
            self._used.sort()
        state.add(vm)

    @property
    def busy_time(self) -> int:
        return sum(s.busy_time for s in self.states)


# score(host, vm, covered, peak) -> comparable; lower is better
Score = Callable[[HostState, VmRequest, int, tuple], float]


def greedy_schedule(instance: Instance, ordered_vms: list[VmRequest], score: Score | None,
                    name: str) -> Schedule:
    """Place VMs in the given order on the feasible host of lowest score.

    With ``score=None`` the first feasible host in id order wins.
    """
    fleet = Fleet(instance.hosts)
    schedule = Schedule(instance, algorithm=name)
    states = fleet.states
    for vm in ordered_vms:
        demand = vm.demand.as_tuple()
        best_value = math.inf
        best_pos = None
        examined = 0
        for pos in fleet.candidates():
            host = states[pos]
            covered, peak = host.probe(vm.start, vm.finish)
            if not host.fits(demand, peak):
                continue
            examined += 1
            if score is None:
                best_value, best_pos = 0.0, pos
                break
            value = score(host, vm, covered, peak)
            if best_pos is None or value < best_value:
                best_value, best_pos = value, pos
        if best_pos is None:
            schedule.unplaced.append(vm.id)
            schedule.decisions.append(PlacementDecision(vm.id, None, math.inf, examined))
            continue
        fleet.assign(best_pos, vm)
        host_id = states[best_pos].config.id
        schedule.mapping[vm.id] = host_id
        schedule.decisions.append(PlacementDecision(vm.id, host_id, float(best_value), examined))
    return schedule
