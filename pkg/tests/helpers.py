"""Independent reference computations used as test oracles.

Nothing here reuses the package's sweep or timeline code: everything is
done tick by tick on explicit arrays.
"""

from __future__ import annotations

import itertools
import random

import numpy as np

from busytime import HostConfig, Instance, ResourceVector, VmRequest


def tick_usage(vms, horizon: int) -> np.ndarray:
    """(horizon, 5) array of summed demand per tick."""
    usage = np.zeros((horizon, 5), dtype=np.int64)
    for vm in vms:
        usage[vm.start:vm.finish] += np.array(vm.demand.as_tuple(), dtype=np.int64)
    return usage


def tick_busy(vms, horizon: int) -> np.ndarray:
    busy = np.zeros(horizon, dtype=bool)
    for vm in vms:
        busy[vm.start:vm.finish] = True
    return busy


def tick_feasible(vms, capacity: ResourceVector, horizon: int) -> bool:
    usage = tick_usage(vms, horizon)
    return bool((usage <= np.array(capacity.as_tuple())).all())


def tick_union_length(intervals) -> int:
    intervals = list(intervals)
    if not intervals:
        return 0
    horizon = max(iv.finish for iv in intervals)
    covered = np.zeros(horizon, dtype=bool)
    for iv in intervals:
        covered[iv.start:iv.finish] = True
    return int(covered.sum())


def tick_cost(instance: Instance, mapping: dict) -> int:
    """Integral over ticks of the number of hosts with an active VM."""
    horizon = max((vm.finish for vm in instance.vms), default=0)
    on = np.zeros((len(instance.hosts), horizon), dtype=bool)
    index = {h.id: i for i, h in enumerate(instance.hosts)}
    for vm in instance.vms:
        on[index[mapping[vm.id]], vm.start:vm.finish] = True
    return int(on.sum())


def enumerate_optimum(instance: Instance):
    """Minimum tick cost over every feasible full mapping (no pruning at all)."""
    horizon = max((vm.finish for vm in instance.vms), default=0)
    best = None
    for choice in itertools.product([h.id for h in instance.hosts], repeat=len(instance.vms)):
        mapping = dict(zip((vm.id for vm in instance.vms), choice))
        ok = True
        for h in instance.hosts:
            placed = [vm for vm in instance.vms if mapping[vm.id] == h.id]
            if placed and not tick_feasible(placed, h.capacity, horizon):
                ok = False
                break
        if ok:
            cost = tick_cost(instance, mapping)
            if best is None or cost < best:
                best = cost
    return best


def uniform_host(host_id: int, slots: int, unit: ResourceVector, p_idle=175, p_max=250) -> HostConfig:
    cap = ResourceVector.from_tuple([slots * x for x in unit.as_tuple()])
    return HostConfig(host_id, cap, p_idle, p_max)


UNIT = ResourceVector(cores=2, mips=5000, ram=1700, netbw=100, storage=42250)


def random_uniform_instance(rng: random.Random, max_vms=6, max_hosts=3, horizon=30,
                            slots: int | None = None) -> tuple[Instance, int]:
    """Identical demands, hosts holding ``slots`` VMs each."""
    g = slots if slots is not None else rng.randint(1, 3)
    n = rng.randint(1, max_vms)
    m = rng.randint(1, max_hosts)
    vms = []
    for i in range(n):
        start = rng.randrange(0, horizon - 1)
        dur = rng.randint(1, min(15, horizon - start))
        vms.append(VmRequest.make(i, start, dur, UNIT))
    hosts = [uniform_host(j, g, UNIT) for j in range(m)]
    return Instance(tuple(vms), tuple(hosts)), g


def random_mixed_instance(rng: random.Random, n=None, m=None, horizon=40, max_dur=20) -> Instance:
    """Mixed demands on identical hosts with capacity 10 in every resource."""
    n = rng.randint(1, 8) if n is None else n
    m = n if m is None else m
    vms = []
    for i in range(n):
        start = rng.randrange(0, horizon - 1)
        dur = rng.randint(1, min(max_dur, horizon - start))
        demand = ResourceVector(*(rng.randint(0, 10) for _ in range(5)))
        vms.append(VmRequest.make(i, start, dur, demand))
    cap = ResourceVector(10, 10, 10, 10, 10)
    p_idle = rng.choice([100, 150, 175])
    hosts = [HostConfig(j, cap, p_idle, 250) for j in range(m)]
    return Instance(tuple(vms), tuple(hosts))
