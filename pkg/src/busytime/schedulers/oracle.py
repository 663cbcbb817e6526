"""Exact minimum-busy-time schedules by exhaustive search (small instances only)."""

from __future__ import annotations

from ..model import HostState, Instance, Schedule


class OracleLimitError(ValueError):
    pass


class InfeasibleInstanceError(ValueError):
    pass


def brute_force_optimal(instance: Instance, max_vms: int = 8, max_hosts: int = 4) -> Schedule:
    """Enumerate every feasible VM-to-host mapping and keep the cheapest.

    VMs are assigned in id order and hosts tried in id order, so among
    equal-cost mappings the lexicographically smallest one is returned.
    When all hosts are identical a VM may only open the next unused host,
    which removes relabelings of the same partition without changing the
    answer.
    """
    n, m = len(instance.vms), len(instance.hosts)
    if n > max_vms or m > max_hosts:
        raise OracleLimitError(f"oracle limited to {max_vms} VMs / {max_hosts} hosts, got {n} / {m}")
    vms = sorted(instance.vms, key=lambda vm: vm.id)
    hosts = sorted(instance.hosts, key=lambda h: h.id)
    symmetric = instance.homogeneous
    states = [HostState(h) for h in hosts]
    choice = [0] * n
    best_cost = None
    best_choice = None

    def search(i: int, opened: int, cost: int) -> None:
        nonlocal best_cost, best_choice
        if best_cost is not None and cost >= best_cost:
            return
        if i == n:
            best_cost, best_choice = cost, list(choice)
            return
        vm = vms[i]
        demand = vm.demand.as_tuple()
        limit = min(m, opened + 1) if symmetric else m
        for j in range(limit):
            host = states[j]
            covered, peak = host.probe(vm.start, vm.finish)
            if not host.fits(demand, peak):
                continue
            states[j] = host.copy()
            states[j].add(vm)
            choice[i] = j
            search(i + 1, max(opened, j + 1), cost + vm.duration - covered)
            states[j] = host

    search(0, 0, 0)
    if best_choice is None:
        if n == 0:
            return Schedule(instance, algorithm="OPT")
        raise InfeasibleInstanceError("no mapping places every VM")
    mapping = {vm.id: hosts[j].id for vm, j in zip(vms, best_choice)}
    return Schedule(instance, mapping=mapping, algorithm="OPT")
