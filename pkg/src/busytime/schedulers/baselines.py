"""Baseline heuristics the proposed scheduler is compared against."""

from __future__ import annotations

import math
from typing import Sequence

from ..model import RESOURCES, Instance, Schedule
from ._greedy import SortOrder, greedy_schedule, sort_vms


def pabfd(instance: Instance) -> Schedule:
    """Power-aware best-fit decreasing.

    VMs go in decreasing CPU demand to the host whose power draw grows the
    least at the VM's start instant.  A host with nothing running at that
    instant is off, so opening it costs its idle power on top of the
    dynamic share.
    """

    def score(host, vm, covered, peak):
        cfg = host.config
        cap = cfg.capacity.mips
        dynamic = float(cfg.p_max - cfg.p_idle) * (vm.demand.mips / cap if cap else 0.0)
        active, _ = host.usage_at(vm.start)
        return dynamic if active else float(cfg.p_idle) + dynamic

    ordered = sort_vms(instance.vms, SortOrder.CPU_UTILIZATION_DECREASING)
    return greedy_schedule(instance, ordered, score, name="PABFD")


def average_demand_weights(instance: Instance) -> tuple[float, ...]:
    """``exp`` of each resource's mean demand, normalized by the largest host."""
    caps = _max_capacity(instance)
    if not instance.vms:
        return tuple(1.0 for _ in RESOURCES)
    n = len(instance.vms)
    return tuple(
        math.exp(sum(vm.demand.as_tuple()[r] for vm in instance.vms) / caps[r] / n) if caps[r] else 1.0
        for r in range(len(RESOURCES)))


def _max_capacity(instance: Instance) -> list[int]:
    return [max((h.capacity.as_tuple()[r] for h in instance.hosts), default=0)
            for r in range(len(RESOURCES))]


def vbp_norm_l2(instance: Instance, weights: Sequence[float] | None = None) -> Schedule:
    """Norm-based greedy vector packing, degree 2.

    VMs are taken in decreasing weighted demand norm; each goes to the host
    whose weighted, capacity-normalized residual vector over the VM's
    lifetime has the smallest L2 norm after placement.
    """
    w = tuple(weights) if weights is not None else average_demand_weights(instance)
    if len(w) != len(RESOURCES):
        raise ValueError(f"need {len(RESOURCES)} weights, got {len(w)}")
    caps = _max_capacity(instance)

    def size(vm):
        return math.sqrt(sum((wr * d / c) ** 2 for wr, d, c in zip(w, vm.demand.as_tuple(), caps) if c))

    def score(host, vm, covered, peak):
        cap = host.config.capacity.as_tuple()
        total = 0.0
        for wr, p, d, c in zip(w, peak, vm.demand.as_tuple(), cap):
            if c:
                total += (wr * (c - p - d) / c) ** 2
        return total

    ordered = sorted(instance.vms, key=lambda vm: (-size(vm), vm.id))
    return greedy_schedule(instance, ordered, score, name="VBP-Norm-L2")


def tian_mffde(instance: Instance) -> Schedule:
    """Longest-running VMs first, each on the first host with room."""
    ordered = sort_vms(instance.vms, SortOrder.LONGEST_DURATION_FIRST)
    return greedy_schedule(instance, ordered, None, name="Tian-MFFDE")


def mindft_ldtf(instance: Instance) -> Schedule:
    """VMs by start then finish time, each on the host whose busy time grows least."""

    def score(host, vm, covered, peak):
        return vm.duration - covered

    ordered = sort_vms(instance.vms, SortOrder.EARLIEST_START_FIRST)
    return greedy_schedule(instance, ordered, score, name="MinDFT-LDTF")
