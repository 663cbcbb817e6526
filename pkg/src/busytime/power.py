"""Linear CPU power model and energy accounting.

All energies are exact :class:`~fractions.Fraction` values in watt-seconds.
A host draws nothing while it has no active VM and
``p_idle + (p_max - p_idle) * U`` while busy, where ``U`` is its CPU
utilization; only the CPU (MIPS) dimension contributes to power.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .model import (HostConfig, HostState, Instance, Schedule, VmRequest,
                    bounds_for_instance, interval_union_length)

JOULES_PER_KWH = 3_600_000


@dataclass(frozen=True)
class PowerModel:
    p_idle: Fraction
    p_max: Fraction

    @classmethod
    def of(cls, host: HostConfig) -> PowerModel:
        return cls(host.p_idle, host.p_max)

    @property
    def alpha(self) -> Fraction:
        return self.p_idle / self.p_max

    def power(self, utilization) -> Fraction:
        """Draw of a powered-on host at CPU utilization ``utilization``."""
        return (self.alpha + (1 - self.alpha) * utilization) * self.p_max


@dataclass(frozen=True)
class EnergyReport:
    per_host_base: tuple[tuple[int, Fraction], ...]
    per_vm_increment: tuple[tuple[int, Fraction], ...]
    total: Fraction
    heterogeneous: bool = False

    @property
    def base_total(self) -> Fraction:
        return sum((e for _, e in self.per_host_base), Fraction(0))

    @property
    def increment_total(self) -> Fraction:
        return sum((e for _, e in self.per_vm_increment), Fraction(0))

    @property
    def total_kwh(self) -> Fraction:
        return self.total / JOULES_PER_KWH


def cpu_share(vm: VmRequest, host: HostConfig) -> Fraction:
    """Fraction of the host's MIPS the VM consumes when running flat out."""
    if host.capacity.mips == 0:
        if vm.demand.mips:
            raise ValueError(f"host {host.id} has no CPU for VM {vm.id}")
        return Fraction(0)
    return Fraction(vm.demand.mips, host.capacity.mips)


def host_utilization(host: HostState, t: int) -> Fraction:
    _, usage = host.usage_at(t)
    if host.config.capacity.mips == 0:
        return Fraction(0)
    return Fraction(usage[1], host.config.capacity.mips)


def vm_energy(vm: VmRequest, host: HostConfig) -> Fraction:
    """Energy attributable to ``vm`` on top of the host's idle draw."""
    return (host.p_max - host.p_idle) * cpu_share(vm, host) * vm.duration


def host_energy(host: HostState) -> Fraction:
    base = host.config.p_idle * host.busy_time
    return base + sum((vm_energy(vm, host.config) for vm in host.vms), Fraction(0))


def host_energy_by_sweep(host: HostState) -> float:
    """Integrate the instantaneous power draw over the host's timeline.

    Floating point on purpose: this is the numeric counterpart of
    :func:`host_energy` and shares none of its arithmetic.
    """
    p_idle = float(host.config.p_idle)
    p_max = float(host.config.p_max)
    cap = host.config.capacity.mips
    events = []
    for vm in host.vms:
        events.append((vm.start, 1, vm.demand.mips))
        events.append((vm.finish, -1, -vm.demand.mips))
    events.sort()
    energy = 0.0
    active = 0
    mips = 0
    prev = None
    for t, d_active, d_mips in events:
        if prev is not None and active > 0 and t > prev:
            u = mips / cap if cap else 0.0
            energy += (p_idle + (p_max - p_idle) * u) * (t - prev)
        active += d_active
        mips += d_mips
        prev = t
    return energy


def schedule_energy(schedule: Schedule) -> EnergyReport:
    """Base (powered-on) energy per host plus per-VM increments.

    For homogeneous fleets the total equals
    ``p_idle * sum(busy times) + sum(increments)``; heterogeneous fleets
    are priced host by host and flagged on the report.
    """
    inst = schedule.instance
    base = []
    for host_id, vms in schedule.assignments().items():
        busy = interval_union_length(vm.interval for vm in vms)
        base.append((host_id, inst.host(host_id).p_idle * busy))
    increments = []
    for vm in inst.vms:
        host_id = schedule.mapping.get(vm.id)
        if host_id is not None:
            increments.append((vm.id, vm_energy(vm, inst.host(host_id))))
    total = sum((e for _, e in base), Fraction(0)) + sum((e for _, e in increments), Fraction(0))
    return EnergyReport(tuple(base), tuple(increments), total, heterogeneous=not inst.homogeneous)


@dataclass(frozen=True)
class EnergyBounds:
    lower: Fraction
    upper: Fraction


def optimal_energy_bounds(instance: Instance, g: int | None = None) -> EnergyBounds:
    """Bracket the minimum total energy: ``p_idle*len/g <= E_opt <= p_max*len``."""
    if not instance.homogeneous:
        raise ValueError("energy bounds need identical hosts")
    bounds = bounds_for_instance(instance)
    if bounds.length == 0:
        return EnergyBounds(Fraction(0), Fraction(0))
    g = bounds.g if g is None else g
    if g < 1:
        raise ValueError("no host can run any VM of the instance")
    host = instance.hosts[0]
    return EnergyBounds(host.p_idle * bounds.length / g, host.p_max * bounds.length)
