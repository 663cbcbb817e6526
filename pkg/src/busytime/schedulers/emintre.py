"""EMinTRE-LFT: greedy placement minimizing the time/resource-efficiency metric.

Each VM, taken in latest-finish-first order by default, goes to the feasible
host minimizing

    TRE = (t_diff * w_time / T_busy) ** 2 + D ** 2

where ``t_diff`` is the growth of the fleet's total busy time caused by the
placement, ``T_busy`` the host's busy time after it, and ``D`` the weighted
L2 norm of the host's spare capacity (``1 - U_r`` per resource).
"""

from __future__ import annotations

from ..model import HostState, Instance, Schedule, VmRequest
from ._greedy import SchedulerConfig, greedy_schedule, sort_vms


def utilizations(host: HostState, vm: VmRequest) -> list[float]:
    """Per-resource utilization of ``host`` with ``vm`` added.

    Averaged over the VM's lifetime, so load the host carries outside that
    window does not count.  A resource the host lacks entirely counts as
    fully used.
    """
    load = host.window_load(vm.start, vm.finish)
    cap = host.config.capacity.as_tuple()
    d = vm.duration
    return [(a / d + x) / c if c else 1.0 for a, x, c in zip(load, vm.demand.as_tuple(), cap)]


def _tre(host: HostState, vm: VmRequest, covered: int, w_time: float,
         weights: tuple[float, ...]) -> float:
    t_diff = vm.duration - covered
    busy_after = host.busy_time + t_diff
    residual = 0.0
    for u, w in zip(utilizations(host, vm), weights):
        residual += ((1.0 - u) * w) ** 2
    return (t_diff * w_time / busy_after) ** 2 + residual


def tre_metric(host: HostState, vm: VmRequest, config: SchedulerConfig | None = None) -> float:
    """TRE score of tentatively placing ``vm`` on ``host``.

    Raises ``ValueError`` if the VM does not fit.
    """
    config = config or SchedulerConfig()
    if vm in host:
        raise ValueError(f"VM {vm.id} already on host {host.config.id}")
    covered, peak = host.probe(vm.start, vm.finish)
    if not host.fits(vm.demand.as_tuple(), peak):
        raise ValueError(f"VM {vm.id} does not fit on host {host.config.id}")
    return _tre(host, vm, covered, config.weight_time, config.resource_weights)


def emintre_lft(instance: Instance, config: SchedulerConfig | None = None) -> Schedule:
    config = config or SchedulerConfig()
    w_time = float(config.weight_time)
    weights = config.resource_weights

    def score(host, vm, covered, peak):
        return _tre(host, vm, covered, w_time, weights)

    return greedy_schedule(instance, sort_vms(instance.vms, config.sort_order), score,
                           name="EMinTRE-LFT")
