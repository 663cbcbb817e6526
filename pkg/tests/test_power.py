import random
from fractions import Fraction

import pytest

from busytime import (HostState, Instance, ResourceVector, Schedule, VmRequest, bounds_for_instance,
                      host_energy, host_utilization, optimal_energy_bounds, schedule_cost,
                      schedule_energy, vm_energy)
from busytime.power import PowerModel, host_energy_by_sweep
from busytime.workload import VM_TYPES, reference_host
from busytime.model import HostConfig

HOST = reference_host(0)
TYPE2 = VM_TYPES[1].demand


def test_power_model_endpoints():
    pm = PowerModel.of(HOST)
    assert pm.alpha == Fraction(7, 10)
    assert pm.power(0) == 175
    assert pm.power(1) == 250
    assert pm.power(Fraction(1, 2)) == Fraction(425, 2)


class TestUtilization:
    def test_idle(self):
        assert host_utilization(HostState(HOST), 0) == 0

    def test_full_cpu(self):
        full = VmRequest.make(0, 0, 10, ResourceVector(cores=16, mips=52000))
        assert host_utilization(HostState(HOST, [full]), 5) == 1

    def test_type2_on_reference_host(self):
        state = HostState(HOST, [VmRequest.make(0, 0, 3600, TYPE2)])
        u = host_utilization(state, 100)
        assert u == Fraction(5000, 52000)
        assert float(u) == pytest.approx(0.0962, abs=5e-5)
        assert host_utilization(state, 3600) == 0


class TestVmEnergy:
    def test_zero_cpu(self):
        assert vm_energy(VmRequest.make(0, 0, 100, ResourceVector(ram=10)), HOST) == 0

    def test_no_dynamic_range(self):
        flat = HostConfig(1, HOST.capacity, 250, 250)
        assert vm_energy(VmRequest.make(0, 0, 100, TYPE2), flat) == 0

    def test_type2_one_hour(self):
        e = vm_energy(VmRequest.make(0, 0, 3600, TYPE2), HOST)
        # (250 - 175) * 5000 / 52000 * 3600, by hand
        assert e == Fraction(75 * 5000 * 3600, 52000)
        assert float(e) == pytest.approx(25961.538, abs=1e-3)


class TestHostEnergy:
    def test_empty(self):
        assert host_energy(HostState(HOST)) == 0

    def test_zero_cpu_vms(self):
        vms = [VmRequest.make(0, 0, 60, ResourceVector(ram=1)), VmRequest.make(1, 40, 60, ResourceVector(ram=1))]
        assert host_energy(HostState(HOST, vms)) == HOST.alpha * HOST.p_max * 100

    def test_closed_form_matches_sweep(self):
        rng = random.Random(2)
        for _ in range(200):
            state = HostState(HOST)
            for i in range(rng.randint(1, 10)):
                v = VmRequest.make(i, rng.randrange(0, 5000), rng.randint(1, 3000), rng.choice(VM_TYPES).demand)
                state.add(v)  # capacity is irrelevant to the energy identity
            closed = float(host_energy(state))
            assert host_energy_by_sweep(state) == pytest.approx(closed, rel=1e-9)


def _single_type2_schedule():
    inst = Instance((VmRequest.make(0, 0, 3600, TYPE2),), (HOST,))
    return Schedule(inst, {0: 0})


class TestScheduleEnergy:
    def test_empty(self):
        report = schedule_energy(Schedule(Instance((), (HOST,))))
        assert report.total == 0

    def test_single_type2(self):
        report = schedule_energy(_single_type2_schedule())
        assert report.base_total == Fraction(7, 10) * 250 * 3600 == 630000
        assert report.increment_total == Fraction(75 * 5000 * 3600, 52000)
        assert report.total == report.base_total + report.increment_total
        assert not report.heterogeneous

    def test_difference_is_idle_power_times_cost_difference(self):
        hosts = (reference_host(0), reference_host(1))
        vms = (VmRequest.make(0, 0, 100, TYPE2), VmRequest.make(1, 50, 200, TYPE2))
        inst = Instance(vms, hosts)
        a, b = Schedule(inst, {0: 0, 1: 0}), Schedule(inst, {0: 0, 1: 1})
        ea, eb = schedule_energy(a), schedule_energy(b)
        assert ea.increment_total == eb.increment_total
        assert eb.total - ea.total == 175 * (schedule_cost(b) - schedule_cost(a)) == 175 * 50

    def test_heterogeneous_flag(self):
        other = HostConfig(1, HOST.capacity, 100, 200)
        inst = Instance((VmRequest.make(0, 0, 10, TYPE2),), (HOST, other))
        report = schedule_energy(Schedule(inst, {0: 1}))
        assert report.heterogeneous
        assert report.total == 100 * 10 + Fraction(100 * 5000 * 10, 52000)

    def test_increment_bound(self):
        rng = random.Random(9)
        for _ in range(100):
            vms = tuple(VmRequest.make(i, rng.randrange(1000), rng.randint(1, 500), rng.choice(VM_TYPES).demand)
                        for i in range(rng.randint(1, 20)))
            inst = Instance(vms, (HOST,))
            report = schedule_energy(Schedule(inst, {v.id: 0 for v in vms}))
            assert report.increment_total <= (HOST.p_max - HOST.p_idle) * bounds_for_instance(inst).length


class TestOptimalEnergyBounds:
    def test_empty(self):
        b = optimal_energy_bounds(Instance((), (HOST,)))
        assert (b.lower, b.upper) == (0, 0)

    def test_two_one_hour_vms(self):
        vms = tuple(VmRequest.make(i, 0, 3600, VM_TYPES[2].demand) for i in range(2))
        inst = Instance(vms, (reference_host(0), reference_host(1)))
        assert bounds_for_instance(inst).g == 2
        b = optimal_energy_bounds(inst)
        assert b.lower == 630_000
        assert b.upper == 1_800_000

    def test_refuses_heterogeneous(self):
        inst = Instance((), (HOST, HostConfig(1, HOST.capacity, 100, 200)))
        with pytest.raises(ValueError):
            optimal_energy_bounds(inst)
