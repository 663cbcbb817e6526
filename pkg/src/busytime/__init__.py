"""Energy-aware placement of fixed-interval VMs by total busy time minimization."""

from .model import (RESOURCES, HostConfig, HostState, Instance, InstanceBounds, Interval,
                    PlacementDecision, ResourceVector, Schedule, ScheduleValidationError,
                    VmRequest, bounds_for_instance, can_place, host_busy_time,
                    interval_union_length, schedule_cost, sweep_cost, total_length,
                    validate_schedule)
from .power import (EnergyBounds, EnergyReport, PowerModel, host_energy, host_utilization,
                     optimal_energy_bounds, schedule_energy, vm_energy)

__version__ = "0.1.0"

__all__ = [
    "RESOURCES", "EnergyBounds", "EnergyReport", "HostConfig", "HostState", "Instance",
    "InstanceBounds", "Interval", "PlacementDecision", "PowerModel", "ResourceVector",
    "Schedule", "ScheduleValidationError", "VmRequest", "bounds_for_instance", "can_place",
    "host_busy_time", "host_energy", "host_utilization", "interval_union_length",
    "optimal_energy_bounds", "schedule_cost", "schedule_energy", "sweep_cost",
    "total_length", "validate_schedule", "vm_energy",
]
