"""VM types and the reference host used in the experiments."""

from __future__ import annotations

from dataclasses import dataclass

from ..model import HostConfig, ResourceVector

# storage is held in hundredths of a GB so the 422.5 / 211.25 GB types stay integral
STORAGE_UNITS_PER_GB = 100


@dataclass(frozen=True)
class VmType:
    name: str
    mips_per_core: int
    cores: int
    ram: int
    netbw: int
    storage: int  # 0.01 GB

    @property
    def demand(self) -> ResourceVector:
        return ResourceVector(cores=self.cores, mips=self.cores * self.mips_per_core,
                              ram=self.ram, netbw=self.netbw, storage=self.storage)

    @property
    def storage_gb(self) -> float:
        return self.storage / STORAGE_UNITS_PER_GB


# (MIPS per core, cores, RAM MB, network Mbit/s, storage 0.01 GB)
VM_TYPES: tuple[VmType, ...] = (
    VmType("type1", 2500, 8, 6800, 100, 100_000),
    VmType("type2", 2500, 2, 1700, 100, 42_250),
    VmType("type3", 3250, 8, 68400, 100, 100_000),
    VmType("type4", 3250, 4, 34200, 100, 84_500),
    VmType("type5", 3250, 2, 17100, 100, 42_250),
    VmType("type6", 2000, 4, 15000, 100, 169_000),
    VmType("type7", 2000, 2, 7500, 100, 84_500),
    VmType("type8", 1000, 1, 1875, 100, 21_125),
)

REFERENCE_HOST_CAPACITY = ResourceVector(cores=16, mips=16 * 3250, ram=140084, netbw=10000,
                                         storage=10000 * STORAGE_UNITS_PER_GB)
REFERENCE_P_IDLE = 175
REFERENCE_P_MAX = 250


def reference_host(host_id: int) -> HostConfig:
    """16 x 3250 MIPS, 140084 MB RAM, 10 Gbit/s, 10 TB, 175 W idle / 250 W peak."""
    return HostConfig(host_id, REFERENCE_HOST_CAPACITY, REFERENCE_P_IDLE, REFERENCE_P_MAX)


def reference_fleet(count: int, first_id: int = 0) -> tuple[HostConfig, ...]:
    return tuple(reference_host(first_id + i) for i in range(count))
