"""Seeded synthetic parallel-job workloads.

Arrivals are Poisson, run times log-uniform, and processor counts either
serial, a power of two, or uniform, loosely echoing the shape of archived
parallel workloads.
"""

from __future__ import annotations

import math
import random
from dataclasses import asdict, dataclass
from typing import Sequence

from ..model import VmRequest
from .catalog import VM_TYPES, VmType
from .swf import SwfJob, convert_jobs


@dataclass(frozen=True)
class GeneratorConfig:
    seed: int = 42
    jobs: int = 1000
    mean_interarrival: float = 300.0
    min_duration: int = 60
    max_duration: int = 14_400
    serial_fraction: float = 0.2
    power_of_two_fraction: float = 0.7
    max_processors: int = 32

    def __post_init__(self) -> None:
        if self.jobs < 0:
            raise ValueError("jobs must be >= 0")
        if self.mean_interarrival <= 0:
            raise ValueError("mean_interarrival must be positive")
        if not 1 <= self.min_duration <= self.max_duration:
            raise ValueError("need 1 <= min_duration <= max_duration")
        for name in ("serial_fraction", "power_of_two_fraction"):
            if not 0.0 <= getattr(self, name) <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1]")
        if self.max_processors < 1:
            raise ValueError("max_processors must be >= 1")

    @classmethod
    def from_dict(cls, data: dict) -> GeneratorConfig:
        return cls(**data)

    def to_dict(self) -> dict:
        return asdict(self)


def generate_jobs(config: GeneratorConfig) -> list[SwfJob]:
    rng = random.Random(config.seed)
    log_lo, log_hi = math.log(config.min_duration), math.log(config.max_duration)
    max_exp = int(math.log2(config.max_processors))
    t = 0.0
    jobs = []
    for job_id in range(1, config.jobs + 1):
        t += rng.expovariate(1.0 / config.mean_interarrival)
        run = min(config.max_duration, max(config.min_duration, round(math.exp(rng.uniform(log_lo, log_hi)))))
        u = rng.random()
        if u < config.serial_fraction or config.max_processors == 1:
            procs = 1
        elif rng.random() < config.power_of_two_fraction and max_exp >= 1:
            procs = 2 ** rng.randint(1, max_exp)
        else:
            procs = rng.randint(2, config.max_processors)
        jobs.append(SwfJob(job_id, int(t), 0, run, procs, procs, 1))
    return jobs


def generate_synthetic(config: GeneratorConfig, catalog: Sequence[VmType] = VM_TYPES) -> list[VmRequest]:
    return convert_jobs(generate_jobs(config), catalog).vms
