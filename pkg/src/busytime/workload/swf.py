"""Standard Workload Format traces and their conversion to VM requests.

Job lines hold 18 whitespace-separated fields; lines starting with ``;``
are header comments.  Only job id, submit time, wait time, run time,
allocated processors and requested processors (fields 1-5 and 8) are used.
"""

from __future__ import annotations

import logging
import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Sequence, TextIO

from ..model import ResourceVector, VmRequest
from .catalog import REFERENCE_HOST_CAPACITY, VM_TYPES, VmType

log = logging.getLogger(__name__)

SWF_FIELDS = 18


class SwfFormatError(ValueError):
    def __init__(self, lineno: int, message: str) -> None:
        self.lineno = lineno
        super().__init__(f"line {lineno}: {message}")


@dataclass(frozen=True)
class SwfJob:
    job_id: int
    submit_time: int
    wait_time: int
    run_time: int
    processors: int
    requested_processors: int = -1
    status: int = -1

    @property
    def start_time(self) -> int:
        # a lone -1 among submit/wait counts as zero
        return max(self.submit_time, 0) + max(self.wait_time, 0)


@dataclass
class SwfTrace:
    jobs: list[SwfJob] = field(default_factory=list)
    dropped: int = 0
    header: list[str] = field(default_factory=list)

    def __iter__(self):
        return iter(self.jobs)

    def __len__(self) -> int:
        return len(self.jobs)


def _int_field(tok: str, lineno: int, name: str) -> int:
    try:
        return int(tok)
    except ValueError:
        pass
    try:
        value = float(tok)
    except ValueError:
        raise SwfFormatError(lineno, f"{name} is not a number: {tok!r}") from None
    if not math.isfinite(value):
        raise SwfFormatError(lineno, f"{name} is not finite: {tok!r}")
    return round(value)


def parse_swf(stream: TextIO | Iterable[str]) -> SwfTrace:
    """Read an SWF trace, dropping jobs that cannot become VMs.

    Dropped (and counted): non-positive run time, no usable processor
    count, or both submit and wait time unknown.
    """
    trace = SwfTrace()
    for lineno, raw in enumerate(stream, start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith(";"):
            trace.header.append(line)
            continue
        toks = line.split()
        if len(toks) != SWF_FIELDS:
            raise SwfFormatError(lineno, f"expected {SWF_FIELDS} fields, found {len(toks)}")
        for i, tok in enumerate(toks):
            try:
                float(tok)
            except ValueError:
                raise SwfFormatError(lineno, f"field {i + 1} is not a number: {tok!r}") from None
        job_id = _int_field(toks[0], lineno, "job id")
        submit = _int_field(toks[1], lineno, "submit time")
        wait = _int_field(toks[2], lineno, "wait time")
        run = _int_field(toks[3], lineno, "run time")
        allocated = _int_field(toks[4], lineno, "allocated processors")
        requested = _int_field(toks[7], lineno, "requested processors")
        status = _int_field(toks[10], lineno, "status")
        procs = allocated if allocated != -1 else requested
        if run <= 0 or procs <= 0 or (submit == -1 and wait == -1):
            trace.dropped += 1
            continue
        trace.jobs.append(SwfJob(job_id, submit, wait, run, procs, requested, status))
    return trace


def read_swf(path) -> SwfTrace:
    with open(path, encoding="utf-8") as fh:
        return parse_swf(fh)


def format_swf(jobs: Iterable[SwfJob], header: Sequence[str] = ()) -> str:
    """Serialize jobs back to SWF; unused fields are written as -1."""
    lines = list(header)
    for job in jobs:
        fields = [-1] * SWF_FIELDS
        fields[0] = job.job_id
        fields[1] = job.submit_time
        fields[2] = job.wait_time
        fields[3] = job.run_time
        fields[4] = job.processors
        fields[7] = job.requested_processors
        fields[10] = job.status
        lines.append(" ".join(str(f) for f in fields))
    return "\n".join(lines) + "\n"


@dataclass
class VmBatch:
    vms: list[VmRequest]
    rejected: list[tuple[int, str]] = field(default_factory=list)  # (job id, type name)

    @property
    def type_histogram(self) -> Counter:
        return Counter(vm.vm_type for vm in self.vms)


def convert_jobs(jobs: Iterable[SwfJob], catalog: Sequence[VmType] = VM_TYPES,
                 host_capacity: ResourceVector = REFERENCE_HOST_CAPACITY,
                 first_vm_id: int = 0) -> VmBatch:
    """One VM per processor; the k-th VM overall gets ``catalog[k % len(catalog)]``.

    VMs whose type exceeds ``host_capacity`` are rejected; they still
    consume a round-robin slot and an id.
    """
    if not catalog:
        raise ValueError("empty VM type catalog")
    batch = VmBatch([])
    k = 0
    for job in jobs:
        start = job.start_time
        for _ in range(job.processors):
            vm_type = catalog[k % len(catalog)]
            vm_id = first_vm_id + k
            k += 1
            demand = vm_type.demand
            if not demand.fits_in(host_capacity):
                batch.rejected.append((job.job_id, vm_type.name))
                continue
            batch.vms.append(VmRequest.make(vm_id, start, job.run_time, demand, vm_type.name))
    if batch.rejected:
        log.warning("rejected %d VMs larger than the host", len(batch.rejected))
    return batch


def jobs_to_vms(jobs: Iterable[SwfJob], catalog: Sequence[VmType] = VM_TYPES) -> list[VmRequest]:
    return convert_jobs(jobs, catalog).vms
