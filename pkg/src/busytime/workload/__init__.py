from .catalog import (REFERENCE_HOST_CAPACITY, STORAGE_UNITS_PER_GB, VM_TYPES, VmType,
                      reference_fleet, reference_host)
from .instance_io import dump_instance, instance_from_dict, instance_to_dict, load_instance
from .swf import (SwfFormatError, SwfJob, SwfTrace, VmBatch, convert_jobs, format_swf,
                  jobs_to_vms, parse_swf, read_swf)
from .synthetic import GeneratorConfig, generate_jobs, generate_synthetic

__all__ = [
    "GeneratorConfig", "REFERENCE_HOST_CAPACITY", "STORAGE_UNITS_PER_GB", "SwfFormatError",
    "SwfJob", "SwfTrace", "VM_TYPES", "VmBatch", "VmType", "convert_jobs", "dump_instance",
    "format_swf", "generate_jobs", "generate_synthetic", "instance_from_dict",
    "instance_to_dict", "jobs_to_vms", "load_instance", "parse_swf", "read_swf",
    "reference_fleet", "reference_host",
]
