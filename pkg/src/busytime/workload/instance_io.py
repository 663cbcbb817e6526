"""JSON interchange format for problem instances.

::

    {"vms":   [{"id": 0, "start": 10, "duration": 3600,
                "demand": {"cores": 8, "mips": 20000, "ram": 6800, "netbw": 100, "storage": 100000},
                "type": "type1"}],
     "hosts": [{"id": 0, "capacity": {...}, "p_idle": 175, "p_max": 250}]}

``mips`` is total MIPS across the VM's cores and ``storage`` is in
hundredths of a GB.  ``type`` is optional.
"""

from __future__ import annotations

import json
from fractions import Fraction

from ..model import HostConfig, Instance, ResourceVector, VmRequest


def _number(x: Fraction):
    return int(x) if x.denominator == 1 else float(x)


def vm_to_dict(vm: VmRequest) -> dict:
    out = {"id": vm.id, "start": vm.start, "duration": vm.duration, "demand": vm.demand.to_dict()}
    if vm.vm_type is not None:
        out["type"] = vm.vm_type
    return out


def host_to_dict(host: HostConfig) -> dict:
    return {"id": host.id, "capacity": host.capacity.to_dict(),
            "p_idle": _number(host.p_idle), "p_max": _number(host.p_max)}


def instance_to_dict(instance: Instance) -> dict:
    return {"vms": [vm_to_dict(vm) for vm in instance.vms],
            "hosts": [host_to_dict(h) for h in instance.hosts]}


def _require(obj: dict, key: str, where: str):
    if key not in obj:
        raise ValueError(f"{where}: missing {key!r}")
    return obj[key]


def instance_from_dict(data: dict) -> Instance:
    vms = []
    for i, raw in enumerate(data.get("vms", [])):
        where = f"vms[{i}]"
        vms.append(VmRequest.make(int(_require(raw, "id", where)), int(_require(raw, "start", where)),
                                  int(_require(raw, "duration", where)),
                                  ResourceVector.from_dict(_require(raw, "demand", where)),
                                  raw.get("type")))
    hosts = []
    for i, raw in enumerate(data.get("hosts", [])):
        where = f"hosts[{i}]"
        hosts.append(HostConfig(int(_require(raw, "id", where)),
                                ResourceVector.from_dict(_require(raw, "capacity", where)),
                                _require(raw, "p_idle", where), _require(raw, "p_max", where)))
    return Instance(tuple(vms), tuple(hosts))


def load_instance(path) -> Instance:
    with open(path, encoding="utf-8") as fh:
        return instance_from_dict(json.load(fh))


def dump_instance(instance: Instance, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(instance_to_dict(instance), fh, indent=1)
        fh.write("\n")
