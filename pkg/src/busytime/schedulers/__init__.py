"""Placement heuristics sharing one calling convention: ``f(instance) -> Schedule``."""

from ._greedy import Fleet, SchedulerConfig, SortOrder, greedy_schedule, sort_vms
from .baselines import average_demand_weights, mindft_ldtf, pabfd, tian_mffde, vbp_norm_l2
from .emintre import emintre_lft, tre_metric
from .oracle import InfeasibleInstanceError, OracleLimitError, brute_force_optimal

ALGORITHMS = {
    "emintre-lft": "EMinTRE-LFT",
    "pabfd": "PABFD",
    "vbp-norm-l2": "VBP-Norm-L2",
    "tian-mffde": "Tian-MFFDE",
    "mindft-ldtf": "MinDFT-LDTF",
    "optimal": "OPT",
}


def run_scheduler(name: str, instance, config: SchedulerConfig | None = None, weights=None):
    """Dispatch by CLI name; ``config`` only affects EMinTRE-LFT, ``weights`` only VBP."""
    key = name.lower()
    if key == "emintre-lft":
        return emintre_lft(instance, config)
    if key == "pabfd":
        return pabfd(instance)
    if key == "vbp-norm-l2":
        return vbp_norm_l2(instance, weights)
    if key == "tian-mffde":
        return tian_mffde(instance)
    if key == "mindft-ldtf":
        return mindft_ldtf(instance)
    if key == "optimal":
        return brute_force_optimal(instance)
    raise KeyError(f"unknown scheduler {name!r}; choose from {sorted(ALGORITHMS)}")


__all__ = [
    "ALGORITHMS", "Fleet", "InfeasibleInstanceError", "OracleLimitError", "SchedulerConfig",
    "SortOrder", "average_demand_weights", "brute_force_optimal", "emintre_lft",
    "greedy_schedule", "mindft_ldtf", "pabfd", "run_scheduler", "sort_vms", "tian_mffde",
    "tre_metric", "vbp_norm_l2",
]
