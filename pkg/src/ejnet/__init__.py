"""Eisenstein-Jacobi interconnection networks: topology, one-to-all and all-to-all broadcast."""

from .alltoall import AllToAllTrace, run_all_to_all, verify_half_duplex
from .analytics import analytic_prev, expand_o2a, sender_ratio, total_senders
from .broadcast import (
    BroadcastTrace,
    StepStats,
    mean_receive_step,
    run_improved_one_to_all,
    run_previous_one_to_all,
)
from .ejint import (
    EJInt,
    Modulus,
    distance,
    ej_add,
    ej_mul,
    ej_norm,
    mod_reduce,
    residues,
    weight,
    weight_distribution,
)
from .topology import HyperEJNetwork, LinkLabel, bfs_from, build_network, sector_of, sector_tree

__all__ = [
    "AllToAllTrace", "BroadcastTrace", "EJInt", "HyperEJNetwork", "LinkLabel", "Modulus",
    "StepStats", "analytic_prev", "bfs_from", "build_network", "distance", "ej_add", "ej_mul",
    "ej_norm", "expand_o2a", "mean_receive_step", "mod_reduce", "residues", "run_all_to_all",
    "run_improved_one_to_all", "run_previous_one_to_all", "sector_of", "sector_tree",
    "sender_ratio", "total_senders", "verify_half_duplex", "weight", "weight_distribution",
]
