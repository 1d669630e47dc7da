"""Packing equal circles in a circle: elastic-energy model, batched BFGS,
and the perturb-and-descend search around it."""

from .container import AdjustConfig, AdjustmentFailed, adjust_container
from .energy import batch_energy, batch_gradient, penalty_energy, penalty_gradient, total_energy, total_gradient
from .framework import NoFeasibleSolution, SolveConfig, SolveReport, solve
from .gbo import GboConfig, GboResult, gbo_minimize, gbo_run, hessian_entries
from .instance import (KNOWN_OPTIMA, BestKnownRegistry, Instance, Solution, check_feasibility, contact_counts,
                       random_layout, read_solution, write_solution)
from .neighbor import AnmState, NeighborTable, anm_step, brute_force_neighbors, build_neighbors
from .partition import Partition, PartitionStrategy, make_partition
from .sed import SedConfig, sed_run, select

__all__ = [
    "AdjustConfig", "AdjustmentFailed", "adjust_container",
    "batch_energy", "batch_gradient", "penalty_energy", "penalty_gradient", "total_energy", "total_gradient",
    "NoFeasibleSolution", "SolveConfig", "SolveReport", "solve",
    "GboConfig", "GboResult", "gbo_minimize", "gbo_run", "hessian_entries",
    "KNOWN_OPTIMA", "BestKnownRegistry", "Instance", "Solution", "check_feasibility", "contact_counts",
    "random_layout", "read_solution", "write_solution",
    "AnmState", "NeighborTable", "anm_step", "brute_force_neighbors", "build_neighbors",
    "Partition", "PartitionStrategy", "make_partition",
    "SedConfig", "sed_run", "select",
]
