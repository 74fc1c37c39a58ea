"""Synchronous threshold-network dynamics with one nonconforming vertex."""
from .engine import CycleReport, State, run_to_cycle, step, successor_map
from .graph import Graph, build_graph, enumerate_graphs, gen_gk, gen_preset, v1_neighborhood_independent
from .kernels import BACKEND
from .rules import (
    AntiThreshold,
    CountSet,
    SubsetSystem,
    SystemConfig,
    Threshold,
    enumerate_v1_rules,
    eval_rule,
    majority_rule,
    make_config,
    minority_rule,
)

__version__ = "0.1.0"
