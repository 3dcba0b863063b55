"""Exact rectilinear TSP and rectilinear Steiner tree solvers.

Both problems are solved by a layered dynamic program that sweeps the
Hanan grid of the input points column by column, summarizing progress in
canonical per-row frontier states. Runtime is linear in the number of
points and exponential only in the number of distinct horizontal lines.
"""

from .bench import BenchRecord, run_bench
from .generate import SplitMix64, gen_instance
from .geometry import (
    EdgeEvent,
    HananGrid,
    Instance,
    Point,
    build_grid,
    edge_schedule,
    l1,
    make_instance,
    parse_instance,
    write_instance,
)
from .oracle import (
    distance_matrix,
    l1_mst,
    steiner_exhaustive,
    steiner_oracle,
    tsp_bruteforce,
)
from .render import render_svg
from .solution import (
    SolutionEdge,
    format_solution,
    parse_solution,
    resolve_edges,
)
from .states import (
    SteinerFrontierState,
    TspFrontierState,
    canonicalize_steiner,
    canonicalize_tsp,
    catalan,
    count_states,
    decode_state,
    encode_state,
    enumerate_states,
    parse_state,
    render_state,
    super_catalan,
)
from .steiner import SteinerSolution, SteinerTree, solve_steiner, steiner_transition
from .sweep import SweepStats, SweepTrace, reconstruct, replay, run_sweep
from .tsp import (
    TourSubgraph,
    TspSolution,
    orient_tour,
    solve_tsp,
    tsp_transition,
    validate_tour_subgraph,
)

__version__ = "0.1.0"

__all__ = [
    "BenchRecord",
    "EdgeEvent",
    "HananGrid",
    "Instance",
    "Point",
    "SolutionEdge",
    "SplitMix64",
    "SteinerFrontierState",
    "SteinerSolution",
    "SteinerTree",
    "SweepStats",
    "SweepTrace",
    "TourSubgraph",
    "TspFrontierState",
    "TspSolution",
    "build_grid",
    "canonicalize_steiner",
    "canonicalize_tsp",
    "catalan",
    "count_states",
    "decode_state",
    "distance_matrix",
    "edge_schedule",
    "encode_state",
    "enumerate_states",
    "format_solution",
    "gen_instance",
    "l1",
    "l1_mst",
    "make_instance",
    "orient_tour",
    "parse_instance",
    "parse_solution",
    "parse_state",
    "reconstruct",
    "render_state",
    "render_svg",
    "replay",
    "resolve_edges",
    "run_bench",
    "run_sweep",
    "solve_steiner",
    "solve_tsp",
    "steiner_exhaustive",
    "steiner_oracle",
    "steiner_transition",
    "super_catalan",
    "tsp_bruteforce",
    "tsp_transition",
    "validate_tour_subgraph",
    "write_instance",
]
