"""Exact rectilinear traveling salesman over the Hanan grid.

The sweep builds a minimum-length tour subgraph: an edge multiset covering
every terminal, connected, with all degrees even, using at most two copies
of any segment. Feasibility is enforced where it becomes decidable:

* a horizontal step finalizes the departing vertex's degree, so its parity
  must land on even (or stay zero for a non-terminal);
* a transition that would strand a component with no frontier vertex is
  rejected outright ("closure"): the rightmost column always contains a
  terminal, so a component cut off before the end can never rejoin the one
  that must survive;
* a non-terminal whose only incident edges would be the doubled segment
  just added is a useless U-turn and is pruned;
* the final layer must hold a single component, with even parity on every
  row and positive (hence even) degree on last-column terminals.

The optimal subgraph is then oriented into a closed walk by Hierholzer's
algorithm.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InternalInfeasibleError, NotEulerianError
from .geometry import (
    DEFAULT_MAX_GRID_VERTICES,
    EdgeEvent,
    HananGrid,
    Instance,
    Point,
    build_grid,
    l1,
)
from .solution import (
    SolutionEdge,
    check_connected_covering,
    edges_from_moves,
    total_edge_length,
)
from .states import (
    EVEN,
    ODD,
    ZERO,
    TspFrontierState,
    canonicalize_tsp,
    count_states,
    initial_tsp_state,
    parity_add,
    relabel_components,
)
from . import sweep as sweep_mod
from . import tables as tables_mod
from .sweep import SweepStats

Tour = tuple[Point, ...]


@dataclass(frozen=True)
class TourSubgraph:
    edges: tuple[SolutionEdge, ...]
    total_length: int


@dataclass
class TspSolution:
    length: int
    subgraph: TourSubgraph | None
    tour: Tour | None
    stats: SweepStats
    engine: str
    grid: HananGrid | None


# --- transitions ----------------------------------------------------------


def _vertical_kernel(state: TspFrontierState, i: int) -> list:
    """Segment between rows i and i+1 (1-based): skip, single, or double."""
    parity, comp = state
    lo = i - 1
    hi = i
    out = [(state, 0)]
    c_lo, c_hi = comp[lo], comp[hi]
    for m in (1, 2):
        npar = list(parity)
        npar[lo] = parity_add(parity[lo], m)
        npar[hi] = parity_add(parity[hi], m)
        if c_lo and c_hi:
            if c_lo == c_hi:
                ncomp = comp
            else:
                ncomp = tuple(c_lo if c == c_hi else c for c in comp)
        elif c_lo:
            ncomp = comp[:hi] + (c_lo,) + comp[hi + 1 :]
        elif c_hi:
            ncomp = comp[:lo] + (c_hi,) + comp[lo + 1 :]
        else:
            fresh = len(comp) + 1
            ncomp = comp[:lo] + (fresh, fresh) + comp[lo + 2 :]
        out.append((TspFrontierState(tuple(npar), relabel_components(ncomp)), m))
    return out


def _horizontal_kernel(
    state: TspFrontierState, i: int, dep_terminal: bool
) -> list:
    """Segment leaving row i's frontier vertex rightward; the departing
    vertex's degree is final after this step."""
    parity, comp = state
    r = i - 1
    p = parity[r]
    c = comp[r]
    out = []
    if p == ZERO:
        if dep_terminal:
            # zero-degree terminal is infeasible; doubled edge starts a
            # fresh single-vertex component (degree-2 self-loop shape)
            fresh = len(comp) + 1
            npar = parity[:r] + (EVEN,) + parity[r + 1 :]
            ncomp = comp[:r] + (fresh,) + comp[r + 1 :]
            out.append(
                (TspFrontierState(npar, relabel_components(ncomp)), 2)
            )
        else:
            out.append((state, 0))
            # doubled edge would leave a non-terminal U-turn: pruned
    elif p == ODD:
        out.append((state, 1))
    else:  # EVEN: skip (unless that closes the component) or double
        if comp.count(c) > 1:
            npar = parity[:r] + (ZERO,) + parity[r + 1 :]
            ncomp = comp[:r] + (0,) + comp[r + 1 :]
            out.append((TspFrontierState(npar, relabel_components(ncomp)), 0))
        out.append((state, 2))
    return out


def _kernel(state: TspFrontierState, kind: tables_mod.Kind) -> list:
    if kind[0] == "V":
        return _vertical_kernel(state, kind[1])
    return _horizontal_kernel(state, kind[1], kind[2])


def tsp_transition(
    state: TspFrontierState, event: EdgeEvent, grid: HananGrid
) -> list[tuple[TspFrontierState, int, int]]:
    """All feasible extensions of a state by one scheduled segment, as
    (new state, added cost, multiplicity) triples."""
    if event.kind == "V":
        results = _vertical_kernel(state, event.row)
    else:
        results = _horizontal_kernel(
            state, event.row, grid.is_terminal(event.row, event.col)
        )
    return [(s, m * event.length, m) for s, m in results]


def _accept(state: TspFrontierState, term_rows: tuple[bool, ...]) -> bool:
    max_label = 0
    for p, c, t in zip(state.parity, state.comp, term_rows):
        if p == ODD:
            return False
        if t and p != EVEN:
            return False
        if c > max_label:
            max_label = c
    return max_label == 1


def _accept_mask(space: tables_mod.StateSpace, term_rows) -> np.ndarray:
    pm = space.parity_mat
    ok = (pm != ODD).all(axis=1)
    tr = np.asarray(term_rows, dtype=bool)
    if tr.any():
        ok &= (pm[:, tr] == EVEN).all(axis=1)
    ok &= space.comp_mat.max(axis=1) == 1
    return ok


def _debug_check(state: TspFrontierState):
    if canonicalize_tsp(state.parity, state.comp) != state:
        raise InternalInfeasibleError(f"non-canonical state emitted: {state}")


def choose_engine(engine: str, problem: str, h: int) -> str:
    if engine not in ("auto", "dict", "vector"):
        raise ValueError(f"unknown engine {engine!r}")
    if engine != "auto":
        return engine
    if h <= 12 and count_states(h, problem) <= tables_mod.VECTOR_STATE_CAP:
        return "vector"
    return "dict"


# --- solving --------------------------------------------------------------


def solve_tsp(
    instance: Instance,
    *,
    engine: str = "auto",
    trace: bool = True,
    debug: bool = False,
    threads: int = 1,
    max_grid_vertices: int = DEFAULT_MAX_GRID_VERTICES,
) -> TspSolution:
    """Exact minimum rectilinear tour.

    With trace on, the result carries the optimal tour subgraph (validated
    against all its invariants) and an oriented closed walk; rolling mode
    (trace off) reports the length and sweep statistics only. ``threads``
    is accepted for interface stability; execution is sequential and the
    result is identical for any value.
    """
    del threads
    if len(instance.points) == 1:
        return TspSolution(
            0, TourSubgraph((), 0), (instance.points[0],),
            SweepStats(1, 1, 0, 0.0), "trivial", None,
        )
    grid = build_grid(instance, max_grid_vertices)
    term_rows = grid.terminal_rows_last_col()
    picked = choose_engine(engine, "tsp", grid.h)
    if picked == "vector":
        tableset = tables_mod.get_tableset("tsp", grid.h, _kernel)
        mask = _accept_mask(tableset.space, term_rows)

        def kind_of(ev: EdgeEvent):
            if ev.kind == "V":
                return ("V", ev.row)
            return ("H", ev.row, grid.is_terminal(ev.row, ev.col))

        res = tables_mod.run_vector_sweep(
            grid, tableset, kind_of, initial_tsp_state(grid.h), mask,
            mult_max=2, trace=trace,
        )
        length, stats = res.cost, res.stats
        moves = tables_mod.reconstruct_vector(res, tableset) if trace else None
    else:
        res = sweep_mod.run_sweep(
            grid,
            initial_tsp_state(grid.h),
            tsp_transition,
            lambda s: _accept(s, term_rows),
            trace=trace,
            on_state=_debug_check if debug else None,
        )
        length, stats = res.cost, res.stats
        moves = sweep_mod.reconstruct(res.trace, res.final_key) if trace else None

    subgraph = tour = None
    if trace:
        edges = edges_from_moves(grid, moves)
        subgraph = TourSubgraph(tuple(edges), total_edge_length(edges))
        if subgraph.total_length != length:
            raise InternalInfeasibleError(
                f"reconstruction length {subgraph.total_length} != optimum {length}"
            )
        validate_tour_subgraph(subgraph, instance)
        tour = orient_tour(subgraph, instance)
        walked = sum(l1(tour[k], tour[k + 1]) for k in range(len(tour) - 1))
        if walked != length:
            raise InternalInfeasibleError(
                f"oriented walk length {walked} != optimum {length}"
            )
    return TspSolution(length, subgraph, tour, stats, picked, grid)


# --- validation and orientation -------------------------------------------


def validate_tour_subgraph(subgraph: TourSubgraph, instance: Instance):
    """Assert the tour-subgraph invariants; raises on any violation."""
    edges = subgraph.edges
    if not edges:
        if len(instance.points) == 1:
            return
        raise InternalInfeasibleError("empty subgraph for multi-point instance")
    degree: dict[Point, int] = {}
    for e in edges:
        if e.mult not in (1, 2):
            raise InternalInfeasibleError(f"multiplicity {e.mult} out of range")
        degree[e.p1] = degree.get(e.p1, 0) + e.mult
        degree[e.p2] = degree.get(e.p2, 0) + e.mult
    odd = [p for p, d in degree.items() if d % 2]
    if odd:
        raise InternalInfeasibleError(f"odd degree at {odd[:3]}")
    check_connected_covering(list(edges), instance.points, "tour subgraph")
    if total_edge_length(list(edges)) != subgraph.total_length:
        raise InternalInfeasibleError("edge lengths do not sum to total_length")


def orient_tour(subgraph: TourSubgraph, instance: Instance) -> Tour:
    """Orient a valid tour subgraph into a closed walk using every edge
    instance exactly once, starting at the lowest-leftmost terminal."""
    if not subgraph.edges:
        if len(instance.points) == 1:
            return (instance.points[0],)
        raise NotEulerianError("empty subgraph cannot be oriented")
    adjacency: dict[Point, list[tuple[Point, int]]] = {}
    eid = 0
    for e in subgraph.edges:
        for _ in range(e.mult):
            adjacency.setdefault(e.p1, []).append((e.p2, eid))
            adjacency.setdefault(e.p2, []).append((e.p1, eid))
            eid += 1
    for p, nbrs in adjacency.items():
        if len(nbrs) % 2:
            raise NotEulerianError(f"odd degree at {p}")
        nbrs.sort(key=lambda t: (t[0].y, t[0].x, t[1]))
    start = min(instance.points, key=lambda p: (p.y, p.x))
    if start not in adjacency:
        raise NotEulerianError(f"terminal {start} not on the subgraph")

    used = [False] * eid
    position = {p: 0 for p in adjacency}
    stack = [start]
    path: list[Point] = []
    while stack:
        v = stack[-1]
        nbrs = adjacency[v]
        k = position[v]
        while k < len(nbrs) and used[nbrs[k][1]]:
            k += 1
        position[v] = k
        if k == len(nbrs):
            path.append(stack.pop())
        else:
            u, edge_id = nbrs[k]
            used[edge_id] = True
            stack.append(u)
    if len(path) != eid + 1:
        raise NotEulerianError("subgraph is disconnected")
    path.reverse()
    return tuple(path)
