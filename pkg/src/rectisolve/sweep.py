"""Layered shortest-path sweep over the grid's edge schedule.

Each scheduled segment is one layer transition: every state of the current
layer is expanded through a problem-specific transition function into the
next layer's table, keeping the minimum cost per state. Equal costs are
broken toward the smallest (predecessor key, multiplicity) pair, which
makes the stored predecessor chain independent of expansion order.

Trace mode keeps every layer for path reconstruction; rolling mode keeps
two layers and reports the cost only.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Callable, NamedTuple

from .errors import InternalInfeasibleError
from .geometry import EdgeEvent, HananGrid, edge_schedule
from .states import FrontierState, encode_state

TransitionFn = Callable[[FrontierState, EdgeEvent, HananGrid], list]
AcceptFn = Callable[[FrontierState], bool]


class Entry(NamedTuple):
    cost: int
    pred: int | None  # predecessor state key in the previous layer
    mult: int
    state: FrontierState


LayerTable = dict[int, Entry]


@dataclass
class SweepStats:
    layer_count: int
    max_layer_states: int
    total_expansions: int
    wall_ms: float


@dataclass
class SweepTrace:
    layers: list[LayerTable]
    events: list[EdgeEvent]


@dataclass
class SweepResult:
    cost: int
    final_key: int
    final_state: FrontierState
    trace: SweepTrace | None
    stats: SweepStats


def run_sweep(
    grid: HananGrid,
    initial: FrontierState,
    transition_fn: TransitionFn,
    accept_fn: AcceptFn | None = None,
    trace: bool = True,
    on_state: Callable[[FrontierState], None] | None = None,
) -> SweepResult:
    """Run the layered sweep; ``on_state`` is a debug hook called on every
    emitted state (used to assert structural invariants)."""
    t0 = time.perf_counter()
    events = edge_schedule(grid)
    layer: LayerTable = {encode_state(initial): Entry(0, None, 0, initial)}
    layers = [layer]
    max_states = 1
    expansions = 0
    for event in events:
        nxt: LayerTable = {}
        for key, entry in layer.items():
            results = transition_fn(entry.state, event, grid)
            expansions += len(results)
            for new_state, cost, mult in results:
                if on_state is not None:
                    on_state(new_state)
                new_key = encode_state(new_state)
                new_cost = entry.cost + cost
                cur = nxt.get(new_key)
                if (
                    cur is None
                    or new_cost < cur.cost
                    or (new_cost == cur.cost and (key, mult) < (cur.pred, cur.mult))
                ):
                    nxt[new_key] = Entry(new_cost, key, mult, new_state)
        if not nxt:
            raise InternalInfeasibleError(f"layer emptied at event {event}")
        layer = nxt
        if trace:
            layers.append(layer)
        max_states = max(max_states, len(layer))

    best_key, best_entry = None, None
    for key in sorted(layer):
        entry = layer[key]
        if accept_fn is not None and not accept_fn(entry.state):
            continue
        if best_entry is None or entry.cost < best_entry.cost:
            best_key, best_entry = key, entry
    if best_entry is None:
        raise InternalInfeasibleError("no accepted state on the final layer")
    stats = SweepStats(
        layer_count=len(events) + 1,
        max_layer_states=max_states,
        total_expansions=expansions,
        wall_ms=(time.perf_counter() - t0) * 1000.0,
    )
    return SweepResult(
        cost=best_entry.cost,
        final_key=best_key,
        final_state=best_entry.state,
        trace=SweepTrace(layers, events) if trace else None,
        stats=stats,
    )


def reconstruct(trace: SweepTrace, final_key: int) -> list[tuple[EdgeEvent, int]]:
    """Walk predecessor pointers back to the initial layer.

    Returns the (event, multiplicity) choices with multiplicity > 0, in
    schedule order; replaying them forward reproduces the final state and
    its cost.
    """
    moves: list[tuple[EdgeEvent, int]] = []
    key = final_key
    for l in range(len(trace.layers) - 1, 0, -1):
        entry = trace.layers[l].get(key)
        if entry is None or entry.pred is None:
            raise InternalInfeasibleError(f"missing predecessor at layer {l}")
        if entry.mult:
            moves.append((trace.events[l - 1], entry.mult))
        key = entry.pred
    moves.reverse()
    return moves


def replay(
    grid: HananGrid,
    initial: FrontierState,
    transition_fn: TransitionFn,
    moves: list[tuple[EdgeEvent, int]],
) -> tuple[FrontierState, int]:
    """Apply a reconstructed move list forward; returns (state, cost)."""
    chosen = {(e.kind, e.row, e.col): m for e, m in moves}
    state = initial
    total = 0
    for event in edge_schedule(grid):
        mult = chosen.get((event.kind, event.row, event.col), 0)
        for new_state, cost, m in transition_fn(state, event, grid):
            if m == mult:
                state = new_state
                total += cost
                break
        else:
            raise InternalInfeasibleError(
                f"replay has no multiplicity-{mult} transition at {event}"
            )
    return state, total
