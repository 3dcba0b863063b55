"""Benchmark harness: seeded runs over (problem, n, h) configurations.

Emits one CSV row per run plus one aggregate row per configuration
(seed="agg": mean wall time, max layer size / layer count / peak memory
over the successful runs). Failed runs become rows with
optimum="ERROR:<type>" and the sweep columns empty. Transition tables are
warmed before the timed runs so the recorded times reflect the sweep, not
one-off cache building.
"""

from __future__ import annotations

import io
import sys
import time
from dataclasses import dataclass

from .errors import InternalInfeasibleError
from .generate import gen_instance
from .states import count_states
from .steiner import solve_steiner
from .tsp import solve_tsp

try:
    import resource

    def _peak_mem_bytes() -> int | None:
        return resource.getrusage(resource.RUSAGE_SELF).ru_maxrss * 1024

except ImportError:  # pragma: no cover - non-POSIX platforms

    def _peak_mem_bytes() -> int | None:
        return None


CSV_COLUMNS = [
    "problem",
    "n",
    "h",
    "v",
    "seed",
    "optimum",
    "wall_ms",
    "max_layer_states",
    "layer_count",
    "peak_mem_bytes",
]


@dataclass
class BenchRecord:
    problem: str
    n: int
    h: int
    v: int | None
    seed: int | str
    optimum: int | str | None
    wall_ms: float | None
    max_layer_states: int | None
    layer_count: int | None
    peak_mem_bytes: int | None

    def csv_row(self) -> str:
        def cell(value):
            if value is None:
                return ""
            if isinstance(value, float):
                return f"{value:.3f}"
            return str(value)

        return ",".join(
            cell(v)
            for v in (
                self.problem,
                self.n,
                self.h,
                self.v,
                self.seed,
                self.optimum,
                self.wall_ms,
                self.max_layer_states,
                self.layer_count,
                self.peak_mem_bytes,
            )
        )


def _solve(problem: str, instance, engine: str):
    if problem == "tsp":
        return solve_tsp(instance, engine=engine, trace=False)
    return solve_steiner(instance, engine=engine, trace=False)


def run_bench(
    configs: list[tuple[str, int, int]],
    instances: int = 3,
    seed_base: int = 1,
    xmax: int | None = None,
    ymax: int | None = None,
    engine: str = "auto",
    warnings: io.TextIOBase | None = None,
) -> str:
    """Run every configuration and return the CSV document."""
    if warnings is None:
        warnings = sys.stderr
    lines = [",".join(CSV_COLUMNS)]
    for problem, n, h in configs:
        xm = xmax if xmax is not None else max(4 * n, n)
        ym = ymax if ymax is not None else max(4 * h, h)
        bound = count_states(h, problem)
        # warm-up: same shape, untimed, populates table/space caches
        _solve(problem, gen_instance(n, h, xm, ym, seed_base), engine)
        done: list[BenchRecord] = []
        for k in range(instances):
            seed = seed_base + k
            try:
                instance = gen_instance(n, h, xm, ym, seed)
                t0 = time.perf_counter()
                sol = _solve(problem, instance, engine)
                wall = (time.perf_counter() - t0) * 1000.0
                if sol.stats.max_layer_states > bound:
                    raise InternalInfeasibleError(
                        f"layer size {sol.stats.max_layer_states} exceeds "
                        f"state-count bound {bound}"
                    )
                rec = BenchRecord(
                    problem, n, h, sol.grid.v if sol.grid else 1, seed,
                    sol.length, wall, sol.stats.max_layer_states,
                    sol.stats.layer_count, _peak_mem_bytes(),
                )
                done.append(rec)
                lines.append(rec.csv_row())
            except Exception as exc:  # record and continue
                lines.append(
                    BenchRecord(
                        problem, n, h, None, seed,
                        f"ERROR:{type(exc).__name__}", None, None, None, None,
                    ).csv_row()
                )
        if done:
            observed = max(r.max_layer_states for r in done)
            if observed < bound:
                print(
                    f"note: {problem} n={n} h={h}: observed max layer "
                    f"{observed} below the state-space size {bound}",
                    file=warnings,
                )
            lines.append(
                BenchRecord(
                    problem, n, h,
                    max(r.v for r in done), "agg", None,
                    sum(r.wall_ms for r in done) / len(done),
                    observed,
                    max(r.layer_count for r in done),
                    max(
                        (r.peak_mem_bytes for r in done if r.peak_mem_bytes),
                        default=None,
                    ),
                ).csv_row()
            )
    return "\n".join(lines) + "\n"
