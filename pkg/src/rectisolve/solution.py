"""Solution edge lists: mapping sweep moves back to original coordinates,
the text serialization, and small graph helpers shared by both solvers.

Edges are expressed in the original (untransposed) orientation: "V i j"
spans rows i..i+1 of column j, "H i j" spans columns j..j+1 of row i, both
1-based over the sorted distinct original coordinates.
"""

from __future__ import annotations

from typing import NamedTuple

from .errors import InputError, InternalInfeasibleError
from .geometry import EdgeEvent, HananGrid, Instance, Point, l1


class SolutionEdge(NamedTuple):
    kind: str  # "V" or "H" in original orientation
    row: int
    col: int
    p1: Point
    p2: Point
    mult: int


def edges_from_moves(
    grid: HananGrid, moves: list[tuple[EdgeEvent, int]]
) -> list[SolutionEdge]:
    """Convert normalized sweep moves to original-orientation edges."""
    orig_xs = grid.ys if grid.transposed else grid.xs
    orig_ys = grid.xs if grid.transposed else grid.ys
    xi = {x: j + 1 for j, x in enumerate(orig_xs)}
    yi = {y: i + 1 for i, y in enumerate(orig_ys)}
    edges = []
    for event, mult in moves:
        p1 = grid.point_at(event.row, event.col)
        if event.kind == "V":
            p2 = grid.point_at(event.row + 1, event.col)
        else:
            p2 = grid.point_at(event.row, event.col + 1)
        if p1.x == p2.x:
            lo, hi = sorted((p1, p2), key=lambda p: p.y)
            edges.append(SolutionEdge("V", yi[lo.y], xi[lo.x], lo, hi, mult))
        else:
            lo, hi = sorted((p1, p2), key=lambda p: p.x)
            edges.append(SolutionEdge("H", yi[lo.y], xi[lo.x], lo, hi, mult))
    edges.sort(key=lambda e: (e.kind, e.row, e.col))
    return edges


def format_solution(edges: list[SolutionEdge], length: int) -> str:
    lines = [f"length {length}"]
    lines.extend(f"{e.kind} {e.row} {e.col} {e.mult}" for e in edges)
    return "\n".join(lines) + "\n"


def parse_solution(text: str) -> tuple[int, list[tuple[str, int, int, int]]]:
    """Parse the edge-list text; returns (length, raw (kind,i,j,mult) rows)."""
    length = None
    raw = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] == "length" and len(parts) == 2:
            length = int(parts[1])
        elif parts[0] in ("V", "H") and len(parts) == 4:
            raw.append((parts[0], int(parts[1]), int(parts[2]), int(parts[3])))
        else:
            raise InputError(f"solution line {lineno}: cannot parse {line!r}")
    if length is None:
        raise InputError("solution is missing a 'length' line")
    return length, raw


def resolve_edges(
    instance: Instance, raw: list[tuple[str, int, int, int]]
) -> list[SolutionEdge]:
    """Attach coordinates to raw edge rows, validating grid membership."""
    xs = sorted({p.x for p in instance.points})
    ys = sorted({p.y for p in instance.points})
    edges = []
    for kind, i, j, mult in raw:
        if kind == "V":
            if not (1 <= i < len(ys) and 1 <= j <= len(xs)):
                raise InputError(f"edge V {i} {j} is not on the instance grid")
            p1 = Point(xs[j - 1], ys[i - 1])
            p2 = Point(xs[j - 1], ys[i])
        else:
            if not (1 <= i <= len(ys) and 1 <= j < len(xs)):
                raise InputError(f"edge H {i} {j} is not on the instance grid")
            p1 = Point(xs[j - 1], ys[i - 1])
            p2 = Point(xs[j], ys[i - 1])
        if mult not in (1, 2):
            raise InputError(f"edge multiplicity must be 1 or 2, got {mult}")
        edges.append(SolutionEdge(kind, i, j, p1, p2, mult))
    return edges


def total_edge_length(edges: list[SolutionEdge]) -> int:
    return sum(e.mult * l1(e.p1, e.p2) for e in edges)


class UnionFind:
    def __init__(self):
        self.parent: dict = {}

    def find(self, x):
        parent = self.parent
        root = parent.setdefault(x, x)
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def union(self, a, b) -> bool:
        """Merge; returns False when a and b were already connected."""
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[rb] = ra
        return True


def check_connected_covering(
    edges: list[SolutionEdge], terminals: tuple[Point, ...], what: str
):
    """All terminals must be endpoints of the edge set and in one component."""
    uf = UnionFind()
    touched: set[Point] = set()
    for e in edges:
        touched.add(e.p1)
        touched.add(e.p2)
        uf.union(e.p1, e.p2)
    for t in terminals:
        if t not in touched:
            raise InternalInfeasibleError(f"{what} misses terminal {t}")
    roots = {uf.find(t) for t in terminals}
    if len(roots) > 1:
        raise InternalInfeasibleError(f"{what} is disconnected")
    # components not containing any terminal would also be disconnection
    for p in touched:
        if uf.find(p) not in roots:
            raise InternalInfeasibleError(f"{what} has a stray component at {p}")
