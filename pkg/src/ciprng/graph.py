"""Iteration graphs and the strong-connectivity chaos criterion.

The iteration graph of f has the 2^N states as vertices and, for each
state x and coordinate label i in [1, N], one arc from x to the state
obtained by replacing coordinate i of x with coordinate i of f(x).  The
generator built on f behaves chaotically exactly when this graph is
strongly connected, which this module decides exhaustively.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import ResourceLimitError
from .func import MappingMatrix, VectorOfImages, mapping_matrix

# full-graph analysis walks N * 2^N arcs; keep it desk-scale
MAX_GRAPH_BITS = 12


@dataclass(frozen=True)
class IterationGraph:
    """Directed graph on [0, 2^N - 1] with N labeled arcs per vertex.

    Stored implicitly through the mapping matrix: the arc leaving x with
    label i targets cell (i, x), so no separate adjacency structure is
    allocated.
    """

    n_bits: int
    matrix: MappingMatrix

    @property
    def n_vertices(self) -> int:
        return 1 << self.n_bits

    def target(self, x: int, label: int) -> int:
        """Head of the arc leaving vertex x with label in [1, N]."""
        return self.matrix.cell(label, x)

    def out_arcs(self, x: int) -> tuple[int, ...]:
        """Arc targets from x for labels 1..N, in label order."""
        return tuple(row[x] for row in self.matrix.cells)


@dataclass(frozen=True)
class ChaosVerdict:
    """Strong-connectivity outcome for an iteration graph.

    When not strongly connected, `witness` holds a pair (u, v) of
    vertices with no directed path from u to v.
    """

    strongly_connected: bool
    scc_count: int
    witness: Optional[tuple[int, int]] = None

    def __bool__(self) -> bool:
        return self.strongly_connected


def build_graph(f: VectorOfImages, max_bits: int = MAX_GRAPH_BITS) -> IterationGraph:
    """Materialize the iteration graph of f (refuses n_bits > max_bits)."""
    if f.n_bits > max_bits:
        raise ResourceLimitError(
            f"n_bits={f.n_bits} exceeds the exhaustive-graph limit of {max_bits}"
        )
    return IterationGraph(f.n_bits, mapping_matrix(f))


def strongly_connected_components(g: IterationGraph) -> list[list[int]]:
    """Tarjan's algorithm, iterative; components in reverse topological order."""
    n = g.n_vertices
    rows = g.matrix.cells
    index = [-1] * n
    low = [0] * n
    on_stack = bytearray(n)
    stack: list[int] = []
    comps: list[list[int]] = []
    counter = 0

    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        while work:
            v, arc_pos = work[-1]
            if arc_pos == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = 1
            descended = False
            for pos in range(arc_pos, len(rows)):
                w = rows[pos][v]
                if index[w] == -1:
                    work[-1] = (v, pos + 1)
                    work.append((w, 0))
                    descended = True
                    break
                if on_stack[w] and index[w] < low[v]:
                    low[v] = index[w]
            if descended:
                continue
            work.pop()
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = 0
                    comp.append(w)
                    if w == v:
                        break
                comps.append(comp)
            if work:
                parent = work[-1][0]
                if low[v] < low[parent]:
                    low[parent] = low[v]
    return comps


def is_strongly_connected(g: IterationGraph) -> ChaosVerdict:
    """Decide the chaos criterion: one component covering all vertices."""
    comps = strongly_connected_components(g)
    if len(comps) == 1:
        return ChaosVerdict(True, 1)
    # the first completed component is a sink: nothing outside it is reachable
    u = min(comps[0])
    v = min(comps[1])
    return ChaosVerdict(False, len(comps), (u, v))


def export_dot(g: IterationGraph) -> str:
    """Graph in DOT format; vertices as fixed-width bit strings, arcs labeled.

    Output is deterministic: vertices ascending, then arcs by (vertex,
    label) ascending.
    """
    n = g.n_bits
    lines = ["digraph iteration_graph {"]
    for x in range(g.n_vertices):
        lines.append(f'  "{x:0{n}b}";')
    for x in range(g.n_vertices):
        for label in range(1, n + 1):
            lines.append(f'  "{x:0{n}b}" -> "{g.target(x, label):0{n}b}" [label={label}];')
    lines.append("}")
    return "\n".join(lines) + "\n"
