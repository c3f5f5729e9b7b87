"""
Immutable undirected graph in compressed sparse row (CSR) form.

Every undirected edge {u, v} is stored twice, once in each endpoint's
adjacency list. Adjacency lists are sorted ascending, which makes the
"higher-indexed neighbor" test of the coloring algorithms a suffix scan.
"""

from dataclasses import dataclass
from functools import cached_property
from typing import Any, Dict, Iterable, Iterator, List, Sequence, Tuple

import numpy as np

from optcolor.errors import GraphInputError

VERTEX_DTYPE = np.int64


@dataclass(frozen=True, eq=False)
class Graph:
    """
    CSR graph. Build instances with build_graph(), never by hand.

    Attributes:
        num_vertices: |V|
        offsets: int64 array of length |V|+1; adjacency of v is neighbors[offsets[v]:offsets[v+1]]
        neighbors: int64 array of length 2|E|
        max_degree: cached maximum degree d
    """
    num_vertices: int
    offsets: np.ndarray
    neighbors: np.ndarray
    max_degree: int

    @property
    def num_edges(self) -> int:
        return int(self.neighbors.shape[0]) // 2

    def degree(self, v: int) -> int:
        return degree(self, v)

    def adjacency(self, v: int) -> np.ndarray:
        """Sorted neighbor ids of v (read-only view)."""
        _check_vertex(self, v)
        return self.neighbors[self.offsets[v]:self.offsets[v + 1]]

    def degrees(self) -> np.ndarray:
        return np.diff(self.offsets)

    def edges(self) -> Iterator[Tuple[int, int]]:
        """Yield every undirected edge once as (u, v) with u < v, in CSR order."""
        for u, nbrs in enumerate(self.adjacency_lists):
            for v in nbrs:
                if v > u:
                    yield u, v

    @cached_property
    def adjacency_lists(self) -> List[List[int]]:
        """
        Adjacency as plain Python lists.

        The coloring kernels index these from Python loops, where list
        access is much cheaper than numpy scalar access.
        """
        nbrs = self.neighbors.tolist()
        offs = self.offsets.tolist()
        return [nbrs[offs[v]:offs[v + 1]] for v in range(self.num_vertices)]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return (self.num_vertices == other.num_vertices
                and np.array_equal(self.offsets, other.offsets)
                and np.array_equal(self.neighbors, other.neighbors))

    __hash__ = None

    def __repr__(self) -> str:
        return (f"Graph(num_vertices={self.num_vertices}, num_edges={self.num_edges}, "
                f"max_degree={self.max_degree})")


def _check_vertex(g: Graph, v: int) -> None:
    if not 0 <= v < g.num_vertices:
        raise GraphInputError(f"vertex {v} out of range for graph with {g.num_vertices} vertices")


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr = np.ascontiguousarray(arr, dtype=VERTEX_DTYPE)
    arr.flags.writeable = False
    return arr


def build_graph(edge_pairs: Iterable[Sequence[int]], num_vertices: int) -> Graph:
    """
    Build a CSR graph from undirected edge pairs.

    Self-loops are dropped, duplicate edges (in either orientation) are
    merged and every adjacency list is sorted ascending.

    Args:
        edge_pairs: Iterable of (u, v) pairs, or an (m, 2) integer array
        num_vertices: |V|; every id must be < num_vertices

    Returns:
        Graph satisfying all structural invariants

    Raises:
        GraphInputError: If an id is negative or >= num_vertices
    """
    if num_vertices < 0:
        raise GraphInputError(f"num_vertices must be >= 0, got {num_vertices}")

    if isinstance(edge_pairs, np.ndarray):
        pairs = edge_pairs.astype(VERTEX_DTYPE, copy=False).reshape(-1, 2)
    else:
        pairs = np.array(list(edge_pairs), dtype=VERTEX_DTYPE).reshape(-1, 2)

    if pairs.size:
        lo, hi = int(pairs.min()), int(pairs.max())
        if lo < 0 or hi >= num_vertices:
            bad = lo if lo < 0 else hi
            raise GraphInputError(
                f"vertex id {bad} out of range for graph with {num_vertices} vertices")

    u, v = pairs[:, 0], pairs[:, 1]
    keep = u != v
    u, v = u[keep], v[keep]

    src = np.concatenate([u, v])
    dst = np.concatenate([v, u])
    order = np.lexsort((dst, src))
    src, dst = src[order], dst[order]

    if src.size:
        fresh = np.ones(src.size, dtype=bool)
        fresh[1:] = (src[1:] != src[:-1]) | (dst[1:] != dst[:-1])
        src, dst = src[fresh], dst[fresh]

    counts = np.bincount(src, minlength=num_vertices) if num_vertices else np.zeros(0, dtype=VERTEX_DTYPE)
    offsets = np.zeros(num_vertices + 1, dtype=VERTEX_DTYPE)
    np.cumsum(counts, out=offsets[1:])
    max_degree = int(counts.max()) if counts.size else 0

    return Graph(
        num_vertices=int(num_vertices),
        offsets=_frozen(offsets),
        neighbors=_frozen(dst),
        max_degree=max_degree,
    )


def degree(g: Graph, v: int) -> int:
    """
    Number of neighbors of v.

    Raises:
        GraphInputError: If v is not a vertex of g
    """
    _check_vertex(g, v)
    return int(g.offsets[v + 1] - g.offsets[v])


def check_invariants(g: Graph) -> None:
    """
    Exhaustively verify the CSR structural invariants.

    Raises:
        GraphInputError: Naming the first violated invariant
    """
    n = g.num_vertices
    offsets, neighbors = g.offsets, g.neighbors

    if offsets.shape != (n + 1,):
        raise GraphInputError(f"offsets has length {offsets.shape[0]}, expected {n + 1}")
    if offsets[0] != 0:
        raise GraphInputError("offsets[0] must be 0")
    if np.any(np.diff(offsets) < 0):
        raise GraphInputError("offsets must be non-decreasing")
    if offsets[n] != neighbors.shape[0]:
        raise GraphInputError("offsets[|V|] must equal len(neighbors)")
    if neighbors.size and (neighbors.min() < 0 or neighbors.max() >= n):
        raise GraphInputError("neighbor id out of range")

    degrees = np.diff(offsets)
    if g.max_degree != (int(degrees.max()) if n else 0):
        raise GraphInputError("cached max_degree does not match adjacency")

    src = np.repeat(np.arange(n, dtype=VERTEX_DTYPE), degrees)
    if np.any(src == neighbors):
        raise GraphInputError("self-loop present")

    # Within each row: strictly ascending means sorted and duplicate-free
    same_row = src[1:] == src[:-1]
    if np.any(neighbors[1:][same_row] <= neighbors[:-1][same_row]):
        raise GraphInputError("adjacency list not strictly ascending")

    forward = np.stack([src, neighbors], axis=1)
    backward = np.stack([neighbors, src], axis=1)
    fwd = forward[np.lexsort((forward[:, 1], forward[:, 0]))]
    bwd = backward[np.lexsort((backward[:, 1], backward[:, 0]))]
    if not np.array_equal(fwd, bwd):
        raise GraphInputError("adjacency is not symmetric")


def graph_summary(g: Graph) -> Dict[str, Any]:
    """|V|, |E|, max degree and mean degree, as printed by the CLI and stored in reports."""
    n = g.num_vertices
    return {
        'num_vertices': n,
        'num_edges': g.num_edges,
        'max_degree': g.max_degree,
        'mean_degree': (2.0 * g.num_edges / n) if n else 0.0,
    }
