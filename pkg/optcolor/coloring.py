"""
First-Fit graph coloring: sequential, two-phase speculative, and
reduced-synchronization speculative (RSOC).

Conflict rule shared by both parallel algorithms: vertex v is defective
when some neighbor w > v holds the same color. The lower endpoint of a
defective edge recolors; the higher one keeps its color.

Shared colors live in a Python list. Each cell is read and written as a
whole object, so a reader sees either the old or the new color, never a
torn value; reads inside a round may be stale and the conflict pass
catches the damage. Barriers are the only cross-thread ordering.
"""

import logging
import time
from bisect import bisect_right
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, List, Optional, Tuple

import numpy as np

from optcolor import config
from optcolor.errors import GraphInputError, VerificationError
from optcolor.graph import VERTEX_DTYPE, Graph
from optcolor.parallel import WorkerTeam
from optcolor.scratch import ForbiddenColors
from optcolor.stats import ColoringStats

logger = logging.getLogger(__name__)

UNCOLORED = -1


# ========================================
# Types
# ========================================

@dataclass(eq=False)
class Coloring:
    """
    Color of every vertex; UNCOLORED (-1) marks a vertex without a color.

    Attributes:
        colors: int64 array of length |V|
    """
    colors: np.ndarray

    def __post_init__(self):
        self.colors = np.asarray(self.colors, dtype=VERTEX_DTYPE)

    @classmethod
    def uncolored(cls, num_vertices: int) -> 'Coloring':
        return cls(np.full(num_vertices, UNCOLORED, dtype=VERTEX_DTYPE))

    def __len__(self) -> int:
        return int(self.colors.shape[0])

    def __getitem__(self, v: int) -> int:
        return int(self.colors[v])

    def is_complete(self) -> bool:
        return not bool(np.any(self.colors == UNCOLORED))

    def tolist(self) -> List[int]:
        return self.colors.tolist()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Coloring):
            return NotImplemented
        return np.array_equal(self.colors, other.colors)

    __hash__ = None

    def __repr__(self) -> str:
        return f"Coloring({self.colors.tolist() if len(self) <= 16 else f'<{len(self)} vertices>'})"


@dataclass
class Worklist:
    """Ordered, duplicate-free list of vertex ids pending inspection."""
    vertices: List[int] = field(default_factory=list)

    @classmethod
    def all_of(cls, g: Graph) -> 'Worklist':
        return cls(list(range(g.num_vertices)))

    def __len__(self) -> int:
        return len(self.vertices)

    def __iter__(self):
        return iter(self.vertices)

    def __bool__(self) -> bool:
        return bool(self.vertices)

    def validate(self, num_vertices: int) -> None:
        """
        Raises:
            GraphInputError: If an id is out of range or repeated
        """
        seen = set()
        for v in self.vertices:
            if not 0 <= v < num_vertices:
                raise GraphInputError(f"worklist vertex {v} out of range")
            if v in seen:
                raise GraphInputError(f"worklist vertex {v} listed twice")
            seen.add(v)


@dataclass
class ConflictReport:
    """
    Verifier output.

    violations holds (u, v, color) for every edge u < v whose endpoints share
    a color, and (v, UNCOLORED, color) for every vertex whose color is not a
    non-negative integer (color is UNCOLORED for a vertex that was never colored).
    """
    violations: List[Tuple[int, int, int]] = field(default_factory=list)

    @property
    def is_proper(self) -> bool:
        return not self.violations

    def __len__(self) -> int:
        return len(self.violations)

    def describe(self, limit: int = 10) -> List[str]:
        """Human-readable lines for the first `limit` violations."""
        lines = []
        for u, v, c in self.violations[:limit]:
            if v == UNCOLORED and c == UNCOLORED:
                lines.append(f"vertex {u} is uncolored")
            elif v == UNCOLORED:
                lines.append(f"vertex {u} has invalid color {c}")
            else:
                lines.append(f"edge {u}-{v} shares color {c}")
        if len(self.violations) > limit:
            lines.append(f"... and {len(self.violations) - limit} more")
        return lines


# ========================================
# Building blocks
# ========================================

def smallest_available_color(g: Graph, c: Coloring, v: int, scratch: ForbiddenColors) -> int:
    """
    First-Fit choice for v: the smallest color not held by a colored neighbor.

    Args:
        g: Graph
        c: Current coloring (not modified)
        v: Vertex to color
        scratch: Forbidden-color buffer with capacity >= degree(v) + 1

    Returns:
        A color in {0, ..., degree(v)}
    """
    return scratch.smallest_free(g.adjacency(v).tolist(), c.colors)


def _has_higher_twin(v: int, nbrs: List[int], colors: List[int]) -> bool:
    # Adjacency is sorted, so the higher neighbors form a suffix
    cv = colors[v]
    for k in range(bisect_right(nbrs, v), len(nbrs)):
        if colors[nbrs[k]] == cv:
            return True
    return False


def first_fit_sequential(g: Graph) -> Coloring:
    """
    Sequential greedy coloring, vertices visited in ascending id order.

    Returns:
        Complete, proper coloring using at most max_degree + 1 colors
    """
    adj = g.adjacency_lists
    colors = [UNCOLORED] * g.num_vertices
    scratch = ForbiddenColors(g.max_degree + 1)
    for v in range(g.num_vertices):
        colors[v] = scratch.smallest_free(adj[v], colors)
    return Coloring(np.array(colors, dtype=VERTEX_DTYPE))


def detect_conflicts(g: Graph, c: Coloring, u: Worklist) -> Worklist:
    """
    Members of u that have a higher-indexed neighbor with the same color.

    The higher endpoint of a defective edge is never reported on account
    of that edge.
    """
    adj = g.adjacency_lists
    colors = c.colors.tolist()
    return Worklist([v for v in u if _has_higher_twin(v, adj[v], colors)])


def verify_coloring(g: Graph, c: Coloring) -> ConflictReport:
    """
    Check that c is complete and proper on g.

    Returns:
        Empty report iff complete and proper

    Raises:
        GraphInputError: If len(c) != |V|
    """
    if len(c) != g.num_vertices:
        raise GraphInputError(
            f"coloring has {len(c)} entries for a graph with {g.num_vertices} vertices")
    colors = c.colors
    violations: List[Tuple[int, int, int]] = [
        (int(v), UNCOLORED, int(colors[v])) for v in np.flatnonzero(colors < 0)
    ]

    src = np.repeat(np.arange(g.num_vertices, dtype=VERTEX_DTYPE), g.degrees())
    dst = g.neighbors
    clash = (src < dst) & (colors[src] == colors[dst]) & (colors[src] >= 0)
    violations.extend(
        (int(a), int(b), int(col))
        for a, b, col in zip(src[clash], dst[clash], colors[src[clash]])
    )
    violations.sort()
    return ConflictReport(violations)


def count_colors(c: Coloring) -> int:
    """
    Number of distinct colors used.

    Raises:
        GraphInputError: If c has UNCOLORED or other negative entries
    """
    if np.any(c.colors < 0):
        raise GraphInputError("cannot count colors of an incomplete coloring")
    return int(np.unique(c.colors).shape[0])


def color_classes(c: Coloring) -> List[np.ndarray]:
    """Vertices grouped by color (the independent sets), ordered by color."""
    if not c.is_complete():
        raise GraphInputError("cannot group an incomplete coloring")
    order = np.argsort(c.colors, kind='stable')
    sorted_colors = c.colors[order]
    cuts = np.flatnonzero(np.diff(sorted_colors)) + 1
    return [group for group in np.split(order, cuts) if group.size]


# ========================================
# Parallel algorithms
# ========================================

class _RunState:
    """Shared state of one parallel run; mutated only inside barrier hooks."""

    def __init__(self, g: Graph, thread_count: int, stats: ColoringStats, max_rounds: int):
        self.worklist: List[int] = list(range(g.num_vertices))
        self.pending: List[List[int]] = [[] for _ in range(thread_count)]
        self.stats = stats
        self.max_rounds = max_rounds
        self.leftover: List[int] = []

    def end_round(self) -> None:
        merged: List[int] = []
        for found in self.pending:
            merged.extend(found)
        self.pending = [[] for _ in self.pending]
        self.stats.record_round(len(merged))
        logger.debug("%s round %d: %d vertices to revisit",
                     self.stats.algorithm, self.stats.rounds, len(merged))
        if merged and self.stats.rounds >= self.max_rounds:
            self.leftover = merged
            merged = []
        self.worklist = merged


def _check_thread_count(thread_count: int) -> None:
    if thread_count < 1:
        raise GraphInputError(f"thread_count must be >= 1, got {thread_count}")


def _repair_sequentially(adj: List[List[int]], colors: List[int], vertices: Iterable[int],
                         capacity: int) -> None:
    scratch = ForbiddenColors(capacity)
    for v in sorted(set(vertices)):
        cv = colors[v]
        if any(colors[w] == cv for w in adj[v]):
            colors[v] = scratch.smallest_free(adj[v], colors)


def _finish(g: Graph, colors: List[int], state: _RunState, started_ns: int) -> Tuple[Coloring, ColoringStats]:
    stats = state.stats
    if state.leftover:
        logger.warning("%s hit the %d-round cap with %d defective vertices; repairing sequentially",
                       stats.algorithm, state.max_rounds, len(state.leftover))
        _repair_sequentially(g.adjacency_lists, colors, state.leftover, g.max_degree + 1)
        stats.fallback_triggered = True
    stats.wall_time_ns = time.perf_counter_ns() - started_ns

    coloring = Coloring(np.array(colors, dtype=VERTEX_DTYPE))
    report = verify_coloring(g, coloring)
    if not report.is_proper:
        raise VerificationError(
            f"{stats.algorithm} with {stats.thread_count} threads produced an improper coloring: "
            + "; ".join(report.describe(3)), report)
    stats.num_colors = count_colors(coloring) if len(coloring) else 0
    return coloring, stats


def color_catalyurek(g: Graph, thread_count: int,
                     max_rounds: Optional[int] = None) -> Tuple[Coloring, ColoringStats]:
    """
    Two-phase speculative coloring with two barriers per round.

    Each round: tentative First-Fit over the worklist, barrier, conflict
    detection over the same worklist, barrier, worklist <- defective
    vertices. The loop body runs at least once.

    Args:
        g: Graph
        thread_count: Worker threads (>= 1)
        max_rounds: Round cap before the sequential repair; defaults to OPTCOLOR_MAX_ROUNDS

    Returns:
        (proper coloring, stats)
    """
    _check_thread_count(thread_count)
    stats = ColoringStats(algorithm='catalyurek', thread_count=thread_count)
    state = _RunState(g, thread_count, stats, max_rounds or config.max_rounds())
    adj = g.adjacency_lists
    colors = [UNCOLORED] * g.num_vertices
    team = WorkerTeam(thread_count)

    def body(wid: int) -> None:
        scratch = ForbiddenColors(g.max_degree + 1)
        while True:
            worklist = state.worklist
            for v in team.share(wid, worklist):
                colors[v] = scratch.smallest_free(adj[v], colors)
            team.wait()

            found = state.pending[wid]
            for v in team.share(wid, worklist):
                if _has_higher_twin(v, adj[v], colors):
                    found.append(v)
            team.wait(state.end_round)

            if not state.worklist:
                break

    started = time.perf_counter_ns()
    team.run(body)
    stats.barrier_events = team.barrier_events
    return _finish(g, colors, state, started)


def color_rsoc(g: Graph, thread_count: int,
               max_rounds: Optional[int] = None) -> Tuple[Coloring, ColoringStats]:
    """
    Reduced-synchronization speculative coloring: one barrier per round.

    Round 0 tentatively colors every vertex, then a barrier. Each later
    round inspects the vertices recolored in the previous round (all of V
    the first time); a vertex that is still defective is recolored on the
    spot and queued for reinspection. One barrier ends each round.

    Args:
        g: Graph
        thread_count: Worker threads (>= 1)
        max_rounds: Round cap before the sequential repair; defaults to OPTCOLOR_MAX_ROUNDS

    Returns:
        (proper coloring, stats)
    """
    _check_thread_count(thread_count)
    stats = ColoringStats(algorithm='rsoc', thread_count=thread_count)
    state = _RunState(g, thread_count, stats, max_rounds or config.max_rounds())
    adj = g.adjacency_lists
    colors = [UNCOLORED] * g.num_vertices
    team = WorkerTeam(thread_count)

    def body(wid: int) -> None:
        scratch = ForbiddenColors(g.max_degree + 1)
        for v in team.share(wid, state.worklist):
            colors[v] = scratch.smallest_free(adj[v], colors)
        team.wait()

        while True:
            recolored = state.pending[wid]
            for v in team.share(wid, state.worklist):
                if _has_higher_twin(v, adj[v], colors):
                    colors[v] = scratch.smallest_free(adj[v], colors)
                    recolored.append(v)
            team.wait(state.end_round)

            if not state.worklist:
                break

    started = time.perf_counter_ns()
    team.run(body)
    stats.barrier_events = team.barrier_events
    return _finish(g, colors, state, started)


def color_sequential(g: Graph, thread_count: int = 1) -> Tuple[Coloring, ColoringStats]:
    """
    first_fit_sequential with stats, so it fits the ALGORITHMS signature.

    thread_count is recorded but the run is always single-threaded.
    """
    _check_thread_count(thread_count)
    started = time.perf_counter_ns()
    coloring = first_fit_sequential(g)
    elapsed = time.perf_counter_ns() - started
    stats = ColoringStats(algorithm='seq', thread_count=thread_count, wall_time_ns=elapsed)
    stats.record_round(0)
    stats.num_colors = count_colors(coloring) if len(coloring) else 0
    return coloring, stats


Runner = Callable[[Graph, int], Tuple[Coloring, ColoringStats]]

ALGORITHMS: Dict[str, Runner] = {
    'seq': color_sequential,
    'catalyurek': color_catalyurek,
    'rsoc': color_rsoc,
}


def get_algorithm(name: str) -> Runner:
    """
    Raises:
        GraphInputError: If name is not one of ALGORITHMS
    """
    try:
        return ALGORITHMS[name]
    except KeyError:
        raise GraphInputError(
            f"unknown algorithm {name!r}; choose one of {', '.join(ALGORITHMS)}")
