"""
Deterministic lockstep (SIMT-style) model of speculative coloring.

Vertices are assigned to lanes. Within a round every lane walks its
pending vertices in ascending id order; at each step all lanes pick a
First-Fit color from the same snapshot and commit together, the way a
warp commits in one clock cycle. Commits from earlier steps of the round
are visible to later steps. After a round, every vertex that is still
uncolored or sits on a defective edge (both endpoints) is pending again.

With two adjacent vertices on different lanes the ties never break and
the run oscillates forever; on one lane it converges at once.
"""

from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Sequence, Union

import numpy as np

from optcolor.coloring import UNCOLORED, Coloring, verify_coloring
from optcolor.errors import GraphInputError
from optcolor.graph import VERTEX_DTYPE, Graph
from optcolor.scratch import ForbiddenColors

LaneAssignment = Union[Sequence[int], Mapping[int, int]]


@dataclass
class LockstepOutcome:
    """
    Result of a lockstep simulation.

    Attributes:
        converged: True if a proper coloring was reached within the cap
        rounds_executed: Rounds simulated (<= round cap)
        color_trace: Snapshot of the coloring after each round
    """
    converged: bool
    rounds_executed: int
    color_trace: List[Coloring] = field(default_factory=list)


def round_robin_lanes(num_vertices: int, lanes: int) -> List[int]:
    """Lane of vertex v is v % lanes."""
    if lanes < 1:
        raise GraphInputError(f"lanes must be >= 1, got {lanes}")
    return [v % lanes for v in range(num_vertices)]


def _lane_table(g: Graph, assignment: LaneAssignment) -> List[int]:
    if isinstance(assignment, Mapping):
        missing = [v for v in range(g.num_vertices) if v not in assignment]
        if missing:
            raise GraphInputError(f"lane assignment misses vertex {missing[0]}")
        return [int(assignment[v]) for v in range(g.num_vertices)]
    lanes = [int(x) for x in assignment]
    if len(lanes) != g.num_vertices:
        raise GraphInputError(
            f"lane assignment covers {len(lanes)} vertices, graph has {g.num_vertices}")
    return lanes


def lockstep_color(g: Graph, assignment: LaneAssignment, round_cap: int) -> LockstepOutcome:
    """
    Simulate lockstep speculative coloring until proper or round_cap.

    Args:
        g: Graph
        assignment: Lane of every vertex, as a sequence indexed by vertex or a mapping
        round_cap: Maximum rounds to simulate (>= 1)

    Returns:
        LockstepOutcome with one trace snapshot per executed round
    """
    if round_cap < 1:
        raise GraphInputError(f"round_cap must be >= 1, got {round_cap}")
    lane_of = _lane_table(g, assignment)
    adj = g.adjacency_lists
    colors = [UNCOLORED] * g.num_vertices
    scratch = ForbiddenColors(g.max_degree + 1)
    trace: List[Coloring] = []
    pending = list(range(g.num_vertices))

    for round_no in range(1, round_cap + 1):
        by_lane: Dict[int, List[int]] = {}
        for v in pending:
            by_lane.setdefault(lane_of[v], []).append(v)
        depth = max((len(vs) for vs in by_lane.values()), default=0)

        for step in range(depth):
            decisions = [
                (vs[step], scratch.smallest_free(adj[vs[step]], colors))
                for vs in by_lane.values() if step < len(vs)
            ]
            for v, color in decisions:
                colors[v] = color

        snapshot = Coloring(np.array(colors, dtype=VERTEX_DTYPE))
        trace.append(snapshot)
        report = verify_coloring(g, snapshot)
        if report.is_proper:
            return LockstepOutcome(True, round_no, trace)

        again = set()
        for u, v, _ in report.violations:
            again.add(u)
            if v != UNCOLORED:
                again.add(v)
        pending = sorted(again)

    return LockstepOutcome(False, round_cap, trace)
