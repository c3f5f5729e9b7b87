"""
Per-run instrumentation record shared by the coloring algorithms and the benchmark.
"""

from dataclasses import asdict, dataclass, field
from typing import Any, Dict, List

from optcolor.errors import ReportError

ALGORITHM_NAMES = ('seq', 'catalyurek', 'rsoc')


@dataclass
class ColoringStats:
    """
    What one coloring run did.

    Attributes:
        algorithm: 'seq', 'catalyurek' or 'rsoc'
        thread_count: Number of worker threads
        rounds: While-loop iterations (1 for seq)
        conflicts_total: Sum of conflicts_per_round
        conflicts_per_round: |L| at the end of each round
        barrier_events: Barriers crossed (counted once per barrier, not per thread)
        num_colors: Distinct colors in the final coloring
        wall_time_ns: Time spent coloring, verification excluded
        fallback_triggered: True if the round cap forced a sequential repair pass
    """
    algorithm: str
    thread_count: int
    rounds: int = 0
    conflicts_total: int = 0
    conflicts_per_round: List[int] = field(default_factory=list)
    barrier_events: int = 0
    num_colors: int = 0
    wall_time_ns: int = 0
    fallback_triggered: bool = False

    def record_round(self, conflicts: int) -> None:
        self.rounds += 1
        self.conflicts_per_round.append(conflicts)
        self.conflicts_total += conflicts

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'ColoringStats':
        return cls(
            algorithm=data['algorithm'],
            thread_count=int(data['thread_count']),
            rounds=int(data['rounds']),
            conflicts_total=int(data['conflicts_total']),
            conflicts_per_round=[int(x) for x in data['conflicts_per_round']],
            barrier_events=int(data['barrier_events']),
            num_colors=int(data['num_colors']),
            wall_time_ns=int(data['wall_time_ns']),
            fallback_triggered=bool(data['fallback_triggered']),
        )

    def expected_barriers(self) -> int:
        """Barrier count implied by the round structure of the algorithm."""
        if self.algorithm == 'catalyurek':
            return 2 * self.rounds
        if self.algorithm == 'rsoc':
            return self.rounds + 1
        return 0

    def check_invariants(self, max_degree: int) -> None:
        """
        Raises:
            ReportError: If the record is internally inconsistent
        """
        if self.algorithm not in ALGORITHM_NAMES:
            raise ReportError(f"unknown algorithm {self.algorithm!r}")
        if self.conflicts_total != sum(self.conflicts_per_round):
            raise ReportError(
                f"conflicts_total {self.conflicts_total} != sum of per-round conflicts "
                f"{sum(self.conflicts_per_round)}")
        if len(self.conflicts_per_round) != self.rounds:
            raise ReportError(
                f"{len(self.conflicts_per_round)} per-round entries for {self.rounds} rounds")
        if self.barrier_events != self.expected_barriers():
            raise ReportError(
                f"{self.algorithm}: {self.barrier_events} barrier events for {self.rounds} rounds, "
                f"expected {self.expected_barriers()}")
        if self.num_colors > max_degree + 1:
            raise ReportError(
                f"{self.num_colors} colors exceeds max_degree + 1 = {max_degree + 1}")
