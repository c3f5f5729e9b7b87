"""
Benchmark harness: repeated, verified, timed coloring runs and their reports.

A BenchReport covers one (graph, algorithm) pair across a list of thread
counts, with `repeats` runs per thread count. Reports serialise to a flat
JSON document; runs can also be flattened to CSV for plotting.
"""

import json
import logging
import os
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Sequence, TextIO, Union

import numpy as np
import pandas as pd

from optcolor.coloring import get_algorithm, verify_coloring
from optcolor.errors import GraphInputError, ReportError, VerificationError
from optcolor.graph import Graph, graph_summary
from optcolor.stats import ColoringStats

logger = logging.getLogger(__name__)

DEFAULT_REPEATS = 10

CSV_COLUMNS = ['algorithm', 'threads', 'run_index', 'rounds', 'conflicts_total',
               'num_colors', 'wall_time_ns']


@dataclass
class BenchReport:
    """
    Benchmark results for one algorithm on one graph.

    Attributes:
        graph_name: Label of the input graph
        graph_stats: num_vertices, num_edges, max_degree of the input
        algorithm: 'seq', 'catalyurek' or 'rsoc'
        thread_counts: Thread counts swept, in order
        repeats: Runs per thread count
        runs: Every run's stats, grouped by thread count in sweep order
        aggregate: Per thread count (string key): mean/min/max wall time,
                   mean conflicts, mean rounds, median colors, fallback count
    """
    graph_name: str
    graph_stats: Dict[str, int]
    algorithm: str
    thread_counts: List[int]
    repeats: int
    runs: List[ColoringStats] = field(default_factory=list)
    aggregate: Dict[str, Dict[str, float]] = field(default_factory=dict)

    def runs_for(self, threads: int) -> List[ColoringStats]:
        return [r for r in self.runs if r.thread_count == threads]

    def mean_wall_ns(self, threads: int) -> float:
        return float(self.aggregate[str(threads)]['mean_wall_time_ns'])

    @property
    def fallback_runs(self) -> int:
        return sum(1 for r in self.runs if r.fallback_triggered)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'graph_name': self.graph_name,
            'graph_stats': dict(self.graph_stats),
            'algorithm': self.algorithm,
            'thread_counts': list(self.thread_counts),
            'repeats': self.repeats,
            'runs': [r.to_dict() for r in self.runs],
            'aggregate': self.aggregate,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'BenchReport':
        try:
            return cls(
                graph_name=data['graph_name'],
                graph_stats={k: int(v) for k, v in data['graph_stats'].items()},
                algorithm=data['algorithm'],
                thread_counts=[int(t) for t in data['thread_counts']],
                repeats=int(data['repeats']),
                runs=[ColoringStats.from_dict(r) for r in data['runs']],
                aggregate=data['aggregate'],
            )
        except (KeyError, TypeError, ValueError) as e:
            raise ReportError(f"malformed bench report: {e}")


def aggregate_runs(runs: Sequence[ColoringStats]) -> Dict[str, float]:
    """Summary statistics over the runs of one thread count."""
    wall = np.array([r.wall_time_ns for r in runs], dtype=np.float64)
    return {
        'mean_wall_time_ns': float(wall.mean()),
        'min_wall_time_ns': float(wall.min()),
        'max_wall_time_ns': float(wall.max()),
        'mean_conflicts': float(np.mean([r.conflicts_total for r in runs])),
        'mean_rounds': float(np.mean([r.rounds for r in runs])),
        'median_num_colors': float(np.median([r.num_colors for r in runs])),
        'fallback_runs': int(sum(r.fallback_triggered for r in runs)),
    }


def run_benchmark(g: Graph, algorithm: str, thread_counts: Sequence[int],
                  repeats: int = DEFAULT_REPEATS, graph_name: str = 'graph') -> BenchReport:
    """
    Run `algorithm` `repeats` times at every thread count and verify every output.

    Only the coloring call is timed; loading and verification are not.

    Args:
        g: Input graph
        algorithm: 'seq', 'catalyurek' or 'rsoc'
        thread_counts: Thread counts to sweep (each >= 1)
        repeats: Runs per thread count (>= 1)
        graph_name: Label stored in the report

    Returns:
        Validated BenchReport

    Raises:
        VerificationError: If any run produced an improper coloring
        GraphInputError: Bad algorithm name, thread count or repeats
    """
    runner = get_algorithm(algorithm)
    if repeats < 1:
        raise GraphInputError(f"repeats must be >= 1, got {repeats}")
    if not thread_counts or any(t < 1 for t in thread_counts):
        raise GraphInputError(f"thread counts must be >= 1, got {list(thread_counts)}")
    if len(set(thread_counts)) != len(thread_counts):
        raise GraphInputError(f"thread counts must be distinct, got {list(thread_counts)}")

    summary = graph_summary(g)
    report = BenchReport(
        graph_name=graph_name,
        graph_stats={k: summary[k] for k in ('num_vertices', 'num_edges', 'max_degree')},
        algorithm=algorithm,
        thread_counts=list(thread_counts),
        repeats=repeats,
    )

    for threads in thread_counts:
        for run_index in range(repeats):
            coloring, stats = runner(g, threads)
            check = verify_coloring(g, coloring)
            if not check.is_proper:
                raise VerificationError(
                    f"{algorithm} run {run_index} at {threads} threads on {graph_name} "
                    f"is improper: " + "; ".join(check.describe(3)), check)
            if stats.fallback_triggered:
                logger.warning("%s run %d at %d threads on %s needed the sequential fallback",
                               algorithm, run_index, threads, graph_name)
            report.runs.append(stats)
        report.aggregate[str(threads)] = aggregate_runs(report.runs_for(threads))

    validate_report(report)
    return report


def validate_report(report: BenchReport) -> None:
    """
    Check every report invariant.

    Raises:
        ReportError: Naming the first violation
    """
    if report.repeats < 1:
        raise ReportError(f"repeats must be >= 1, got {report.repeats}")
    for key in ('num_vertices', 'num_edges', 'max_degree'):
        if key not in report.graph_stats:
            raise ReportError(f"graph_stats lacks {key!r}")
    if len(report.runs) != report.repeats * len(report.thread_counts):
        raise ReportError(
            f"{len(report.runs)} runs for {len(report.thread_counts)} thread counts "
            f"x {report.repeats} repeats")
    max_degree = report.graph_stats['max_degree']
    for threads in report.thread_counts:
        runs = report.runs_for(threads)
        if len(runs) != report.repeats:
            raise ReportError(f"{len(runs)} runs at {threads} threads, expected {report.repeats}")
        if str(threads) not in report.aggregate:
            raise ReportError(f"no aggregate for {threads} threads")
    for stats in report.runs:
        if stats.algorithm != report.algorithm:
            raise ReportError(f"run of {stats.algorithm!r} inside a {report.algorithm!r} report")
        stats.check_invariants(max_degree)


def relative_speedup(faster: BenchReport, baseline: BenchReport) -> Dict[int, float]:
    """
    Speedup of `faster` over `baseline` at every shared thread count.

    speedup = mean_wall(baseline) / mean_wall(faster); values > 1 mean
    `faster` really is faster.
    """
    shared = [t for t in faster.thread_counts if t in baseline.thread_counts]
    result = {}
    for t in shared:
        mine = faster.mean_wall_ns(t)
        result[t] = baseline.mean_wall_ns(t) / mine if mine > 0 else float('inf')
    return result


# ========================================
# Serialisation
# ========================================

def write_report(report: BenchReport, sink: Union[str, os.PathLike, TextIO]) -> None:
    """Write one report as a JSON document to a path or open text stream."""
    if isinstance(sink, (str, os.PathLike)):
        with open(sink, 'w', encoding='utf-8') as f:
            json.dump(report.to_dict(), f, indent=2)
            f.write('\n')
    else:
        json.dump(report.to_dict(), sink, indent=2)
        sink.write('\n')


def read_report(source: Union[str, os.PathLike, TextIO]) -> BenchReport:
    """
    Raises:
        ReportError: If the document is not valid JSON or misses fields
    """
    try:
        if isinstance(source, (str, os.PathLike)):
            with open(source, 'r', encoding='utf-8') as f:
                data = json.load(f)
        else:
            data = json.load(source)
    except json.JSONDecodeError as e:
        raise ReportError(f"report is not valid JSON: {e}")
    report = BenchReport.from_dict(data)
    validate_report(report)
    return report


def runs_frame(reports: Iterable[BenchReport]) -> pd.DataFrame:
    """One row per run, with the CSV columns plus graph name and fallback flag."""
    rows = []
    for report in reports:
        per_thread_index: Dict[int, int] = {}
        for stats in report.runs:
            index = per_thread_index.get(stats.thread_count, 0)
            per_thread_index[stats.thread_count] = index + 1
            rows.append({
                'graph_name': report.graph_name,
                'algorithm': stats.algorithm,
                'threads': stats.thread_count,
                'run_index': index,
                'rounds': stats.rounds,
                'conflicts_total': stats.conflicts_total,
                'num_colors': stats.num_colors,
                'wall_time_ns': stats.wall_time_ns,
                'barrier_events': stats.barrier_events,
                'fallback_triggered': stats.fallback_triggered,
            })
    columns = ['graph_name'] + CSV_COLUMNS + ['barrier_events', 'fallback_triggered']
    return pd.DataFrame(rows, columns=columns)


def write_runs_csv(reports: Iterable[BenchReport], path: Union[str, os.PathLike]) -> None:
    """CSV with one row per run: algorithm, threads, run_index, rounds, conflicts_total, num_colors, wall_time_ns."""
    runs_frame(reports)[CSV_COLUMNS].to_csv(path, index=False)


def report_filename(report: BenchReport) -> str:
    safe = ''.join(ch if ch.isalnum() or ch in '-_.' else '_' for ch in report.graph_name)
    return f"{safe}_{report.algorithm}.json"
