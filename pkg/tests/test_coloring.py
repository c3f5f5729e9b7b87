import numpy as np
import pytest

import optcolor.coloring as coloring_mod
from optcolor.coloring import (
    ALGORITHMS,
    UNCOLORED,
    Coloring,
    ConflictReport,
    Worklist,
    color_catalyurek,
    color_classes,
    color_rsoc,
    color_sequential,
    count_colors,
    detect_conflicts,
    first_fit_sequential,
    get_algorithm,
    smallest_available_color,
    verify_coloring,
)
from optcolor.errors import GraphInputError, ReportError, VerificationError
from optcolor.graph import build_graph
from optcolor.graph_io import generate_rmat, rmat_preset
from optcolor.scratch import ForbiddenColors
from optcolor.stats import ColoringStats

PARALLEL = [color_catalyurek, color_rsoc]


# ========================================
# Building blocks
# ========================================

@pytest.mark.parametrize('leaf_colors, expected', [
    ([UNCOLORED] * 4, 0),
    ([0, 1, UNCOLORED, UNCOLORED], 2),
    ([1, 3, UNCOLORED, UNCOLORED], 0),
    ([0, 1, 2, 3], 4),
])
def test_smallest_available_color(star4, leaf_colors, expected):
    c = Coloring([UNCOLORED] + leaf_colors)
    assert smallest_available_color(star4, c, 0, ForbiddenColors(5)) == expected


def test_scratch_is_reusable(star4):
    scratch = ForbiddenColors(5)
    c = Coloring([UNCOLORED, 0, 1, 2, UNCOLORED])
    assert smallest_available_color(star4, c, 0, scratch) == 3
    assert smallest_available_color(star4, Coloring.uncolored(5), 0, scratch) == 0


def test_scratch_capacity_checked(star4):
    with pytest.raises(ValueError):
        smallest_available_color(star4, Coloring.uncolored(5), 0, ForbiddenColors(4))


def test_first_fit_path(path3):
    assert first_fit_sequential(path3).tolist() == [0, 1, 0]


def test_first_fit_triangle(triangle):
    assert first_fit_sequential(triangle).tolist() == [0, 1, 2]


def test_first_fit_five_cycle(cycle5):
    c = first_fit_sequential(cycle5)
    assert c.tolist() == [0, 1, 0, 1, 2]
    assert count_colors(c) == 3


def test_detect_conflicts_proper_is_empty(cycle5):
    c = first_fit_sequential(cycle5)
    assert len(detect_conflicts(cycle5, c, Worklist.all_of(cycle5))) == 0


def test_detect_conflicts_lower_endpoint_only(k2):
    found = detect_conflicts(k2, Coloring([0, 0]), Worklist([0, 1]))
    assert found.vertices == [0]


def test_detect_conflicts_monochrome_triangle(triangle):
    found = detect_conflicts(triangle, Coloring([0, 0, 0]), Worklist([0, 1, 2]))
    assert found.vertices == [0, 1]


def test_worklist_validate():
    Worklist([2, 0, 1]).validate(3)
    with pytest.raises(GraphInputError):
        Worklist([0, 0]).validate(3)
    with pytest.raises(GraphInputError):
        Worklist([3]).validate(3)


# ========================================
# Verifier and counting
# ========================================

def test_verify_first_fit_is_proper(mesh2d):
    assert verify_coloring(mesh2d, first_fit_sequential(mesh2d)).is_proper


def test_verify_reports_defective_edge(k2):
    report = verify_coloring(k2, Coloring([0, 0]))
    assert (0, 1, 0) in report.violations
    assert report.describe() == ["edge 0-1 shares color 0"]


def test_verify_reports_uncolored(path3):
    report = verify_coloring(path3, Coloring([0, UNCOLORED, 0]))
    assert not report.is_proper
    assert (1, UNCOLORED, UNCOLORED) in report.violations


def test_verify_reports_negative_color(path3):
    report = verify_coloring(path3, Coloring([-5, 1, -5]))
    assert not report.is_proper
    assert report.violations == [(0, UNCOLORED, -5), (2, UNCOLORED, -5)]
    assert report.describe()[0] == "vertex 0 has invalid color -5"
    with pytest.raises(GraphInputError):
        count_colors(Coloring([-5, 1, -5]))


def test_verify_length_mismatch(path3):
    with pytest.raises(GraphInputError):
        verify_coloring(path3, Coloring([0, 1]))


def test_describe_truncates():
    report = ConflictReport([(0, k, 0) for k in range(1, 6)])
    lines = report.describe(limit=2)
    assert len(lines) == 3
    assert lines[-1] == "... and 3 more"


@pytest.mark.parametrize('colors, expected', [
    ([0, 1, 0], 2),
    ([0, 1, 2], 3),
    ([0], 1),
])
def test_count_colors(colors, expected):
    assert count_colors(Coloring(colors)) == expected


def test_count_colors_incomplete():
    with pytest.raises(GraphInputError):
        count_colors(Coloring([0, UNCOLORED]))


def test_color_classes(cycle5):
    classes = color_classes(first_fit_sequential(cycle5))
    assert [cls.tolist() for cls in classes] == [[0, 2], [1, 3], [4]]


# ========================================
# Algorithms
# ========================================

@pytest.mark.parametrize('runner', PARALLEL)
def test_single_thread_matches_sequential(runner, mesh3d):
    coloring, stats = runner(mesh3d, 1)
    assert coloring == first_fit_sequential(mesh3d)
    assert stats.rounds == 1
    assert stats.conflicts_total == 0
    assert not stats.fallback_triggered


@pytest.mark.parametrize('runner', PARALLEL)
def test_empty_graph(runner):
    coloring, stats = runner(build_graph([], 0), 2)
    assert len(coloring) == 0
    assert stats.rounds == 1
    assert stats.conflicts_total == 0
    assert stats.num_colors == 0


def test_barrier_counts_single_thread(triangle):
    _, cat = color_catalyurek(triangle, 1)
    _, rsoc = color_rsoc(triangle, 1)
    assert cat.barrier_events == 2
    assert rsoc.barrier_events == 2


@pytest.mark.parametrize('runner', PARALLEL)
@pytest.mark.parametrize('threads', [2, 3, 4])
def test_rsoc_and_catalyurek_path(runner, threads, path3):
    coloring, stats = runner(path3, threads)
    assert verify_coloring(path3, coloring).is_proper
    assert stats.num_colors == 2


@pytest.mark.parametrize('runner', PARALLEL)
@pytest.mark.parametrize('threads', [2, 4, 8])
def test_parallel_interleaved_chunks(monkeypatch, runner, threads):
    monkeypatch.setenv('OPTCOLOR_CHUNK_SIZE', '4')
    g = generate_rmat(rmat_preset('rmat-b', scale=9, seed=threads))
    coloring, stats = runner(g, threads)
    assert verify_coloring(g, coloring).is_proper
    assert stats.num_colors <= g.max_degree + 1
    assert stats.barrier_events == stats.expected_barriers()
    assert stats.conflicts_total == sum(stats.conflicts_per_round)
    assert len(detect_conflicts(g, coloring, Worklist.all_of(g))) == 0


@pytest.mark.parametrize('runner, barriers', [(color_catalyurek, 4), (color_rsoc, 3)])
def test_round_cap_falls_back_to_sequential_repair(monkeypatch, mesh2d, runner, barriers):
    # Every vertex looks defective forever, so only the cap can end the loop
    monkeypatch.setattr(coloring_mod, '_has_higher_twin', lambda v, nbrs, colors: True)
    coloring, stats = runner(mesh2d, 1, max_rounds=2)
    assert stats.fallback_triggered
    assert stats.rounds == 2
    assert stats.barrier_events == barriers
    assert verify_coloring(mesh2d, coloring).is_proper


def test_round_cap_from_environment(monkeypatch, mesh2d):
    monkeypatch.setattr(coloring_mod, '_has_higher_twin', lambda v, nbrs, colors: True)
    monkeypatch.setenv('OPTCOLOR_MAX_ROUNDS', '70')
    _, stats = color_rsoc(mesh2d, 1)
    assert stats.fallback_triggered
    assert stats.rounds == 70


def test_improper_result_raises(monkeypatch, triangle):
    monkeypatch.setattr(coloring_mod, 'verify_coloring',
                        lambda g, c: ConflictReport([(0, 1, 0)]))
    with pytest.raises(VerificationError) as excinfo:
        color_rsoc(triangle, 1)
    assert excinfo.value.report.violations == [(0, 1, 0)]


@pytest.mark.parametrize('runner', PARALLEL + [color_sequential])
def test_rejects_zero_threads(runner, triangle):
    with pytest.raises(GraphInputError):
        runner(triangle, 0)


def test_sequential_stats(cycle5):
    coloring, stats = color_sequential(cycle5)
    assert coloring.tolist() == [0, 1, 0, 1, 2]
    assert stats.algorithm == 'seq'
    assert stats.rounds == 1
    assert stats.barrier_events == 0
    assert stats.num_colors == 3


def test_algorithm_registry():
    assert list(ALGORITHMS) == ['seq', 'catalyurek', 'rsoc']
    assert get_algorithm('rsoc') is color_rsoc
    with pytest.raises(GraphInputError):
        get_algorithm('jones-plassmann')


# ========================================
# Stats record
# ========================================

def test_stats_invariants_detect_bad_barrier_count():
    stats = ColoringStats(algorithm='rsoc', thread_count=2)
    stats.record_round(3)
    stats.record_round(0)
    stats.barrier_events = 2
    with pytest.raises(ReportError):
        stats.check_invariants(max_degree=4)
    stats.barrier_events = 3
    stats.check_invariants(max_degree=4)


def test_stats_invariants_detect_too_many_colors():
    stats = ColoringStats(algorithm='seq', thread_count=1, num_colors=6)
    stats.record_round(0)
    with pytest.raises(ReportError):
        stats.check_invariants(max_degree=4)


def test_stats_dict_round_trip():
    stats = ColoringStats(algorithm='catalyurek', thread_count=4, wall_time_ns=10)
    stats.record_round(5)
    stats.record_round(0)
    assert ColoringStats.from_dict(stats.to_dict()) == stats


def test_coloring_equality():
    assert Coloring([0, 1]) == Coloring(np.array([0, 1]))
    assert Coloring([0, 1]) != Coloring([1, 0])
