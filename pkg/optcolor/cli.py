"""
Command-line front end.

Subcommands:
    generate  - write an R-MAT or mesh-like graph as an edge list
    color     - color a graph, verify it, write a stats report
    verify    - check a coloring file against a graph
    bench     - timed, verified sweeps over algorithms and thread counts
    lockstep  - run the SIMT lockstep simulator and print its trace

Every handler returns an exit status; main() maps library errors to the
distinct codes in optcolor.errors.
"""

import argparse
import json
import logging
import os
import sys
from typing import Dict, List, Optional, Sequence, Tuple

from optcolor import config
from optcolor.bench import (
    DEFAULT_REPEATS,
    relative_speedup,
    report_filename,
    run_benchmark,
    write_report,
    write_runs_csv,
)
from optcolor.coloring import (
    ALGORITHMS,
    Coloring,
    get_algorithm,
    verify_coloring,
)
from optcolor.errors import (
    EXIT_IO_ERROR,
    EXIT_OK,
    EXIT_PARSE_ERROR,
    EXIT_VERIFY_FAILED,
    OptcolorError,
    VerificationError,
)
from optcolor.graph import Graph, graph_summary
from optcolor.graph_io import (
    RMAT_PRESETS,
    RmatParams,
    generate_rmat,
    grid_mesh_2d,
    lattice_mesh_3d,
    load_graph,
    read_coloring,
    rmat_preset,
    shuffle_vertices,
    write_coloring,
    write_edge_list,
)
from optcolor.lockstep import lockstep_color, round_robin_lanes

MESH_PRESETS = ('mesh2d', 'mesh3d')
PRESETS = tuple(sorted(RMAT_PRESETS)) + MESH_PRESETS

DEFAULT_SCALE = 10
DEFAULT_EDGE_FACTOR = 8
DEFAULT_MESH_SIZE = 64
DEFAULT_LOCKSTEP_CAP = 100


# ========================================
# Argument helpers
# ========================================

def parse_thread_list(text: str) -> List[int]:
    """Parse "1,2,4" into [1, 2, 4]; every entry must be >= 1."""
    try:
        values = [int(part) for part in text.split(',') if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"thread list must be comma-separated integers, got {text!r}")
    if not values or any(v < 1 for v in values):
        raise argparse.ArgumentTypeError(f"thread counts must be >= 1, got {text!r}")
    if len(set(values)) != len(values):
        raise argparse.ArgumentTypeError(f"thread counts must be distinct, got {text!r}")
    return values


def positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def parse_algorithm_list(text: str) -> List[str]:
    names = [part.strip() for part in text.split(',') if part.strip()]
    unknown = [n for n in names if n not in ALGORITHMS]
    if not names or unknown:
        raise argparse.ArgumentTypeError(
            f"algorithms must be a comma-separated subset of {','.join(ALGORITHMS)}, got {text!r}")
    return names


def _add_source_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('input', help=f"graph file, or a preset: {', '.join(PRESETS)}")
    parser.add_argument('--format', choices=['mm', 'edgelist'], default=None,
                        help='input format (default: inferred from extension, .mtx -> mm)')
    parser.add_argument('--scale', type=int, default=DEFAULT_SCALE,
                        help=f'R-MAT preset: 2^scale vertices (default: {DEFAULT_SCALE})')
    parser.add_argument('--edge-factor', type=int, default=DEFAULT_EDGE_FACTOR,
                        help=f'R-MAT preset: samples per vertex (default: {DEFAULT_EDGE_FACTOR})')
    parser.add_argument('--size', type=int, default=DEFAULT_MESH_SIZE,
                        help=f'mesh preset: grid side length (default: {DEFAULT_MESH_SIZE})')
    parser.add_argument('--seed', type=int, default=0, help='generator / shuffle seed (default: 0)')
    parser.add_argument('--shuffle', action='store_true',
                        help='randomly relabel vertices (seeded by --seed)')


def _rmat_params(args: argparse.Namespace, preset: str) -> RmatParams:
    params = rmat_preset(preset, args.scale, args.edge_factor, args.seed)
    overrides = {k: getattr(args, k, None) for k in ('a', 'b', 'c', 'd')}
    if any(v is not None for v in overrides.values()):
        values = {k: (v if v is not None else getattr(params, k)) for k, v in overrides.items()}
        params = RmatParams(scale=params.scale, edge_factor=params.edge_factor, seed=params.seed,
                            **values)
    return params


def build_source(args: argparse.Namespace) -> Tuple[Graph, str]:
    """
    Load or generate the graph named by args.input, shuffling it if asked.

    Returns:
        (graph, label used in reports)
    """
    name = args.input
    if name in RMAT_PRESETS:
        params = _rmat_params(args, name)
        g = generate_rmat(params)
        label = f"{name}-s{params.scale}-e{params.edge_factor}-seed{params.seed}"
    elif name == 'mesh2d':
        g = grid_mesh_2d(args.size, args.size)
        label = f"mesh2d-{args.size}"
    elif name == 'mesh3d':
        g = lattice_mesh_3d(args.size)
        label = f"mesh3d-{args.size}"
    else:
        g = load_graph(name, args.format)
        label = os.path.splitext(os.path.basename(name))[0]

    if args.shuffle:
        g, _ = shuffle_vertices(g, args.seed)
        label += '-shuffled'
    return g, label


def _print_graph(label: str, g: Graph) -> None:
    summary = graph_summary(g)
    print(f"Graph: {label}")
    print(f"  |V| = {summary['num_vertices']}")
    print(f"  |E| = {summary['num_edges']}")
    print(f"  max_degree = {summary['max_degree']}")


# ========================================
# Handlers
# ========================================

def cmd_generate(args: argparse.Namespace) -> int:
    """Write a generated graph as an edge list and print its size."""
    g, label = build_source(args)
    output = args.output or f"{label}.txt"
    with open(output, 'w', encoding='utf-8') as f:
        write_edge_list(g, f)
    _print_graph(label, g)
    print(f"✓ Edge list written: {output}")
    return EXIT_OK


def cmd_color(args: argparse.Namespace) -> int:
    """Color, verify, and write the stats report (and optionally the coloring)."""
    g, label = build_source(args)
    runner = get_algorithm(args.algorithm)
    coloring, stats = runner(g, args.threads)
    report = verify_coloring(g, coloring)

    document = {
        'graph_name': label,
        'graph_stats': {k: v for k, v in graph_summary(g).items() if k != 'mean_degree'},
        'stats': stats.to_dict(),
        'proper': report.is_proper,
    }
    if args.output:
        with open(args.output, 'w', encoding='utf-8') as f:
            json.dump(document, f, indent=2)
            f.write('\n')
    else:
        json.dump(document, sys.stdout, indent=2)
        sys.stdout.write('\n')

    if args.coloring_output:
        with open(args.coloring_output, 'w', encoding='utf-8') as f:
            write_coloring(coloring, f)

    print(f"{stats.algorithm} x{stats.thread_count}: {stats.num_colors} colors, "
          f"{stats.rounds} rounds, {stats.conflicts_total} conflicts, "
          f"{stats.wall_time_ns / 1e6:.2f} ms", file=sys.stderr)
    if stats.fallback_triggered:
        print("⚠️  sequential fallback was needed", file=sys.stderr)
    if not report.is_proper:
        for line in report.describe():
            print(f"❌ {line}", file=sys.stderr)
        return EXIT_VERIFY_FAILED
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    """Exit 0 iff the coloring file is complete and proper for the graph."""
    g, label = build_source(args)
    with open(args.coloring, 'rb') as f:
        colors = read_coloring(f, name=args.coloring)
    if len(colors) != g.num_vertices:
        print(f"❌ coloring has {len(colors)} entries, {label} has {g.num_vertices} vertices")
        return EXIT_VERIFY_FAILED

    report = verify_coloring(g, Coloring(colors))
    if report.is_proper:
        print(f"✓ proper coloring of {label}")
        return EXIT_OK
    print(f"❌ {len(report)} violation(s) in coloring of {label}:")
    for line in report.describe(limit=args.limit):
        print(f"  {line}")
    return EXIT_VERIFY_FAILED


def _print_bench_summary(reports: Dict[str, object], thread_counts: Sequence[int]) -> None:
    print("=" * 72)
    print("BENCHMARK SUMMARY (mean wall time, ms)")
    print("=" * 72)
    header = f"{'algorithm':<12}" + "".join(f"{t:>10}" for t in thread_counts)
    print(header)
    print("-" * len(header))
    for name, report in reports.items():
        row = f"{name:<12}" + "".join(f"{report.mean_wall_ns(t) / 1e6:>10.2f}" for t in thread_counts)
        if report.fallback_runs:
            row += f"   ⚠️  {report.fallback_runs} fallback run(s)"
        print(row)

    baseline_name = 'catalyurek' if 'catalyurek' in reports else ('seq' if 'seq' in reports else None)
    for name, report in reports.items():
        if baseline_name is None or name == baseline_name:
            continue
        speedup = relative_speedup(report, reports[baseline_name])
        cells = "".join(f"{speedup[t]:>10.2f}" for t in thread_counts)
        print(f"{name + '/' + baseline_name:<12}{cells}   (speedup)")

    print()
    print(f"{'algorithm':<12}" + "".join(f"{t:>10}" for t in thread_counts) + "   (mean conflicts / rounds)")
    for name, report in reports.items():
        cells = "".join(
            f"{report.aggregate[str(t)]['mean_conflicts']:>6.0f}/{report.aggregate[str(t)]['mean_rounds']:<3.0f}"
            for t in thread_counts)
        print(f"{name:<12}{cells}")


def cmd_bench(args: argparse.Namespace) -> int:
    """Sweep algorithms x thread counts, write one report per algorithm, print a summary."""
    g, label = build_source(args)
    _print_graph(label, g)
    out_dir = args.output or config.report_dir()
    os.makedirs(out_dir, exist_ok=True)

    reports = {}
    for algorithm in args.algorithms:
        print(f"\nRunning {algorithm} at threads {args.threads} x {args.repeats} repeats...")
        report = run_benchmark(g, algorithm, args.threads, args.repeats, graph_name=label)
        path = os.path.join(out_dir, report_filename(report))
        write_report(report, path)
        print(f"  ✓ report written: {path}")
        reports[algorithm] = report

    if args.csv:
        write_runs_csv(reports.values(), args.csv)
        print(f"  ✓ runs CSV written: {args.csv}")

    print()
    _print_bench_summary(reports, args.threads)
    return EXIT_OK


def cmd_lockstep(args: argparse.Namespace) -> int:
    """Print the lockstep outcome and its per-round color trace; always exits 0."""
    g, label = build_source(args)
    outcome = lockstep_color(g, round_robin_lanes(g.num_vertices, args.lanes), args.cap)
    status = f"converged in round {outcome.rounds_executed}" if outcome.converged \
        else f"not converged after {outcome.rounds_executed} rounds"
    print(f"{label}: {args.lanes} lane(s), {status}")
    for round_no, snapshot in enumerate(outcome.color_trace, start=1):
        print(f"  round {round_no:>4}: {' '.join(str(c) for c in snapshot.tolist())}")
    return EXIT_OK


# ========================================
# Parser and entry point
# ========================================

def create_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='optcolor',
        description='Speculative parallel graph coloring: sequential First-Fit, '
                    'two-barrier optimistic coloring and single-barrier RSOC',
    )
    parser.add_argument('--verbose', action='store_true', help='log per-round progress')
    sub = parser.add_subparsers(dest='subcommand', required=True)

    gen = sub.add_parser('generate', help='generate a graph and write it as an edge list')
    _add_source_args(gen)
    for q in ('a', 'b', 'c', 'd'):
        gen.add_argument(f'--{q}', type=float, default=None, help=f'override R-MAT probability {q}')
    gen.add_argument('--output', help='edge-list path (default: <label>.txt)')
    gen.set_defaults(handler=cmd_generate)

    color = sub.add_parser('color', help='color a graph and write a stats report')
    _add_source_args(color)
    color.add_argument('--algorithm', choices=list(ALGORITHMS), default='rsoc')
    color.add_argument('--threads', type=positive_int, default=1, help='worker threads (default: 1)')
    color.add_argument('--output', help='stats report path (default: stdout)')
    color.add_argument('--coloring-output', help='write the coloring, one color per line')
    color.set_defaults(handler=cmd_color)

    verify = sub.add_parser('verify', help='verify a coloring file against a graph')
    _add_source_args(verify)
    verify.add_argument('coloring', help='coloring file, one color per line')
    verify.add_argument('--limit', type=positive_int, default=20, help='violations to print (default: 20)')
    verify.set_defaults(handler=cmd_verify)

    bench = sub.add_parser('bench', help='benchmark algorithms over thread counts')
    _add_source_args(bench)
    bench.add_argument('--algorithms', type=parse_algorithm_list,
                       default=list(ALGORITHMS), help='comma-separated (default: seq,catalyurek,rsoc)')
    bench.add_argument('--threads', type=parse_thread_list, default=[1],
                       help='comma-separated thread counts (default: 1)')
    bench.add_argument('--repeats', type=positive_int, default=DEFAULT_REPEATS,
                       help=f'runs per thread count (default: {DEFAULT_REPEATS})')
    bench.add_argument('--output', help='report directory (default: $OPTCOLOR_REPORT_DIR or bench_reports)')
    bench.add_argument('--csv', help='also write one CSV row per run to this path')
    bench.set_defaults(handler=cmd_bench)

    lock = sub.add_parser('lockstep', help='simulate SIMT lockstep coloring')
    _add_source_args(lock)
    lock.add_argument('--lanes', type=positive_int, default=2, help='lanes, vertex v on lane v %% lanes (default: 2)')
    lock.add_argument('--cap', type=positive_int, default=DEFAULT_LOCKSTEP_CAP,
                      help=f'round cap (default: {DEFAULT_LOCKSTEP_CAP})')
    lock.set_defaults(handler=cmd_lockstep)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = create_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format='%(levelname)s %(name)s: %(message)s',
    )
    try:
        return args.handler(args)
    except VerificationError as e:
        print(f"❌ VERIFICATION FAILED: {e}", file=sys.stderr)
        return EXIT_VERIFY_FAILED
    except OptcolorError as e:
        print(f"❌ ERROR: {e}", file=sys.stderr)
        return EXIT_PARSE_ERROR
    except OSError as e:
        print(f"❌ I/O ERROR: {e}", file=sys.stderr)
        return EXIT_IO_ERROR
