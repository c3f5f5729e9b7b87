"""
Flatten benchmark reports into a single CSV with one row per run.

Usage:
    python scripts/export_bench_csv.py [--reports bench_reports] [--output bench_runs.csv]

Columns: graph_name, algorithm, threads, run_index, rounds, conflicts_total,
num_colors, wall_time_ns, barrier_events, fallback_triggered
"""

import argparse
import sys
from pathlib import Path

# Add parent directory to path so we can import optcolor
SCRIPT_DIR = Path(__file__).parent
PROJECT_ROOT = SCRIPT_DIR.parent
sys.path.insert(0, str(PROJECT_ROOT))

from optcolor import config
from optcolor.bench import read_report, runs_frame
from optcolor.errors import ReportError


def main():
    parser = argparse.ArgumentParser(description="Export optcolor benchmark runs to CSV")
    parser.add_argument("--reports", default=config.report_dir(), help="report directory")
    parser.add_argument("--output", default=str(PROJECT_ROOT / "bench_runs.csv"), help="CSV path")
    args = parser.parse_args()

    report_dir = Path(args.reports)
    paths = sorted(report_dir.glob("*.json"))
    if not paths:
        print(f"❌ ERROR: no reports found in {report_dir}")
        sys.exit(1)

    reports = []
    for path in paths:
        try:
            reports.append(read_report(path))
        except ReportError as e:
            print(f"⚠️  skipping {path.name}: {e}")

    df = runs_frame(reports)
    df.to_csv(args.output, index=False)
    print(f"✓ Exported {len(df)} run(s) from {len(reports)} report(s) to {args.output}")


if __name__ == "__main__":
    main()
