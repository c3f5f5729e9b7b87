"""
Plot benchmark reports written by `run.py bench`.

What it does:
- Loads every *.json report in the report directory (default: bench_reports/).
- Computes mean wall time per graph, algorithm and thread count.
- Computes speedup of rsoc over catalyurek at every shared thread count.
- Plots speedup, conflicts and rounds against thread count, one line per graph.
- Writes a summary CSV next to the charts.

Usage:
    python scripts/plot_bench_reports.py [--reports bench_reports] [--out analysis_outputs]

Outputs (written to the output directory):
    - bench_summary.csv: per graph/algorithm/threads means
    - relative_speedup.png: rsoc speedup over catalyurek vs threads
    - conflicts_vs_threads.png: mean conflicts_total vs threads, per algorithm
    - rounds_vs_threads.png: mean rounds vs threads, per algorithm
    - wall_time_vs_threads.png: mean wall time vs threads, per algorithm
"""

import argparse
import sys
from pathlib import Path
from typing import List

import pandas as pd
import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import seaborn as sns

# Add parent directory to path so we can import optcolor
SCRIPT_DIR = Path(__file__).parent
PROJECT_ROOT = SCRIPT_DIR.parent
sys.path.insert(0, str(PROJECT_ROOT))

from optcolor import config
from optcolor.bench import BenchReport, read_report, runs_frame
from optcolor.errors import ReportError


def load_reports(report_dir: Path) -> List[BenchReport]:
    reports = []
    for path in sorted(report_dir.glob("*.json")):
        try:
            reports.append(read_report(path))
            print(f"  ✓ {path.name}")
        except ReportError as e:
            print(f"  ⚠️  skipping {path.name}: {e}")
    return reports


def summarize(df: pd.DataFrame) -> pd.DataFrame:
    """Mean wall time, conflicts, rounds and colors per graph/algorithm/threads."""
    summary = (
        df.groupby(["graph_name", "algorithm", "threads"], as_index=False)
        .agg(
            mean_wall_ms=("wall_time_ns", lambda s: s.mean() / 1e6),
            mean_conflicts=("conflicts_total", "mean"),
            mean_rounds=("rounds", "mean"),
            median_colors=("num_colors", "median"),
            fallback_runs=("fallback_triggered", "sum"),
        )
    )
    return summary.sort_values(["graph_name", "algorithm", "threads"])


def speedup_frame(summary: pd.DataFrame, algorithm: str = "rsoc",
                  baseline: str = "catalyurek") -> pd.DataFrame:
    """Speedup of `algorithm` over `baseline` (baseline time / algorithm time)."""
    pivot = summary.pivot_table(index=["graph_name", "threads"], columns="algorithm",
                                values="mean_wall_ms")
    if algorithm not in pivot.columns or baseline not in pivot.columns:
        return pd.DataFrame(columns=["graph_name", "threads", "speedup"])
    pivot = pivot.dropna(subset=[algorithm, baseline])
    out = (pivot[baseline] / pivot[algorithm]).rename("speedup").reset_index()
    return out


def ensure_out_dir(path: Path) -> None:
    path.mkdir(parents=True, exist_ok=True)


def plot_speedup(df_speedup: pd.DataFrame, out_dir: Path) -> None:
    if df_speedup.empty:
        print("⚠️  no graph has both rsoc and catalyurek reports; skipping speedup chart")
        return
    plt.figure(figsize=(10, 6))
    sns.lineplot(data=df_speedup, x="threads", y="speedup", hue="graph_name", marker="o")
    plt.axhline(1.0, color="grey", linestyle="--", linewidth=1)
    plt.xlabel("Threads")
    plt.ylabel("Speedup (catalyurek time / rsoc time)")
    plt.title("RSOC Speedup over Two-Barrier Coloring")
    plt.legend(title="Graph", bbox_to_anchor=(1.02, 1), loc="upper left")
    plt.tight_layout()
    plt.savefig(out_dir / "relative_speedup.png", dpi=200)
    plt.close()


def plot_metric(summary: pd.DataFrame, column: str, ylabel: str, title: str,
                filename: str, out_dir: Path) -> None:
    df_plot = summary[summary["algorithm"] != "seq"]
    if df_plot.empty:
        return
    plt.figure(figsize=(10, 6))
    sns.lineplot(data=df_plot, x="threads", y=column, hue="graph_name",
                 style="algorithm", marker="o")
    plt.xlabel("Threads")
    plt.ylabel(ylabel)
    plt.title(title)
    plt.legend(bbox_to_anchor=(1.02, 1), loc="upper left")
    plt.tight_layout()
    plt.savefig(out_dir / filename, dpi=200)
    plt.close()


def main():
    parser = argparse.ArgumentParser(description="Plot optcolor benchmark reports")
    parser.add_argument("--reports", default=config.report_dir(), help="report directory")
    parser.add_argument("--out", default=str(PROJECT_ROOT / "analysis_outputs"),
                        help="output directory for charts and CSV")
    args = parser.parse_args()

    report_dir = Path(args.reports)
    out_dir = Path(args.out)

    print("=" * 80)
    print("OPTCOLOR BENCHMARK PLOTS")
    print("=" * 80)
    print(f"Reports: {report_dir}")
    print(f"Output dir: {out_dir}")
    print()

    reports = load_reports(report_dir)
    if not reports:
        print("⚠️  no reports found.")
        sys.exit(0)

    ensure_out_dir(out_dir)
    summary = summarize(runs_frame(reports))
    summary.to_csv(out_dir / "bench_summary.csv", index=False)
    print("✓ bench_summary.csv written")

    df_speedup = speedup_frame(summary)
    plot_speedup(df_speedup, out_dir)
    plot_metric(summary, "mean_conflicts", "Mean conflicts per run",
                "Conflicts vs Threads", "conflicts_vs_threads.png", out_dir)
    plot_metric(summary, "mean_rounds", "Mean rounds per run",
                "Rounds vs Threads", "rounds_vs_threads.png", out_dir)
    plot_metric(summary, "mean_wall_ms", "Mean wall time (ms)",
                "Wall Time vs Threads", "wall_time_vs_threads.png", out_dir)
    print("✓ charts written")

    print("\n--- SPEEDUP (rsoc over catalyurek) ---")
    for _, row in df_speedup.iterrows():
        print(f"{row['graph_name']} @ {int(row['threads'])} threads: {row['speedup']:.2f}x")

    fallbacks = summary[summary["fallback_runs"] > 0]
    if not fallbacks.empty:
        print("\n⚠️  runs that needed the sequential fallback:")
        for _, row in fallbacks.iterrows():
            print(f"  {row['graph_name']} {row['algorithm']} @ {int(row['threads'])} threads: "
                  f"{int(row['fallback_runs'])}")

    print(f"\nDone. Results in {out_dir}/")


if __name__ == "__main__":
    main()
