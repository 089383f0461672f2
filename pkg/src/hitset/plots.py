"""Benchmark report figures.

Renders one grouped bar chart of median wall times per (cutoff, threads)
slice, written next to the delimited records so a sweep's output is
self-contained.
"""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

from .bench import STATUS_OK, BenchmarkRecord, _CELL_MARKERS, _slice_tables


def render_benchmark_figures(
    records: Sequence[BenchmarkRecord],
    out_dir: str | Path,
) -> list[Path]:
    """Write one PNG per (cutoff, threads) slice; returns the created paths."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    created: list[Path] = []
    for (cutoff, threads), rows in _slice_tables(records).items():
        datasets: list[str] = []
        algorithms: list[str] = []
        cells: dict[tuple[str, str], BenchmarkRecord] = {}
        for r in rows:
            if r.dataset not in datasets:
                datasets.append(r.dataset)
            if r.algorithm not in algorithms:
                algorithms.append(r.algorithm)
            cells[(r.algorithm, r.dataset)] = r
        if not datasets or not algorithms:
            continue
        fig, ax = plt.subplots(figsize=(1.8 + 1.1 * len(datasets) * len(algorithms) / 4, 4.0))
        width = 0.8 / len(algorithms)
        floor = 1e-4  # log scale cannot show zero-time cells
        for ai, alg in enumerate(algorithms):
            xs, ys = [], []
            for di, ds in enumerate(datasets):
                r = cells.get((alg, ds))
                x = di + ai * width
                if r is not None and r.status == STATUS_OK:
                    xs.append(x)
                    ys.append(max(r.median_seconds, floor))
                elif r is not None:
                    ax.annotate(
                        _CELL_MARKERS.get(r.status, "?"),
                        (x, floor),
                        rotation=90,
                        fontsize=7,
                        ha="center",
                        va="bottom",
                    )
            ax.bar(xs, ys, width=width * 0.95, label=alg, align="edge")
        ax.set_yscale("log")
        ax.set_ylabel("median wall time (s)")
        ax.set_xticks([i + 0.4 for i in range(len(datasets))])
        ax.set_xticklabels(datasets, rotation=20, ha="right")
        title = f"cutoff={'none' if cutoff is None else cutoff}, threads={threads}"
        ax.set_title(title)
        ax.legend(fontsize=8)
        fig.tight_layout()
        name = f"bench_c{'none' if cutoff is None else cutoff}_t{threads}.png"
        target = out_dir / name
        fig.savefig(target, dpi=120)
        plt.close(fig)
        created.append(target)
    return created
