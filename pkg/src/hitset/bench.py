"""Benchmark harness: per-cell wall-clock timing with timeout, repeated runs
with median aggregation, cutoff and thread sweeps, output cross-validation,
and table emission.

Every cell executes in its own child process so a runaway or
memory-exhausting algorithm cannot take the harness down; the timer covers
the entire child lifetime, including result serialization.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import multiprocessing as mp
import resource
import statistics
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from .enumeration import (
    ALGORITHM_NAMES,
    STATUS_ERROR,
    STATUS_MEMORY,
    STATUS_OK,
    STATUS_TIMEOUT,
    enumerate_mhs,
)
from .errors import ValidationError
from .family import ElementSet, SetFamily
from .formats import read_family
from .generators import matching_graph, random_family

RECORD_FIELDS = ("dataset", "algorithm", "cutoff", "threads", "status",
                 "median_seconds", "mhs_count")
DEFAULT_RETAIN_LIMIT = 100_000


@dataclass(frozen=True)
class DatasetSpec:
    """One benchmark input: either a file (path + optional format) or a
    generator ("matching" with n, or "random" with m/n/size bounds/seed)."""

    id: str
    path: str | None = None
    format: str | None = None
    generator: str | None = None
    args: tuple[int, ...] = ()

    def load(self) -> SetFamily:
        if self.path is not None:
            return read_family(self.path, self.format)
        if self.generator == "matching":
            (n,) = self.args
            return matching_graph(n)
        if self.generator == "random":
            m, n, lo, hi, seed = self.args
            return random_family(m, n, (lo, hi), seed)
        raise ValidationError(f"dataset {self.id}: no path or known generator")


@dataclass(frozen=True)
class BenchmarkConfig:
    """Sweep definition.  parallel_cells runs cells concurrently; timings are
    then contended and only suitable for smoke runs, so it is off by
    default."""

    datasets: tuple[DatasetSpec, ...]
    algorithms: tuple[str, ...]
    cutoffs: tuple[int | None, ...] = (None,)
    thread_counts: tuple[int, ...] = (1,)
    timeout_seconds: float = 3600.0
    repetitions: int = 3
    retain_limit: int = DEFAULT_RETAIN_LIMIT
    parallel_cells: bool = False

    def __post_init__(self) -> None:
        if self.timeout_seconds <= 0:
            raise ValidationError("timeout must be positive")
        if self.repetitions < 1 or self.repetitions % 2 == 0:
            raise ValidationError("repetitions must be odd so the median is well-defined")
        if not self.thread_counts or any(t < 1 for t in self.thread_counts):
            raise ValidationError("thread counts must be >= 1")


@dataclass
class BenchmarkRecord:
    """One cell of the sweep.  median_seconds and mhs_count are present iff
    the cell completed (status ok)."""

    dataset: str
    algorithm: str
    cutoff: int | None
    threads: int
    status: str
    median_seconds: float | None = None
    mhs_count: int | None = None
    max_rss_kb: int | None = field(default=None, compare=False)


@dataclass(frozen=True)
class CollectionDigest:
    """Retained evidence for cross-validation: the canonical serialization
    hash, the count, and (for small results) the sets themselves."""

    count: int
    sha: str
    sets: tuple[ElementSet, ...] | None


def canonical_digest(sets: Sequence[ElementSet]) -> str:
    h = hashlib.sha256()
    for s in sorted(sets):
        h.update(" ".join(map(str, s)).encode())
        h.update(b"\n")
    return h.hexdigest()


def aggregate_times(times: Sequence[float]) -> float:
    """Median wall time over the repetition runs."""
    return statistics.median(times)


def _cell_child(conn, family: SetFamily, algorithm: str, cutoff: int | None,
                threads: int, retain_limit: int | None) -> None:
    try:
        outcome = enumerate_mhs(family, algorithm, cutoff=cutoff, workers=threads)
        sets = outcome.collection.sets
        keep = sets if retain_limit is None or len(sets) <= retain_limit else None
        rss = resource.getrusage(resource.RUSAGE_SELF).ru_maxrss
        conn.send((STATUS_OK, outcome.count, canonical_digest(sets), keep, rss))
    except MemoryError:
        conn.send((STATUS_MEMORY, None, None, None, None))
    except BaseException as exc:  # noqa: BLE001 - report, never crash the harness
        conn.send((STATUS_ERROR, repr(exc), None, None, None))
    finally:
        conn.close()


@dataclass
class CellResult:
    status: str
    elapsed: float | None = None
    count: int | None = None
    sha: str | None = None
    sets: tuple[ElementSet, ...] | None = None
    max_rss_kb: int | None = None
    error: str | None = None


def run_cell(
    family: SetFamily,
    algorithm: str,
    cutoff: int | None,
    threads: int,
    timeout: float,
    retain_limit: int | None = DEFAULT_RETAIN_LIMIT,
) -> CellResult:
    """Execute one (algorithm, cutoff, threads) run in a child process with a
    wall-clock timeout.  Children killed by the kernel are reported as
    memory-exhausted; a child that exceeds the timeout is terminated."""
    parent, child = mp.Pipe(duplex=False)
    proc = mp.Process(
        target=_cell_child, args=(child, family, algorithm, cutoff, threads, retain_limit)
    )
    start = time.perf_counter()
    proc.start()
    child.close()
    proc.join(timeout)
    if proc.is_alive():
        proc.terminate()
        proc.join(5)
        if proc.is_alive():
            proc.kill()
            proc.join()
        parent.close()
        return CellResult(STATUS_TIMEOUT)
    elapsed = time.perf_counter() - start
    payload = parent.recv() if parent.poll() else None
    parent.close()
    if payload is None:
        # no result came back: a negative exit code means the kernel killed it
        status = STATUS_MEMORY if (proc.exitcode or 0) < 0 else STATUS_ERROR
        return CellResult(status)
    status = payload[0]
    if status == STATUS_OK:
        _, count, sha, keep, rss = payload
        return CellResult(STATUS_OK, elapsed, count, sha, keep, rss)
    if status == STATUS_MEMORY:
        return CellResult(STATUS_MEMORY)
    return CellResult(STATUS_ERROR, error=payload[1])


OutputKey = tuple[str, str, int | None, int]  # dataset, algorithm, cutoff, threads


def _run_job(
    config: BenchmarkConfig,
    dataset_id: str,
    family: SetFamily | None,
    algorithm: str,
    cutoff: int | None,
    threads: int,
) -> tuple[BenchmarkRecord, CollectionDigest | None]:
    if family is None or algorithm not in ALGORITHM_NAMES:
        return BenchmarkRecord(dataset_id, algorithm, cutoff, threads, STATUS_ERROR), None
    first = run_cell(family, algorithm, cutoff, threads,
                     config.timeout_seconds, config.retain_limit)
    if first.status != STATUS_OK:
        return BenchmarkRecord(dataset_id, algorithm, cutoff, threads, first.status), None
    times = [first.elapsed]
    for _ in range(config.repetitions - 1):
        rep = run_cell(family, algorithm, cutoff, threads,
                       config.timeout_seconds, retain_limit=0)
        if rep.status != STATUS_OK:
            return BenchmarkRecord(dataset_id, algorithm, cutoff, threads, STATUS_ERROR), None
        times.append(rep.elapsed)
    record = BenchmarkRecord(
        dataset_id, algorithm, cutoff, threads, STATUS_OK,
        median_seconds=aggregate_times(times),
        mhs_count=first.count,
        max_rss_kb=first.max_rss_kb,
    )
    return record, CollectionDigest(first.count, first.sha, first.sets)


def run_benchmark(
    config: BenchmarkConfig,
) -> tuple[list[BenchmarkRecord], dict[OutputKey, CollectionDigest]]:
    """Run the full sweep.  One cell's failure never aborts the rest; cells
    that completed are re-run to `repetitions` timings and the median kept.

    Cells run sequentially unless config.parallel_cells is set, in which case
    they are dispatched concurrently (contending for CPU, so the timings are
    indicative only)."""
    jobs = []
    for spec in config.datasets:
        try:
            family = spec.load()
        except Exception:
            family = None
        for algorithm in config.algorithms:
            for cutoff in config.cutoffs:
                for threads in config.thread_counts:
                    jobs.append((spec.id, family, algorithm, cutoff, threads))
    if config.parallel_cells and len(jobs) > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=min(len(jobs), _os_cpu_count())) as pool:
            results = list(pool.map(lambda j: _run_job(config, *j), jobs))
    else:
        results = [_run_job(config, *j) for j in jobs]
    records: list[BenchmarkRecord] = []
    outputs: dict[OutputKey, CollectionDigest] = {}
    for (dataset_id, _, algorithm, cutoff, threads), (record, digest) in zip(jobs, results):
        records.append(record)
        if digest is not None:
            outputs[(dataset_id, algorithm, cutoff, threads)] = digest
    return records, outputs


def _os_cpu_count() -> int:
    import os

    return os.cpu_count() or 1


@dataclass(frozen=True)
class CrossValidationVerdict:
    status: str  # "equal" | "mismatch" | "insufficient"
    detail: str = ""
    algorithms: tuple[str, str] | None = None
    witness: ElementSet | None = None


def cross_validate(
    records: Sequence[BenchmarkRecord],
    outputs: dict[OutputKey, CollectionDigest],
) -> dict[tuple[str, int | None], CrossValidationVerdict]:
    """Pairwise equality of retained outputs per (dataset, cutoff) cell.

    A mismatch names the two disagreeing algorithms and, when the sets were
    retained, one set present in exactly one of the collections.
    """
    groups: dict[tuple[str, int | None], list[tuple[str, int, CollectionDigest]]] = {}
    for (dataset, algorithm, cutoff, threads), digest in outputs.items():
        groups.setdefault((dataset, cutoff), []).append((algorithm, threads, digest))
    verdicts: dict[tuple[str, int | None], CrossValidationVerdict] = {}
    for key, entries in groups.items():
        if len(entries) < 2:
            verdicts[key] = CrossValidationVerdict(
                "insufficient", "fewer than two completed runs")
            continue
        base_alg, base_thr, base = entries[0]
        verdict = CrossValidationVerdict("equal", f"{len(entries)} runs agree")
        for alg, thr, digest in entries[1:]:
            if digest.sha == base.sha:
                continue
            witness = None
            if base.sets is not None and digest.sets is not None:
                diff = sorted(set(base.sets) ^ set(digest.sets))
                witness = diff[0] if diff else None
            verdict = CrossValidationVerdict(
                "mismatch",
                f"{base_alg}@t{base_thr} and {alg}@t{thr} disagree "
                f"({base.count} vs {digest.count} sets)",
                algorithms=(base_alg, alg),
                witness=witness,
            )
            break
        verdicts[key] = verdict
    return verdicts


_CELL_MARKERS = {STATUS_TIMEOUT: "TIMEOUT", STATUS_MEMORY: "MEMORY", STATUS_ERROR: "ERROR"}


def _slice_tables(records: Sequence[BenchmarkRecord]):
    slices: dict[tuple[int | None, int], list[BenchmarkRecord]] = {}
    for r in records:
        slices.setdefault((r.cutoff, r.threads), []).append(r)
    return slices


def emit_table(records: Sequence[BenchmarkRecord], format: str = "text") -> str:
    """Render one algorithms-by-datasets table per (cutoff, threads) slice.

    Rows are ordered by ascending total median time (cells that never
    finished sort last); failed cells carry fixed TIMEOUT/MEMORY/ERROR
    markers.  `format` is "text" (aligned) or "csv".
    """
    if format not in ("text", "csv"):
        raise ValidationError(f"unknown table format {format!r}")
    out = io.StringIO()
    slices = _slice_tables(records)
    if not slices:
        slices = {(None, 1): []}
    for (cutoff, threads), rows in slices.items():
        datasets: list[str] = []
        algorithms: list[str] = []
        cells: dict[tuple[str, str], BenchmarkRecord] = {}
        for r in rows:
            if r.dataset not in datasets:
                datasets.append(r.dataset)
            if r.algorithm not in algorithms:
                algorithms.append(r.algorithm)
            cells[(r.algorithm, r.dataset)] = r

        def total_time(alg: str) -> float:
            total = 0.0
            for ds in datasets:
                r = cells.get((alg, ds))
                if r is None or r.median_seconds is None:
                    return float("inf")
                total += r.median_seconds
            return total

        algorithms.sort(key=lambda a: (total_time(a), a))
        title = f"cutoff={'none' if cutoff is None else cutoff} threads={threads}"
        header = ["algorithm", *datasets]
        table_rows = []
        for alg in algorithms:
            row = [alg]
            for ds in datasets:
                r = cells.get((alg, ds))
                if r is None:
                    row.append("")
                elif r.status == STATUS_OK:
                    row.append(f"{r.median_seconds:.2f}")
                else:
                    row.append(_CELL_MARKERS.get(r.status, r.status.upper()))
            table_rows.append(row)
        if format == "csv":
            writer = csv.writer(out)
            writer.writerow([f"# {title}"])
            writer.writerow(header)
            writer.writerows(table_rows)
            out.write("\n")
        else:
            widths = [max(len(str(r[i])) for r in [header, *table_rows])
                      for i in range(len(header))]
            out.write(f"== {title} ==\n")
            for row in [header, *table_rows]:
                out.write("  ".join(str(c).ljust(w) for c, w in zip(row, widths)).rstrip())
                out.write("\n")
            out.write("\n")
    return out.getvalue()


def write_records_csv(records: Sequence[BenchmarkRecord], path: str | Path) -> None:
    """Comma-separated records with the stable header used by downstream
    tooling."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(RECORD_FIELDS)
        for r in records:
            writer.writerow([
                r.dataset,
                r.algorithm,
                "" if r.cutoff is None else r.cutoff,
                r.threads,
                r.status,
                "" if r.median_seconds is None else f"{r.median_seconds:.6f}",
                "" if r.mhs_count is None else r.mhs_count,
            ])


def parse_config(path: str | Path) -> BenchmarkConfig:
    """Load a benchmark configuration from a JSON file.

    Schema: {"datasets": [{"id", and "path"/"format" or "generator"/args}],
    "algorithms": [...], "cutoffs": [null, 5, ...], "threads": [1, ...],
    "timeout_seconds": ..., "repetitions": ...}.
    """
    with open(path) as fh:
        doc = json.load(fh)
    datasets = []
    for d in doc.get("datasets", []):
        if "path" in d:
            datasets.append(DatasetSpec(d["id"], path=d["path"], format=d.get("format")))
        elif d.get("generator") == "matching":
            datasets.append(DatasetSpec(d["id"], generator="matching", args=(int(d["n"]),)))
        elif d.get("generator") == "random":
            datasets.append(DatasetSpec(
                d["id"], generator="random",
                args=(int(d["m"]), int(d["n"]), int(d["min_size"]),
                      int(d["max_size"]), int(d["seed"]))))
        else:
            raise ValidationError(f"dataset {d.get('id')!r}: need a path or a generator")
    cutoffs = tuple(None if c is None else int(c) for c in doc.get("cutoffs", [None]))
    return BenchmarkConfig(
        datasets=tuple(datasets),
        algorithms=tuple(doc.get("algorithms", [])),
        cutoffs=cutoffs if cutoffs else (None,),
        thread_counts=tuple(int(t) for t in doc.get("threads", [1])),
        timeout_seconds=float(doc.get("timeout_seconds", 3600.0)),
        repetitions=int(doc.get("repetitions", 3)),
        retain_limit=int(doc.get("retain_limit", DEFAULT_RETAIN_LIMIT)),
        parallel_cells=bool(doc.get("parallel_cells", False)),
    )
