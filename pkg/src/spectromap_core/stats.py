"""Per-folder timing summaries for batch runs."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

STATS_CSV_HEADER = "set,files,min_s,mean_s,std_s,max_s,total_s,it_per_s"


@dataclass(frozen=True)
class TimingStats:
    """Summary of per-file processing durations for one set of files.

    Stats are None for an empty set ("n/a" in serialized form). std_s is the
    sample standard deviation (n - 1 denominator), reported as 0.0 for a
    single file where it is undefined.
    """

    label: str
    n_files: int
    min_s: float | None
    mean_s: float | None
    std_s: float | None
    max_s: float | None
    total_s: float | None
    it_per_s: float | None

    @classmethod
    def from_durations(cls, label: str, durations) -> "TimingStats":
        d = np.asarray(list(durations), dtype=np.float64)
        if d.size == 0:
            return cls(label, 0, None, None, None, None, None, None)
        total = float(d.sum())
        return cls(
            label=label,
            n_files=int(d.size),
            min_s=float(d.min()),
            mean_s=float(d.mean()),
            std_s=float(d.std(ddof=1)) if d.size > 1 else 0.0,
            max_s=float(d.max()),
            total_s=total,
            it_per_s=d.size / total if total > 0 else float("inf"),
        )

    def csv_row(self) -> str:
        cells = [
            "n/a" if v is None else format(v, "#.6g")
            for v in (self.min_s, self.mean_s, self.std_s,
                      self.max_s, self.total_s, self.it_per_s)
        ]
        return ",".join([self.label, str(self.n_files), *cells])


TABLE_HEADER = (
    f"{'set':<16} {'files':>5} {'min_s':>9} {'mean_s+-std_s':>17} "
    f"{'max_s':>9} {'total_s':>9} {'it_per_s':>9}"
)


def table_row(stats: TimingStats) -> str:
    """Human-readable row in the same column order as the CSV."""
    if stats.n_files == 0:
        return (
            f"{stats.label:<16} {0:>5} {'n/a':>9} {'n/a':>17} "
            f"{'n/a':>9} {'n/a':>9} {'n/a':>9}"
        )
    spread = f"{stats.mean_s:.4f}+-{stats.std_s:.4f}"
    return (
        f"{stats.label:<16} {stats.n_files:>5} {stats.min_s:>9.4f} {spread:>17} "
        f"{stats.max_s:>9.4f} {stats.total_s:>9.2f} {stats.it_per_s:>9.2f}"
    )


def write_stats_csv(rows, path) -> None:
    """Stats CSV with the fixed header; rows keep their given order."""
    with open(path, "w", newline="") as fh:
        fh.write(STATS_CSV_HEADER + "\n")
        for stats in rows:
            fh.write(stats.csv_row() + "\n")
