"""Sampled-trace and spike-train containers with deterministic CSV emission.

CSV rules used everywhere: a mandatory header row, fixed column order,
floats printed with 17 significant digits so that identical runs produce
byte-identical files and values round-trip exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


def format_value(x) -> str:
    if isinstance(x, (bool, np.bool_)):
        return "1" if x else "0"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return format(float(x), ".17g")


@dataclass
class TimeSeries:
    """Column-oriented record of a simulation run."""

    columns: tuple[str, ...]
    data: dict[str, np.ndarray] = field(default_factory=dict)

    def __post_init__(self):
        missing = [c for c in self.columns if c not in self.data]
        if missing:
            raise ValueError(f"missing data for columns: {missing}")
        lengths = {len(self.data[c]) for c in self.columns}
        if len(lengths) > 1:
            raise ValueError(f"ragged columns: lengths {sorted(lengths)}")

    def __len__(self) -> int:
        return len(self.data[self.columns[0]])

    def __getitem__(self, column: str) -> np.ndarray:
        return self.data[column]

    def to_csv(self) -> str:
        lines = [",".join(self.columns)]
        cols = [self.data[c] for c in self.columns]
        for row in zip(*cols):
            lines.append(",".join(format_value(v) for v in row))
        return "\n".join(lines) + "\n"


@dataclass
class SpikeTrain:
    """Ordered spike timestamps (seconds)."""

    times: np.ndarray

    def __post_init__(self):
        self.times = np.asarray(self.times, dtype=float)
        if len(self.times) > 1 and not np.all(np.diff(self.times) > 0):
            raise ValueError("spike times must be strictly increasing")

    def __len__(self) -> int:
        return len(self.times)

    def to_csv(self) -> str:
        lines = ["spike_time_s"]
        lines.extend(format_value(t) for t in self.times)
        return "\n".join(lines) + "\n"
