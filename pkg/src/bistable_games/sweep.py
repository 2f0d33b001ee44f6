"""Grid sweeps and their deterministic CSV/JSON serialisation."""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from typing import Any, Sequence

import numpy as np

from .core import ConfigError


@dataclass(frozen=True)
class Axis:
    name: str
    values: tuple[float, ...]

    def __post_init__(self):
        if len(self.values) == 0:
            raise ConfigError(f"axes.{self.name}", "axis is empty")
        vals = [float(v) for v in self.values]
        if not all(math.isfinite(v) for v in vals):
            raise ConfigError(f"axes.{self.name}", "axis values must be finite")
        if any(b <= a for a, b in zip(vals, vals[1:])):
            raise ConfigError(f"axes.{self.name}", "axis values must be strictly increasing")
        object.__setattr__(self, "values", tuple(vals))

    @classmethod
    def linspace(cls, name: str, lo: float, hi: float, steps: int) -> "Axis":
        if steps < 1:
            raise ConfigError(f"axes.{name}.steps", "steps must be >= 1")
        if steps == 1:
            return cls(name, (float(lo),))
        if not hi > lo:
            raise ConfigError(f"axes.{name}", "max must exceed min when steps > 1")
        return cls(name, tuple(np.linspace(lo, hi, steps).tolist()))

    def __len__(self):
        return len(self.values)


@dataclass
class SweepSpec:
    """What to evaluate over which axes.

    ``quantity`` is ``"utility"``, ``"delta_m"`` or ``"quantum_utility"``;
    ``fixed`` supplies values for inputs that are not swept.
    """

    axes: tuple[Axis, ...]
    quantity: str = "utility"
    payoffs: Any = None
    scenario_mode: Any = None
    fixed: dict = field(default_factory=dict)

    def __post_init__(self):
        names = [a.name for a in self.axes]
        if len(set(names)) != len(names):
            raise ConfigError("axes", "duplicate axis name")

    def mesh(self) -> dict[str, np.ndarray]:
        """Flattened coordinates in axis-major order (first axis varies slowest)."""
        grids = np.meshgrid(*[np.asarray(a.values) for a in self.axes], indexing="ij")
        return {a.name: g.ravel() for a, g in zip(self.axes, grids)}

    @property
    def size(self) -> int:
        return int(np.prod([len(a) for a in self.axes]))


@dataclass
class SweepResult:
    columns: list[str]
    data: dict[str, np.ndarray]

    def __len__(self):
        return len(next(iter(self.data.values()))) if self.data else 0

    def rows(self):
        cols = [self.data[c] for c in self.columns]
        for i in range(len(self)):
            yield tuple(col[i] for col in cols)

    def to_csv(self, fh=None) -> str | None:
        return write_csv(self.columns, self.rows(), fh)

    def to_records(self) -> list[dict]:
        return [dict(zip(self.columns, (_plain(v) for v in row))) for row in self.rows()]


def fmt(value) -> str:
    """Locale-independent cell formatting with 17 significant digits."""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (float, np.floating)):
        return format(float(value), ".17g")
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return str(value)


def _plain(v):
    if isinstance(v, np.bool_):
        return bool(v)
    if isinstance(v, np.floating):
        return float(v)
    if isinstance(v, np.integer):
        return int(v)
    return v


def write_csv(columns: Sequence[str], rows, fh=None) -> str | None:
    """Write rows with ``\\n`` line endings; returns the text when ``fh`` is None."""
    buf = io.StringIO() if fh is None else fh
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([fmt(v) for v in row])
    if fh is None:
        return buf.getvalue()
    return None
