"""Readers for sweep CSVs written by `acqlab sweep`.

Only the loader is implemented; figure rendering is a follow-up.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

COLUMNS = (
    "n",
    "r",
    "p",
    "seed",
    "strategy",
    "rounds",
    "lower_bound",
    "theory_value",
    "ratio",
    "all_acquainted",
    "wall_time_ms",
)


class SchemaError(ValueError):
    """The CSV does not match the sweep schema."""


@dataclass(frozen=True)
class SweepRow:
    n: int
    r: float
    p: float
    seed: int
    strategy: str
    rounds: int
    lower_bound: int
    theory_value: float
    ratio: float
    all_acquainted: bool
    wall_time_ms: float


SweepFrame = list[SweepRow]


def _parse(line: int, row: dict[str, str]) -> SweepRow:
    try:
        flag = row["all_acquainted"]
        if flag not in ("true", "false"):
            raise ValueError(f"all_acquainted must be true or false, got {flag!r}")
        parsed = SweepRow(
            n=int(row["n"]),
            r=float(row["r"]),
            p=float(row["p"]),
            seed=int(row["seed"]),
            strategy=row["strategy"],
            rounds=int(row["rounds"]),
            lower_bound=int(row["lower_bound"]),
            theory_value=float(row["theory_value"]),
            ratio=float(row["ratio"]),
            all_acquainted=flag == "true",
            wall_time_ms=float(row["wall_time_ms"]),
        )
    except (TypeError, ValueError) as e:
        raise SchemaError(f"line {line}: {e}") from e
    # Failed runs carry rounds = 0; only completed schedules must respect the bound.
    if parsed.all_acquainted and parsed.rounds < parsed.lower_bound:
        raise SchemaError(f"line {line}: rounds {parsed.rounds} below lower_bound {parsed.lower_bound}")
    return parsed


def load_sweep(csv_path: str | Path) -> SweepFrame:
    with open(csv_path, newline="") as f:
        reader = csv.DictReader(f)
        if reader.fieldnames is None or tuple(reader.fieldnames) != COLUMNS:
            raise SchemaError(f"header {reader.fieldnames!r} does not match {','.join(COLUMNS)}")
        return [_parse(i + 2, row) for i, row in enumerate(reader)]


def plot_scaling(csv_path: str | Path, out_path: str | Path) -> float | None:
    """Log-log figure of rounds against theory_value and the fitted slope
    (None when undefined). Not implemented yet."""
    load_sweep(csv_path)
    raise NotImplementedError("figure rendering is not implemented; see load_sweep for the schema")
