"""Reader for the modlink survey CSV.

The harness consumes only this file and the DT strings inside it; it
never imports the primary package (strict layering).
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

ACCEPTED = ("Converged", "ConvergedNonGeometric")


@dataclass(frozen=True)
class Row:
    m: int
    total_length_paper: float
    dt_code: str
    volume: float | None
    status: str


def read_rows(path: str) -> list[Row]:
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        required = {"m", "total_length_paper", "dt_code", "volume", "status"}
        missing = required - set(reader.fieldnames or ())
        if missing:
            raise ValueError(f"survey CSV is missing columns {sorted(missing)}")
        rows = []
        for rec in reader:
            vol = rec["volume"]
            rows.append(Row(m=int(rec["m"]),
                            total_length_paper=float(rec["total_length_paper"]),
                            dt_code=rec["dt_code"],
                            volume=float(vol) if vol else None,
                            status=rec["status"]))
    return rows
