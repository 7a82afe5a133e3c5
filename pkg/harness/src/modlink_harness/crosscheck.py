"""Cross-validate survey volumes against the SnapPy kernel.

Each DT string from the survey CSV is handed to SnapPy as a black box;
the report lists per-row oracle volumes, absolute differences, and an
agreement flag, with summary statistics and the kernel version in the
header.
"""

from __future__ import annotations

from dataclasses import dataclass

from .csvio import ACCEPTED, read_rows

DEFAULT_TOL = 1e-6


class OracleUnavailable(RuntimeError):
    pass


@dataclass(frozen=True)
class ComparisonRow:
    m: int
    dt_code: str
    volume_primary: float | None
    volume_oracle: float | None
    abs_diff: float | None
    agree: bool | None  # None when only one side converged


def _load_snappy():
    try:
        import snappy
    except ImportError as exc:
        raise OracleUnavailable(f"SnapPy is not importable: {exc}") from exc
    return snappy


def _oracle_volume(snappy, dt_code: str) -> float | None:
    if not dt_code:
        return None
    try:
        mfd = snappy.Manifold(dt_code)
        return float(mfd.volume())
    except Exception:
        return None


def compare(rows, snappy, tol: float = DEFAULT_TOL) -> list[ComparisonRow]:
    out = []
    for r in rows:
        primary = r.volume if r.status in ACCEPTED else None
        oracle = _oracle_volume(snappy, r.dt_code)
        if primary is not None and oracle is not None:
            diff = abs(primary - oracle)
            out.append(ComparisonRow(r.m, r.dt_code, primary, oracle,
                                     diff, diff <= tol))
        else:
            out.append(ComparisonRow(r.m, r.dt_code, primary, oracle,
                                     None, None))
    return out


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return f"{v:.12g}"
    return str(v)


def write_report(comparisons, fh, version: str, tol: float) -> None:
    both = [c for c in comparisons if c.agree is not None]
    agreed = [c for c in both if c.agree]
    rate = len(agreed) / len(both) if both else float("nan")
    max_diff = max((c.abs_diff for c in both), default=float("nan"))
    fh.write(f"# oracle: SnapPy {version}\n")
    fh.write(f"# tolerance: {tol:g}\n")
    fh.write(f"# compared: {len(both)}/{len(comparisons)} rows, "
             f"agreement rate {rate:.4f}, max |diff| {max_diff:.3g}\n")
    disagreements = [c for c in both if not c.agree]
    if disagreements:
        fh.write("# disagreements: "
                 + ", ".join(f"m={c.m} |diff|={c.abs_diff:.3g}"
                             for c in disagreements) + "\n")
    fh.write("m,dt_code,volume_primary,volume_oracle,abs_diff,agree\n")
    for c in comparisons:
        agree = "" if c.agree is None else str(c.agree).lower()
        fh.write(",".join([str(c.m), f'"{c.dt_code}"',
                           _fmt(c.volume_primary), _fmt(c.volume_oracle),
                           _fmt(c.abs_diff), agree]) + "\n")


def crosscheck(csv_in: str, report_out: str,
               tol: float = DEFAULT_TOL) -> list[ComparisonRow]:
    rows = read_rows(csv_in)
    snappy = _load_snappy()
    comparisons = compare(rows, snappy, tol)
    with open(report_out, "w") as fh:
        write_report(comparisons, fh, getattr(snappy, "__version__", "?"),
                     tol)
    return comparisons
