"""Survey driver: sweep squarefree m, emit CSV rows, fit volume vs length.

Each squarefree m >= 2 yields one row: the real quadratic field data, the
canonical geodesic words of the narrow classes, the trefoil-augmented link
diagram, its DT code, and the solved hyperbolic volume.  Rows are computed
in parallel per m and always written in increasing m order, so output is
deterministic.  Floating-point fields are quantized to 12 significant
digits on construction, making the CSV roundtrip exact.
"""

from __future__ import annotations

import concurrent.futures
import csv
import io
import math
import os
from dataclasses import dataclass, replace

from .arith import field_summary, is_squarefree, norm_plus_unit
from .template import (build_diagram, dt_code, family_word_x_xy_n,
                       family_word_xn_ym, ordered_shifts)
from .volume import diagram_volume
from .words import NotHyperbolicWord, class_word
from . import solver

COLUMNS = ("m", "D", "h", "h_plus", "unit_norm", "regulator",
           "total_length_paper", "total_length_geom", "n_components",
           "total_symbols", "n_crossings", "dt_code", "volume", "status",
           "iterations", "residual")

_INT_COLS = {"m", "D", "h", "h_plus", "unit_norm", "n_components",
             "total_symbols", "n_crossings", "iterations"}
_FLOAT_COLS = {"regulator", "total_length_paper", "total_length_geom",
               "volume", "residual"}


@dataclass(frozen=True)
class SurveyRow:
    m: int
    D: int
    h: int
    h_plus: int
    unit_norm: int
    regulator: float
    total_length_paper: float
    total_length_geom: float
    n_components: int
    total_symbols: int
    n_crossings: int
    dt_code: str
    volume: float | None
    status: str
    iterations: int
    residual: float


@dataclass(frozen=True)
class FitResult:
    slope: float
    intercept: float
    r_squared: float
    n_points: int


def _quant(v: float | None) -> float | None:
    """Quantize to the 12 significant digits the CSV carries."""
    return None if v is None else float(f"{v:.12g}")


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return f"{v:.12g}"
    return str(v)


def class_words(m: int) -> list[str]:
    """Canonical geodesic word of every narrow class of Q(sqrt(m))."""
    fs = field_summary(m)
    unit_plus = norm_plus_unit(fs.disc.D)
    return [class_word(q, unit_plus) for q in fs.reps]


def modular_link_diagram(m: int):
    """Trefoil-augmented diagram of the modular link of Q(sqrt(m))."""
    return build_diagram(ordered_shifts(class_words(m)))


def row_for_m(m: int, overrides: dict | None = None) -> SurveyRow:
    fs = field_summary(m)
    base = dict(
        m=m, D=fs.disc.D, h=fs.h, h_plus=fs.h_plus, unit_norm=fs.unit.norm,
        regulator=_quant(fs.unit.regulator),
        total_length_paper=_quant(fs.total_length_paper),
        total_length_geom=_quant(fs.total_length_geom),
        n_components=fs.h_plus + 1)
    try:
        words = class_words(m)
    except NotHyperbolicWord:
        return SurveyRow(**base, total_symbols=0, n_crossings=0, dt_code="",
                         volume=None, status=solver.NOT_HYPERBOLIC,
                         iterations=0, residual=_quant(0.0))
    diagram = build_diagram(ordered_shifts(words))
    res = diagram_volume(diagram, **(overrides or {}))
    return SurveyRow(**base,
                     total_symbols=sum(len(w) for w in words),
                     n_crossings=diagram.n_crossings,
                     dt_code=str(dt_code(diagram)),
                     volume=_quant(res.volume), status=res.status,
                     iterations=res.iterations,
                     residual=_quant(res.residual))


def squarefree_range(max_m: int) -> list[int]:
    return [m for m in range(2, max_m + 1) if is_squarefree(m)]


def default_threads() -> int:
    env = os.environ.get("MODLINK_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def survey(max_m: int, out_path: str | None = None,
           overrides: dict | None = None,
           threads: int | None = None) -> list[SurveyRow]:
    if max_m < 2:
        raise ValueError("max_m >= 2 required")
    ms = squarefree_range(max_m)
    threads = threads or default_threads()
    if threads <= 1 or len(ms) <= 1:
        rows = [row_for_m(m, overrides) for m in ms]
    else:
        with concurrent.futures.ProcessPoolExecutor(threads) as pool:
            rows = list(pool.map(row_for_m, ms, [overrides] * len(ms),
                                 chunksize=1))
    rows.sort(key=lambda r: r.m)
    if out_path is not None:
        with open(out_path, "w", newline="") as fh:
            write_csv(rows, fh)
    return rows


def write_csv(rows: list[SurveyRow], fh) -> None:
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(COLUMNS)
    for r in rows:
        w.writerow([_fmt(getattr(r, c)) for c in COLUMNS])


def csv_text(rows: list[SurveyRow]) -> str:
    buf = io.StringIO()
    write_csv(rows, buf)
    return buf.getvalue()


def parse_csv(fh) -> list[SurveyRow]:
    reader = csv.reader(fh)
    header = next(reader)
    if tuple(header) != COLUMNS:
        raise ValueError(f"unexpected CSV header {header!r}")
    rows = []
    for rec in reader:
        kw = {}
        for col, cell in zip(COLUMNS, rec):
            if col in _INT_COLS:
                kw[col] = int(cell)
            elif col in _FLOAT_COLS:
                kw[col] = float(cell) if cell else None
            else:
                kw[col] = cell
        rows.append(SurveyRow(**kw))
    return rows


_ACCEPTED = (solver.CONVERGED, solver.CONVERGED_NON_GEOMETRIC)


def accepted(rows) -> list[SurveyRow]:
    return [r for r in rows if r.status in _ACCEPTED and r.volume is not None]


def fit(rows: list[SurveyRow]) -> FitResult:
    """Ordinary least squares of volume against total_length_paper."""
    pts = [(r.total_length_paper, r.volume) for r in accepted(rows)]
    n = len(pts)
    if n < 2:
        raise ValueError(f"need >= 2 accepted rows to fit, have {n}")
    mx = math.fsum(x for x, _ in pts) / n
    my = math.fsum(y for _, y in pts) / n
    sxx = math.fsum((x - mx) ** 2 for x, _ in pts)
    sxy = math.fsum((x - mx) * (y - my) for x, y in pts)
    syy = math.fsum((y - my) ** 2 for _, y in pts)
    if sxx == 0:
        raise ValueError("degenerate fit: all lengths equal")
    slope = sxy / sxx
    intercept = my - slope * mx
    ss_res = math.fsum((y - (slope * x + intercept)) ** 2 for x, y in pts)
    r_squared = 1.0 if syy == 0 else 1.0 - ss_res / syy
    return FitResult(slope=slope, intercept=intercept, r_squared=r_squared,
                     n_points=n)


@dataclass(frozen=True)
class FamilyRow:
    word: str
    n: int
    m: int | None            # second exponent for the x^n y^m pattern
    crossing_proxy: int | None  # n + m, the template crossing count
    n_crossings: int
    volume: float | None
    status: str


def family(pattern: str, max_n: int, m: int = 1,
           overrides: dict | None = None) -> list[FamilyRow]:
    if pattern not in ("x_xy_n", "xn_ym"):
        raise ValueError(f"unknown family pattern {pattern!r}")
    rows = []
    for n in range(1, max_n + 1):
        if pattern == "x_xy_n":
            word, mm, proxy = family_word_x_xy_n(n), None, None
        else:
            word, mm, proxy = family_word_xn_ym(n, m), m, n + m
        diagram = build_diagram(ordered_shifts([word]))
        res = diagram_volume(diagram, **(overrides or {}))
        rows.append(FamilyRow(word=word, n=n, m=mm, crossing_proxy=proxy,
                              n_crossings=diagram.n_crossings,
                              volume=_quant(res.volume), status=res.status))
    return rows
