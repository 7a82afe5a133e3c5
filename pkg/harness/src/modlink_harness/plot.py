"""Scatter of volume against total geodesic length with the OLS line."""

from __future__ import annotations

import math

from .csvio import ACCEPTED, read_rows


def ols(points: list[tuple[float, float]]) -> tuple[float, float, float]:
    """Least-squares (slope, intercept, r_squared)."""
    n = len(points)
    if n < 2:
        raise ValueError("need at least 2 accepted rows to fit")
    xs = [p[0] for p in points]
    ys = [p[1] for p in points]
    mx = math.fsum(xs) / n
    my = math.fsum(ys) / n
    sxx = math.fsum((x - mx) ** 2 for x in xs)
    sxy = math.fsum((x - mx) * (y - my) for x, y in points)
    slope = sxy / sxx
    intercept = my - slope * mx
    ss_res = math.fsum((y - slope * x - intercept) ** 2 for x, y in points)
    ss_tot = math.fsum((y - my) ** 2 for y in ys)
    r2 = 1.0 if ss_tot == 0.0 else 1.0 - ss_res / ss_tot
    return slope, intercept, r2


def plot(csv_in: str, png_out: str) -> tuple[float, float, float]:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    rows = read_rows(csv_in)
    points = [(r.total_length_paper, r.volume) for r in rows
              if r.status in ACCEPTED and r.volume is not None]
    slope, intercept, r2 = ols(points)

    fig, ax = plt.subplots(figsize=(7, 5))
    xs = [p[0] for p in points]
    ys = [p[1] for p in points]
    ax.scatter(xs, ys, s=18, color="tab:blue", zorder=3, label="survey")
    x0, x1 = min(xs), max(xs)
    pad = 0.05 * (x1 - x0 or 1.0)
    line_x = (x0 - pad, x1 + pad)
    ax.plot(line_x, [slope * x + intercept for x in line_x],
            color="tab:red", zorder=2,
            label=f"fit: {slope:.2f}·x + {intercept:.2f} (R²={r2:.3f})")
    ax.set_xlabel("total geodesic length 2hR")
    ax.set_ylabel("volume")
    ax.set_title("Link complement volume vs total geodesic length")
    ax.legend()
    fig.tight_layout()
    fig.savefig(png_out, dpi=150)
    plt.close(fig)
    return slope, intercept, r2
