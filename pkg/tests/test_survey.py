"""Survey pipeline: CSV schema, roundtrip, fit, and family scans."""

import csv
import io
import math

import pytest

from modlink import solver
from modlink.survey import (
    COLUMNS,
    FitResult,
    SurveyRow,
    accepted,
    class_words,
    csv_text,
    family,
    fit,
    parse_csv,
    row_for_m,
    squarefree_range,
    survey,
)

EXPECTED_COLUMNS = (
    "m", "D", "h", "h_plus", "unit_norm", "regulator",
    "total_length_paper", "total_length_geom", "n_components",
    "total_symbols", "n_crossings", "dt_code", "volume", "status",
    "iterations", "residual",
)


def test_column_order_pinned():
    assert COLUMNS == EXPECTED_COLUMNS


def test_squarefree_range():
    def sieve(n):
        ok = [True] * (n + 1)
        for d in range(2, int(n ** 0.5) + 1):
            for k in range(d * d, n + 1, d * d):
                ok[k] = False
        return [m for m in range(2, n + 1) if ok[m]]

    assert squarefree_range(200) == sieve(200)


def test_row_for_m_pinned():
    row = row_for_m(5)
    assert row.D == 5
    assert row.h == row.h_plus == 1
    assert row.unit_norm == -1
    assert row.n_components == 2
    assert row.status == solver.CONVERGED
    assert row.volume == pytest.approx(3.663862376709, abs=1e-6)
    assert row.total_length_paper == pytest.approx(
        2 * math.log((1 + math.sqrt(5)) / 2), abs=1e-9)


def test_csv_roundtrip_exact():
    rows = [row_for_m(m) for m in (2, 3, 5)]
    text = csv_text(rows)
    assert parse_csv(io.StringIO(text)) == rows


def test_csv_12_significant_digits():
    text = csv_text([row_for_m(5)])
    header, line = list(csv.reader(io.StringIO(text)))
    assert tuple(header) == EXPECTED_COLUMNS
    assert line[COLUMNS.index("volume")] == "3.66386237671"


def test_parse_csv_rejects_bad_header():
    with pytest.raises(ValueError):
        parse_csv(io.StringIO("m,D\n1,5\n"))


def test_fit_collinear_exact():
    rows = [
        SurveyRow(m=i, D=5, h=1, h_plus=1, unit_norm=-1, regulator=1.0,
                  total_length_paper=float(i), total_length_geom=float(i),
                  n_components=2, total_symbols=2, n_crossings=8,
                  dt_code="", volume=3.0 * i + 0.25, status=solver.CONVERGED,
                  iterations=1, residual=0.0)
        for i in range(1, 6)
    ]
    f = fit(rows)
    assert f.slope == pytest.approx(3.0, abs=1e-12)
    assert f.intercept == pytest.approx(0.25, abs=1e-12)
    assert f.r_squared == pytest.approx(1.0, abs=1e-12)
    assert f.n_points == 5


def test_fit_excludes_unaccepted():
    base = dict(D=5, h=1, h_plus=1, unit_norm=-1, regulator=1.0,
                total_length_geom=0.0, n_components=2, total_symbols=2,
                n_crossings=8, dt_code="", iterations=1, residual=0.0)
    rows = [SurveyRow(m=i, total_length_paper=float(i), volume=2.0 * i,
                      status=solver.CONVERGED, **base) for i in range(1, 5)]
    rows.append(SurveyRow(m=9, total_length_paper=9.0, volume=None,
                          status=solver.FAILED, **base))
    assert len(accepted(rows)) == 4
    assert fit(rows).n_points == 4


def test_fit_needs_two_points():
    with pytest.raises(ValueError):
        fit([])


def test_survey_small_deterministic(tmp_path):
    p1, p2 = tmp_path / "a.csv", tmp_path / "b.csv"
    survey(7, out_path=str(p1), threads=1)
    survey(7, out_path=str(p2), threads=2)
    assert p1.read_bytes() == p2.read_bytes()
    rows = parse_csv(io.StringIO(p1.read_text()))
    assert [r.m for r in rows] == [2, 3, 5, 6, 7]


def test_volume_bound():
    for m in (2, 3, 5, 6, 7, 10):
        row = row_for_m(m)
        if row.volume is not None:
            assert 0.0 <= row.volume <= 4 * row.n_crossings * 1.0149416064


def test_class_words_pinned():
    assert class_words(5) == ["xy"]
    assert class_words(13) == ["xxxyyy"]


def test_family_patterns():
    rows = family("xn_ym", 3)
    assert [r.word for r in rows] == ["xy", "xxy", "xxxy"]
    assert [r.crossing_proxy for r in rows] == [2, 3, 4]
    rows = family("x_xy_n", 2)
    assert [r.word for r in rows] == ["xxy", "xxyxy"]
    with pytest.raises(ValueError):
        family("bogus", 2)
