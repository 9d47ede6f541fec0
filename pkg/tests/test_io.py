import json
import re

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from otocising import DomainError, OutputError, QuenchSpec, ScanCurve, TimeSeries, run_quench, scan_field
from otocising import io as rio


def one_sample_series():
    spec = QuenchSpec.tfic(4, 0.5, steps=1)
    return TimeSeries(spec, np.array([0.0]), np.array([1 + 0j]), np.array([1 + 0j]))


def test_series_csv_single_row(tmp_path):
    path = tmp_path / "s.csv"
    rio.write_series(one_sample_series(), path)
    assert path.read_bytes() == b"t,F_re,F_im,chi_re,chi_im\n0,1,0,1,0\n"


def test_scan_csv_single_point(tmp_path):
    curve = ScanCurve(np.array([0.0]), np.array([1.0]), QuenchSpec.tfic(4, 0.0))
    path = tmp_path / "scan.csv"
    rio.write_scan(curve, path)
    assert path.read_bytes() == b"g,F_bar\n0,1\n"


def test_number_format():
    assert rio.format_number(0.1 + 0.2) == "0.3"
    assert rio.format_number(-0.0) == "0"
    assert rio.format_number(1 / 3) == "0.333333333333"
    assert rio.format_number(-2.5e-17) == "-2.5e-17"
    assert rio.format_number(1e20) == "1e+20"


def test_quench_csv_rows(tmp_path):
    series = run_quench(QuenchSpec.tfic(4, 0.5))
    path = tmp_path / "q.csv"
    rio.write_series(series, path)
    lines = path.read_text().splitlines()
    assert lines[0] == "t,F_re,F_im,chi_re,chi_im"
    assert len(lines) == 13
    assert lines[1].split(",")[1] == "1"
    assert "\r" not in path.read_text()


@settings(max_examples=30, deadline=None)
@given(st.lists(st.tuples(st.floats(-1, 1), st.floats(-1, 1), st.floats(-1, 1), st.floats(-1, 1)), min_size=1, max_size=8))
def test_series_round_trip(tmp_path_factory, rows):
    rows = np.array(rows)
    t = np.arange(len(rows)) * 0.5
    series = TimeSeries(QuenchSpec.tfic(4, 1.0, steps=len(rows)), t, rows[:, 0] + 1j * rows[:, 1], rows[:, 2] + 1j * rows[:, 3])
    d = tmp_path_factory.mktemp("rt")
    for fmt in ("csv", "json"):
        path = d / f"s.{fmt}"
        rio.write_series(series, path, fmt)
        back = rio.read_series(path)
        np.testing.assert_allclose(back.t, t, atol=1e-10, rtol=0)
        np.testing.assert_allclose(back.f, series.f, atol=1e-10, rtol=0)
        np.testing.assert_allclose(back.chi, series.chi, atol=1e-10, rtol=0)


def test_scan_json_round_trip(tmp_path):
    curve = scan_field(QuenchSpec.tfic(4, 0.0), [0.2, 0.9, 1.6])
    path = tmp_path / "scan.json"
    rio.write_scan(curve, path, "json")
    doc = json.loads(path.read_text())
    assert [p["g"] for p in doc["points"]] == [0.2, 0.9, 1.6]
    assert doc["spec"]["average_mode"] == "pointmean"
    back = rio.read_scan(path)
    np.testing.assert_array_equal(back.g, curve.g_values)
    np.testing.assert_allclose(back.f_bar, curve.f_bar_values, atol=1e-10)


def test_tfic_scan_csv_has_19_rows(tmp_path):
    grid = np.round(np.arange(1, 20) * 0.1, 10)
    curve = scan_field(QuenchSpec.tfic(4, 0.0), grid)
    path = tmp_path / "scan.csv"
    rio.write_scan(curve, path)
    lines = path.read_text().splitlines()
    assert lines[0] == "g,F_bar" and len(lines) == 20
    assert lines[1].startswith("0.1,") and lines[-1].startswith("1.9,")


def test_series_json_layout(tmp_path):
    series = run_quench(QuenchSpec.annni(4, 2.0, steps=3))
    path = tmp_path / "s.json"
    rio.write_series(series, path, "json")
    doc = json.loads(path.read_text())
    assert doc["spec"]["delta"] == 0.5 and doc["spec"]["steps"] == 3
    assert list(doc["samples"][0]) == list(rio.SERIES_HEADER)


def test_unknown_format(tmp_path):
    with pytest.raises(DomainError):
        rio.write_series(one_sample_series(), tmp_path / "x", "xml")


def test_write_failure_names_path(tmp_path):
    target = tmp_path / "missing" / "s.csv"
    with pytest.raises(OutputError, match="missing"):
        rio.write_series(one_sample_series(), target)


def test_svg_two_points_one_polyline():
    svg = rio.render_svg(([0.0, 1.0], {"F_R": [1.0, 0.5]}))
    polylines = re.findall(r'<polyline[^>]*points="([^"]*)"', svg)
    assert len(polylines) == 1
    assert len(polylines[0].split()) == 2
    assert svg.startswith("<?xml") and svg.rstrip().endswith("</svg>")


def test_svg_scan_ticks_span_grid():
    grid = np.round(np.arange(1, 20) * 0.1, 10)
    curve = ScanCurve(grid, np.linspace(1, 0, 19), QuenchSpec.tfic(4, 0.0))
    svg = rio.render_svg(curve)
    assert svg.count("<polyline") == 1
    assert "F̄_R" in svg
    labels = re.findall(r'text-anchor="middle">([-0-9.e]+)</text>', svg)
    assert labels[:5] == ["0.1", "0.55", "1", "1.45", "1.9"]


def test_svg_series_has_both_channels():
    svg = rio.render_svg(run_quench(QuenchSpec.tfic(4, 1.5, steps=4)))
    assert svg.count("<polyline") == 2
    assert "F_R" in svg and "χ_R" in svg


def test_svg_deterministic(tmp_path):
    series = run_quench(QuenchSpec.tfic(4, 1.5))
    a, b = tmp_path / "a.svg", tmp_path / "b.svg"
    rio.render_svg(series, a)
    rio.render_svg(series, b)
    assert a.read_bytes() == b.read_bytes()


def test_svg_rejects_empty():
    with pytest.raises(DomainError):
        rio.render_svg(([], {"F_R": []}))
