"""CSV, JSON and SVG output for time series and field scans.

Numbers are written with at most 12 significant digits (``%.12g``), ``.`` as
the decimal separator and LF line endings, so the files are byte-stable and
diff-able across runs.
"""

from __future__ import annotations

import csv
import io
import json
import os
from collections.abc import Mapping
from pathlib import Path
from typing import NamedTuple
from xml.sax.saxutils import escape

import numpy as np

from .errors import DomainError, OutputError
from .experiments import ScanCurve, SizeSweepResult, TimeSeries

__all__ = [
    "SERIES_HEADER",
    "SCAN_HEADER",
    "SIZES_HEADER",
    "SeriesTable",
    "ScanTable",
    "format_number",
    "read_scan",
    "read_series",
    "render_svg",
    "write_scan",
    "write_series",
    "write_sizes",
]

SERIES_HEADER = ("t", "F_re", "F_im", "chi_re", "chi_im")
SCAN_HEADER = ("g", "F_bar")
SIZES_HEADER = ("N", "fluctuation")

_FORMATS = ("csv", "json")


class SeriesTable(NamedTuple):
    t: np.ndarray
    f: np.ndarray
    chi: np.ndarray


class ScanTable(NamedTuple):
    g: np.ndarray
    f_bar: np.ndarray


def format_number(x: float) -> str:
    """``%.12g`` with negative zero folded to ``0``.

    >>> format_number(1.0), format_number(-0.0), format_number(0.1 + 0.2)
    ('1', '0', '0.3')
    """
    text = "%.12g" % float(x)
    return "0" if text == "-0" else text


def _rounded(x: float) -> float:
    return float(format_number(x))


def _write_text(path: str | os.PathLike, text: str) -> None:
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise OutputError(f"cannot write {os.fspath(path)}: {exc.strerror or exc}") from exc


def _read_text(path: str | os.PathLike) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise OutputError(f"cannot read {os.fspath(path)}: {exc.strerror or exc}") from exc


def _check_format(fmt: str) -> str:
    fmt = fmt.lower()
    if fmt not in _FORMATS:
        raise DomainError(f"unknown output format {fmt!r}; expected csv or json")
    return fmt


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([format_number(v) for v in row])
    return buf.getvalue()


def _json_text(payload) -> str:
    return json.dumps(payload, indent=2, ensure_ascii=False) + "\n"


def series_to_text(series: TimeSeries, fmt: str = "csv") -> str:
    fmt = _check_format(fmt)
    rows = zip(series.t, series.f.real, series.f.imag, series.chi.real, series.chi.imag)
    if fmt == "csv":
        return _csv_text(SERIES_HEADER, rows)
    meta = series.spec.to_dict()
    if series.ancilla_discrepancy is not None:
        meta["ancilla_discrepancy"] = _rounded(series.ancilla_discrepancy)
    samples = [dict(zip(SERIES_HEADER, map(_rounded, row))) for row in rows]
    return _json_text({"spec": meta, "samples": samples})


def write_series(series: TimeSeries, path: str | os.PathLike, fmt: str = "csv") -> None:
    """Write ``t,F_re,F_im,chi_re,chi_im`` rows (CSV) or spec + samples (JSON)."""
    _write_text(path, series_to_text(series, fmt))


def _scan_meta(curve: ScanCurve) -> dict:
    meta = curve.base.to_dict()
    meta.pop("field")
    meta["average_mode"] = curve.mode.value
    meta["window"] = list(curve.window) if curve.window is not None else None
    return meta


def scan_to_text(curve: ScanCurve, fmt: str = "csv") -> str:
    fmt = _check_format(fmt)
    rows = zip(curve.g_values, curve.f_bar_values)
    if fmt == "csv":
        return _csv_text(SCAN_HEADER, rows)
    points = [dict(zip(SCAN_HEADER, map(_rounded, row))) for row in rows]
    return _json_text({"spec": _scan_meta(curve), "points": points})


def write_scan(curve: ScanCurve, path: str | os.PathLike, fmt: str = "csv") -> None:
    _write_text(path, scan_to_text(curve, fmt))


def sizes_to_text(result: SizeSweepResult, fmt: str = "csv") -> str:
    fmt = _check_format(fmt)
    rows = list(zip(result.n_values, result.fluctuation))
    if fmt == "csv":
        return _csv_text(SIZES_HEADER, rows)
    payload = {
        "window": list(result.window),
        "sizes": [
            {
                "N": n,
                "fluctuation": _rounded(fl),
                "spec": s.spec.to_dict(),
                "samples": [
                    dict(zip(SERIES_HEADER, map(_rounded, row)))
                    for row in zip(s.t, s.f.real, s.f.imag, s.chi.real, s.chi.imag)
                ],
            }
            for (n, fl), s in zip(rows, result.series)
        ],
    }
    return _json_text(payload)


def write_sizes(result: SizeSweepResult, path: str | os.PathLike, fmt: str = "csv") -> None:
    _write_text(path, sizes_to_text(result, fmt))


def _detect_format(path, fmt):
    if fmt is not None:
        return _check_format(fmt)
    return "json" if str(path).lower().endswith(".json") else "csv"


def _read_csv(text: str, header: tuple[str, ...]) -> np.ndarray:
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or tuple(rows[0]) != header:
        raise DomainError(f"expected CSV header {','.join(header)}")
    return np.array([[float(v) for v in row] for row in rows[1:]], dtype=float).reshape(-1, len(header))


def read_series(path: str | os.PathLike, fmt: str | None = None) -> SeriesTable:
    text = _read_text(path)
    if _detect_format(path, fmt) == "json":
        samples = json.loads(text)["samples"]
        data = np.array([[s[k] for k in SERIES_HEADER] for s in samples], dtype=float).reshape(-1, 5)
    else:
        data = _read_csv(text, SERIES_HEADER)
    return SeriesTable(data[:, 0], data[:, 1] + 1j * data[:, 2], data[:, 3] + 1j * data[:, 4])


def read_scan(path: str | os.PathLike, fmt: str | None = None) -> ScanTable:
    text = _read_text(path)
    if _detect_format(path, fmt) == "json":
        points = json.loads(text)["points"]
        data = np.array([[p[k] for k in SCAN_HEADER] for p in points], dtype=float).reshape(-1, 2)
    else:
        data = _read_csv(text, SCAN_HEADER)
    return ScanTable(data[:, 0], data[:, 1])


# --- SVG ---------------------------------------------------------------------

_WIDTH, _HEIGHT = 640, 400
_MARGIN = {"left": 70, "right": 130, "top": 30, "bottom": 55}
_COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e")
_N_TICKS = 5


def _channels(data) -> tuple[np.ndarray, dict[str, np.ndarray], str]:
    if isinstance(data, TimeSeries | SeriesTable):
        return np.asarray(data.t), {"F_R": np.real(data.f), "χ_R": np.real(data.chi)}, "t"
    if isinstance(data, ScanCurve):
        return data.g_values, {"F̄_R": data.f_bar_values}, "g"
    if isinstance(data, ScanTable):
        return data.g, {"F̄_R": data.f_bar}, "g"
    x, channels = data
    return np.asarray(x, dtype=float), {k: np.real(np.asarray(v)) for k, v in channels.items()}, "x"


def _span(lo: float, hi: float) -> tuple[float, float]:
    if hi - lo < 1e-12:
        return lo - 0.5, hi + 0.5
    return lo, hi


def render_svg(
    data,
    path: str | os.PathLike | None = None,
    x_label: str | None = None,
    y_label: str | None = None,
    title: str | None = None,
) -> str:
    """Render line plots as a standalone SVG document.

    ``data`` is a :class:`TimeSeries` (F_R and chi_R), a :class:`ScanCurve`
    (F_bar_R), one of the tables returned by the readers, or a pair
    ``(x, {label: y})``. Returns the SVG text and writes it to ``path`` if given.
    """
    x, channels, default_x = _channels(data)
    if x.size == 0 or not channels or any(np.asarray(y).size != x.size for y in channels.values()):
        raise DomainError("nothing to plot: data must be non-empty with matching lengths")
    x_label = x_label or default_x
    y_label = y_label or ", ".join(channels)

    x0, x1 = _span(float(x.min()), float(x.max()))
    ys = np.concatenate([np.asarray(y, dtype=float) for y in channels.values()])
    y0, y1 = _span(float(ys.min()), float(ys.max()))
    left, top = _MARGIN["left"], _MARGIN["top"]
    pw = _WIDTH - _MARGIN["left"] - _MARGIN["right"]
    ph = _HEIGHT - _MARGIN["top"] - _MARGIN["bottom"]

    def px(v):
        return left + (v - x0) / (x1 - x0) * pw

    def py(v):
        return top + ph - (v - y0) / (y1 - y0) * ph

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_WIDTH}" height="{_HEIGHT}" '
        f'viewBox="0 0 {_WIDTH} {_HEIGHT}" font-family="sans-serif" font-size="12">',
        f'<rect x="0" y="0" width="{_WIDTH}" height="{_HEIGHT}" fill="white"/>',
        f'<rect x="{left}" y="{top}" width="{pw}" height="{ph}" fill="none" stroke="black"/>',
    ]
    if title:
        out.append(f'<text x="{left + pw / 2:.2f}" y="{top - 10}" text-anchor="middle">{escape(title)}</text>')
    for v in np.linspace(x0, x1, _N_TICKS):
        xv = px(v)
        out.append(f'<line x1="{xv:.2f}" y1="{top + ph}" x2="{xv:.2f}" y2="{top + ph + 5}" stroke="black"/>')
        out.append(f'<text x="{xv:.2f}" y="{top + ph + 18}" text-anchor="middle">{"%.3g" % v}</text>')
    for v in np.linspace(y0, y1, _N_TICKS):
        yv = py(v)
        out.append(f'<line x1="{left - 5}" y1="{yv:.2f}" x2="{left}" y2="{yv:.2f}" stroke="black"/>')
        out.append(f'<text x="{left - 8}" y="{yv + 4:.2f}" text-anchor="end">{"%.3g" % v}</text>')
    if y0 < 0 < y1:
        out.append(
            f'<line x1="{left}" y1="{py(0):.2f}" x2="{left + pw}" y2="{py(0):.2f}" '
            'stroke="#999999" stroke-dasharray="4 3"/>'
        )
    out.append(f'<text x="{left + pw / 2:.2f}" y="{_HEIGHT - 15}" text-anchor="middle">{escape(x_label)}</text>')
    out.append(
        f'<text x="18" y="{top + ph / 2:.2f}" text-anchor="middle" '
        f'transform="rotate(-90 18 {top + ph / 2:.2f})">{escape(y_label)}</text>'
    )
    for i, (label, y) in enumerate(channels.items()):
        color = _COLORS[i % len(_COLORS)]
        points = " ".join(f"{px(a):.2f},{py(b):.2f}" for a, b in zip(x, np.asarray(y, dtype=float)))
        out.append(f'<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{points}"/>')
        ly = top + 15 + 20 * i
        lx = left + pw + 15
        out.append(f'<line x1="{lx}" y1="{ly}" x2="{lx + 20}" y2="{ly}" stroke="{color}" stroke-width="2"/>')
        out.append(f'<text x="{lx + 26}" y="{ly + 4}">{escape(label)}</text>')
    out.append("</svg>")
    text = "\n".join(out) + "\n"
    if path is not None:
        _write_text(path, text)
    return text
