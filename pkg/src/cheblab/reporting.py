"""Report serialization: CSV (fixed schemas), JSON mirrors, SVG trend plots.

Schemas are frozen so downstream diffs are meaningful:

  * window-error runs: header ``q,a_star,N_star,y_star,observed,main_term,abs_error``,
    one row per admitted modulus, reals to 6 decimal places fixed-point, then a
    summary line ``#TOTAL,{E},{normalized_ratio},{grh_comparator}``;
  * dyadic scans: per point a ``#X,{x},{h},{Q}`` line followed by that point's
    rows and summary;
  * cluster scans: ``n,count`` rows; histograms as ``count,frequency``;
  * q-expansions: ``n,a`` rows; gap records: ``n,gap`` rows;
  * class counts: ``class,count`` rows.

JSON output mirrors dataclass field names verbatim.  All writes are atomic
(temp file in the target directory, then rename).
"""

from __future__ import annotations

import dataclasses
import json
import math
import os
import tempfile

from .bvlab import BVReport
from .chebpsi import PsiQuery  # noqa: F401  (re-export convenience for callers)
from .errors import ArgumentError
from .modforms import QExpansion
from .tuples import ClusterReport, HypothesisReport

__all__ = [
    "fmt_real",
    "atomic_write_text",
    "bv_csv",
    "scan_csv",
    "cluster_csv",
    "histogram_csv",
    "hypothesis_csv",
    "coeffs_csv",
    "gaps_csv",
    "counts_csv",
    "table_csv",
    "bv_json",
    "scan_json",
    "cluster_json",
    "hypothesis_json",
    "coeffs_json",
    "gaps_json",
    "counts_json",
    "scan_svg",
]


def fmt_real(v: float) -> str:
    return f"{v:.6f}"


def atomic_write_text(path: str, text: str) -> None:
    """Write via a sibling temp file + rename so readers never see a torn file."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".cheblab-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


# ------------------------------------------------------------------- CSV

BV_HEADER = "q,a_star,N_star,y_star,observed,main_term,abs_error"


def _bv_lines(report: BVReport) -> list[str]:
    lines = [BV_HEADER]
    for row in report.rows:
        lines.append(
            f"{row.q},{row.a_star},{row.N_star},{row.y_star},"
            f"{fmt_real(row.observed)},{fmt_real(row.main_term)},{fmt_real(row.abs_error)}"
        )
    lines.append(
        f"#TOTAL,{fmt_real(report.E)},{fmt_real(report.normalized_ratio)},"
        f"{fmt_real(report.grh_comparator)}"
    )
    return lines


def bv_csv(report: BVReport) -> str:
    return "\n".join(_bv_lines(report)) + "\n"


def scan_csv(reports) -> str:
    lines: list[str] = []
    for rep in reports:
        lines.append(f"#X,{rep.x},{rep.h},{rep.Q}")
        lines.extend(_bv_lines(rep))
    return "\n".join(lines) + "\n"


def cluster_csv(report: ClusterReport) -> str:
    lines = ["n,count"]
    lines.extend(f"{n},{c}" for n, c in report.matches)
    return "\n".join(lines) + "\n"


def histogram_csv(report: ClusterReport) -> str:
    lines = ["count,frequency"]
    lines.extend(f"{c},{f}" for c, f in enumerate(report.histogram))
    return "\n".join(lines) + "\n"


def hypothesis_csv(report: HypothesisReport) -> str:
    lines = [
        f"#WINDOW,{report.window_count},{fmt_real(report.window_discrepancy)},"
        f"{fmt_real(report.max_ratio)},{fmt_real(report.window_scale)}",
        "offset,prime_count,discrepancy,scale",
    ]
    for f in report.forms:
        lines.append(
            f"{f.offset},{f.prime_count},{fmt_real(f.discrepancy)},{fmt_real(f.scale)}"
        )
    return "\n".join(lines) + "\n"


def coeffs_csv(form: QExpansion) -> str:
    lines = ["n,a"]
    lines.extend(f"{n},{a}" for n, a in enumerate(form.coefficients))
    return "\n".join(lines) + "\n"


def gaps_csv(max_gap: int, records) -> str:
    lines = [f"#MAX,{max_gap}", "n,gap"]
    lines.extend(f"{n},{g}" for n, g in records)
    return "\n".join(lines) + "\n"


def counts_csv(counts: dict) -> str:
    lines = ["class,count"]
    lines.extend(f"{cid},{cnt}" for cid, cnt in counts.items())
    return "\n".join(lines) + "\n"


def table_csv(header: str, rows) -> str:
    lines = [header]
    lines.extend(",".join(str(v) for v in row) for row in rows)
    return "\n".join(lines) + "\n"


# ------------------------------------------------------------------ JSON


def _json_text(payload) -> str:
    return json.dumps(payload, indent=2) + "\n"


def _bv_payload(report: BVReport) -> dict:
    p = report.params
    return {
        "params": {
            "ctx": p.ctx.label,
            "class_id": p.class_id,
            "x": p.x,
            "delta": p.delta,
            "theta": p.theta,
            "D": p.D,
            "h": p.h,
            "Q": p.Q,
            "n_grid": p.n_grid,
            "y_grid": p.y_grid,
            "strict": p.strict,
        },
        "x": report.x,
        "h": report.h,
        "Q": report.Q,
        "moduli": list(report.moduli),
        "N_values": list(report.N_values),
        "y_values": list(report.y_values),
        "rows": [dataclasses.asdict(r) for r in report.rows],
        "E": report.E,
        "normalized_ratio": report.normalized_ratio,
        "grh_comparator": report.grh_comparator,
    }


def bv_json(report: BVReport) -> str:
    return _json_text(_bv_payload(report))


def scan_json(reports) -> str:
    return _json_text([_bv_payload(r) for r in reports])


def cluster_json(report: ClusterReport) -> str:
    return _json_text(dataclasses.asdict(report))


def hypothesis_json(report: HypothesisReport) -> str:
    payload = dataclasses.asdict(report)
    payload["moduli"] = list(report.moduli)
    return _json_text(payload)


def coeffs_json(form: QExpansion) -> str:
    return _json_text(
        {"label": form.label, "N": form.N, "coefficients": list(form.coefficients)}
    )


def gaps_json(max_gap: int, records) -> str:
    return _json_text({"max_gap": max_gap, "records": [list(r) for r in records]})


def counts_json(counts: dict) -> str:
    return _json_text({str(k): v for k, v in counts.items()})


# ------------------------------------------------------------------- SVG


def scan_svg(reports, width: int = 640, height: int = 400) -> str:
    """Polyline chart of normalized ratio against log2 x for a dyadic scan."""
    reports = list(reports)
    if not reports:
        raise ArgumentError("nothing to plot: empty scan")
    xs = [math.log2(r.x) for r in reports]
    ys = [r.normalized_ratio for r in reports]
    pad = 48
    x_lo, x_hi = min(xs), max(xs)
    y_lo, y_hi = min(ys), max(ys)
    if x_hi == x_lo:
        x_hi = x_lo + 1.0
    if y_hi == y_lo:
        y_hi = y_lo + 1.0

    def sx(v: float) -> float:
        return pad + (v - x_lo) / (x_hi - x_lo) * (width - 2 * pad)

    def sy(v: float) -> float:
        return height - pad - (v - y_lo) / (y_hi - y_lo) * (height - 2 * pad)

    points = " ".join(f"{sx(a):.1f},{sy(b):.1f}" for a, b in zip(xs, ys))
    tick_lines = []
    for a, b in zip(xs, ys):
        tick_lines.append(
            f'<circle cx="{sx(a):.1f}" cy="{sy(b):.1f}" r="3" fill="#1f77b4"/>'
        )
    labels = (
        f'<text x="{width / 2:.0f}" y="{height - 10}" text-anchor="middle" '
        f'font-size="12">log2 x</text>'
        f'<text x="14" y="{height / 2:.0f}" text-anchor="middle" font-size="12" '
        f'transform="rotate(-90 14 {height / 2:.0f})">normalized ratio</text>'
        f'<text x="{pad}" y="{height - pad + 16}" font-size="10">{x_lo:.1f}</text>'
        f'<text x="{width - pad:.0f}" y="{height - pad + 16}" text-anchor="end" '
        f'font-size="10">{x_hi:.1f}</text>'
        f'<text x="{pad - 4}" y="{sy(y_lo):.1f}" text-anchor="end" font-size="10">'
        f"{y_lo:.4f}</text>"
        f'<text x="{pad - 4}" y="{sy(y_hi):.1f}" text-anchor="end" font-size="10">'
        f"{y_hi:.4f}</text>"
    )
    return (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">\n'
        f'<rect width="{width}" height="{height}" fill="white"/>\n'
        f'<line x1="{pad}" y1="{height - pad}" x2="{width - pad}" y2="{height - pad}" '
        f'stroke="black"/>\n'
        f'<line x1="{pad}" y1="{pad}" x2="{pad}" y2="{height - pad}" stroke="black"/>\n'
        f'<polyline points="{points}" fill="none" stroke="#1f77b4" stroke-width="1.5"/>\n'
        f"{''.join(tick_lines)}\n{labels}\n</svg>\n"
    )
