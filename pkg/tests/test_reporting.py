import json
import os

import pytest

from cheblab.bvlab import BVParams, bv_error_sum, dyadic_scan
from cheblab.galois import make_context
from cheblab.modforms import TernaryForm, gap_stats, theta_ternary
from cheblab.reporting import (
    BV_HEADER,
    atomic_write_text,
    bv_csv,
    bv_json,
    cluster_csv,
    cluster_json,
    coeffs_csv,
    coeffs_json,
    counts_csv,
    fmt_real,
    gaps_csv,
    gaps_json,
    histogram_csv,
    hypothesis_csv,
    hypothesis_json,
    scan_csv,
    scan_json,
    scan_svg,
    table_csv,
)
from cheblab.tuples import (
    AdmissibleTuple,
    HypothesisConfig,
    scan_clusters,
    verify_hypothesis,
)


@pytest.fixture(scope="module")
def small_bv_report():
    ctx = make_context("trivial")
    params = BVParams(
        ctx, "identity", 2000, 0.0, 0.0, h=200, Q=3, n_grid=2, y_grid=2,
        strict=False,
    )
    return bv_error_sum(params)


@pytest.fixture(scope="module")
def small_scan():
    ctx = make_context("trivial")
    params = BVParams(ctx, "identity", 400, 0.2, 0.0, n_grid=2, y_grid=2)
    return dyadic_scan(params, 400, 900)


@pytest.fixture(scope="module")
def twin_report(twin_tuple):
    ctx = make_context("trivial")
    return scan_clusters(ctx, "identity", twin_tuple, 0, 100, threshold=2)


def test_fmt_real_is_fixed_six_places():
    assert fmt_real(0.1931586) == "0.193159"
    assert fmt_real(-2.0) == "-2.000000"
    assert fmt_real(41915.184878123) == "41915.184878"


def test_atomic_write(tmp_path):
    target = tmp_path / "out.csv"
    atomic_write_text(str(target), "hello\n")
    assert target.read_text() == "hello\n"
    atomic_write_text(str(target), "replaced\n")
    assert target.read_text() == "replaced\n"
    assert os.listdir(tmp_path) == ["out.csv"]  # no temp litter
    with pytest.raises(OSError):
        atomic_write_text(str(tmp_path / "nodir" / "x.csv"), "y")
    assert os.listdir(tmp_path) == ["out.csv"]


def test_bv_csv_shape(small_bv_report):
    lines = bv_csv(small_bv_report).splitlines()
    assert lines[0] == BV_HEADER
    assert len(lines) == 2 + len(small_bv_report.rows)
    first = lines[1].split(",")
    assert first[0] == "1" and len(first) == 7
    assert all("." in cell for cell in first[4:])  # reals carry 6 places
    total = lines[-1].split(",")
    assert total[0] == "#TOTAL"
    assert total[1] == fmt_real(small_bv_report.E)
    assert total[2] == fmt_real(small_bv_report.normalized_ratio)
    assert total[3] == fmt_real(small_bv_report.grh_comparator)


def test_bv_json_mirrors_fields(small_bv_report):
    payload = json.loads(bv_json(small_bv_report))
    assert payload["params"]["ctx"] == "trivial"
    assert payload["E"] == small_bv_report.E
    assert payload["normalized_ratio"] == small_bv_report.normalized_ratio
    assert len(payload["rows"]) == len(small_bv_report.rows)
    assert payload["rows"][0]["q"] == 1
    assert payload["moduli"] == [1, 2, 3]


def test_scan_csv_blocks(small_scan):
    text = scan_csv(small_scan)
    assert text.count("#X,") == len(small_scan)
    for report in small_scan:
        assert f"#X,{report.x},{report.h},{report.Q}" in text
    payload = json.loads(scan_json(small_scan))
    assert [blk["x"] for blk in payload] == [r.x for r in small_scan]


def test_cluster_csv_and_json(twin_report):
    lines = cluster_csv(twin_report).splitlines()
    assert lines[0] == "n,count"
    assert lines[1] == "3,2" and len(lines) == 1 + len(twin_report.matches)
    hist = histogram_csv(twin_report).splitlines()
    assert hist[0] == "count,frequency"
    assert len(hist) == 1 + len(twin_report.histogram)
    payload = json.loads(cluster_json(twin_report))
    assert payload["selector"] == twin_report.selector
    assert payload["matches"][0] == [3, 2]
    assert payload["histogram"] == list(twin_report.histogram)


def test_hypothesis_csv_and_json(twin_tuple):
    ctx = make_context("trivial")
    rep = verify_hypothesis(
        HypothesisConfig(ctx, "identity", twin_tuple, 1000, 500, 0.3)
    )
    lines = hypothesis_csv(rep).splitlines()
    assert lines[0].startswith("#WINDOW,500,")
    assert lines[1] == "offset,prime_count,discrepancy,scale"
    assert len(lines) == 2 + len(rep.forms)
    assert lines[2].startswith("0,71,")
    payload = json.loads(hypothesis_json(rep))
    assert payload["window_count"] == 500
    assert payload["max_ratio"] == rep.max_ratio
    assert len(payload["forms"]) == 2


def test_coeffs_and_gaps_text():
    f = theta_ternary(TernaryForm(1, 2, 8), 12)
    lines = coeffs_csv(f).splitlines()
    assert lines[0] == "n,a" and lines[1] == "0,1" and len(lines) == 14
    payload = json.loads(coeffs_json(f))
    assert payload["label"] == "theta:1,2,8"
    assert payload["coefficients"] == list(f.coefficients)

    max_gap, records = gap_stats(f, 12)
    text = gaps_csv(max_gap, records).splitlines()
    assert text[0] == f"#MAX,{max_gap}"
    assert text[1] == "n,gap"
    gp = json.loads(gaps_json(max_gap, records))
    assert gp["max_gap"] == max_gap
    assert gp["records"] == [list(r) for r in records]


def test_counts_and_table():
    text = counts_csv({"split": 3, "inert": 4})
    assert text.splitlines() == ["class,count", "split,3", "inert,4"]
    assert table_csv("a,b", [(1, 2), (3, 4)]).splitlines() == [
        "a,b",
        "1,2",
        "3,4",
    ]


def test_scan_svg_draws_one_marker_per_scale(small_scan):
    svg = scan_svg(small_scan)
    assert svg.lstrip().startswith("<svg")
    assert svg.count("<circle") == len(small_scan)
    assert "polyline" in svg and "</svg>" in svg
