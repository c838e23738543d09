"""Shared fixtures.

Heavy runs used by several test modules (the million-range class census, the
dyadic error scan, the big window cluster scan) are computed once per session,
in both single-threaded and multi-threaded variants so the determinism checks
can compare them byte for byte.
"""

from __future__ import annotations

import os
import sys
import time

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from cheblab.bvlab import BVParams, dyadic_scan
from cheblab.chebpsi import frobenius_counts
from cheblab.galois import make_context
from cheblab.modforms import DELTA_FACTORS, eta_product
from cheblab.tuples import AdmissibleTuple, scan_clusters


@pytest.fixture(scope="session")
def cubic_ctx():
    return make_context("cubic-s3:-1,-1")


@pytest.fixture(scope="session")
def cubic_census(cubic_ctx):
    """Class counts over p <= 10^6, workers 1 and 4, plus the 1-worker time."""
    t0 = time.perf_counter()
    single = frobenius_counts(cubic_ctx, 10**6, workers=1)
    elapsed = time.perf_counter() - t0
    return {
        1: single,
        4: frobenius_counts(cubic_ctx, 10**6, workers=4),
        "elapsed_1": elapsed,
    }


@pytest.fixture(scope="session")
def split_scan_params():
    ctx = make_context("quadratic:5")
    return BVParams(
        ctx=ctx, class_id="split", x=10**4, delta=0.2, theta=0.05, D=1.0
    )


@pytest.fixture(scope="session")
def split_scan_reports(split_scan_params):
    """Dyadic scan 10^4 -> 10^6 for the split class, workers 1 and 4."""
    t0 = time.perf_counter()
    single = dyadic_scan(split_scan_params, 10**4, 10**6, workers=1)
    elapsed = time.perf_counter() - t0
    return {
        1: single,
        4: dyadic_scan(split_scan_params, 10**4, 10**6, workers=4),
        "elapsed_1": elapsed,
    }


@pytest.fixture(scope="session")
def twin_tuple():
    return AdmissibleTuple.from_offsets((0, 2))


@pytest.fixture(scope="session")
def twin_scan_reports(twin_tuple):
    """scan_clusters twin config on (0, 100], workers 1 and 4."""
    ctx = make_context("trivial")
    return {
        1: scan_clusters(ctx, "identity", twin_tuple, 0, 100, threshold=2, workers=1),
        4: scan_clusters(ctx, "identity", twin_tuple, 0, 100, threshold=2, workers=4),
    }


@pytest.fixture(scope="session")
def delta_form():
    """The weight-12 eta-power model, truncated at 10^4."""
    return eta_product(DELTA_FACTORS, 10**4)
