import itertools
import math

import pytest
from oracles import (
    oracle_cluster_matches,
    oracle_is_admissible,
    oracle_is_prime,
    oracle_quadratic_class,
    oracle_singular_series,
)

from cheblab.errors import ArgumentError
from cheblab.galois import make_context
from cheblab.tuples import (
    AdmissibleTuple,
    HypothesisConfig,
    default_threshold,
    gen_admissible,
    is_admissible,
    scan_clusters,
    singular_series,
    verify_hypothesis,
)


def test_is_admissible_vs_residue_exhaustion():
    for offs in itertools.combinations(range(15), 3):
        ok, data = is_admissible(offs)
        assert ok == oracle_is_admissible(offs), offs
        if ok:
            # the witness residue really is missed at each small prime
            for p, r in data.items():
                assert all(o % p != r for o in offs), (offs, p, r)
        else:
            assert all((n % data) in {o % data for o in offs} for n in range(data))


def test_is_admissible_known_cases():
    ok, covering = is_admissible((0, 2, 4))
    assert not ok and covering == 3
    ok, witness = is_admissible((0, 2))
    assert ok and witness == {2: 1}
    assert is_admissible((0,))[0]
    for bad in ((), (-1, 2), (3, 3)):
        with pytest.raises(ArgumentError):
            is_admissible(bad)


def test_tuple_normalization():
    t = AdmissibleTuple.from_offsets((7, 5, 11))
    assert t.offsets == (0, 2, 6)
    assert t.k == 3 and t.spread == 6
    assert dict(t.witness)  # stored as sorted pairs, usable as a dict
    with pytest.raises(ArgumentError):
        AdmissibleTuple.from_offsets((0, 2, 4))


@pytest.mark.parametrize("method", ["shifted-primes", "greedy"])
@pytest.mark.parametrize("k", [1, 2, 3, 5, 8])
def test_gen_admissible_produces_admissible_tuples(method, k):
    t = gen_admissible(k, method)
    assert t.k == k
    assert oracle_is_admissible(t.offsets)
    assert t.offsets[0] == 0


def test_gen_admissible_shifted_prime_shape():
    assert gen_admissible(5).offsets == (0, 4, 6, 10, 12)
    with pytest.raises(ArgumentError):
        gen_admissible(0)
    with pytest.raises(ArgumentError):
        gen_admissible(3, "no-such-method")


def test_singular_series():
    assert singular_series((0, 2), 1000) == oracle_singular_series((0, 2), 1000)
    assert math.isclose(singular_series((0, 2), 10**6), 1.3203237211802865)
    assert singular_series((0,), 10**4) == 1.0
    assert singular_series((0, 2, 4), 10**4) == 0.0  # covered mod 3


def test_default_threshold():
    assert [default_threshold(k) for k in (1, 2, 3, 4, 8, 20)] == [1, 2, 2, 2, 3, 3]
    with pytest.raises(ArgumentError):
        default_threshold(0)


def test_scan_clusters_plain_primes(twin_tuple):
    ctx = make_context("trivial")
    report = scan_clusters(ctx, "identity", twin_tuple, 0, 100, threshold=2)
    assert report.matches == tuple(oracle_cluster_matches((0, 2), 0, 100, 2))
    assert report.selector == "trivial|identity primes"
    assert report.threshold == 2
    assert sum(report.histogram) == 100
    # histogram tallies every scanned point by its cluster count
    assert sum(c * f for c, f in enumerate(report.histogram)) == sum(
        1 for n in range(1, 101) for o in (0, 2) if oracle_is_prime(n + o)
    )


def test_scan_clusters_class_restricted():
    # split primes of Q(sqrt 5): brute recount with the character oracle
    ctx = make_context("quadratic:5")
    tup = AdmissibleTuple.from_offsets((0, 4))
    report = scan_clusters(ctx, "split", tup, 100, 400, threshold=2)

    def is_split(n):
        return oracle_is_prime(n) and oracle_quadratic_class(5, n) == "split"

    want = [
        (n, 2)
        for n in range(101, 501)
        if is_split(n) and is_split(n + 4)
    ]
    assert list(report.matches) == want
    assert report.selector == "quadratic:5|split primes"


def test_scan_clusters_default_threshold_and_workers(twin_tuple):
    ctx = make_context("trivial")
    a = scan_clusters(ctx, "identity", twin_tuple, 0, 5000)
    assert a.threshold == default_threshold(2)
    b = scan_clusters(ctx, "identity", twin_tuple, 0, 5000, workers=4)
    assert a == b


def test_verify_hypothesis_window_quantities(twin_tuple):
    ctx = make_context("trivial")
    cfg = HypothesisConfig(ctx, "identity", twin_tuple, 1000, 500, 0.3)
    rep = verify_hypothesis(cfg)
    assert rep.moduli == (1, 2, 3, 4, 5, 6, 7)
    assert rep.window_count == 500
    # raw interval: worst residue-count deviation summed over q (frozen)
    assert math.isclose(rep.window_discrepancy, 1.904761904761898, rel_tol=1e-12)
    assert math.isclose(rep.max_ratio, 1.008, rel_tol=1e-12)
    assert [f.prime_count for f in rep.forms] == [71, 71]
    assert math.isclose(rep.forms[0].discrepancy, 7.083333333333334, rel_tol=1e-12)
    assert math.isclose(rep.forms[1].discrepancy, 78.08333333333333, rel_tol=1e-12)
    # the (log x)^{100 k^2} normalizer crushes desk-scale counts to zero
    assert rep.window_scale == 0.0
    assert all(f.scale == 0.0 for f in rep.forms)


def test_verify_hypothesis_level_excludes_moduli(twin_tuple):
    ctx = make_context("trivial")
    base = HypothesisConfig(ctx, "identity", twin_tuple, 1000, 500, 0.3)
    leveled = HypothesisConfig(ctx, "identity", twin_tuple, 1000, 500, 0.3, B=2)
    a, b = verify_hypothesis(base), verify_hypothesis(leveled)
    # quantity (i) ignores the level; quantity (ii) drops even moduli
    assert a.window_discrepancy == b.window_discrepancy
    assert b.form_discrepancies == (6.083333333333334, 6.083333333333334)
    assert b.form_discrepancies[0] < a.form_discrepancies[0]


def test_verify_hypothesis_worker_invariance(twin_tuple):
    ctx = make_context("quadratic:5")
    cfg = HypothesisConfig(ctx, "split", twin_tuple, 2000, 800, 0.25)
    assert verify_hypothesis(cfg, workers=1) == verify_hypothesis(cfg, workers=4)


def test_hypothesis_config_validation(twin_tuple):
    ctx = make_context("trivial")
    with pytest.raises(ArgumentError):
        HypothesisConfig(ctx, "identity", twin_tuple, 2, 10, 0.1)
    with pytest.raises(ArgumentError):
        HypothesisConfig(ctx, "identity", twin_tuple, 100, 10, -0.1)
    with pytest.raises(ArgumentError):
        HypothesisConfig(ctx, "identity", twin_tuple, 100, 10, 0.1, B=0)
