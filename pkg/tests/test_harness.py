import json

import numpy as np
import pytest

from celcs import descent
from celcs.harness import (
    THEOREMS,
    HarnessError,
    VerifyReport,
    histogram_csv,
    lc_histogram,
    random_with_lc,
    se_error_set,
    three_cube_sum,
    verify_exhaustive,
    verify_sampled,
)
from celcs.seqcore import linear_complexity
from celcs.spectrum import celcs


class TestExhaustive:
    @pytest.mark.parametrize("theorem", THEOREMS)
    def test_all_pass_at_n3(self, theorem):
        r = verify_exhaustive(theorem, 3)
        assert r.passed, r.failures[:3]
        assert r.mode == "exhaustive" and r.seed is None

    def test_census_alias(self):
        r = verify_exhaustive("T24", 3)
        assert r.passed and r.theorem_id == "L24"
        assert r.details["histogram"] == {"0": 1, **{str(lc): 2 ** (lc - 1) for lc in range(1, 9)}}

    def test_coverage_counts(self):
        assert verify_exhaustive("T32", 2).checked == 2**4
        assert verify_exhaustive("L22", 2).checked == 2**8

    def test_cap(self):
        with pytest.raises(HarnessError, match="sampled"):
            verify_exhaustive("T33", 5)

    def test_unknown_theorem(self):
        with pytest.raises(HarnessError, match="unknown"):
            verify_exhaustive("T99", 2)

    def test_detects_wrong_formula(self, monkeypatch):
        monkeypatch.setattr(descent, "k2_second_descent", lambda a, b: 0)
        r = verify_exhaustive("T32", 3)
        assert not r.passed and r.failure_count == r.applicable
        assert "FAIL" in r.summary()

    def test_worker_count_does_not_change_report(self):
        one = verify_exhaustive("KUROSAWA", 3, workers=1)
        two = verify_exhaustive("KUROSAWA", 3, workers=2)
        assert one.to_json(elapsed=False) == two.to_json(elapsed=False)


class TestSampled:
    def test_gc_oracle_large_n(self):
        assert verify_sampled("GC_ORACLE", 8, 500, 7).passed

    def test_three_error_stratum(self):
        r = verify_sampled("T43", 5, 50, 3, constructed=200)
        assert r.passed
        se = r.details["se"]
        assert se["error_set_size"] == 2 ** se["error_set_exponent"]

    def test_four_error_stratum_defaults(self):
        r = verify_sampled("T53", 5, 20, 1, constructed=300)
        assert r.passed
        se = r.details["se"]
        assert se["expected_points"] == [[0, 30], [2, 20], [4, 15]]
        assert se["count_exponent"] == 21

    def test_samples_positive(self):
        with pytest.raises(HarnessError):
            verify_sampled("T33", 4, 0, 1)

    def test_deterministic(self):
        a = verify_sampled("T33", 5, 300, 42, constructed=100)
        b = verify_sampled("T33", 5, 300, 42, constructed=100)
        assert a.to_json(elapsed=False) == b.to_json(elapsed=False)
        assert a.seed == 42

    def test_census_sampled_any_seed(self):
        a = verify_sampled("L24", 4, 200, 1)
        b = verify_sampled("L24", 4, 200, 2)
        assert a.passed and b.passed

    def test_parallel_matches_serial(self):
        a = verify_sampled("T32", 4, 1500, 9, workers=1)
        b = verify_sampled("T32", 4, 1500, 9, workers=2)
        assert a.to_json(elapsed=False) == b.to_json(elapsed=False)


class TestGenerators:
    def test_random_with_lc(self):
        rng = np.random.default_rng(0)
        for lc in (0, 1, 7, 15, 32):
            assert linear_complexity(random_with_lc(rng, 5, lc)) == lc

    def test_three_cube_sum_nonzero(self):
        rng = np.random.default_rng(1)
        for _ in range(20):
            s = three_cube_sum(rng, 4)
            assert celcs(s).descents >= 1

    def test_error_set_sizes(self):
        # 2^(3n - j - i - 3) and 2^(4n - j - i - 4 - i0 - g)
        assert len(se_error_set("3err", 5, 0, 4)) == 2 ** (15 - 4 - 0 - 3)
        assert len(se_error_set("4err", 5, 2, 3, 1)) == 2 ** (20 - 3 - 2 - 4 - 1 - 0)


class TestHistogram:
    def test_small(self):
        assert lc_histogram(1) == {0: 1, 1: 1, 2: 2}
        assert lc_histogram(2) == {0: 1, 1: 1, 2: 2, 3: 4, 4: 8}
        assert sum(lc_histogram(3).values()) == 256

    def test_cap(self):
        with pytest.raises(HarnessError):
            lc_histogram(5)

    def test_csv(self):
        assert histogram_csv(lc_histogram(1)) == "L,count\n0,1\n1,1\n2,2\n"


class TestReport:
    def test_json_fields(self):
        r = verify_exhaustive("L21", 2)
        data = json.loads(r.to_json())
        assert {"theorem_id", "n", "mode", "checked", "failures", "elapsed", "seed"} <= set(data)
        assert "elapsed" not in json.loads(r.to_json(elapsed=False))

    def test_passed_iff_no_failures(self):
        r = VerifyReport("T32", 2, "exhaustive", 1, ["x"], 0.0, failure_count=1)
        assert not r.passed
