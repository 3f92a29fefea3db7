"""The eleven acceptance criteria, one test each.

Run alone with ``python3 -m pytest tests/test_acceptance.py`` (or execute
this file); a pass/fail line per criterion is printed in the terminal summary.
"""
import time

import pytest

from celcs.counting import CountQuery, count_t53, rueppel_count
from celcs.cube import Mask
from celcs.descent import k2_second_descent, k3_third_descent, prop31_next_k
from celcs.harness import lc_histogram, verify_exhaustive, verify_sampled
from celcs.seqcore import Seq
from celcs.spectrum import first_descent_k, first_drop

SEED = 42


def M(n, *idx):
    return Mask.from_indices(n, idx)


def _assert_clean(report):
    assert report.passed, f"{report.summary()}\n" + "\n".join(report.failures[:10])


class _Clock:
    def __init__(self, limit):
        self.limit = limit

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start
        if exc[0] is None:
            assert self.elapsed < self.limit, f"took {self.elapsed:.1f}s, limit {self.limit}s"


@pytest.mark.criterion(1, "oracle equivalence, all 2^16 sequences at n=4")
def test_oracle_equivalence():
    with _Clock(10):
        r = verify_exhaustive("GC_ORACLE", 4)
    _assert_clean(r)
    assert r.checked == 2**16


@pytest.mark.criterion(2, "complexity census at n=2,3,4")
def test_census():
    with _Clock(60):
        for n in (2, 3, 4):
            hist = lc_histogram(n)
            assert hist == {lc: rueppel_count(n, lc).value for lc in range((1 << n) + 1)}
            _assert_clean(verify_exhaustive("L24", n))


@pytest.mark.criterion(3, "first descent formula, exhaustive n=4")
def test_first_descent():
    with _Clock(30 * 60):
        r = verify_exhaustive("KUROSAWA", 4)
        # independent search that stops at the first drop
        wrong = [v for v in range(1, 1 << 16)
                 if first_drop(Seq(4, v), method="brute") != first_descent_k(Seq(4, v))]
    _assert_clean(r)
    assert r.checked == 2**16 and r.applicable == 2**16 - 1
    assert wrong == []


@pytest.mark.criterion(4, "cube complexity formula, >= 10^4 random cubes, n <= 10")
def test_cube_formula():
    total = 0
    with _Clock(10):
        for n in range(1, 11):
            r = verify_sampled("T21", n, 1000, SEED + n)
            _assert_clean(r)
            total += r.checked
    assert total >= 10**4


@pytest.mark.criterion(5, "second descent formula, exhaustive n=4")
def test_second_descent():
    r = verify_exhaustive("T32", 4)
    _assert_clean(r)
    assert r.checked == 2**16 and r.applicable > 0


@pytest.mark.criterion(6, "third descent formula: exhaustive n=4, sampled n=5")
def test_third_descent():
    with _Clock(60 * 60):
        for theorem in ("T33", "P31"):
            r = verify_exhaustive(theorem, 4)
            _assert_clean(r)
            assert r.checked == 2**16 and r.applicable > 0
            s = verify_sampled(theorem, 5, 10**5, SEED, constructed=10**4)
            _assert_clean(s)
            assert s.checked == 10**5 + 10**4


@pytest.mark.criterion(7, "golden descent values")
def test_golden_descent_values():
    assert k3_third_descent(M(6, 2), M(6, 0, 3, 4), M(6, 0, 1, 2, 4, 5)) == 30
    assert k3_third_descent(M(5, 0, 2), M(5, 1, 2, 3), M(5, 0, 2, 3, 4)) == 12
    assert k3_third_descent(M(6, 0, 1), M(6, 0, 1, 2, 3), M(6, 0, 1, 2, 4, 5)) == 28
    assert prop31_next_k(M(4, 0, 1, 2), 3) == 5
    assert prop31_next_k(M(4, 0, 1, 2, 3), 5) == 11
    assert k2_second_descent(M(4), M(4, 0, 1)) == 3
    assert k2_second_descent(M(5, 0, 1), M(5, 1, 2, 3)) == 8


@pytest.mark.criterion(8, "three-error census equals the count formula, n=4")
def test_three_error_census():
    with _Clock(30 * 60):
        r = verify_exhaustive("T43", 4)
    _assert_clean(r)
    bins = r.details["bins"]
    assert bins["i=1 j=3 L=5"] == {"census": 2**8, "exponent": 8}
    assert bins["i=1 j=2 L=7"] == {"census": 2**10, "exponent": 10}


@pytest.mark.criterion(9, "four-error census n=4, formula and S+E members n=5")
def test_four_error_census():
    r = verify_exhaustive("T53", 4)
    _assert_clean(r)
    assert r.details["bins"]["i0=2 i=1 j=3 L=5"] == {"census": 2**7, "exponent": 7}
    assert count_t53(CountQuery(5, 2, 3, M(5, 0, 4), i0=1)).exponent == 21
    s = verify_sampled("T53", 5, 1000, SEED, constructed=10**4)
    _assert_clean(s)
    se = s.details["se"]
    assert se["expected_points"] == [[0, 30], [2, 20], [4, 15]]
    assert s.details["constructed"] == 10**4


@pytest.mark.criterion(10, "decomposition properties, exhaustive n=4")
def test_decompositions():
    r = verify_exhaustive("T31", 4)
    _assert_clean(r)
    assert r.checked == 2**16


@pytest.mark.criterion(11, "determinism of verify reports")
def test_determinism():
    runs = [
        lambda: verify_sampled("T33", 5, 2000, SEED, constructed=500),
        lambda: verify_sampled("T53", 5, 100, SEED, constructed=500),
        lambda: verify_exhaustive("T43", 3),
    ]
    for run in runs:
        assert run().to_json(elapsed=False) == run().to_json(elapsed=False)
    serial = verify_sampled("T32", 5, 3000, 7, workers=1)
    parallel = verify_sampled("T32", 5, 3000, 7, workers=2)
    assert serial.to_json(elapsed=False) == parallel.to_json(elapsed=False)


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q"]))
