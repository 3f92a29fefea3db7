import pytest
from hypothesis import given
from hypothesis import strategies as st

from celcs.counting import (
    CountingError,
    CountQuery,
    CountResult,
    allowed_final_L,
    count_t43,
    count_t53,
    format_power,
    is_allowed_final,
    rueppel_count,
    second_descent_possible,
)
from celcs.cube import Mask
from celcs.harness import _all_points


def M(n, *idx):
    return Mask.from_indices(n, idx)


class TestRueppel:
    def test_examples(self):
        assert rueppel_count(4, 0).value == 1
        assert rueppel_count(4, 1).value == 1
        assert rueppel_count(4, 16).exponent == 15

    def test_range(self):
        with pytest.raises(CountingError):
            rueppel_count(4, 17)

    @pytest.mark.parametrize("n", range(0, 7))
    def test_total(self, n):
        assert sum(rueppel_count(n, lc).value for lc in range((1 << n) + 1)) == 1 << (1 << n)


class TestPredicates:
    def test_second_descent_three_errors(self):
        assert second_descent_possible("3err", 4, 13)
        assert not second_descent_possible("3err", 4, 15)

    def test_second_descent_four_errors(self):
        assert not second_descent_possible("4err", 4, 13, i0=2)
        assert second_descent_possible("4err", 5, 20, i0=1)
        assert not second_descent_possible("4err", 5, 20, i0=3)

    def test_bad_kind(self):
        with pytest.raises(ValueError):
            second_descent_possible("5err", 4, 13)
        with pytest.raises(ValueError):
            is_allowed_final("4err", 4, 1, 3, 5)

    def test_excluded_two_term_target(self):
        # from L1 = 16 - (1 + 2) the level 16 - (2 + 8) is out of reach
        assert not is_allowed_final("3err", 4, 0, 1, M(4, 1, 3))

    def test_same_target_reachable_from_other_first_drop(self):
        # with (i, j) = (0, 2) neither excluded pattern applies; the census
        # finds sequences with L1 = 11 at k = 1 and L3 = 6 at k = 3
        assert is_allowed_final("3err", 4, 0, 2, M(4, 1, 3))
        hits = sum(
            1 for p in _all_points(4)
            if len(p) > 2 and tuple(p[:3]) == ((0, 16), (1, 11), (3, 6))
        )
        assert hits > 0

    def test_four_error_excluded_triple(self):
        assert not is_allowed_final("4err", 4, 0, 3, M(4, 0, 2, 3), i0=2)

    def test_target_must_drop(self):
        for kind, i0 in (("3err", None), ("4err", 0)):
            assert not is_allowed_final(kind, 4, 1, 3, 6, i0)
            assert not is_allowed_final(kind, 4, 1, 3, 10, i0)

    def test_zero_target_allowed(self):
        assert is_allowed_final("3err", 4, 1, 3, 0)
        assert allowed_final_L("4err", 4, 1, 3, i0=2)(None)


class TestCounts:
    def test_three_error_target_5(self):
        assert count_t43(CountQuery(4, 1, 3, M(4, 0, 1, 3))).exponent == 8

    def test_three_error_target_7(self):
        assert count_t43(CountQuery(4, 1, 2, M(4, 0, 3))).exponent == 10

    def test_three_error_zero_target(self):
        assert count_t43(CountQuery(4, 1, 3, 0)).exponent == 5

    def test_four_error_target_5(self):
        assert count_t53(CountQuery(4, 1, 3, M(4, 0, 1, 3), i0=2)).exponent == 7

    def test_four_error_n5_target_15(self):
        res = count_t53(CountQuery(5, 2, 3, M(5, 0, 4), i0=1))
        assert res.exponent == 21 and res.value == 2**21

    def test_four_error_zero_target(self):
        res = count_t53(CountQuery(4, 1, 3, None, i0=2))
        assert res.exponent == 5 and res.branch["gamma"] == 2

    def test_integer_target_equals_mask(self):
        assert count_t43(CountQuery(4, 1, 3, 5)) == count_t43(CountQuery(4, 1, 3, M(4, 0, 1, 3)))

    def test_unreachable_target_rejected(self):
        with pytest.raises(CountingError, match="not reachable"):
            count_t43(CountQuery(4, 0, 1, M(4, 1, 3)))

    def test_query_validation(self):
        with pytest.raises(CountingError):
            CountQuery(4, 3, 1)
        with pytest.raises(CountingError):
            CountQuery(4, 1, 3, i0=4)
        with pytest.raises(CountingError):
            CountQuery(4, 1, 3, M(5, 0))
        with pytest.raises(CountingError):
            count_t43(CountQuery(4, 1, 3, 5, i0=0))
        with pytest.raises(CountingError):
            count_t53(CountQuery(4, 1, 3, 5))

    def test_json_schema(self):
        q = CountQuery(5, 2, 3, 15, i0=1)
        res = count_t53(q)
        assert q.to_json() == {"n": 5, "i0": 1, "i": 2, "j": 3, "L": 15}
        assert set(res.to_json()) == {"exponent", "branch"}
        assert set(res.to_json()["branch"]) == {"i0_eff", "gamma", "delta", "epsilon"}

    def test_format(self):
        assert format_power(8) == "2^8 = 256"
        assert format_power(62) == f"2^62 = {2**62}"
        assert format_power(63) == "2^63"
        assert str(CountResult(10)) == "2^10 = 1024"
        with pytest.raises(CountingError):
            CountResult(-1)

    @pytest.mark.parametrize("n", range(2, 7))
    def test_exclusions_never_fire(self, n):
        # every admissible tuple evaluates without tripping the delta/epsilon guards
        N = 1 << n
        seen = 0
        for j in range(1, n):
            for i in range(j):
                for lc in range(N):
                    if is_allowed_final("3err", n, i, j, lc):
                        assert count_t43(CountQuery(n, i, j, lc)).exponent >= 0
                        seen += 1
                    for i0 in range(n):
                        if is_allowed_final("4err", n, i, j, lc, i0):
                            assert count_t53(CountQuery(n, i, j, lc, i0)).exponent >= 0
                            seen += 1
        assert seen > 0

    @given(st.integers(2, 12).flatmap(
        lambda n: st.tuples(st.just(n), st.integers(0, n - 2).flatmap(
            lambda i: st.tuples(st.just(i), st.integers(i + 1, n - 1))), st.integers(0, (1 << n) - 1))
    ))
    def test_exponents_are_exact_ints(self, arg):
        n, (i, j), lc = arg
        if is_allowed_final("3err", n, i, j, lc):
            e = count_t43(CountQuery(n, i, j, lc)).exponent
            assert isinstance(e, int) and e <= (1 << n) - 1
