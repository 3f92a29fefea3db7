"""Compiled and pure-Python kernels must agree bit for bit."""
import importlib
import os
import subprocess
import sys

import pytest
from hypothesis import given
from hypothesis import strategies as st

from celcs import _pykernels, kernels
from celcs.seqcore import Seq, lc_poly_oracle

needs_compiled = pytest.mark.skipif(not kernels.compiled_available(), reason="extension not built")


def _ck():
    return importlib.import_module("celcs._ckernels")


word_inputs = st.integers(0, 6).flatmap(
    lambda n: st.tuples(st.just(n), st.integers(0, (1 << (1 << n)) - 1))
)


@given(st.integers(0, 9).flatmap(lambda n: st.tuples(st.just(n), st.integers(0, (1 << (1 << n)) - 1))))
def test_python_games_chan_matches_oracle(arg):
    n, v = arg
    assert _pykernels.games_chan(v, n) == lc_poly_oracle(Seq(n, v))


def test_python_level_scan_lex_first():
    # 1111 1000 0000 0000: removing position 0 or 4 both leave complexity 13
    v = 0b11111
    best, pattern = _pykernels.level_scan(v, 4, 1)
    assert best == 13 and pattern == 1


def test_python_first_match_walks_all_matches():
    v = 0b11111
    expected = [1 << p for p in range(16) if lc_poly_oracle(Seq(4, v ^ (1 << p))) == 13]
    found, cur = [], None
    while True:
        cur = _pykernels.first_match(v, 4, 1, 13, after=cur)
        if cur is None:
            break
        found.append(cur)
    assert found == expected
    assert found[:2] == [1, 1 << 4]


@pytest.mark.parametrize("mod", ["py", "c"])
def test_level_scan_rejects_bad_weight(mod):
    if mod == "c" and not kernels.compiled_available():
        pytest.skip("extension not built")
    impl = _pykernels if mod == "py" else _ck()
    with pytest.raises(ValueError):
        impl.level_scan(0, 2, 5)


@needs_compiled
@given(word_inputs)
def test_games_chan_backends_agree(arg):
    n, v = arg
    assert _ck().games_chan(v, n) == _pykernels.games_chan(v, n)


@needs_compiled
@given(st.integers(0, 4).flatmap(
    lambda n: st.tuples(st.just(n), st.integers(0, (1 << (1 << n)) - 1), st.integers(0, min(3, 1 << n)))
))
def test_level_scan_backends_agree(arg):
    n, v, w = arg
    assert _ck().level_scan(v, n, w) == _pykernels.level_scan(v, n, w)


@needs_compiled
@given(st.integers(2, 4).flatmap(
    lambda n: st.tuples(st.just(n), st.integers(0, (1 << (1 << n)) - 1),
                        st.integers(1, 3), st.integers(0, 1 << n), st.integers(-1, 8))
))
def test_first_match_backends_agree(arg):
    n, v, w, target, tw = arg
    a = _ck().first_match(v, n, w, target, tw, None)
    assert a == _pykernels.first_match(v, n, w, target, tw, None)
    if a is not None:
        assert _ck().first_match(v, n, w, target, tw, a) == _pykernels.first_match(v, n, w, target, tw, a)


def test_dispatch_uses_python_above_word_size():
    v = (1 << 100) | 5
    assert kernels.games_chan(v, 7) == _pykernels.games_chan(v, 7)


def test_pure_python_env_switch():
    env = dict(os.environ, CELCS_PURE_PYTHON="1")
    out = subprocess.run(
        [sys.executable, "-c", "from celcs import kernels; print(kernels.BACKEND)"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == "python"
