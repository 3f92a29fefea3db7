"""Compare the compiled kernels with the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat 3]
"""
import argparse
import random
import timeit

from celcs import _pykernels, kernels


def _cases(rng):
    words5 = [rng.getrandbits(32) for _ in range(2000)]
    words6 = [rng.getrandbits(64) for _ in range(2000)]
    return [
        ("games_chan n=5 x2000", lambda m: [m.games_chan(v, 5) for v in words5]),
        ("games_chan n=6 x2000", lambda m: [m.games_chan(v, 6) for v in words6]),
        ("level_scan n=4 w=4 x50", lambda m: [m.level_scan(v & 0xFFFF, 4, 4) for v in words5[:50]]),
        ("level_scan n=5 w=3 x5", lambda m: [m.level_scan(v, 5, 3) for v in words5[:5]]),
        ("first_match n=5 w=3 x5", lambda m: [m.first_match(v, 5, 3, -1, -1, None) for v in words5[:5]]),
    ]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    if not kernels.compiled_available():
        raise SystemExit("compiled extension not built; reinstall with Cython available")
    from celcs import _ckernels

    rng = random.Random(args.seed)
    print(f"{'kernel':<26}{'python s':>10}{'compiled s':>12}{'speedup':>9}")
    for name, fn in _cases(rng):
        py = min(timeit.repeat(lambda: fn(_pykernels), number=1, repeat=args.repeat))
        c = min(timeit.repeat(lambda: fn(_ckernels), number=1, repeat=args.repeat))
        print(f"{name:<26}{py:>10.4f}{c:>12.4f}{py / c:>8.1f}x")


if __name__ == "__main__":
    main()
