"""Time the pure search kernels against the compiled twin.

Run as: python3 benchmarks/bench_kernels.py
"""

import time

from betahole import _pykernels as pure

try:
    from betahole import _core as fast
except ImportError:
    fast = None

CASES = [
    ("survivor_count depth=20 (1100)",
     "survivor_count", ("", "1100", "", "0011", "", "0110", 20)),
    ("survivor_count depth=22 golden",
     "survivor_count", ("", "10", "1", "01", "", "10", 22)),
    ("survivor_example depth=60 (1100)",
     "survivor_example", ("", "1100", "", "0011", "", "0110", 60)),
    ("avoiding_necklaces n=17 (10010000)",
     "avoiding_necklaces",
     ("", "10010000", "", "00001001", "", "00010010", 17)),
    ("avoiding_necklaces n=20 (1100)",
     "avoiding_necklaces", ("", "1100", "", "01", "01", "10", 20)),
    ("admissible_necklaces n=18 (1100)",
     "admissible_necklaces", ("", "1100", 18)),
]


def clock(fn, args, repeat=3):
    best = float("inf")
    result = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, result


def main():
    if fast is None:
        print("compiled backend unavailable; only timing the pure kernels")
    width = max(len(name) for name, _, _ in CASES)
    header = f"{'case':<{width}}  {'pure':>9}  {'compiled':>9}  {'speedup':>7}"
    print(header)
    print("-" * len(header))
    for name, attr, args in CASES:
        t_pure, r_pure = clock(getattr(pure, attr), args)
        if fast is None:
            print(f"{name:<{width}}  {t_pure:>8.3f}s  {'-':>9}  {'-':>7}")
            continue
        t_fast, r_fast = clock(getattr(fast, attr), args)
        assert r_pure == r_fast, name
        print(f"{name:<{width}}  {t_pure:>8.3f}s  {t_fast:>8.3f}s"
              f"  {t_pure / t_fast:>6.1f}x")


if __name__ == "__main__":
    main()
