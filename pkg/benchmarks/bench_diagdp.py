"""Compiled vs pure-Python interlacing-chain kernel on the B_5^3 / M_5^3 counts.

    python benchmarks/bench_diagdp.py [--t 4 8 12] [--repeat 3]
"""
import argparse
import time

from rbirkhoff import diagdp
from rbirkhoff.gtpatterns import count_M_diagonal_DP


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return out, best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=5)
    ap.add_argument("--k", type=int, default=3)
    ap.add_argument("--t", type=int, nargs="+", default=[2, 4, 6, 8, 10])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    if not diagdp.HAVE_COMPILED:
        print("compiled kernel not built; run `python setup.py build_ext --inplace` first")
    print(f"{'t':>4} {'count':>22} {'python s':>10} {'compiled s':>11} {'speedup':>8}")
    for t in args.t:
        cnt_py, s_py = best_of(lambda: count_M_diagonal_DP((args.n, args.k), t, backend="python"), args.repeat)
        if diagdp.HAVE_COMPILED:
            cnt_c, s_c = best_of(lambda: count_M_diagonal_DP((args.n, args.k), t, backend="c"), args.repeat)
            assert cnt_c == cnt_py, (t, cnt_c, cnt_py)
            print(f"{t:>4} {cnt_py:>22} {s_py:>10.4f} {s_c:>11.4f} {s_py / s_c:>7.1f}x")
        else:
            print(f"{t:>4} {cnt_py:>22} {s_py:>10.4f} {'-':>11} {'-':>8}")


if __name__ == "__main__":
    main()
