"""Compare the compiled and pure-Python paint kernels on the same positions.

Run: python benchmarks/bench_paint.py [--repeat N]
"""
from __future__ import annotations

import argparse
import time

from listcolor.paintability import Solver, make_kernel, uniform_position

CASES = [((2, 2, 3), 3), ((2, 2, 3), 4), ((3, 3, 3), 4), ((4, 4, 4), 4), ((4, 4, 4), 5)]


def bench(kind: str, shape, t: int, repeat: int):
    best = float("inf")
    for _ in range(repeat):
        solver = Solver(make_kernel(kind))
        start = time.perf_counter()
        winner = solver.solve_position(uniform_position(shape, t))
        best = min(best, time.perf_counter() - start)
    return winner, len(solver), best


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=1)
    ap.add_argument("--skip-python-above", type=int, default=100_000,
                    help="skip the fallback on cases whose memo exceeds this size")
    args = ap.parse_args(argv)
    try:
        make_kernel("compiled")
    except RuntimeError:
        print("compiled kernel not built; reinstall without LISTCOLOR_PURE_PYTHON")
        return 1
    # the kernels try moves in different orders, so their memos need not match in size
    print(f"{'shape':>10} {'t':>2} {'winner':>6} {'memo C/Py':>13} {'compiled s':>11} {'python s':>10} {'speedup':>8}")
    for shape, t in CASES:
        w_c, size, t_c = bench("compiled", shape, t, args.repeat)
        if size > args.skip_python_above:
            print(f"{str(shape):>10} {t:>2} {w_c:>6} {size:>13} {t_c:>11.3f} {'skipped':>10}")
            continue
        w_p, size_p, t_p = bench("python", shape, t, args.repeat)
        assert w_c == w_p, "kernels disagree"
        memo = f"{size}/{size_p}"
        print(f"{str(shape):>10} {t:>2} {w_c:>6} {memo:>13} {t_c:>11.3f} {t_p:>10.3f} {t_p / t_c:>7.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
