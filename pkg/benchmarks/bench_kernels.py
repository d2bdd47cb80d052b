"""Compare the compiled and pure-Python jet-counting kernels.

    python3 benchmarks/bench_kernels.py [--cases cusp:4:5,cusp:6:7] [--repeat 3]

Each case is germ:n:q with germ one of the names in GERMS. Both kernels get
identical arguments; their counts and node totals must agree.
"""

from __future__ import annotations

import argparse
import sys
import time

from arcmilnor import _kernel_py, parse_poly
from arcmilnor.jets import _kernel_args

try:
    from arcmilnor import _kernel as _kernel_c
except ImportError:
    _kernel_c = None

GERMS = {
    "cusp": ("x^2+y^3", "xy"),
    "node": ("x*y", "xy"),
    "fermat3": ("x^3+y^3", "xy"),
    "e8": ("x^3+y^5", "xy"),
}
DEFAULT_CASES = "cusp:4:5,cusp:5:7,cusp:6:7,node:4:7,fermat3:4:7,e8:5:5"


def _args(germ, n, q):
    text, names = GERMS[germ]
    f = parse_poly(text, list(names))
    exps, coeffs = _kernel_args(f, q)
    r = min(sum(e) for e in exps)
    return (exps, coeffs, f.nvars, n, q, [True] * (n + 1), r, 0, 0, -1, 1)


def _time(kernel, args, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = kernel.count_jets(*args)
        best = min(best, time.perf_counter() - t0)
    return out, best


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--cases", default=DEFAULT_CASES)
    ap.add_argument("--repeat", type=int, default=1)
    args = ap.parse_args(argv)
    if _kernel_c is None:
        print("compiled kernel not built; run `pip install -e . --no-build-isolation`", file=sys.stderr)
        return 2
    print(f"{'case':<16}{'count':>14}{'nodes':>12}{'python s':>11}{'compiled s':>12}{'speedup':>9}")
    for label in args.cases.split(","):
        germ, n, q = label.split(":")
        kargs = _args(germ, int(n), int(q))
        (c_py, nodes_py), t_py = _time(_kernel_py, kargs, args.repeat)
        (c_c, nodes_c), t_c = _time(_kernel_c, kargs, args.repeat)
        if (c_py, nodes_py) != (c_c, nodes_c):
            print(f"{label}: kernels disagree: {(c_py, nodes_py)} vs {(c_c, nodes_c)}", file=sys.stderr)
            return 1
        print(f"{label:<16}{c_c:>14}{nodes_c:>12}{t_py:>11.3f}{t_c:>12.4f}{t_py / max(t_c, 1e-9):>8.0f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
