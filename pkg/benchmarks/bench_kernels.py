"""Compare the compiled term-arithmetic kernel with the pure-Python one.

Two levels: the raw kernel hot loops on synthetic term dicts, and a
fresh-process end-to-end computation where the backend is chosen by the
QUANTCURVE_PURE environment variable at import time.

Usage: python benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import os
import random
import statistics
import subprocess
import sys
import time
from fractions import Fraction

from quantcurve import _kernels_py

try:
    from quantcurve import _kernels_cy
except ImportError:
    _kernels_cy = None


def random_terms(rng, size, arity=2, span=8):
    out = {}
    while len(out) < size:
        e = tuple(rng.randrange(-span, span + 1) for _ in range(arity))
        out[e] = Fraction(rng.randrange(-999, 1000) or 1, rng.randrange(1, 64))
    return out


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times), statistics.median(times)


def micro(repeat):
    rng = random.Random(20240817)
    a = random_terms(rng, 120)
    b = random_terms(rng, 120)
    small = random_terms(rng, 25)
    cases = [
        ("add 120+120", 200, lambda k: k.add_terms(a, b)),
        ("mul 120x25", 20, lambda k: k.mul_terms(a, small, 2)),
        ("mul 120x120", 5, lambda k: k.mul_terms(a, b, 2)),
        ("scale 120", 200, lambda k: k.scale_terms(a, Fraction(3, 7))),
    ]
    rows = []
    for label, calls, op in cases:
        py_best, _ = best_of(lambda: [op(_kernels_py) for _ in range(calls)], repeat)
        if _kernels_cy is None:
            rows.append((label, py_best, None))
            continue
        cy_best, _ = best_of(lambda: [op(_kernels_cy) for _ in range(calls)], repeat)
        rows.append((label, py_best, cy_best))
    return rows


END_TO_END = (
    "from quantcurve import freeenergy, kernels;"
    "freeenergy.F_coeff(2, 2);"
    "print(kernels.BACKEND)"
)


def macro(repeat):
    rows = []
    for label, extra_env in (("compiled", {}), ("pure", {"QUANTCURVE_PURE": "1"})):
        times = []
        backend = "?"
        for _ in range(repeat):
            env = dict(os.environ, **extra_env)
            t0 = time.perf_counter()
            proc = subprocess.run(
                [sys.executable, "-c", END_TO_END],
                capture_output=True,
                text=True,
                env=env,
                check=True,
            )
            times.append(time.perf_counter() - t0)
            backend = proc.stdout.strip()
        rows.append((f"F(2,2) cold process [{backend}]", min(times)))
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    print(f"kernel micro-benchmarks (best of {args.repeat})")
    for label, py_t, cy_t in micro(args.repeat):
        if cy_t is None:
            print(f"  {label:<14} python {py_t * 1e3:7.2f} ms   (no compiled kernel)")
        else:
            print(
                f"  {label:<14} python {py_t * 1e3:7.2f} ms   "
                f"cython {cy_t * 1e3:7.2f} ms   x{py_t / cy_t:.2f}"
            )

    print(f"end-to-end (fresh interpreter, best of {args.repeat})")
    for label, t in macro(args.repeat):
        print(f"  {label:<34} {t:7.3f} s")


if __name__ == "__main__":
    main()
