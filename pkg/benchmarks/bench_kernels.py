"""Compare the compiled and pure-Python kernels.

    python3 benchmarks/bench_kernels.py [--repeat N]

Kernel timings call both implementations in-process. The pipeline timing runs
a DT computation in a subprocess per backend (``QUIVERDT_PURE=1`` forces the
pure-Python path) so that every layer uses the selected kernels.
"""

import argparse
import os
import random
import subprocess
import sys
import timeit

from quiverdt import _pykernels

try:
    from quiverdt import _ckernels
except ImportError:
    _ckernels = None

PIPELINE = (
    "from quiverdt.dt import dt_all; from quiverdt.quiver import Quiver; "
    "dt_all(Quiver.from_matrix([[1, 2], [2, 1]]), (0, 0), (8, 8), max_degree=14); "
    "dt_all(Quiver.kronecker(3), (1, 0), (7, 7)); "
    "dt_all(Quiver.loop(3), (0,), (30,))"
)


def _poly(rng, n, bits=20):
    return [rng.randrange(-(2 ** bits), 2 ** bits) for _ in range(n)]


def bench_kernels(repeat):
    rng = random.Random(1)
    rows = []
    for n in (8, 32, 128, 512):
        a, b = _poly(rng, n), _poly(rng, n)
        q = _pykernels.mul_binomial(a, 6)
        cases = {
            "mul": lambda m: m.mul(a, b),
            "mul_binomial": lambda m: m.mul_binomial(a, 6),
            "div_binomial": lambda m: m.div_binomial(q, 6),
        }
        for name, fn in cases.items():
            number = max(1, 20000 // (n * n if name == "mul" else n))
            py = min(timeit.repeat(lambda: fn(_pykernels), number=number, repeat=repeat)) / number
            row = [name, n, py * 1e6]
            if _ckernels is not None:
                c = min(timeit.repeat(lambda: fn(_ckernels), number=number, repeat=repeat)) / number
                row += [c * 1e6, py / c]
            rows.append(row)
    return rows


def bench_pipeline():
    out = {}
    for label, env in (("compiled", {}), ("pure", {"QUIVERDT_PURE": "1"})):
        code = f"import time; t = time.perf_counter(); {PIPELINE}; print(time.perf_counter() - t)"
        res = subprocess.run(
            [sys.executable, "-c", code], env={**os.environ, **env}, capture_output=True, text=True, check=True
        )
        out[label] = float(res.stdout.strip())
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    print(f"{'kernel':14} {'n':>5} {'python us':>11} {'compiled us':>12} {'speedup':>8}")
    for row in bench_kernels(args.repeat):
        if len(row) == 5:
            print(f"{row[0]:14} {row[1]:5d} {row[2]:11.2f} {row[3]:12.2f} {row[4]:7.1f}x")
        else:
            print(f"{row[0]:14} {row[1]:5d} {row[2]:11.2f} {'n/a':>12}")
    p = bench_pipeline()
    print(f"\npipeline: compiled {p['compiled']:.2f}s, pure {p['pure']:.2f}s "
          f"({p['pure'] / p['compiled']:.2f}x)")


if __name__ == "__main__":
    main()
