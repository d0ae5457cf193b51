"""Compare the compiled and numpy elimination kernels on SRG Laplacians.

    python benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import time

import numpy as np

from sandpile_srg.graphs import laplacian, paley, triangular
from sandpile_srg.linalg._backend import available_backends

CASES = [
    ("paley(101)  rank mod 2", lambda: laplacian(paley(101)), "rref", 2),
    ("paley(101)  local p=5 mod 5^3", lambda: laplacian(paley(101)), "local", (5, 125)),
    ("triangular(20) local p=2 mod 2^6", lambda: laplacian(triangular(20)), "local", (2, 64)),
    ("triangular(20) rank mod 3", lambda: laplacian(triangular(20)), "rref", 3),
]


def best(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times), out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    backends = available_backends()
    print(f"{'case':36s}" + "".join(f"{name:>12s}" for name in backends) + "   speedup")
    for label, build, kind, arg in CASES:
        a = np.array(build().to_array(), dtype=object)
        row, results = [], []
        for mod in backends.values():
            if kind == "rref":
                fn = lambda m=mod: len(m.rref_mod(a, arg)[1])
            else:
                fn = lambda m=mod: sorted(m.local_pivot_valuations(a, *arg))
            t, out = best(fn, args.repeat)
            row.append(t)
            results.append(out)
        assert all(r == results[0] for r in results), f"backends disagree on {label}"
        speed = f"{row[-1] / row[0]:8.1f}x" if len(row) > 1 else ""
        print(f"{label:36s}" + "".join(f"{t * 1e3:10.2f}ms" for t in row) + "   " + speed)


if __name__ == "__main__":
    main()
