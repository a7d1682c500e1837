"""Compare the compiled and pure-Python kernel backends.

    python benchmarks/bench_kernels.py [--repeat N] [--size N]

Prints best-of-N wall times per kernel and the speedup of the compiled one.
"""
import argparse
import math
import sys
import timeit

import numpy as np

from pseudoherm import kernels


def cases(size):
    zetas = np.linspace(-0.99, 0.99, size)
    xs = np.linspace(0.0, 2 * math.pi, size)
    rng = np.random.default_rng(0)
    mats = [rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n)) for n in (2, 3, 4) for _ in range(100)]
    return {
        f"closed_form_grid {size}x{size}": lambda b: b.closed_form_grid(zetas, xs),
        f"state_based_grid {size}x{size}": lambda b: b.state_based_grid(zetas, xs),
        "expm x300 (n = 2..4)": lambda b: [b.expm(m) for m in mats],
    }


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--size", type=int, default=201)
    args = ap.parse_args(argv)

    backends = kernels.available_backends()
    if "cython" not in backends:
        print("compiled extension not built; timing the Python backend only", file=sys.stderr)
    names = sorted(backends)
    print(f"{'kernel':<28}" + "".join(f"{n:>12}" for n in names) + ("     speedup" if len(names) > 1 else ""))
    for label, fn in cases(args.size).items():
        times = {}
        for name in names:
            b = backends[name]
            fn(b)  # warm up
            times[name] = min(timeit.repeat(lambda: fn(b), number=1, repeat=args.repeat))
        row = f"{label:<28}" + "".join(f"{times[n] * 1e3:>10.2f}ms" for n in names)
        if len(names) > 1:
            row += f"{times['python'] / times['cython']:>11.1f}x"
        print(row)


if __name__ == "__main__":
    main()
