"""Benchmark the localization kernel backends against each other.

Runs the fixed-point sum for O(1,1) on the Hilbert schemes of the quadric
surface at a fixed generic evaluation point and reports per-backend wall
times.  Both backends must return identical integers; the script exits
nonzero if they ever disagree.

Usage: python benchmarks/bench_localization.py [--nmax N] [--repeats R]
"""

import argparse
import sys
import time
from fractions import Fraction

from dtseries.localization import available_backends, integrate, p1xp1

AT = (Fraction(7, 3), Fraction(-5, 11))


def time_backend(model, lin, n, backend, repeats):
    best = None
    value = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        value = integrate(model, lin, n, AT, backend=backend)
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    return value, best


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--nmax", type=int, default=8, help="largest point count")
    parser.add_argument("--repeats", type=int, default=3, help="timing repeats (best of)")
    args = parser.parse_args(argv)

    model = p1xp1()
    lin = model.bundles["L"]
    backends = sorted(available_backends())
    print(f"backends: {', '.join(backends)}")
    header = ["n", "value"] + [f"{b} (s)" for b in backends]
    ratio_pair = None
    if "pure-python" in backends and len(backends) == 2:
        other = next(b for b in backends if b != "pure-python")
        ratio_pair = ("pure-python", other)
        header.append(f"pure/{other}")
    print("  ".join(f"{h:>14}" for h in header))

    for n in range(args.nmax + 1):
        row = {}
        value = None
        for b in backends:
            v, dt = time_backend(model, lin, n, b, args.repeats)
            row[b] = dt
            if value is None:
                value = v
            elif v != value:
                print(f"backend disagreement at n={n}: {v} != {value}", file=sys.stderr)
                return 1
        cells = [f"{n:>14}", f"{value:>14}"] + [f"{row[b]:>14.6f}" for b in backends]
        if ratio_pair is not None:
            pure, other = ratio_pair
            if row[other] > 0:
                cells.append(f"{row[pure] / row[other]:>13.2f}x")
            else:
                cells.append(f"{'n/a':>14}")
        print("  ".join(cells))
    return 0


if __name__ == "__main__":
    sys.exit(main())
