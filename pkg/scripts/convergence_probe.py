#!/usr/bin/env python3
"""Tabulate how fast the dyadic gamma-ratio product reaches its limit.

Prints |partial(n) - limit| for n = 1..n_max at several x values.  The tail
behaves like ln(2*pi)/2 * 2^-n (independent of x), which is why the trend
gate's 1e-6 bound is reachable only around n = 20.

    python scripts/convergence_probe.py [--x 0.1 0.3 0.5 0.7 0.9] [--n-max 20]
"""

import argparse

from lerchsum import PrecisionPolicy, nielsen_limit, nielsen_partial_product
from lerchsum.oracle import limit_probe


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--x", nargs="+", type=float,
                        default=[0.1, 0.3, 0.5, 0.7, 0.9])
    parser.add_argument("--n-max", type=int, default=20)
    args = parser.parse_args()
    policy = PrecisionPolicy()

    header = "n    " + "".join(f"x={x:<12g}" for x in args.x)
    print(header)
    limits = {x: nielsen_limit(x) for x in args.x}
    probes = {x: limit_probe(lambda n, x=x: nielsen_partial_product(x, n, policy),
                             args.n_max)
              for x in args.x}
    for n in range(1, args.n_max + 1):
        row = f"{n:<5d}"
        for x in args.x:
            err = abs(probes[x].values[n - 1] - limits[x])
            row += f"{err:<14.3e}"
        print(row)
    print("\nexpected tail scale ln(2*pi)/2 * 2^-n:")
    import math
    for n in (4, 8, 12, 16, 20):
        print(f"  n={n:<3d} {0.5 * math.log(2 * math.pi) * 2.0 ** -n:.3e}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
