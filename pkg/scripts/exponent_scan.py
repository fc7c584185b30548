#!/usr/bin/env python3
"""Print the exact-arithmetic cross-check table for the exponent relations.

Each row shows (n, p, s) and whether all derived exponents (Sobolev conjugate,
Lorentz/convolution exponent, pointwise and mixed variants) agree exactly.
"""
import sys

from fracineq.harness import exponent_consistency_scan


def main() -> int:
    results = exponent_consistency_scan()
    bad = 0
    for params, ok in results:
        mark = "ok " if ok else "BAD"
        print(f"{mark}  n={params['n']}  p={params['p']}  s={params['s']}")
        bad += not ok
    print(f"{len(results) - bad}/{len(results)} exact")
    return 0 if bad == 0 else 1


if __name__ == "__main__":
    sys.exit(main())
