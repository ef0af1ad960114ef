#!/usr/bin/env python3
"""Enumeration throughput benchmark.

Usage: python3 scripts/bench_enumerate.py [max_radius]
"""

import sys
import time

from treegrowth import build_atlas, catalog


def bench(name, spec, max_radius):
    t0 = time.time()
    atlas = build_atlas(spec, max_radius, levels=1, max_elements=5_000_000)
    dt = time.time() - t0
    total = atlas.table(0).gamma()[-1]
    print(f"{name:24s} radius {max_radius}: {total:>9d} elements "
          f"in {dt:6.2f}s ({total / dt:9.0f} elem/s)")


def main():
    r = int(sys.argv[1]) if len(sys.argv) > 1 else 8
    bench("fabrykowski_gupta", catalog.fabrykowski_gupta(), r)
    bench("gupta_sidki", catalog.gupta_sidki(), r)
    bench("first_grigorchuk", catalog.first_grigorchuk(), r)
    bench("sunic(3,2,0)", catalog.sunic(3, 2, (0,)), min(r, 4))
    bench("nekrashevych_D(01)", catalog.nekrashevych_D((), (0, 1)), r)


if __name__ == "__main__":
    main()
