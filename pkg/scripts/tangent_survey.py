"""Tangent, orbit and stabilizer dimensions over random pairs in each stratum."""

import argparse
import random
import time
from collections import Counter

from cubicsheaves.moduli import Stratum
from cubicsheaves.samples import DEFAULT_SEED, random_pair
from cubicsheaves.tangent import tangent_report


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--samples", type=int, default=50)
    ap.add_argument("--seed", type=int, default=DEFAULT_SEED)
    args = ap.parse_args()
    rng = random.Random(args.seed)
    print(f"{'stratum':<20} {'T_X':>4} {'orbit':>6} {'stab':>5} {'T_M':>4} {'count':>6}")
    for stratum in Stratum:
        t0 = time.perf_counter()
        seen = Counter()
        for _ in range(args.samples):
            r = tangent_report(random_pair(rng, stratum))
            seen[(r.dim_TX, r.dim_orbit, r.dim_stab, r.dim_moduli)] += 1
        for dims, n in sorted(seen.items()):
            print(f"{stratum.value:<20} {dims[0]:>4} {dims[1]:>6} {dims[2]:>5} {dims[3]:>4} {n:>6}")
        print(f"  ({time.perf_counter() - t0:.2f}s)")


if __name__ == "__main__":
    main()
