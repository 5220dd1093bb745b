"""Associativity on seeded random triples, with timings per d.

    python3 scripts/assoc_sweep.py --samples 100 --seed 7
"""

import argparse
import time

from spherahall.hall import assoc_check, sample_triples


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--d", type=int, nargs="+", default=[3, 2, 1, 0, -1])
    ap.add_argument("--samples", type=int, default=25)
    ap.add_argument("--seed", type=int, default=7)
    ap.add_argument("--q", type=int, default=2)
    ap.add_argument("--dim", type=int, default=4)
    args = ap.parse_args()
    for d in args.d:
        t = time.perf_counter()
        triples = sample_triples(d, args.samples, args.seed, args.dim)
        bad = [tr for tr in triples if not assoc_check(*tr, args.q)]
        print(f"d={d:>2}  {len(triples) - len(bad)}/{len(triples)} associate  {time.perf_counter() - t:6.1f}s")
        for tr in bad:
            print("   failing triple:", *tr)


if __name__ == "__main__":
    main()
