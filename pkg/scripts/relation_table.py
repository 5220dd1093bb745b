"""Per-family pass counts of the defining relations for several d.

    python3 scripts/relation_table.py --d 3 4 2 1 0 -1 -2 --window -1..1 --q 2
"""

import argparse
import time
from collections import Counter

from spherahall.cli import parse_window
from spherahall.presentations import verify_relations


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--d", type=int, nargs="+", default=[3, 4, 2, 1, 0, -1, -2])
    ap.add_argument("--window", default="-1..1")
    ap.add_argument("--q", type=int, default=2)
    ap.add_argument("--blocks", type=int, default=3, help="block bound used for d = 1")
    args = ap.parse_args()
    window = parse_window(args.window)
    for d in args.d:
        t = time.perf_counter()
        rep = verify_relations(d, window, args.q, args.blocks if d == 1 else None)
        total, ok = Counter(), Counter()
        for r in rep.results:
            family = r.rid.split(" ")[0]
            total[family] += 1
            ok[family] += r.passed
        cells = "  ".join(f"{f} {ok[f]}/{total[f]}" for f in sorted(total))
        print(f"d={d:>2}  {time.perf_counter() - t:6.1f}s  {cells}")


if __name__ == "__main__":
    main()
