"""Write every small d = 3 object in the sphere generators and check the image.

    python3 scripts/round_trip.py --dim 3 --q 2 --show 10
"""

import argparse
import time

from spherahall.category import iter_objects
from spherahall.hall import HallElement, express_in_spheres
from spherahall.presentations import phi_eval


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--dim", type=int, default=4)
    ap.add_argument("--q", type=int, default=2)
    ap.add_argument("--show", type=int, default=8, help="print this many expressions")
    args = ap.parse_args()
    t = time.perf_counter()
    objs = list(iter_objects(3, args.dim, range(-3, 4)))
    bad = 0
    for n, obj in enumerate(objs):
        w = express_in_spheres(obj, args.q)
        bad += phi_eval(w, 3, args.q) != HallElement.basis(obj, args.q)
        if n < args.show:
            print(f"[{obj}] = {w}")
    print(f"{len(objs) - bad}/{len(objs)} round trips exact in {time.perf_counter() - t:.1f}s")


if __name__ == "__main__":
    main()
