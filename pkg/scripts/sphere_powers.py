"""Coefficient of [S^m] in [S]^m at d = 3, next to the q-factorial and (q^m-1)/(q-1).

    python3 scripts/sphere_powers.py --max-m 4 --q 2 3 5
"""

import argparse

from spherahall.category import make_object, simple
from spherahall.hall import HallElement, hall_product, q_factorial


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-m", type=int, default=4)
    ap.add_argument("--q", type=int, nargs="+", default=[2, 3, 5])
    args = ap.parse_args()
    s = simple(3, 0)
    print(f"{'q':>3} {'m':>2} {'coefficient':>12} {'[m]_q!':>8} {'(q^m-1)/(q-1)':>14}  other terms")
    for q in args.q:
        power = HallElement.basis(s, q)
        for m in range(2, args.max_m + 1):
            power = hall_product(power, HallElement.basis(s, q))
            top = make_object(3, [(0, 1)] * m)
            coeffs = dict(power.items())
            others = len(coeffs) - (top in coeffs)
            print(f"{q:>3} {m:>2} {str(coeffs.get(top, 0)):>12} {q_factorial(m, q):>8} "
                  f"{(q ** m - 1) // (q - 1):>14}  {others}")


if __name__ == "__main__":
    main()
