"""Exchange relations between degree-shifted generators at d = 0.

For each pair (a, b) of generators in the window the script looks for
rationals c, e with [a][b] = c [b][a] + e [0] and prints them, or reports
that no such relation exists.

    python3 scripts/d0_exchange.py --window 0..3 --q 3
"""

import argparse
from fractions import Fraction

from spherahall.category import zero_object
from spherahall.cli import parse_window
from spherahall.ncpoly import NCPolynomial, z, zp
from spherahall.presentations import phi_eval


def exchange(a, b, q):
    ab = phi_eval(NCPolynomial.word(a, b), 0, q)
    ba = phi_eval(NCPolynomial.word(b, a), 0, q)
    big = [obj for obj, _ in ba.items() if obj.summands]
    if not big:
        return None
    c = dict(ab.items()).get(big[0], Fraction(0)) / dict(ba.items())[big[0]]
    rest = ab - ba.scale(c)
    if any(obj.summands for obj, _ in rest.items()):
        return None
    return c, dict(rest.items()).get(zero_object(0), Fraction(0))


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--window", default="0..3")
    ap.add_argument("--q", type=int, default=2)
    args = ap.parse_args()
    lo, hi = parse_window(args.window)
    gens = [g(i) for i in range(lo, hi + 1) for g in (z, zp)]
    for n, a in enumerate(gens):
        for b in gens[n + 1:]:
            found = exchange(a, b, args.q)
            text = "none" if found is None else f"[{a}][{b}] = {found[0]} [{b}][{a}] + {found[1]}"
            print(f"{str(a):>6} {str(b):>6}  {text}")


if __name__ == "__main__":
    main()
