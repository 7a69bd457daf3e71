"""Time sparse multiplication, eval_E and membership on seeded inputs.

    python3 benchmarks/bench_mul.py [--repeat R]
"""

import argparse
import random
import timeit

from opimage import QQ, QQI, eval_E, member_theta
from opimage.randgen import random_poly


def cases(rng):
    for n, field, deg, terms in [(1, QQ, 8, 8), (2, QQ, 6, 12), (3, QQ, 5, 20), (2, QQI, 6, 12)]:
        a = random_poly(rng, n, field, deg_z=deg, deg_u=2, nterms=terms)
        b = random_poly(rng, n, field, deg_z=deg, deg_u=2, nterms=terms)
        yield f"n={n} {field.tag} deg={deg} terms={terms}", a, b


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    rng = random.Random(0)
    print(f"{'case':36} {'a*b':>10} {'E(a*b)':>10} {'member':>10}  (ms, best of {args.repeat})")
    for label, a, b in cases(rng):
        ab = a * b
        row = [min(timeit.repeat(fn, number=1, repeat=args.repeat)) * 1e3
               for fn in (lambda: a * b, lambda: eval_E(ab), lambda: member_theta(ab))]
        print(f"{label:36} " + " ".join(f"{t:10.2f}" for t in row))


if __name__ == "__main__":
    main()
