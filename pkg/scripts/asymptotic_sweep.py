"""Tabulate (m(d) + d - d^2) / d^1.525 and the winning family over a range of d."""

import argparse
import collections

from sidon_designs import bounds
from sidon_designs.sidon import m_known_choice


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--dmax", type=int, default=2000)
    ap.add_argument("--step", type=int, default=100)
    args = ap.parse_args()

    winners = collections.Counter()
    for d in range(2, args.dmax + 1):
        c = m_known_choice(d)
        winners[c.family] += 1
        if d % args.step == 0:
            r = (c.order + d - d * d) / d**1.525
            print(f"d={d:>5}  m(d)={c.order:>9}  p(d)^2={bounds.smallest_prime_geq(d) ** 2:>9}  r={r:.4f}  {c.label}")
    rep = bounds.asymptotic_check(args.dmax)
    print(f"max r = {rep.max_ratio:.4f} at d = {rep.argmax}; winners: {dict(winners)}")


if __name__ == "__main__":
    main()
