#!/usr/bin/env python3
"""Write the first N Riemann-zeta zero ordinates, one per line.

Uses Arb (through python-flint) which certifies each zero with a ball
enclosure; the midpoint is written with 12 decimal places and the radius
is checked against that rounding.

    pip install python-flint
    python3 scripts/gen_zeros.py 100000 > crates/core/tests/data/zeros_100k.txt

An optional second argument starts at that zero and omits the header, so
an interrupted run can be continued by appending.
"""
import sys
from decimal import ROUND_HALF_EVEN, Decimal

import flint

flint.ctx.prec = 96
CHUNK = 2000


def main():
    count = int(sys.argv[1]) if len(sys.argv) > 1 else 100000
    n = int(sys.argv[2]) if len(sys.argv) > 2 else 1
    out = sys.stdout
    if n == 1:
        out.write("# ordinates of the first %d nontrivial zeros of zeta(s), Arb-certified\n" % count)
    while n <= count:
        m = min(CHUNK, count - n + 1)
        for z in flint.acb.zeta_zeros(n, m):
            im = z.imag
            if float(im.rad()) > 1e-13:
                raise SystemExit("radius too large at zero %d" % n)
            out.write(format_mid(im))
            n += 1
        out.flush()


def format_mid(im):
    # decimal rounding of the ball midpoint, no float round-trip
    s = im.mid().str(25, radius=False)
    return str(Decimal(s).quantize(Decimal("1e-12"), rounding=ROUND_HALF_EVEN)) + "\n"


if __name__ == "__main__":
    main()
