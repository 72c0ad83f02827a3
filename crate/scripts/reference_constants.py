#!/usr/bin/env python3
"""50-digit values of C_sigma and B_sigma, used as frozen test oracles.

    python3 scripts/reference_constants.py 0.75
"""
import sys

from mpmath import mp, mpf, sqrt

mp.dps = 50


def constants(s):
    q5 = -s * s + 5 * s - 2
    q3 = -s * s + 3 * s - 1
    q1 = -s * s + s + 1
    c = sqrt(2 * q5 * q3 * q1 / (s * (2 - s)))
    quartic = 3 * s**4 - 17 * s**3 + 19 * s**2 + 4 * s - 4
    b = sqrt(quartic * q3 / (s * (2 - s)))
    return c, b


def main():
    for arg in sys.argv[1:] or ["0.75"]:
        c, b = constants(mpf(arg))
        print("sigma=%s C=%s B=%s" % (arg, mp.nstr(c, 40), mp.nstr(b, 40)))


if __name__ == "__main__":
    main()
