#!/usr/bin/env python3
"""Emit Taylor coefficients of psi(p) = cos(2*pi*(p^2 - p - 1/16)) / cos(2*pi*p)
about p = 1/2, used by the Riemann-Siegel remainder terms in gen_zeros.

psi is entire, so the coefficients are taken from a Cauchy integral on the
unit circle around 1/2, evaluated with mpmath at high precision.
"""
import sys
import mpmath as mp

mp.mp.dps = 60
ORDER = 96
POINTS = 1024


def psi(p):
    return mp.cos(2 * mp.pi * (p * p - p - mp.mpf(1) / 16)) / mp.cos(2 * mp.pi * p)


def main():
    samples = [psi(mp.mpf(1) / 2 + mp.expjpi(2 * mp.mpf(j) / POINTS)) for j in range(POINTS)]
    coeffs = []
    for k in range(ORDER):
        acc = mp.mpc(0)
        for j, v in enumerate(samples):
            acc += v * mp.expjpi(-2 * mp.mpf(j * k) / POINTS)
        coeffs.append(mp.re(acc) / POINTS)
    out = sys.stdout
    out.write("// Generated by tools/gen_rs_coeffs.py; do not edit.\n")
    out.write("// Taylor coefficients of psi(p) about p = 1/2, psi(1/2 + q) = sum a[k] q^k.\n")
    out.write("#pragma once\n\ninline constexpr long double kPsiTaylor[%d] = {\n" % ORDER)
    for c in coeffs:
        out.write("    %sL,\n" % mp.nstr(c, 30, min_fixed=-1, max_fixed=-1) if c != 0 else "    0.0L,\n")
    out.write("};\n")


if __name__ == "__main__":
    main()
