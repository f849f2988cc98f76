#!/usr/bin/env python3
"""Build and verify the shipped zeta-zero fixture.

  1. run gen_zeros (Riemann-Siegel) to the requested height;
  2. replace every ordinate below --polish-below with mpmath.zetazero(n),
     where the Riemann-Siegel remainder is least accurate;
  3. compare a spread of sampled indices against mpmath.zetazero and the
     counts N(T) at several heights against mpmath.nzeros;
  4. write the table and its SHA-256.

usage: build_zero_fixture.py GEN_ZEROS_BINARY OUT_PATH [--height H]
"""
import argparse
import hashlib
import random
import subprocess
import sys
import tempfile

import mpmath as mp


def read_table(path):
    header, values = [], []
    with open(path) as f:
        for line in f:
            if line.startswith("#"):
                header.append(line.rstrip("\n"))
            elif line.strip():
                values.append(mp.mpf(line.strip()))
    return header, values


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("gen_zeros")
    ap.add_argument("out")
    ap.add_argument("--height", type=float, default=100100.0)
    ap.add_argument("--polish-below", type=float, default=1000.0)
    ap.add_argument("--samples", type=int, default=120)
    ap.add_argument("--tolerance", type=float, default=1e-9)
    args = ap.parse_args()
    mp.mp.dps = 25

    with tempfile.NamedTemporaryFile(suffix=".txt") as raw:
        subprocess.run([args.gen_zeros, "--height", str(args.height), "--out", raw.name], check=True)
        header, zeros = read_table(raw.name)

    worst_polish = 0
    for i, g in enumerate(zeros):
        if g >= args.polish_below:
            break
        ref = mp.im(mp.zetazero(i + 1))
        worst_polish = max(worst_polish, abs(ref - g))
        zeros[i] = ref
    print(f"polished {i} ordinates below {args.polish_below}; largest correction {float(worst_polish):.3e}")

    rng = random.Random(20240611)
    idx = sorted(set([1, 2, 3, 29, 30, 649, 650, len(zeros)] +
                     [rng.randrange(1, len(zeros) + 1) for _ in range(args.samples)]))
    worst = 0
    for n in idx:
        worst = max(worst, abs(mp.im(mp.zetazero(n)) - zeros[n - 1]))
    print(f"checked {len(idx)} sampled indices; max |error| {float(worst):.3e}")

    for t in [100, 1000, 5000, 10000, 25000, 50000, 75000, 100000]:
        mine = sum(1 for g in zeros if g <= t)
        ref = mp.nzeros(t)
        print(f"N({t}) table={mine} mpmath={ref}")
        if mine != ref:
            sys.exit(f"count mismatch at T={t}")
    if worst > args.tolerance:
        sys.exit(f"sampled error {float(worst)} exceeds {args.tolerance}")

    with open(args.out, "w") as f:
        f.write("# Ordinates of the nontrivial zeros of zeta(s), one per line, ascending.\n")
        f.write("# Riemann-Siegel (C0..C4) with Gram/Rosser isolation (tools/gen_zeros.cpp);\n")
        f.write(f"# ordinates below {args.polish_below:g} from mpmath.zetazero; built by tools/build_zero_fixture.py\n")
        f.write("# start_index: 1\n")
        f.write(f"# count: {len(zeros)}\n")
        for g in zeros:
            f.write("%.12f\n" % float(g))
    digest = hashlib.sha256(open(args.out, "rb").read()).hexdigest()
    with open(args.out + ".sha256", "w") as f:
        f.write(f"{digest}  {args.out.split('/')[-1]}\n")
    print(f"wrote {len(zeros)} ordinates to {args.out}; sha256 {digest}")


if __name__ == "__main__":
    main()
