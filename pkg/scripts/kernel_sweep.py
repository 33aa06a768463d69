"""Sweep the log-kernel closed form against the brute-force oracle.

Writes kernel_sweep.csv with the worst error per (alpha, m) cell and prints a
summary. Useful for eyeballing where the assembly is least accurate.

Run: python scripts/kernel_sweep.py [outfile]
"""

import sys

import numpy as np

from georadon.kernels import KernelParams, phi_closed, phi_oracle


def main(outfile="kernel_sweep.csv"):
    alphas = np.arange(-0.85, 3.9, 0.34)
    us = np.concatenate([np.linspace(0.08, 0.92, 7),
                         np.linspace(1.08, 3.8, 7)])
    rows = ["alpha,m,worst_abs_err"]
    worst_global = 0.0
    for m in range(-1, 4):
        for alpha in alphas:
            if not -1.0 < alpha < m + 1.0:
                continue
            if abs(alpha - round(alpha)) < 0.05:
                continue
            p = KernelParams(float(alpha), m)
            worst = max(abs(phi_closed(p, float(u)) - phi_oracle(p, float(u)))
                        for u in us)
            worst_global = max(worst_global, worst)
            rows.append(f"{float(alpha)!r},{m},{worst!r}")
    with open(outfile, "w") as fh:
        fh.write("\n".join(rows) + "\n")
    print(f"{len(rows) - 1} parameter cells -> {outfile}")
    print(f"worst |closed - oracle| anywhere: {worst_global:.3e}")


if __name__ == "__main__":
    main(*sys.argv[1:])
