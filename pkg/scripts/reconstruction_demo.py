"""Run every reconstruction pipeline on its desk phantom and print a table.

Run: python scripts/reconstruction_demo.py
"""

import math

import numpy as np

from georadon.dual_ops import DualConfig
from georadon.fields import make_phantom
from georadon.geometry import Point, Space, base_point, point
from georadon.inversion import invert_mader, invert_shifted_dual, \
    mader_classical


def main():
    cfg = DualConfig()
    rows = []

    eu32 = Space("euclidean", 3, 2)
    g32 = make_phantom(eu32, "gaussian")
    rows.append(("euclidean n=3 k=2, sgn operator",
                 invert_mader(eu32, g32, Point(np.zeros(3)), cfg)))
    rows.append(("euclidean n=3 k=2, shifted dual",
                 invert_shifted_dual(eu32, g32, Point(np.zeros(3)), cfg)))

    eu21 = Space("euclidean", 2, 1)
    g21 = make_phantom(eu21, "gaussian")
    rows.append(("euclidean n=2 k=1, log operator",
                 invert_mader(eu21, g21, Point(np.array([0.5, 0.0])), cfg)))

    sp21 = Space("sphere", 2, 1)
    rows.append(("sphere n=2 k=1, log operator",
                 invert_mader(sp21, make_phantom(sp21, "constant-even"),
                              point(sp21, [0, 0, 1.0]), cfg)))
    sp32 = Space("sphere", 3, 2)
    rows.append(("sphere n=3 k=2, shifted dual",
                 invert_shifted_dual(sp32, make_phantom(sp32, "constant-even"),
                                     point(sp32, [0, 0, 0, 1.0]), cfg)))

    hy21 = Space("hyperbolic", 2, 1)
    rows.append(("hyperbolic n=2 k=1, log operator",
                 invert_mader(hy21,
                              make_phantom(hy21, "radial-hyperbolic", power=6),
                              base_point(hy21), cfg)))
    hy32 = Space("hyperbolic", 3, 2)
    rows.append(("hyperbolic n=3 k=2, shifted dual",
                 invert_shifted_dual(
                     hy32, make_phantom(hy32, "radial-hyperbolic", power=6),
                     base_point(hy32), cfg)))

    g_line = lambda th, s: math.sqrt(math.pi) * np.exp(-s * s)
    rows.append(("classical hyperplane n=2",
                 mader_classical(2, g_line, np.zeros(2), truth=1.0)))
    g_plane = lambda th, s: math.pi * np.exp(-s * s)
    rows.append(("classical hyperplane n=3",
                 mader_classical(3, g_plane, np.zeros(3), truth=1.0)))

    print(f"{'pipeline':42s} {'estimate':>12s} {'rel err':>10s} {'residual':>10s}")
    for name, rep in rows:
        print(f"{name:42s} {rep.estimate:12.8f} {rep.rel_error:10.2e} "
              f"{rep.conditioning:10.2e}")


if __name__ == "__main__":
    main()
