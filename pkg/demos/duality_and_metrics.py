"""The three views of a hyperplane family and how their metrics compare.

A plane x_d = a1 x1 + ... + a_{d-1} x_{d-1} + ad can be measured by the
affine metric (unit normals plus normalized intercepts), by the max metric
on its code coordinates (ad, a1, ..), or as the Euclidean point (a1, .., ad)
under duality.  All three are equivalent up to small explicit constants on
slope-bounded families; this script measures those constants empirically and
checks the determinant identity that drives the duality arguments.
"""

import numpy as np

from incgeom import (affine_metric, code_coordinates, code_metric, dual_plane,
                     dual_point, phong_stein_determinant)


def random_planes(rng, n, d):
    slopes = rng.uniform(-1, 1, size=(n, d - 1))
    norms = np.sqrt(np.sum(slopes**2, axis=1) + 1.0)
    icpts = rng.uniform(-1, 1, size=n) * norms
    return np.concatenate([slopes, icpts[:, None]], axis=1)


def metric_comparison(rng, d, n=4000):
    a = random_planes(rng, n, d)
    b = random_planes(rng, n, d)
    da = affine_metric(a, b)
    cm = code_metric(code_coordinates(a), code_coordinates(b))
    eu = np.linalg.norm(dual_point(a) - dual_point(b), axis=1)
    print(f"d = {d}, {n} random pairs")
    print(f"  d_A / code-max   in [{np.min(da / cm):.4f}, {np.max(da / cm):.4f}]")
    print(f"  euclid / d_A     in [{np.min(eu / da):.4f}, {np.max(eu / da):.4f}]"
          f"   (lower bound 1/sqrt5 = {1 / np.sqrt(5):.4f})")


def determinant_check(rng):
    worst = 0.0
    for d in (2, 3, 4, 5, 6):
        x = rng.uniform(-1, 1, size=(200, d))
        a = rng.uniform(-1, 1, size=(200, d))
        for xi, ai in zip(x, a):
            worst = max(worst, abs(abs(phong_stein_determinant(xi, ai)) - 1.0))
    print(f"bordered determinant: | |det| - 1 | <= {worst:.2e} "
          "over 1000 random configurations")


def main():
    rng = np.random.default_rng(0)
    for d in (2, 3, 4):
        metric_comparison(rng, d)
    print()
    determinant_check(rng)
    print()
    pi = np.array([0.25, -0.5, 0.125])
    print(f"round trip: plane {pi} -> point {dual_point(pi)} -> "
          f"plane {dual_plane(dual_point(pi))} (bitwise)")


if __name__ == "__main__":
    main()
