"""Incidence ratios of the product construction across scales.

Builds the point/line pair whose incidence count meets the linear bound
delta |P| |Pi| up to constants, counts incidences at each scale, and prints
the ratio table.  The d=3 run also shows the exact layer factorization:
lifting multiplies the count by the number of layers, nothing else.
"""

import time

from incgeom import (ConstructionSpec, construct_sharp, construct_sharp_2d,
                     count_incidences_fast, lift_to_dim)


def planar_table():
    print("planar pairs, s = t = 1.75, C = 1")
    print(f"{'delta':>10} {'|P|':>8} {'|L|':>8} {'incidences':>12} {'ratio':>8}")
    for k in range(5, 9):
        delta = 2.0**-k
        P, L = construct_sharp_2d(1.75, 1.75, delta)
        t0 = time.perf_counter()
        rep = count_incidences_fast(P, L, delta)
        dt = time.perf_counter() - t0
        print(
            f"{f'2^-{k}':>10} {len(P):>8} {len(L):>8} "
            f"{rep.count:>12} {rep.ratio:>8.4f}   ({dt:.2f} s)"
        )
    print()


def lift_factorization():
    delta = 2.0**-6
    P2, L2 = construct_sharp_2d(1.75, 1.75, delta)
    P3, L3 = lift_to_dim(P2, L2, 3, delta)
    flat = count_incidences_fast(P2, L2, delta)
    lifted = count_incidences_fast(P3, L3, delta)
    layers = P3.meta["layers"]
    print("lift to d = 3 at delta = 2^-6")
    print(f"  2d count {flat.count}, layers {layers}, "
          f"3d count {lifted.count} = {layers} * {flat.count}: "
          f"{lifted.count == layers * flat.count}")
    print(f"  ratio moves from {flat.ratio:.4f} to {lifted.ratio:.4f} "
          "(the layer factor cancels)")
    print()


def main():
    planar_table()
    lift_factorization()
    P3, L3 = construct_sharp(ConstructionSpec(d=3, delta=2.0**-6, s=1.5, t=1.5))
    rep = count_incidences_fast(P3, L3, 2.0**-6)
    print(f"different exponents (s = t = 1.5): |P| = {len(P3)}, "
          f"|Pi| = {len(L3)}, ratio {rep.ratio:.4f}")
    print("ratios stay within a constant band across scales and exponents;")
    print("that is the sharpness claim in numerical form.")


if __name__ == "__main__":
    main()
