"""Print the su(3) root hexagon, the canonical su(2) triads and the raising-operator search."""

import argparse

from su3squeeze import algebra


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--grid-resolution", type=float, default=0.01)
    args = p.parse_args()

    f = algebra.structure_constants()
    print(f"antisymmetry {algebra.antisymmetry_residual(f):.2e}  jacobi {algebra.jacobi_residual(f):.2e}")
    pairs = algebra.root_diagram(f)
    for root, e in pairs:
        print(f"root ({root.alpha1:+.6f}, {root.alpha2:+.6f})  E = {e.coeffs.round(6)}")
    for t in algebra.enumerate_canonical_triads(pairs):
        print(f"lambda {t.lam:.0f}: {t.x1!r}  {t.x2!r}  {t.x3!r}")
    for s in algebra.appendix_b_search(args.grid_resolution, pairs):
        print(f"raising (c1, c2) = ({s.c1:+.6f}, {s.c2:+.6f}) -> lambda {s.lam:.6f}")


if __name__ == "__main__":
    main()
