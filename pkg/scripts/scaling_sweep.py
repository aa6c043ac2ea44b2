"""Log-log slope of the minimum variance against N for both squeezing types."""

import argparse

from su3squeeze.fock import FERRO, POLAR
from su3squeeze.squeezing import sweep_scaling


def main():
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--n-list", default="50,75,100,150,200")
    p.add_argument("--points", type=int, default=200)
    args = p.parse_args()
    ns = [int(x) for x in args.n_list.split(",")]

    for typ, s in ((1, POLAR), (2, FERRO)):
        sw = sweep_scaling(ns, typ, s, points=args.points)
        for r in sw.results:
            print(f"type {typ}  N={r.n_particles:4d}  min_var {r.min_variance:.5f}  chi_t {r.chi_t_opt:.5f}")
        print(f"type {typ}  slope {sw.slope:.4f}  intercept {sw.intercept:.4f}  rms {sw.residual:.2e}")


if __name__ == "__main__":
    main()
