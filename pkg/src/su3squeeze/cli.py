"""Command-line front end: ``algebra-report``, ``squeeze``, ``sweep``.

Exit codes: 0 success, 1 invariant failure, 2 runtime failure, 3 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass

import numpy as np

from . import algebra
from .dynamics import TwistingSchedule, default_schedule
from .errors import ScheduleMiss, Su3SqueezeError
from .fock import MAX_PARTICLES, Spinor
from .squeezing import run_squeezing, sweep_scaling

EXIT_OK, EXIT_INVARIANT, EXIT_RUNTIME, EXIT_USAGE = 0, 1, 2, 3

DEFAULT_SPINORS = {1: "0,1,0", 2: "1,0,0"}


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    n_particles: int | None = None
    n_list: list[int] | None = None
    spinor: Spinor | None = None
    squeeze_type: int = 1
    chi_t_window: tuple[float, float] | str = "auto"
    points: int = 200
    output_path: str | None = None
    format: str = "json"
    seed: int = 0


def parse_spinor(text: str, warn=None) -> Spinor:
    """Parse ``re[:im],re[:im],re[:im]`` in the order (zeta_1, zeta_0, zeta_-1).

    Off-norm input is rescaled (with a warning) when within 1e-6 of unit
    norm and rejected otherwise.
    """
    parts = text.split(",")
    if len(parts) != 3:
        raise UsageError(f"spinor needs three components, got {text!r}")
    zeta = []
    for p in parts:
        bits = p.strip().split(":")
        if len(bits) > 2:
            raise UsageError(f"bad spinor component {p!r}")
        try:
            re = float(bits[0])
            im = float(bits[1]) if len(bits) == 2 else 0.0
        except ValueError as exc:
            raise UsageError(f"bad spinor component {p!r}") from exc
        zeta.append(complex(re, im))
    z = np.array(zeta)
    norm = float(np.linalg.norm(z))
    if abs(norm - 1) > 1e-6:
        raise UsageError(f"spinor norm {norm:.9g} is not 1 (tolerance 1e-6)")
    if abs(norm - 1) > 1e-12 and warn is not None:
        warn(f"warning: spinor norm {norm:.15g} rescaled to 1")
    return Spinor.normalized(z)


def parse_n_list(text: str) -> list[int]:
    try:
        ns = [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise UsageError(f"bad --n-list {text!r}") from exc
    if len(ns) < 4:
        raise UsageError("--n-list needs at least four particle numbers")
    if any(b <= a for a, b in zip(ns, ns[1:])):
        raise UsageError("--n-list must be strictly ascending")
    if ns[0] < 20 or ns[-1] > MAX_PARTICLES:
        raise UsageError(f"--n-list values must lie in [20, {MAX_PARTICLES}]")
    return ns


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="su3squeeze", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    rep = sub.add_parser("algebra-report", help="structure constants, roots, triads, raising-operator search")
    rep.add_argument("--format", choices=("json", "csv"), default="json")
    rep.add_argument("--out")
    rep.add_argument("--grid-resolution", type=float, default=0.01)

    for name, helptext in (("squeeze", "one twisting run"), ("sweep", "scaling sweep over N")):
        sp = sub.add_parser(name, help=helptext)
        if name == "squeeze":
            sp.add_argument("--n", type=int, required=True)
        else:
            sp.add_argument("--n-list", required=True)
        sp.add_argument("--spinor", help="re[:im],re[:im],re[:im]; default polar (type 1) or ferro (type 2)")
        sp.add_argument("--type", type=int, choices=(1, 2), default=1)
        sp.add_argument("--points", type=int, default=200)
        sp.add_argument("--format", choices=("json", "csv"), default="json" if name == "squeeze" else "csv")
        sp.add_argument("--out")
        sp.add_argument("--seed", type=int, default=0)
        if name == "squeeze":
            sp.add_argument("--chi-t-min", type=float)
            sp.add_argument("--chi-t-max", type=float)
    return p


def config_from_args(args) -> RunConfig:
    cfg = RunConfig(command=args.command, format=args.format, output_path=args.out)
    if args.command == "algebra-report":
        return cfg
    spinor_text = args.spinor or DEFAULT_SPINORS[args.type]
    cfg.spinor = parse_spinor(spinor_text, warn=lambda m: print(m, file=sys.stderr))
    cfg.squeeze_type = args.type
    cfg.seed = args.seed
    if args.points < 3:
        raise UsageError("--points must be at least 3")
    cfg.points = args.points
    if args.command == "squeeze":
        if not 2 <= args.n <= MAX_PARTICLES:
            raise UsageError(f"--n must lie in [2, {MAX_PARTICLES}]")
        cfg.n_particles = args.n
        if (args.chi_t_min is None) != (args.chi_t_max is None):
            raise UsageError("give both --chi-t-min and --chi-t-max, or neither")
        if args.chi_t_min is not None:
            if not 0 <= args.chi_t_min < args.chi_t_max:
                raise UsageError("need 0 <= chi-t-min < chi-t-max")
            cfg.chi_t_window = (args.chi_t_min, args.chi_t_max)
    else:
        cfg.n_list = parse_n_list(args.n_list)
    return cfg


def _emit(text: str, path: str | None) -> None:
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def algebra_report(grid_resolution: float = 0.01) -> dict:
    f = algebra.structure_constants()
    checks = {}
    checks["antisymmetry"] = algebra.antisymmetry_residual(f) < 1e-10
    checks["jacobi"] = algebra.jacobi_residual(f) < 1e-9
    checks["reconstruction"] = algebra.reconstruction_residual(f) < 1e-10
    pairs = algebra.root_diagram(f)
    roots = [r for r, _ in pairs]
    checks["hexagon"] = all(abs(math.hypot(*r) - 2) < 1e-10 for r in roots) and all(
        abs((math.atan2(b.alpha2, b.alpha1) - math.atan2(a.alpha2, a.alpha1)) % (2 * math.pi) - math.pi / 3) < 1e-10
        for a, b in zip(roots, roots[1:] + roots[:1])
    )
    checks["eigen_operators"] = all(
        np.max(np.abs(algebra.commutator(algebra.GENERATORS[2], e.matrix) - r.alpha1 * e.matrix)) < 1e-10
        and np.max(np.abs(algebra.commutator(algebra.GENERATORS[7], e.matrix) - r.alpha2 * e.matrix)) < 1e-10
        for r, e in pairs
    )
    triads = algebra.enumerate_canonical_triads(pairs)
    checks["triad_lambdas"] = all(t.kind in (1, 2) for t in triads)
    search = algebra.appendix_b_search(grid_resolution, pairs)
    checks["raising_search"] = bool(search) and all(abs(s.lam - round(s.lam)) < 1e-10 and round(s.lam) in (1, 2)
                                                    for s in search)
    lambdas = sorted({int(round(t.lam)) for t in triads} | {int(round(s.lam)) for s in search})
    checks["two_classes"] = lambdas == [1, 2]
    return {
        "roots": [[r.alpha1, r.alpha2] for r in roots],
        "triads": [t.to_dict() for t in triads],
        "raising_search": [{"c1": s.c1, "c2": s.c2, "lambda": s.lam, "residual": s.residual} for s in search],
        "lambda_values": lambdas,
        "residuals": {
            "antisymmetry": algebra.antisymmetry_residual(f),
            "jacobi": algebra.jacobi_residual(f),
            "reconstruction": algebra.reconstruction_residual(f),
        },
        "checks": checks,
    }


def _report_csv(report: dict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["section", "index", "lambda"] + [f"v{i}" for i in range(1, 9)])
    for i, (a1, a2) in enumerate(report["roots"]):
        w.writerow(["root", i, "", repr(a1), repr(a2)])
    for i, t in enumerate(report["triads"]):
        for m in t["members"]:
            w.writerow(["triad", i, repr(t["lambda"])] + [repr(c) for c in m])
    for i, s in enumerate(report["raising_search"]):
        w.writerow(["raising", i, repr(s["lambda"]), repr(s["c1"]), repr(s["c2"])])
    for name, ok in report["checks"].items():
        w.writerow(["check", name, "", "pass" if ok else "FAIL"])
    return buf.getvalue()


def cmd_algebra_report(cfg: RunConfig, grid_resolution: float = 0.01) -> int:
    report = algebra_report(grid_resolution)
    text = json.dumps(report, indent=1) + "\n" if cfg.format == "json" else _report_csv(report)
    _emit(text, cfg.output_path)
    failing = [k for k, ok in report["checks"].items() if not ok]
    if failing:
        print("invariant failure: " + ", ".join(failing), file=sys.stderr)
        return EXIT_INVARIANT
    return EXIT_OK


def squeeze_summary(result) -> str:
    return (f"N={result.n_particles} type={result.squeeze_type} min_var={result.min_variance!r} "
            f"chi_t_opt={result.chi_t_opt!r} db={result.squeezing_db!r}")


def series_csv(result) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["chi_t", "min_variance", "nu"])
    for row in result.variance_series:
        w.writerow([repr(x) for x in row])
    return buf.getvalue()


def cmd_squeeze(cfg: RunConfig) -> int:
    n = cfg.n_particles
    if cfg.chi_t_window == "auto":
        schedule = default_schedule(n, cfg.points)
    else:
        lo, hi = cfg.chi_t_window
        schedule = TwistingSchedule(np.linspace(lo, hi, cfg.points))
    try:
        result = run_squeezing(n, cfg.spinor, cfg.squeeze_type, schedule, seed=cfg.seed)
    except ScheduleMiss as exc:
        print(f"schedule miss: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    except Su3SqueezeError as exc:
        print(f"runtime failure: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    print(squeeze_summary(result))
    body = json.dumps(result.to_dict()) + "\n" if cfg.format == "json" else series_csv(result)
    _emit(body, cfg.output_path)
    return EXIT_OK


def sweep_csv(sweep) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["N", "min_variance", "chi_t_opt"])
    for r in sweep.results:
        w.writerow([r.n_particles, repr(r.min_variance), repr(r.chi_t_opt)])
    buf.write(f"# slope={sweep.slope!r} intercept={sweep.intercept!r} residual={sweep.residual!r}\n")
    return buf.getvalue()


def cmd_sweep(cfg: RunConfig) -> int:
    try:
        sweep = sweep_scaling(cfg.n_list, cfg.squeeze_type, cfg.spinor, points=cfg.points, seed=cfg.seed)
    except Su3SqueezeError as exc:
        print(f"runtime failure: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    if cfg.format == "json":
        body = json.dumps({
            "type": cfg.squeeze_type,
            "rows": [{"N": r.n_particles, "min_variance": r.min_variance, "chi_t_opt": r.chi_t_opt}
                     for r in sweep.results],
            "slope": sweep.slope,
            "intercept": sweep.intercept,
            "residual": sweep.residual,
        }) + "\n"
    else:
        body = sweep_csv(sweep)
    _emit(body, cfg.output_path)
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = config_from_args(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if cfg.command == "algebra-report":
        if args.grid_resolution <= 0 or args.grid_resolution > 0.01:
            print("usage error: --grid-resolution must lie in (0, 0.01]", file=sys.stderr)
            return EXIT_USAGE
        try:
            return cmd_algebra_report(cfg, args.grid_resolution)
        except Su3SqueezeError as exc:
            print(f"invariant failure: {exc}", file=sys.stderr)
            return EXIT_INVARIANT
    if cfg.command == "squeeze":
        return cmd_squeeze(cfg)
    return cmd_sweep(cfg)


if __name__ == "__main__":
    sys.exit(main())
