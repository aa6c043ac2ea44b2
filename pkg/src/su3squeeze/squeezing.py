"""Quadrature variances under one-axis twisting and their asymptotic limits."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np
from scipy import optimize

from .algebra import ObservableCombo, Su2Triad
from .dynamics import (
    EulerAngles,
    TwistingSchedule,
    default_schedule,
    evolve_one_axis,
    reference_spinor,
    reference_triad,
    rotated_triad,
    solve_angles,
)
from .errors import ScheduleMiss
from .fock import ManyBodyState, SecondQuantizedOperator, Spinor, build_basis, coherent_state, promote

log = logging.getLogger(__name__)

NU_TOLERANCE = 0.15


@dataclass(frozen=True)
class Quadrature:
    """``sin(nu) * axis2 + cos(nu) * axis3``."""

    nu: float
    axis2: ObservableCombo
    axis3: ObservableCombo

    def combo(self) -> ObservableCombo:
        return math.sin(self.nu) * self.axis2 + math.cos(self.nu) * self.axis3


def _fold_nu(nu: float) -> float:
    if nu > math.pi / 2:
        nu -= math.pi
    elif nu <= -math.pi / 2:
        nu += math.pi
    return nu


def min_variance_2x2(cov: np.ndarray, tie_tol: float = 1e-9) -> tuple[float, float, float]:
    """Smaller eigenvalue, its direction angle nu, and the larger eigenvalue.

    ``cov`` is ordered (axis2, axis3).  ``nu`` is 0 when the two eigenvalues
    coincide.
    """
    w, v = np.linalg.eigh(cov)
    if w[1] - w[0] <= tie_tol * max(1.0, abs(w[1])):
        return float(w[0]), 0.0, float(w[1])
    s, c = v[:, 0]
    return float(w[0]), _fold_nu(math.atan2(s, c)), float(w[1])


def _cov_from_ops(state: ManyBodyState, op2: SecondQuantizedOperator, op3: SecondQuantizedOperator) -> np.ndarray:
    psi = state.amplitudes
    v2 = op2.matrix @ psi
    v3 = op3.matrix @ psi
    m2 = np.vdot(psi, v2).real
    m3 = np.vdot(psi, v3).real
    c22 = np.vdot(v2, v2).real - m2 * m2
    c33 = np.vdot(v3, v3).real - m3 * m3
    c23 = np.vdot(v2, v3).real - m2 * m3
    return np.array([[c22, c23], [c23, c33]])


def transverse_min_variance(state: ManyBodyState, triad: Su2Triad) -> tuple[float, float]:
    """Minimum variance over quadratures of (X2, X3) and the minimising nu."""
    op2 = promote(state.basis, triad.x2)
    op3 = promote(state.basis, triad.x3)
    var, nu, _ = min_variance_2x2(_cov_from_ops(state, op2, op3))
    return var, nu


class Prediction(NamedTuple):
    min_variance: float
    chi_t_opt: float
    nu: float


def nu_prediction(n: int, chi_t: float, squeeze_type: int) -> float:
    """Approximate squeezing direction ``[arctan(N chi t) - type * chi t] / 2``."""
    return 0.5 * (math.atan(n * chi_t) - squeeze_type * chi_t)


def nu_formula_convention(nu: float) -> float:
    """Express a measured quadrature angle in the convention of ``nu_prediction``.

    The closed-form angle is measured a quarter turn away from the (X2, X3)
    parametrisation used by ``transverse_min_variance``.
    """
    return nu + math.pi / 4


def nu_discrepancy(result: "SqueezeResult") -> float:
    pred = nu_prediction(result.n_particles, result.chi_t_opt, result.squeeze_type)
    return abs(nu_formula_convention(result.nu_opt) - pred)


def asymptotic_prediction(n: int, squeeze_type: int) -> Prediction:
    """Large-N closed forms for the optimal variance and twisting time."""
    if n < 10:
        raise ValueError("asymptotic formulas need N >= 10")
    if squeeze_type == 1:
        var = 0.25 * (9 * n / 4) ** (1 / 3)
        t = (3 / (8 * n**4)) ** (1 / 6)
    elif squeeze_type == 2:
        var = 0.5 * (9 * n) ** (1 / 3)
        t = (6 / n**4) ** (1 / 6)
    else:
        raise ValueError(f"squeeze_type must be 1 or 2, got {squeeze_type!r}")
    return Prediction(var, t, nu_prediction(n, t, squeeze_type))


@dataclass
class SqueezeResult:
    n_particles: int
    squeeze_type: int
    chi_t_opt: float
    min_variance: float
    nu_opt: float
    variance_series: list[tuple[float, float, float]]
    initial_variance: float
    squeezing_db: float
    angles: EulerAngles = field(default_factory=EulerAngles)
    conjugate_variance: float = float("nan")
    polarization: float = float("nan")
    lam: float = float("nan")

    def to_dict(self) -> dict:
        return {
            "N": self.n_particles,
            "type": self.squeeze_type,
            "chi_t_opt": self.chi_t_opt,
            "min_variance": self.min_variance,
            "nu_opt": self.nu_opt,
            "initial_variance": self.initial_variance,
            "squeezing_db": self.squeezing_db,
            "conjugate_variance": self.conjugate_variance,
            "polarization": self.polarization,
            "lambda": self.lam,
            "angles": list(self.angles.as_tuple()),
            "series": [list(row) for row in self.variance_series],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "SqueezeResult":
        return cls(
            n_particles=int(d["N"]),
            squeeze_type=int(d["type"]),
            chi_t_opt=float(d["chi_t_opt"]),
            min_variance=float(d["min_variance"]),
            nu_opt=float(d["nu_opt"]),
            variance_series=[tuple(float(x) for x in row) for row in d["series"]],
            initial_variance=float(d["initial_variance"]),
            squeezing_db=float(d["squeezing_db"]),
            angles=EulerAngles(*d["angles"]),
            conjugate_variance=float(d["conjugate_variance"]),
            polarization=float(d["polarization"]),
            lam=float(d["lambda"]),
        )

    def lab_triad(self) -> Su2Triad:
        """The squeezed triad in the lab frame, ``U X U^dagger``."""
        return rotated_triad(self.angles, self.squeeze_type)


class _Twister:
    """Reference state, diagonal phases and promoted transverse operators for one N."""

    def __init__(self, n: int, squeeze_type: int):
        self.basis = build_basis(n)
        self.state = coherent_state(self.basis, reference_spinor(squeeze_type))
        self.triad = reference_triad(squeeze_type)
        self.op1 = promote(self.basis, self.triad.x1)
        self.op2 = promote(self.basis, self.triad.x2)
        self.op3 = promote(self.basis, self.triad.x3)

    def at(self, chi_t: float) -> ManyBodyState:
        return evolve_one_axis(self.state, chi_t)

    def point(self, chi_t: float) -> tuple[float, float, float]:
        return min_variance_2x2(_cov_from_ops(self.at(chi_t), self.op2, self.op3))


def run_squeezing(
    n: int,
    s: Spinor,
    squeeze_type: int,
    schedule: TwistingSchedule | None = None,
    seed: int = 0,
) -> SqueezeResult:
    """One-axis twisting of the N-particle coherent state of ``s`` in the given family.

    The discrete minimum over the schedule is refined by golden-section
    search in chi*t between its two neighbours.
    """
    if n < 2:
        raise ValueError("need at least two particles")
    if squeeze_type not in (1, 2):
        raise ValueError(f"squeeze_type must be 1 or 2, got {squeeze_type!r}")
    if schedule is None:
        schedule = default_schedule(n)
    angles = solve_angles(s, squeeze_type, seed=seed)
    tw = _Twister(n, squeeze_type)

    times = schedule.chi_t_values
    series = []
    for t in times:
        var, nu, _ = tw.point(t)
        series.append((float(t), var, nu))
    variances = np.array([row[1] for row in series])
    i = int(np.argmin(variances))
    if i == 0 or i == len(times) - 1:
        raise ScheduleMiss(
            f"minimum at chi_t = {times[i]:.4g}, an end of [{times[0]:.4g}, {times[-1]:.4g}]"
        )

    res = optimize.minimize_scalar(
        lambda t: tw.point(t)[0], bracket=(times[i - 1], times[i], times[i + 1]), method="golden", tol=1e-6
    )
    t_opt = float(res.x) if res.fun <= variances[i] else float(times[i])
    var_opt, nu_opt, var_conj = tw.point(t_opt)
    initial = tw.point(0.0)[0]
    x1_mean = float(np.vdot(tw.at(t_opt).amplitudes, tw.op1 @ tw.at(t_opt)).real)

    result = SqueezeResult(
        n_particles=n,
        squeeze_type=squeeze_type,
        chi_t_opt=t_opt,
        min_variance=var_opt,
        nu_opt=nu_opt,
        variance_series=series,
        initial_variance=initial,
        squeezing_db=10 * math.log10(var_opt / initial),
        angles=angles,
        conjugate_variance=var_conj,
        polarization=x1_mean,
        lam=tw.triad.lam,
    )
    if n >= 100 and nu_discrepancy(result) > NU_TOLERANCE:
        log.warning("N=%d type %d: nu_opt %.4f is %.3f rad from the large-N estimate",
                    n, squeeze_type, nu_opt, nu_discrepancy(result))
    return result


@dataclass
class SweepResult:
    results: list[SqueezeResult]
    slope: float
    intercept: float
    residual: float

    @property
    def n_values(self) -> list[int]:
        return [r.n_particles for r in self.results]


def fit_power_law(ns: Sequence[float], values: Sequence[float]) -> tuple[float, float, float]:
    """Least-squares ``log(values) = slope * log(ns) + intercept``; returns RMS residual too."""
    x = np.log(np.asarray(ns, dtype=float))
    y = np.log(np.asarray(values, dtype=float))
    (slope, intercept), *_ = np.linalg.lstsq(np.vstack([x, np.ones_like(x)]).T, y, rcond=None)
    resid = float(np.sqrt(np.mean((y - slope * x - intercept) ** 2)))
    return float(slope), float(intercept), resid


def sweep_scaling(n_list: Sequence[int], squeeze_type: int, s: Spinor, points: int = 200, seed: int = 0) -> SweepResult:
    """Run the squeezing pipeline for each N and fit the log-log slope of the minimum variance."""
    n_list = list(n_list)
    if len(n_list) < 4:
        raise ValueError("need at least four particle numbers")
    if any(b <= a for a, b in zip(n_list, n_list[1:])):
        raise ValueError("particle numbers must be strictly ascending")
    if n_list[0] < 20:
        raise ValueError("particle numbers must be >= 20")
    results = [run_squeezing(n, s, squeeze_type, default_schedule(n, points), seed=seed) for n in n_list]
    slope, intercept, resid = fit_power_law(n_list, [r.min_variance for r in results])
    return SweepResult(results, slope, intercept, resid)
