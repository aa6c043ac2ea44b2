"""SU(3) rotations of spin-1 condensates and one-axis twisting.

Twisting runs use a co-rotated frame: for a target spinor s we find a
rotation U with ``s = U ref`` (up to phase), where ``ref`` is a fixed
reference spinor of the chosen squeezing family.  The twisted state is
``U exp(-i chi t Jz^2) |ref>`` and the primed observables are ``U X U^dagger``,
so all expectation values can be computed with the unrotated reference state,
the diagonal Hamiltonian Jz^2, and the reference triad.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy import linalg, optimize

from .algebra import GENERATORS, ObservableCombo, Su2Triad, Su3Rotation, classify_triad, conjugate_triad, observable
from .errors import KernelNotDiagonal, NoConvergence
from .fock import (
    ManyBodyState,
    SecondQuantizedOperator,
    Spinor,
    coherent_state,
    expectation,
    promote,
    second_quantize,
)

JZ = GENERATORS[2]
E1 = np.array([1.0, 0.0, 0.0], dtype=complex)


def wrap_angle(a: float) -> float:
    """Map an angle into (-pi, pi]."""
    return float(math.pi - (math.pi - a) % (2 * math.pi))


@dataclass(frozen=True)
class EulerAngles:
    alpha: float = 0.0
    beta: float = 0.0
    gamma: float = 0.0
    phi: float = 0.0

    def __post_init__(self):
        for name in ("alpha", "beta", "gamma", "phi"):
            object.__setattr__(self, name, wrap_angle(float(getattr(self, name))))

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.alpha, self.beta, self.gamma, self.phi)


@dataclass(frozen=True, eq=False)
class TwistingSchedule:
    chi_t_values: np.ndarray
    twist_kernel: np.ndarray = JZ

    def __post_init__(self):
        t = np.asarray(self.chi_t_values, dtype=float).ravel()
        if t.size == 0:
            raise ValueError("schedule needs at least one time")
        if np.any(t < 0) or np.any(np.diff(t) <= 0):
            raise ValueError("chi*t values must be non-negative and strictly increasing")
        t.setflags(write=False)
        object.__setattr__(self, "chi_t_values", t)
        object.__setattr__(self, "twist_kernel", np.asarray(self.twist_kernel, dtype=complex))


def default_schedule(n: int, points: int = 200) -> TwistingSchedule:
    """Log-spaced chi*t in [1e-3, 10] * N^(-2/3)."""
    scale = n ** (-2.0 / 3.0)
    return TwistingSchedule(np.geomspace(1e-3 * scale, 10 * scale, points))


# ---------------------------------------------------------------------------
# single-particle rotations
# ---------------------------------------------------------------------------

_EULER_AXES = ("Jz", "Jy", "Jz")


def _rotation(angles: EulerAngles, last: str, phi_shift: float = 0.0) -> Su3Rotation:
    names = _EULER_AXES + (last,)
    vals = (angles.alpha, angles.beta, angles.gamma, angles.phi + phi_shift)
    return Su3Rotation.from_factors([(observable(n), a) for n, a in zip(names, vals)])


def rotation_u1(angles: EulerAngles) -> Su3Rotation:
    """``exp(-i a Jz) exp(-i b Jy) exp(-i g Jz) exp(-i phi Qyz)``."""
    return _rotation(angles, "Qyz")


def rotation_u2(angles: EulerAngles) -> Su3Rotation:
    """``exp(-i a Jz) exp(-i b Jy) exp(-i g Jz) exp(-i phi Qxy)``."""
    return _rotation(angles, "Qxy")


def reference_rotation(family: int) -> Su3Rotation:
    """Rotation taking e1 = (1, 0, 0) to the family's reference spinor."""
    if family == 1:
        return Su3Rotation.from_factors([(observable("Jy"), math.pi / 2)])
    if family == 2:
        return Su3Rotation.from_factors([(observable("Qxy"), math.pi / 4)])
    raise ValueError(f"family must be 1 or 2, got {family!r}")


def reference_spinor(family: int) -> Spinor:
    """x-polarized (1/2, 1/√2, 1/2) for type 1, (1/√2, 0, 1/√2) for type 2."""
    return Spinor.normalized(reference_rotation(family).single_particle @ E1)


def reference_triad(family: int) -> Su2Triad:
    names = {1: ("Jx", "Jy", "Jz"), 2: ("Dxy", "Qxy", "Jz")}[family]
    return classify_triad([observable(n) for n in names])


def frame_rotation(angles: EulerAngles, family: int) -> Su3Rotation:
    if family == 1:
        return rotation_u1(angles)
    if family == 2:
        return rotation_u2(angles)
    raise ValueError(f"family must be 1 or 2, got {family!r}")


class _FastFrame:
    """Cached eigendecompositions so the optimiser can build U cheaply."""

    def __init__(self, family: int):
        last = "Qyz" if family == 1 else "Qxy"
        self.decomp = [np.linalg.eigh(observable(n).matrix()) for n in _EULER_AXES + (last,)]
        self.ref = reference_spinor(family).zeta

    def mapped(self, x: np.ndarray) -> np.ndarray:
        v = self.ref
        for (w, vecs), a in zip(reversed(self.decomp), reversed(x)):
            v = vecs @ (np.exp(-1j * a * w) * (vecs.conj().T @ v))
        return v


def solve_angles(s: Spinor, family: int, n_starts: int = 16, seed: int = 0, tol: float = 1e-10) -> EulerAngles:
    """Angles whose family rotation maps the reference spinor onto ``s``.

    Multi-start Nelder-Mead on ``1 - |<s|U ref>|^2``.  The first 16 starts
    are the lattice {-pi/2, pi/2}^4; any further starts are drawn from a
    seeded generator.  Solutions are not unique; any one within ``tol`` of
    unit fidelity is returned.
    """
    frame = _FastFrame(family)
    target = s.zeta

    def infidelity(x):
        return 1.0 - abs(np.vdot(target, frame.mapped(x))) ** 2

    starts = [np.array(p) for p in itertools.product((-math.pi / 2, math.pi / 2), repeat=4)]
    rng = np.random.default_rng(seed)
    while len(starts) < n_starts:
        starts.append(rng.uniform(-math.pi, math.pi, 4))
    best_x, best_val = None, np.inf
    for x0 in starts:
        res = optimize.minimize(
            infidelity, x0, method="Nelder-Mead", options={"xatol": 1e-6, "fatol": 1e-13, "maxiter": 2000},
        )
        if res.fun < best_val:
            best_x, best_val = res.x, res.fun
    for method, opts in (("Nelder-Mead", {"xatol": 1e-12, "fatol": 1e-17, "maxiter": 4000}), ("BFGS", {"gtol": 1e-14})):
        if best_val <= tol * 1e-3:
            break
        res = optimize.minimize(infidelity, best_x, method=method, options=opts)
        if res.fun < best_val:
            best_x, best_val = res.x, res.fun
    if best_val > 1e-8:
        raise NoConvergence(f"best fidelity 1 - {best_val:.3g} after {len(starts)} starts")
    return EulerAngles(*best_x)


def mapped_spinor(angles: EulerAngles, family: int) -> np.ndarray:
    """The lab-frame spinor ``U(angles) ref`` for the given family."""
    return frame_rotation(angles, family).single_particle @ reference_spinor(family).zeta


def fidelity(s: Spinor, angles: EulerAngles, family: int) -> float:
    return float(abs(np.vdot(s.zeta, mapped_spinor(angles, family))) ** 2)


def rotated_triad(angles: EulerAngles, family: int) -> Su2Triad:
    """Family reference triad conjugated by U1 (type 1) or U2 (type 2)."""
    return conjugate_triad(reference_triad(family), frame_rotation(angles, family))


def polarization_axis(state: ManyBodyState, triad: Su2Triad) -> tuple[int, np.ndarray]:
    """Index (0-based) of the triad member with the largest ``|<X>|``, and all three means."""
    means = np.array([expectation(state, promote(state.basis, m)) for m in triad.members])
    return int(np.argmax(np.abs(means))), means


# ---------------------------------------------------------------------------
# many-body action
# ---------------------------------------------------------------------------


def expm_multiply_taylor(op: SecondQuantizedOperator, vec: np.ndarray, angle: float, norm_bound: float,
                         rtol: float = 1e-13) -> np.ndarray:
    """``exp(-i angle H) vec`` by scaled Taylor series.

    The interval is split into ``s`` equal substeps with ``|angle| * norm_bound / s <= 1``
    and each substep's series is cut once a term falls below ``rtol`` relative.
    """
    steps = max(1, int(math.ceil(abs(angle) * norm_bound)))
    h = -1j * angle / steps
    mat = op.matrix
    out = np.array(vec, dtype=complex)
    for _ in range(steps):
        term = out
        acc = out.copy()
        scale = np.linalg.norm(acc)
        for k in range(1, 200):
            term = (h / k) * (mat @ term)
            acc += term
            if np.linalg.norm(term) <= rtol * scale:
                break
        out = acc
    return out


def _factors(u: Su3Rotation):
    if u.generator_log:
        return u.generator_log
    if np.allclose(u.single_particle, np.eye(3), atol=1e-15, rtol=0):
        return ()
    h = 1j * linalg.logm(u.single_particle)
    h = (h + h.conj().T) / 2
    return ((ObservableCombo.from_matrix(h, tol=1e-8), 1.0),)


def apply_rotation(state: ManyBodyState, u: Su3Rotation, method: str = "auto") -> ManyBodyState:
    """Act with the many-body lift of ``u`` on ``state``.

    ``method="closed"`` (or ``"auto"`` on a coherent state) maps the spinor
    directly.  ``"taylor"`` applies each exponential factor to the amplitude
    vector, rightmost first.
    """
    if method not in ("auto", "closed", "taylor"):
        raise ValueError(method)
    if method == "closed" or (method == "auto" and state.spinor is not None):
        if state.spinor is None:
            raise ValueError("closed-form rotation needs a coherent state")
        return coherent_state(state.basis, Spinor.normalized(u.single_particle @ state.spinor.zeta))
    n = state.basis.n_particles
    vec = state.amplitudes
    for gen, angle in reversed(_factors(u)):
        kernel = gen.matrix()
        op = second_quantize(state.basis, kernel)
        bound = n * float(np.max(np.abs(np.linalg.eigvalsh(kernel))))
        vec = expm_multiply_taylor(op, vec, angle, bound)
    return ManyBodyState(state.basis, vec)


def _diagonal_values(state: ManyBodyState, kernel: np.ndarray) -> np.ndarray:
    kernel = np.asarray(kernel, dtype=complex)
    if np.max(np.abs(kernel - np.diag(np.diag(kernel)))) > 0:
        raise KernelNotDiagonal("twist kernel must be diagonal in the m basis; rotate the frame first")
    return state.basis.occupations @ np.diag(kernel).real


def evolve_one_axis(state: ManyBodyState, chi_t: float, kernel: np.ndarray = JZ) -> ManyBodyState:
    """State after ``exp(-i chi t G^2)`` for a diagonal single-particle kernel G."""
    k = _diagonal_values(state, kernel)
    return ManyBodyState(state.basis, state.amplitudes * np.exp(-1j * chi_t * k**2))


def one_axis_evolve(state: ManyBodyState, schedule: TwistingSchedule) -> list[ManyBodyState]:
    k2 = _diagonal_values(state, schedule.twist_kernel) ** 2
    return [ManyBodyState(state.basis, state.amplitudes * np.exp(-1j * t * k2)) for t in schedule.chi_t_values]


def dense_lift(basis, u: Su3Rotation) -> np.ndarray:
    """Dense many-body matrix of a rotation (small N only)."""
    cols = []
    for j in range(basis.dim):
        e = np.zeros(basis.dim, dtype=complex)
        e[j] = 1
        cols.append(apply_rotation(ManyBodyState(basis, e), u, method="taylor").amplitudes)
    return np.array(cols).T


def random_rotation(rng: np.random.Generator, n_factors: int = 3) -> Su3Rotation:
    factors: Sequence = [
        (ObservableCombo(rng.normal(size=8)).normalized(), rng.uniform(0, 2 * math.pi)) for _ in range(n_factors)
    ]
    return Su3Rotation.from_factors(factors)
