"""Symmetric Fock space of N spin-1 bosons in a single spatial mode.

Basis states are occupation triples (n1, n0, n-1) ordered lexicographically
descending in (n1, n0).  States are dense complex vectors; second-quantized
operators are sparse CSR matrices.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from math import lgamma
from typing import Sequence

import numpy as np
import scipy.sparse as sp

from .errors import ImaginaryResidual, NotHermitian, SizeLimit

MAX_PARTICLES = 300


@dataclass(frozen=True, eq=False)
class FockBasis:
    n_particles: int
    occupations: np.ndarray = field(repr=False)

    @property
    def dim(self) -> int:
        return len(self.occupations)

    def index(self, n1: int, n0: int) -> int:
        """Position of (n1, n0, N - n1 - n0) in the ordering."""
        rest = self.n_particles - n1
        return rest * (rest + 1) // 2 + (rest - n0)

    def indices(self, n1: np.ndarray, n0: np.ndarray) -> np.ndarray:
        rest = self.n_particles - n1
        return rest * (rest + 1) // 2 + (rest - n0)

    @property
    def magnetization(self) -> np.ndarray:
        """n1 - n-1 for every basis state (eigenvalues of the collective Jz)."""
        return self.occupations[:, 0] - self.occupations[:, 2]


def build_basis(n: int) -> FockBasis:
    if n < 0:
        raise ValueError("particle number must be non-negative")
    if n > MAX_PARTICLES:
        raise SizeLimit(f"N = {n} exceeds the limit of {MAX_PARTICLES}")
    occ = [(n1, n0, n - n1 - n0) for n1 in range(n, -1, -1) for n0 in range(n - n1, -1, -1)]
    occ = np.array(occ, dtype=np.int64).reshape(-1, 3)
    occ.setflags(write=False)
    return FockBasis(n, occ)


@dataclass(frozen=True, eq=False)
class Spinor:
    """Single-particle state (zeta_1, zeta_0, zeta_-1)."""

    zeta: np.ndarray

    def __post_init__(self):
        z = np.asarray(self.zeta, dtype=complex).reshape(3)
        if abs(np.linalg.norm(z) - 1) > 1e-12:
            raise ValueError(f"spinor is not normalized (norm {np.linalg.norm(z):.15g})")
        z.setflags(write=False)
        object.__setattr__(self, "zeta", z)

    @classmethod
    def normalized(cls, zeta: Sequence[complex]) -> "Spinor":
        z = np.asarray(zeta, dtype=complex)
        return cls(z / np.linalg.norm(z))


POLAR = Spinor([0, 1, 0])
FERRO = Spinor([1, 0, 0])


@dataclass(frozen=True, eq=False)
class ManyBodyState:
    basis: FockBasis
    amplitudes: np.ndarray
    spinor: Spinor | None = None  # set when the state is known to be coherent

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def overlap(self, other: "ManyBodyState") -> complex:
        return complex(np.vdot(self.amplitudes, other.amplitudes))


def coherent_state(basis: FockBasis, s: Spinor) -> ManyBodyState:
    """``(zeta . a^dagger)^N |vac> / sqrt(N!)``, from log-space multinomial weights."""
    n = basis.n_particles
    occ = basis.occupations
    log_fact = np.array([lgamma(k + 1) for k in range(n + 1)])
    log_amp = 0.5 * (log_fact[n] - log_fact[occ].sum(axis=1))
    phase = np.zeros(basis.dim)
    alive = np.ones(basis.dim, dtype=bool)
    for m in range(3):
        z = s.zeta[m]
        k = occ[:, m]
        if z == 0:
            alive &= k == 0
            continue
        log_amp = log_amp + k * np.log(abs(z))
        phase = phase + k * np.angle(z)
    amp = np.where(alive, np.exp(log_amp) * np.exp(1j * phase), 0.0)
    return ManyBodyState(basis, amp, s)


@dataclass(frozen=True, eq=False)
class SecondQuantizedOperator:
    basis: FockBasis
    matrix: sp.csr_matrix = field(repr=False)

    def __matmul__(self, vec):
        if isinstance(vec, ManyBodyState):
            return self.matrix @ vec.amplitudes
        return self.matrix @ vec

    def __add__(self, other):
        return SecondQuantizedOperator(self.basis, (self.matrix + other.matrix).tocsr())

    def __sub__(self, other):
        return SecondQuantizedOperator(self.basis, (self.matrix - other.matrix).tocsr())

    def __mul__(self, scalar):
        return SecondQuantizedOperator(self.basis, (self.matrix * scalar).tocsr())

    __rmul__ = __mul__

    def dense(self) -> np.ndarray:
        return self.matrix.toarray()

    def is_hermitian(self, tol: float = 1e-12) -> bool:
        diff = self.matrix - self.matrix.conj().T
        return diff.nnz == 0 or float(np.max(np.abs(diff.data))) <= tol

    def max_row_nnz(self) -> int:
        return int(np.max(np.diff(self.matrix.indptr))) if self.basis.dim else 0


def second_quantize(basis: FockBasis, kernel: np.ndarray, tol: float = 1e-12) -> SecondQuantizedOperator:
    """``sum_mn K_mn a_m^dagger a_n`` on the N-particle symmetric space."""
    kernel = np.asarray(kernel, dtype=complex)
    if kernel.shape != (3, 3):
        raise ValueError("kernel must be 3x3")
    if np.max(np.abs(kernel - kernel.conj().T)) > tol:
        raise NotHermitian("single-particle kernel is not Hermitian")
    occ = basis.occupations
    cols = np.arange(basis.dim)
    rows_all, cols_all, vals_all = [], [], []
    diag = (occ * np.diag(kernel)[None, :]).sum(axis=1)
    rows_all.append(cols)
    cols_all.append(cols)
    vals_all.append(diag)
    for m in range(3):
        for n in range(3):
            if m == n or kernel[m, n] == 0:
                continue
            ok = occ[:, n] > 0
            src = occ[ok]
            dst = src.copy()
            dst[:, n] -= 1
            dst[:, m] += 1
            rows_all.append(basis.indices(dst[:, 0], dst[:, 1]))
            cols_all.append(cols[ok])
            vals_all.append(kernel[m, n] * np.sqrt(dst[:, m] * src[:, n]))
    mat = sp.csr_matrix(
        (np.concatenate(vals_all), (np.concatenate(rows_all), np.concatenate(cols_all))),
        shape=(basis.dim, basis.dim),
    )
    mat.eliminate_zeros()
    return SecondQuantizedOperator(basis, mat)


def promote(basis: FockBasis, obs) -> SecondQuantizedOperator:
    """Second-quantize an ObservableCombo (or any object with ``.matrix()``)."""
    return second_quantize(basis, obs.matrix())


def expectation(state: ManyBodyState, op: SecondQuantizedOperator, tol: float = 1e-9) -> float:
    if op.basis.n_particles != state.basis.n_particles:
        raise ValueError("state and operator live on different bases")
    val = np.vdot(state.amplitudes, op.matrix @ state.amplitudes)
    if abs(val.imag) > tol * max(1.0, abs(val.real)):
        raise ImaginaryResidual(f"imaginary part {val.imag:.3g} in expectation value")
    return float(val.real)


def covariance_matrix(state: ManyBodyState, ops: Sequence[SecondQuantizedOperator]) -> np.ndarray:
    """Symmetrised covariance ``<{A_i, A_j}>/2 - <A_i><A_j>``."""
    psi = state.amplitudes
    vs = [op.matrix @ psi for op in ops]
    means = np.array([np.vdot(psi, v).real for v in vs])
    second = np.array([[np.vdot(a, b).real for b in vs] for a in vs])
    return second - np.outer(means, means)


def dump_state_csv(state: ManyBodyState, fh) -> None:
    """Write rows ``n1,n0,nm1,re,im``."""
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(["n1", "n0", "nm1", "re", "im"])
    for (n1, n0, nm1), a in zip(state.basis.occupations, state.amplitudes):
        w.writerow([int(n1), int(n0), int(nm1), repr(float(a.real)), repr(float(a.imag))])


def load_state_csv(fh) -> ManyBodyState:
    rows = list(csv.DictReader(fh))
    n = int(rows[0]["n1"]) + int(rows[0]["n0"]) + int(rows[0]["nm1"])
    basis = build_basis(n)
    amp = np.zeros(basis.dim, dtype=complex)
    for r in rows:
        amp[basis.index(int(r["n1"]), int(r["n0"]))] = complex(float(r["re"]), float(r["im"]))
    return ManyBodyState(basis, amp)


def dump_operator_csv(op: SecondQuantizedOperator, fh) -> None:
    """Write the nonzero entries as rows ``row,col,re,im``."""
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(["row", "col", "re", "im"])
    coo = op.matrix.tocoo()
    order = np.lexsort((coo.col, coo.row))
    for k in order:
        v = coo.data[k]
        w.writerow([int(coo.row[k]), int(coo.col[k]), repr(float(v.real)), repr(float(v.imag))])


def load_operator_csv(fh, basis: FockBasis) -> SecondQuantizedOperator:
    rows = list(csv.DictReader(fh))
    r = np.array([int(x["row"]) for x in rows], dtype=np.int64)
    c = np.array([int(x["col"]) for x in rows], dtype=np.int64)
    v = np.array([complex(float(x["re"]), float(x["im"])) for x in rows])
    return SecondQuantizedOperator(basis, sp.csr_matrix((v, (r, c)), shape=(basis.dim, basis.dim)))
