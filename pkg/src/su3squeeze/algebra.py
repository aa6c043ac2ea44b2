"""su(3) generators of a spin-1 particle, root diagram, and su(2) subalgebras.

The eight generators are the spin vector (Jx, Jy, Jz) and five independent
nematic-tensor combinations (Qxy, Qyz, Qzx, Dxy, Y), written in the
magnetic-sublevel basis m = 1, 0, -1.  Every Hermitian traceless 3x3 matrix
is a real combination of them, and ``tr(L_i L_j) = 2 delta_ij``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np
from scipy import optimize

from .errors import DegenerateCartan, NonOrthogonalBasis, NotClosed, UnexpectedSolution

SQRT2 = np.sqrt(2.0)
SQRT3 = np.sqrt(3.0)

GENERATOR_NAMES = ("Jx", "Jy", "Jz", "Qxy", "Qyz", "Qzx", "Dxy", "Y")

_AXES = {"x": 0, "y": 1, "z": 2}


def build_generator_basis() -> np.ndarray:
    """Return the generators as an array of shape (8, 3, 3).

    Index order is (Jx, Jy, Jz, Qxy, Qyz, Qzx, Dxy, Y).
    """
    jx = np.array([[0, 1, 0], [1, 0, 1], [0, 1, 0]]) / SQRT2
    jy = 1j * np.array([[0, -1, 0], [1, 0, -1], [0, 1, 0]]) / SQRT2
    jz = np.diag([1.0, 0.0, -1.0])
    qxy = 1j * np.array([[0, 0, -1], [0, 0, 0], [1, 0, 0]])
    qyz = 1j * np.array([[0, -1, 0], [1, 0, 1], [0, -1, 0]]) / SQRT2
    qzx = np.array([[0, 1, 0], [1, 0, -1], [0, -1, 0]]) / SQRT2
    dxy = np.array([[0, 0, 1], [0, 0, 0], [1, 0, 0]])
    y = np.diag([1.0, -2.0, 1.0]) / SQRT3
    basis = np.array([jx, jy, jz, qxy, qyz, qzx, dxy, y], dtype=complex)
    basis.setflags(write=False)
    return basis


GENERATORS = build_generator_basis()
SPIN_MATRICES = GENERATORS[:3]


def check_basis(basis: np.ndarray, tol: float = 1e-8) -> None:
    """Raise NonOrthogonalBasis unless ``tr(L_i L_j) = 2 delta_ij``."""
    gram = np.einsum("iab,jba->ij", basis, basis)
    if not np.allclose(gram, 2 * np.eye(len(basis)), atol=tol, rtol=0):
        worst = np.max(np.abs(gram - 2 * np.eye(len(basis))))
        raise NonOrthogonalBasis(f"trace Gram matrix deviates from 2*I by {worst:.3g}")


def commutator(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a @ b - b @ a


# ---------------------------------------------------------------------------
# observables as real coordinates on the generator basis
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class ObservableCombo:
    """Hermitian 3x3 observable ``sum_i c_i L_i + identity_offset * I``."""

    coeffs: np.ndarray
    identity_offset: float = 0.0

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=float).reshape(8)
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)
        object.__setattr__(self, "identity_offset", float(self.identity_offset))

    @classmethod
    def from_matrix(cls, m: np.ndarray, tol: float = 1e-10) -> "ObservableCombo":
        m = np.asarray(m, dtype=complex)
        if not np.allclose(m, m.conj().T, atol=tol, rtol=0):
            raise ValueError("matrix is not Hermitian")
        coeffs = np.einsum("iab,ba->i", GENERATORS, m).real / 2
        offset = np.trace(m).real / 3
        return cls(coeffs, offset)

    @classmethod
    def generator(cls, name: str) -> "ObservableCombo":
        c = np.zeros(8)
        c[GENERATOR_NAMES.index(name)] = 1.0
        return cls(c)

    def matrix(self) -> np.ndarray:
        return np.einsum("i,iab->ab", self.coeffs, GENERATORS) + self.identity_offset * np.eye(3)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.coeffs))

    def normalized(self) -> "ObservableCombo":
        return ObservableCombo(self.coeffs / self.norm, self.identity_offset / self.norm)

    def traceless(self) -> "ObservableCombo":
        return ObservableCombo(self.coeffs)

    def allclose(self, other: "ObservableCombo", atol: float = 1e-10) -> bool:
        return bool(
            np.allclose(self.coeffs, other.coeffs, atol=atol, rtol=0)
            and abs(self.identity_offset - other.identity_offset) <= atol
        )

    def __add__(self, other):
        return ObservableCombo(self.coeffs + other.coeffs, self.identity_offset + other.identity_offset)

    def __sub__(self, other):
        return ObservableCombo(self.coeffs - other.coeffs, self.identity_offset - other.identity_offset)

    def __neg__(self):
        return ObservableCombo(-self.coeffs, -self.identity_offset)

    def __mul__(self, scalar: float):
        return ObservableCombo(self.coeffs * scalar, self.identity_offset * scalar)

    __rmul__ = __mul__

    def __truediv__(self, scalar: float):
        return ObservableCombo(self.coeffs / scalar, self.identity_offset / scalar)

    def __repr__(self):
        terms = [f"{c:+.6g}*{n}" for c, n in zip(self.coeffs, GENERATOR_NAMES) if abs(c) > 1e-12]
        if abs(self.identity_offset) > 1e-12:
            terms.append(f"{self.identity_offset:+.6g}*I")
        return "ObservableCombo(" + (" ".join(terms) or "0") + ")"


def observable(name: str) -> ObservableCombo:
    """Named observable: any generator name, or one of Dyz, Dzx."""
    if name in GENERATOR_NAMES:
        return ObservableCombo.generator(name)
    if name == "Dyz":
        return nematic_tensor("y", "y") - nematic_tensor("z", "z")
    if name == "Dzx":
        return nematic_tensor("z", "z") - nematic_tensor("x", "x")
    raise KeyError(name)


def nematic_tensor(mu: str, nu: str) -> ObservableCombo:
    """Single-particle nematic tensor ``(J_mu J_nu + J_nu J_mu) / 2``.

    Diagonal components carry a nonzero identity offset (the three of them
    sum to ``2 * I``).
    """
    a, b = SPIN_MATRICES[_AXES[mu]], SPIN_MATRICES[_AXES[nu]]
    return ObservableCombo.from_matrix((a @ b + b @ a) / 2)


# ---------------------------------------------------------------------------
# structure constants, adjoint representation, roots
# ---------------------------------------------------------------------------


def structure_constants(basis: np.ndarray = GENERATORS) -> np.ndarray:
    """Tensor ``f[i, j, k]`` with ``[L_i, L_j] = i sum_k f[i, j, k] L_k``."""
    check_basis(basis)
    comm = np.einsum("iab,jbc->ijac", basis, basis)
    comm = comm - comm.transpose(1, 0, 2, 3)
    f = (-0.5j * np.einsum("ijab,kba->ijk", comm, basis)).real
    return f


STRUCTURE_CONSTANTS = structure_constants()
STRUCTURE_CONSTANTS.setflags(write=False)


def reconstruction_residual(f: np.ndarray, basis: np.ndarray = GENERATORS) -> float:
    """Largest ``|[L_i, L_j] - i sum_k f_ijk L_k|`` over all pairs and entries."""
    worst = 0.0
    for i, j in itertools.product(range(len(basis)), repeat=2):
        lhs = commutator(basis[i], basis[j])
        rhs = 1j * np.einsum("k,kab->ab", f[i, j], basis)
        worst = max(worst, float(np.max(np.abs(lhs - rhs))))
    return worst


def antisymmetry_residual(f: np.ndarray) -> float:
    return float(
        max(
            np.max(np.abs(f + f.transpose(1, 0, 2))),
            np.max(np.abs(f + f.transpose(0, 2, 1))),
            np.max(np.abs(f + f.transpose(2, 1, 0))),
        )
    )


def jacobi_residual(f: np.ndarray) -> float:
    """Largest violation of the Jacobi identity over all (i, j, k, m)."""
    t1 = np.einsum("ijl,lkm->ijkm", f, f)
    t2 = np.einsum("jkl,lim->ijkm", f, f)
    t3 = np.einsum("kil,ljm->ijkm", f, f)
    return float(np.max(np.abs(t1 + t2 + t3)))


def adjoint_representation(f: np.ndarray, i: int) -> np.ndarray:
    """Real 8x8 matrix ``M[j, k] = f[i, k, j]`` for generator ``L_i``, i in 1..8.

    ``i * M`` acting on coefficient vectors is the map ``X -> [L_i, X]``, so
    its (real) eigenvalues are the roots.
    """
    if not 1 <= i <= f.shape[0]:
        raise ValueError(f"generator index must be in 1..{f.shape[0]}, got {i}")
    return f[i - 1].T.copy()


class RootVector(NamedTuple):
    alpha1: float
    alpha2: float

    @property
    def key(self) -> tuple[int, int]:
        """Integer label ``(alpha1, alpha2 / sqrt(3))``."""
        return (int(round(self.alpha1)), int(round(self.alpha2 / SQRT3)))

    @classmethod
    def from_key(cls, key: tuple[int, int]) -> "RootVector":
        return cls(float(key[0]), key[1] * SQRT3)

    def __add__(self, other):  # vector addition, not tuple concatenation
        return RootVector(self.alpha1 + other.alpha1, self.alpha2 + other.alpha2)

    def __neg__(self):
        return RootVector(-self.alpha1, -self.alpha2)


CANONICAL_ROOT_KEYS = ((2, 0), (1, 1), (-1, 1), (-2, 0), (-1, -1), (1, -1))
CANONICAL_ROOTS = tuple(RootVector.from_key(k) for k in CANONICAL_ROOT_KEYS)


def _fix_phase(m: np.ndarray) -> np.ndarray:
    flat = m.ravel()
    mags = np.round(np.abs(flat), 12)
    k = int(np.argmax(mags))
    return m * (abs(flat[k]) / flat[k])


@dataclass(frozen=True, eq=False)
class EigenOperator:
    """Ladder operator with ``[Jz, E] = alpha1 E`` and ``[Y, E] = alpha2 E``."""

    matrix: np.ndarray
    root: RootVector

    @property
    def coeffs(self) -> np.ndarray:
        """Complex coordinates on the generator basis."""
        return np.einsum("iab,ba->i", GENERATORS, self.matrix) / 2

    @property
    def dagger(self) -> np.ndarray:
        return self.matrix.conj().T


def root_diagram(f: np.ndarray = STRUCTURE_CONSTANTS, tol: float = 1e-10) -> list[tuple[RootVector, EigenOperator]]:
    """Six nonzero roots of the Cartan pair (Jz, Y) with their eigen-operators.

    Eigen-operators are normalised to unit coefficient norm and phased so that
    their largest-magnitude matrix entry is real and positive.  Pairs come in
    the fixed angular order (2,0), (1,√3), (-1,√3), (-2,0), (-1,-√3), (1,-√3).
    """
    h1 = 1j * adjoint_representation(f, 3)
    h2 = 1j * adjoint_representation(f, 8)
    if np.max(np.abs(h1 @ h2 - h2 @ h1)) > tol:
        raise DegenerateCartan("adjoint Cartan matrices do not commute")
    # a generic real mix separates all simultaneous eigenspaces
    mix = h1 + (np.pi / 7) * h2
    _, vecs = np.linalg.eigh(mix)
    found: dict[tuple[int, int], EigenOperator] = {}
    zero_count = 0
    for v in vecs.T:
        a1 = np.vdot(v, h1 @ v).real
        a2 = np.vdot(v, h2 @ v).real
        if max(np.linalg.norm(h1 @ v - a1 * v), np.linalg.norm(h2 @ v - a2 * v)) > 1e-8:
            raise DegenerateCartan("mixed eigenvector is not a simultaneous eigenvector")
        if abs(a1) < 1e-8 and abs(a2) < 1e-8:
            zero_count += 1
            continue
        root = RootVector(a1, a2)
        key = root.key
        canonical = RootVector.from_key(key)
        if key not in CANONICAL_ROOT_KEYS or abs(a1 - canonical.alpha1) > tol or abs(a2 - canonical.alpha2) > tol:
            raise DegenerateCartan(f"unexpected root ({a1:.12g}, {a2:.12g})")
        if key in found:
            raise DegenerateCartan(f"root {key} is degenerate")
        mat = _fix_phase(np.einsum("i,iab->ab", v, GENERATORS))
        mat = mat / np.sqrt(np.trace(mat.conj().T @ mat).real / 2)
        found[key] = EigenOperator(mat, canonical)
    if zero_count != 2 or len(found) != 6:
        raise DegenerateCartan(f"found {len(found)} nonzero roots and {zero_count} zero roots")
    return [(RootVector.from_key(k), found[k]) for k in CANONICAL_ROOT_KEYS]


def roots_by_key(pairs) -> dict[tuple[int, int], EigenOperator]:
    return {root.key: op for root, op in pairs}


def _is_root_or_zero(r: RootVector, tol: float = 1e-8) -> bool:
    if abs(r.alpha1) < tol and abs(r.alpha2) < tol:
        return True
    return any(abs(r.alpha1 - c.alpha1) < tol and abs(r.alpha2 - c.alpha2) < tol for c in CANONICAL_ROOTS)


def ladder_commutator(a: EigenOperator, b: EigenOperator, pairs=None, tol: float = 1e-10) -> dict:
    """Expand ``[a, b]`` on {E_alpha} together with {Jz, Y}.

    Returns a dict mapping root keys (or the strings ``"Jz"``, ``"Y"``) to
    complex coefficients.  An empty dict is the zero operator, which happens
    exactly when ``alpha + beta`` is neither a root nor zero.
    """
    if pairs is None:
        pairs = root_diagram()
    labels = [root.key for root, _ in pairs] + ["Jz", "Y"]
    mats = [op.matrix for _, op in pairs] + [GENERATORS[2], GENERATORS[7]]
    design = np.array([m.ravel() for m in mats]).T
    target = commutator(a.matrix, b.matrix).ravel()
    sol, *_ = np.linalg.lstsq(design, target, rcond=None)
    if np.max(np.abs(design @ sol - target)) > 1e-9:
        raise ArithmeticError("commutator left the complexified algebra")
    return {lab: complex(c) for lab, c in zip(labels, sol) if abs(c) > tol}


# ---------------------------------------------------------------------------
# su(2) triads
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Su2Triad:
    """Three trace-orthonormal observables closing into an su(2).

    ``[X1, X2] = i * handedness * lam * X3`` cyclically.  ``handedness`` is -1
    when the members were supplied in left-handed order.
    """

    x1: ObservableCombo
    x2: ObservableCombo
    x3: ObservableCombo
    lam: float
    handedness: int = 1

    @property
    def members(self) -> tuple[ObservableCombo, ObservableCombo, ObservableCombo]:
        return (self.x1, self.x2, self.x3)

    @property
    def kind(self) -> int | None:
        """1 or 2 for the two su(2) classes, None if lam is neither."""
        for k in (1, 2):
            if abs(self.lam - k) < 1e-8:
                return k
        return None

    def matrices(self) -> list[np.ndarray]:
        return [m.matrix() for m in self.members]

    def to_dict(self) -> dict:
        return {"members": [m.coeffs.tolist() for m in self.members], "lambda": self.lam}


def _bracket(a: np.ndarray, b: np.ndarray, f: np.ndarray = STRUCTURE_CONSTANTS) -> np.ndarray:
    """Coefficients w with ``[A, B] = i sum_k w_k L_k``."""
    return np.einsum("ijk,i,j->k", f, a, b)


def classify_triad(members: Sequence[ObservableCombo], tol: float = 1e-8) -> Su2Triad:
    """Gram-Schmidt the three observables and measure their structure constant.

    Identity offsets are dropped; they commute with everything.
    """
    if len(members) != 3:
        raise ValueError("a triad has exactly three members")
    ortho: list[np.ndarray] = []
    for m in members:
        v = np.array(m.coeffs, dtype=float)
        for u in ortho:
            v = v - (u @ v) * u
        n = np.linalg.norm(v)
        if n < tol:
            raise NotClosed("triad members are linearly dependent")
        ortho.append(v / n)
    lams = []
    for i, j, k in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
        w = _bracket(ortho[i], ortho[j])
        proj = w @ ortho[k]
        resid = np.linalg.norm(w - proj * ortho[k])
        if resid > tol:
            raise NotClosed(f"[X{i + 1}, X{j + 1}] leaves the triad span (residual {resid:.3g})")
        lams.append(proj)
    lams = np.array(lams)
    if np.max(np.abs(lams)) < tol:
        raise NotClosed("members commute; not an su(2)")
    if np.max(np.abs(lams - lams[0])) > tol:
        raise NotClosed(f"inconsistent structure constants {lams}")
    lam = float(np.mean(lams))
    x1, x2, x3 = (ObservableCombo(v) for v in ortho)
    return Su2Triad(x1, x2, x3, abs(lam), 1 if lam > 0 else -1)


def triad_from_raising(raising: np.ndarray) -> Su2Triad:
    """su(2) triad spanned by ``E+``, ``E+^dagger`` and their commutator."""
    lowering = raising.conj().T
    x1 = ObservableCombo.from_matrix((raising + lowering) / 2)
    x2 = ObservableCombo.from_matrix((raising - lowering) / 2j)
    x3 = ObservableCombo.from_matrix(commutator(raising, lowering) / 2)
    return classify_triad([x1, x2, x3])


def enumerate_canonical_triads(pairs=None) -> list[Su2Triad]:
    """Triads read off the root diagram.

    First the three type-2 triads from opposite-root pairs, in the order
    E(±2,0), E(±1,±√3), E(±1,∓√3).  Then six type-1 triads, one per sign
    choice, from each pair of positive-side roots at 120 degrees:
    E(1,√3) ± E(1,-√3), E(2,0) ± E(-1,√3), E(1,√3) ± E(-2,0).
    """
    if pairs is None:
        pairs = root_diagram()
    ops = roots_by_key(pairs)
    triads = []
    for key in ((2, 0), (1, 1), (1, -1)):
        e = ops[key]
        lowering = e.dagger
        x1 = ObservableCombo.from_matrix((e.matrix + lowering) / SQRT2)
        x2 = ObservableCombo.from_matrix((e.matrix - lowering) / (1j * SQRT2))
        h = e.root.alpha1 * GENERATORS[2] + e.root.alpha2 * GENERATORS[7]
        x3 = ObservableCombo.from_matrix(h / 2)
        triads.append(classify_triad([x1, x2, x3]))
    for ka, kb in (((1, 1), (1, -1)), ((2, 0), (-1, 1)), ((1, 1), (-2, 0))):
        for sign in (1, -1):
            triads.append(triad_from_raising(ops[ka].matrix + sign * ops[kb].matrix))
    return triads


# ---------------------------------------------------------------------------
# SU(3) rotations
# ---------------------------------------------------------------------------


def expm_hermitian(h: np.ndarray, angle: float) -> np.ndarray:
    """``exp(-i * angle * h)`` for Hermitian ``h`` via eigendecomposition."""
    w, v = np.linalg.eigh(h)
    return (v * np.exp(-1j * angle * w)) @ v.conj().T


@dataclass(frozen=True, eq=False)
class Su3Rotation:
    """Single-particle unitary built as an ordered product of exponentials.

    ``generator_log[0]`` is the leftmost factor ``exp(-i theta_0 G_0)``.
    """

    single_particle: np.ndarray
    generator_log: tuple = field(default=())

    @classmethod
    def from_factors(cls, factors: Sequence[tuple[ObservableCombo, float]]) -> "Su3Rotation":
        u = np.eye(3, dtype=complex)
        for gen, angle in factors:
            u = u @ expm_hermitian(gen.matrix(), angle)
        return cls(u, tuple((g, float(a)) for g, a in factors))

    @classmethod
    def identity(cls) -> "Su3Rotation":
        return cls(np.eye(3, dtype=complex), ())

    def conjugate(self, obs: ObservableCombo) -> ObservableCombo:
        u = self.single_particle
        return ObservableCombo.from_matrix(u @ obs.matrix() @ u.conj().T)

    def inverse(self) -> "Su3Rotation":
        log = tuple((g, -a) for g, a in reversed(self.generator_log))
        return Su3Rotation(self.single_particle.conj().T, log)

    def __matmul__(self, other: "Su3Rotation") -> "Su3Rotation":
        return Su3Rotation(self.single_particle @ other.single_particle, self.generator_log + other.generator_log)

    def is_unitary(self, tol: float = 1e-12) -> bool:
        u = self.single_particle
        return bool(
            np.max(np.abs(u.conj().T @ u - np.eye(3))) < tol and abs(abs(np.linalg.det(u)) - 1) < tol
        )


def conjugate_triad(t: Su2Triad, u: Su3Rotation) -> Su2Triad:
    """Replace each member X by ``U X U^dagger``."""
    out = classify_triad([u.conjugate(m) for m in t.members])
    if abs(out.lam - t.lam) > 1e-10:
        raise ArithmeticError(f"conjugation changed lambda from {t.lam} to {out.lam}")
    return out


def qxy_rotation(angle: float) -> Su3Rotation:
    """``exp(-i * angle * Qxy)``."""
    return Su3Rotation.from_factors([(observable("Qxy"), angle)])


def relabel_cyclic(t: Su2Triad, shift: int = 1) -> Su2Triad:
    """Cyclic index permutation of the members (a change of labels, not a rotation)."""
    m = list(t.members)
    m = m[shift % 3:] + m[: shift % 3]
    return Su2Triad(*m, lam=t.lam, handedness=t.handedness)


# ---------------------------------------------------------------------------
# exhaustive search over su(2) raising operators
# ---------------------------------------------------------------------------


class RaisingSolution(NamedTuple):
    c1: float
    c2: float
    lam: float
    residual: float


KNOWN_RAISING_SOLUTIONS = ((0.0, 0.0), (1.0, 0.0), (-1.0, 0.0), (0.0, 1.0), (0.0, -1.0))


def _raising_parts(pairs):
    ops = roots_by_key(pairs)
    return ops[(1, 1)].matrix, ops[(1, -1)].matrix, ops[(-2, 0)].matrix


def raising_residual(c1, c2, pairs=None):
    """Proportionality residual of ``[[E+, E-], E+]`` against ``E+``.

    ``E+ = E(1,√3) + c1 E(1,-√3) + c2 E(-2,0)`` with real c1, c2 (scalars or
    arrays).  Returns ``(residual, cartan_norm)`` where ``residual`` is the
    Frobenius norm of the part of the double commutator orthogonal to E+,
    relative to ``|E+|``, and ``cartan_norm = |[E+, E-]|``.  A zero residual
    with nonzero ``cartan_norm`` marks an su(2) raising operator.
    """
    if pairs is None:
        pairs = root_diagram()
    ea, eb, ec = _raising_parts(pairs)
    c1 = np.asarray(c1, dtype=float)
    c2 = np.asarray(c2, dtype=float)
    e = ea + c1[..., None, None] * eb + c2[..., None, None] * ec
    ed = np.conj(np.swapaxes(e, -1, -2))
    k = e @ ed - ed @ e
    c = k @ e - e @ k
    ee = np.sum(np.abs(e) ** 2, axis=(-2, -1))
    mu = np.sum(np.conj(e) * c, axis=(-2, -1)) / ee
    resid = np.sqrt(np.sum(np.abs(c - mu[..., None, None] * e) ** 2, axis=(-2, -1)) / ee)
    return resid, np.sqrt(np.sum(np.abs(k) ** 2, axis=(-2, -1)))


def _grid_local_minima(values: np.ndarray) -> np.ndarray:
    padded = np.pad(values, 1, constant_values=np.inf)
    centre = padded[1:-1, 1:-1]
    is_min = np.ones_like(values, dtype=bool)
    for di, dj in itertools.product((-1, 0, 1), repeat=2):
        if di == dj == 0:
            continue
        nb = padded[1 + di : padded.shape[0] - 1 + di, 1 + dj : padded.shape[1] - 1 + dj]
        is_min &= centre <= nb
    return np.argwhere(is_min)


def appendix_b_search(
    grid_resolution: float = 0.01,
    pairs=None,
    bound: float = 2.0,
    accept: float = 1e-8,
    degenerate_tol: float = 1e-6,
) -> list[RaisingSolution]:
    """Find every real (c1, c2) in ``[-bound, bound]^2`` making E+ an su(2) raising operator.

    Grid scan, then Nelder-Mead refinement from each grid local minimum.
    Points where ``[E+, E-]`` vanishes (E+ normal, hence abelian) are
    discarded.  Each accepted point is classified by the lambda of the triad
    it generates.  Raises UnexpectedSolution if a converged zero lies more
    than 1e-6 from the known solution set.
    """
    if grid_resolution > 0.01:
        raise ValueError("grid_resolution must be <= 0.01")
    if pairs is None:
        pairs = root_diagram()
    n = int(round(2 * bound / grid_resolution)) + 1
    axis = np.linspace(-bound, bound, n)
    g1, g2 = np.meshgrid(axis, axis, indexing="ij")
    resid, _ = raising_residual(g1, g2, pairs)

    def objective(p):
        r, _ = raising_residual(p[0], p[1], pairs)
        return float(r) ** 2

    # residual grows at most ~10 per unit distance, so a true zero keeps its
    # nearest grid point below this
    coarse = 20 * grid_resolution
    found: list[RaisingSolution] = []
    for i, j in _grid_local_minima(resid):
        if resid[i, j] > coarse:
            continue
        start = np.array([axis[i], axis[j]])
        if resid[i, j] <= accept:
            best = start
        else:
            res = optimize.minimize(
                objective, start, method="Nelder-Mead",
                options={"xatol": 1e-13, "fatol": 1e-32, "maxiter": 4000},
            )
            best = res.x
        r, knorm = raising_residual(best[0], best[1], pairs)
        if float(r) > accept or float(knorm) < degenerate_tol:
            continue
        if any(abs(best[0] - s.c1) < 1e-6 and abs(best[1] - s.c2) < 1e-6 for s in found):
            continue
        if not any(abs(best[0] - a) <= 1e-6 and abs(best[1] - b) <= 1e-6 for a, b in KNOWN_RAISING_SOLUTIONS):
            raise UnexpectedSolution(f"converged at (c1, c2) = ({best[0]:.9g}, {best[1]:.9g})")
        ea, eb, ec = _raising_parts(pairs)
        triad = triad_from_raising(ea + best[0] * eb + best[1] * ec)
        found.append(RaisingSolution(float(best[0]), float(best[1]), triad.lam, float(r)))
    found.sort(key=lambda s: (round(s.c1, 6), round(s.c2, 6)))
    return found
