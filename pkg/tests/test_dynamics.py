import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.linalg import expm
from scipy.sparse.linalg import expm_multiply

from su3squeeze.algebra import GENERATORS, ObservableCombo, Su3Rotation, observable
from su3squeeze.dynamics import (
    JZ,
    EulerAngles,
    TwistingSchedule,
    apply_rotation,
    default_schedule,
    dense_lift,
    evolve_one_axis,
    expm_multiply_taylor,
    fidelity,
    frame_rotation,
    one_axis_evolve,
    polarization_axis,
    random_rotation,
    reference_spinor,
    reference_triad,
    rotated_triad,
    rotation_u1,
    rotation_u2,
    solve_angles,
    wrap_angle,
)
from su3squeeze.errors import KernelNotDiagonal
from su3squeeze.fock import FERRO, POLAR, ManyBodyState, Spinor, build_basis, coherent_state, expectation, promote, second_quantize

angle = st.floats(-math.pi, math.pi)
angles = st.builds(EulerAngles, angle, angle, angle, angle)


def test_wrap_angle_range():
    for a in np.linspace(-20, 20, 401):
        w = wrap_angle(a)
        assert -math.pi < w <= math.pi
        assert math.isclose(math.cos(w), math.cos(a), abs_tol=1e-12)
    assert wrap_angle(-math.pi) == pytest.approx(math.pi)


def test_reference_spinors_from_exponentials():
    e1 = np.array([1, 0, 0])
    r1 = expm(-1j * math.pi / 2 * observable("Jy").matrix()) @ e1
    r2 = expm(-1j * math.pi / 4 * observable("Qxy").matrix()) @ e1
    assert np.allclose(reference_spinor(1).zeta, r1)
    assert np.allclose(reference_spinor(2).zeta, r2)
    assert np.allclose(np.abs(reference_spinor(1).zeta), [0.5, 2 ** -0.5, 0.5])
    assert np.allclose(np.abs(reference_spinor(2).zeta), [2 ** -0.5, 0, 2 ** -0.5])


def test_worked_example_rotations():
    u1 = rotation_u1(EulerAngles(0, 0, 0, -3 * math.pi / 4)).single_particle
    assert np.allclose(u1, expm(1j * 3 * math.pi / 4 * observable("Qyz").matrix()))
    u2 = rotation_u2(EulerAngles(0, 0, 0, -math.pi / 4)).single_particle
    assert np.allclose(u2, expm(1j * math.pi / 4 * observable("Qxy").matrix()))
    assert fidelity(POLAR, EulerAngles(0, 0, 0, -3 * math.pi / 4), 1) == pytest.approx(1, abs=1e-12)
    assert fidelity(FERRO, EulerAngles(0, 0, 0, -math.pi / 4), 2) == pytest.approx(1, abs=1e-12)
    assert fidelity(reference_spinor(1), EulerAngles(), 1) == pytest.approx(1, abs=1e-14)


@given(angles)
def test_rotations_unitary(a):
    for fam in (1, 2):
        assert frame_rotation(a, fam).is_unitary()


@pytest.mark.parametrize("fam", [1, 2])
def test_solve_angles_random_targets(fam):
    rng = np.random.default_rng(fam)
    for _ in range(8):
        s = Spinor.normalized(rng.normal(size=3) + 1j * rng.normal(size=3))
        a = solve_angles(s, fam)
        assert fidelity(s, a, fam) >= 1 - 1e-10


def test_solve_angles_deterministic():
    s = Spinor.normalized([0.3, -0.2j, 0.9])
    assert solve_angles(s, 1).as_tuple() == solve_angles(s, 1).as_tuple()


@pytest.mark.parametrize("fam,spinor", [(1, POLAR), (2, FERRO), (1, Spinor.normalized([0.6, 0.1j, -0.79]))])
def test_solved_frame_polarized_along_first_axis(fam, spinor):
    n = 20
    a = solve_angles(spinor, fam)
    triad = rotated_triad(a, fam)
    st_ = coherent_state(build_basis(n), spinor)
    idx, means = polarization_axis(st_, triad)
    assert idx == 0
    assert means[0] == pytest.approx(n, abs=1e-8)


def test_ferro_polarization_axis_is_not_second_member():
    # ferro example triad {Jz, Qxy, -Dxy}: all of <Jz> = N sits on the first member
    triad = rotated_triad(EulerAngles(0, 0, 0, -math.pi / 4), 2)
    st_ = coherent_state(build_basis(15), FERRO)
    idx, means = polarization_axis(st_, triad)
    assert idx == 0 and means[0] == pytest.approx(15) and abs(means[1]) < 1e-12


def test_polar_twist_kernel_in_lab_frame():
    # the co-rotated Jz maps to (Jz + Qzx)/sqrt(2) up to sign for the polar example
    u = frame_rotation(EulerAngles(0, 0, 0, -3 * math.pi / 4), 1)
    g = u.conjugate(observable("Jz")).matrix()
    target = ((observable("Jz") + observable("Qzx")) / math.sqrt(2)).matrix()
    assert np.allclose(g @ g, target @ target, atol=1e-10)


@pytest.mark.parametrize("n", [3, 8, 20])
def test_taylor_matches_scipy_expm_multiply(n):
    rng = np.random.default_rng(n)
    b = build_basis(n)
    kernel = ObservableCombo(rng.normal(size=8)).normalized()
    op = promote(b, kernel)
    vec = rng.normal(size=b.dim) + 1j * rng.normal(size=b.dim)
    bound = n * float(np.max(np.abs(np.linalg.eigvalsh(kernel.matrix()))))
    for theta in (0.0, 0.37, -2.9, 7.5):
        got = expm_multiply_taylor(op, vec, theta, bound)
        ref = expm_multiply(-1j * theta * op.matrix.tocsc(), vec)
        assert np.allclose(got, ref, atol=1e-10 * np.linalg.norm(vec))


@pytest.mark.parametrize("n", [2, 5, 12])
def test_closed_form_rotation_matches_taylor(n):
    rng = np.random.default_rng(40 + n)
    b = build_basis(n)
    for _ in range(3):
        s = Spinor.normalized(rng.normal(size=3) + 1j * rng.normal(size=3))
        u = random_rotation(rng)
        st_ = coherent_state(b, s)
        closed = apply_rotation(st_, u, method="closed").amplitudes
        taylor = apply_rotation(ManyBodyState(b, st_.amplitudes), u, method="taylor").amplitudes
        assert np.allclose(closed, taylor, atol=1e-9)


def test_rotation_identity_and_inverse():
    b = build_basis(6)
    rng = np.random.default_rng(3)
    psi = ManyBodyState(b, (rng.normal(size=b.dim) + 1j * rng.normal(size=b.dim)))
    assert np.array_equal(apply_rotation(psi, Su3Rotation.identity()).amplitudes, psi.amplitudes)
    u = random_rotation(rng)
    back = apply_rotation(apply_rotation(psi, u), u.inverse())
    assert np.allclose(back.amplitudes, psi.amplitudes, atol=1e-9)


def test_rotation_without_generator_log_uses_matrix_log():
    rng = np.random.default_rng(9)
    u = random_rotation(rng)
    bare = Su3Rotation(u.single_particle)
    b = build_basis(4)
    psi = ManyBodyState(b, rng.normal(size=b.dim) + 0j)
    assert np.allclose(apply_rotation(psi, bare, "taylor").amplitudes, apply_rotation(psi, u, "taylor").amplitudes,
                       atol=1e-9)


@given(angles, st.floats(0, 3))
def test_frame_equivalence_dense_oracle(a, chi_t):
    # exp(-i chi t Jz'^2) = U exp(-i chi t Jz^2) U^dagger on the N-particle space
    n = 4
    b = build_basis(n)
    u = frame_rotation(a, 1)
    jz_rot = second_quantize(b, u.conjugate(observable("Jz")).matrix()).dense()
    direct = expm(-1j * chi_t * jz_rot @ jz_rot)
    lift = dense_lift(b, u)
    psi0 = coherent_state(b, reference_spinor(1))
    lab0 = lift @ psi0.amplitudes
    via_frame = lift @ evolve_one_axis(psi0, chi_t).amplitudes
    assert np.allclose(direct @ lab0, via_frame, atol=1e-9)


def test_two_particle_trajectory_vs_dense_exponential():
    b = build_basis(2)
    psi = coherent_state(b, reference_spinor(1))
    jz = second_quantize(b, JZ).dense()
    sched = TwistingSchedule(np.linspace(0, 3, 61))
    for t, st_ in zip(sched.chi_t_values, one_axis_evolve(psi, sched)):
        assert np.allclose(st_.amplitudes, expm(-1j * t * jz @ jz) @ psi.amplitudes, atol=1e-10)


def test_twist_conserves_norm_jz_and_energy():
    n = 30
    b = build_basis(n)
    psi = coherent_state(b, Spinor.normalized([0.5, 0.3 + 0.2j, -0.6]))
    jz = promote(b, observable("Jz"))
    jz2 = jz.matrix @ jz.matrix
    e0 = np.vdot(psi.amplitudes, jz2 @ psi.amplitudes).real
    m0 = expectation(psi, jz)
    sched = TwistingSchedule(np.linspace(0, 5, 10_000))
    states = one_axis_evolve(psi, sched)
    for st_ in states[::97]:
        assert abs(st_.norm - 1) < 1e-10
        assert expectation(st_, jz) == pytest.approx(m0, abs=1e-10)
        assert np.vdot(st_.amplitudes, jz2 @ st_.amplitudes).real == pytest.approx(e0, abs=1e-9)


def test_twist_at_pi_is_parity():
    b = build_basis(9)
    psi = coherent_state(b, reference_spinor(1))
    k = b.magnetization
    out = evolve_one_axis(psi, math.pi).amplitudes
    assert np.allclose(out, psi.amplitudes * np.where(k % 2, -1, 1), atol=1e-12)
    assert np.array_equal(evolve_one_axis(psi, 0.0).amplitudes, psi.amplitudes)


def test_nondiagonal_kernel_rejected():
    psi = coherent_state(build_basis(3), POLAR)
    with pytest.raises(KernelNotDiagonal):
        evolve_one_axis(psi, 0.1, kernel=GENERATORS[0])


def test_schedule_validation():
    with pytest.raises(ValueError):
        TwistingSchedule([0.1, 0.05])
    with pytest.raises(ValueError):
        TwistingSchedule([-1.0, 1.0])
    s = default_schedule(100)
    assert len(s.chi_t_values) == 200
    assert s.chi_t_values[0] == pytest.approx(1e-3 * 100 ** (-2 / 3))
    assert s.chi_t_values[-1] == pytest.approx(10 * 100 ** (-2 / 3))


def test_reference_triads():
    assert reference_triad(1).lam == pytest.approx(1)
    assert reference_triad(2).lam == pytest.approx(2)
