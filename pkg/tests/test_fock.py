import io

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from su3squeeze.algebra import GENERATORS, ObservableCombo, commutator, observable
from su3squeeze.errors import ImaginaryResidual, NotHermitian, SizeLimit
from su3squeeze.fock import (
    FERRO,
    POLAR,
    ManyBodyState,
    Spinor,
    build_basis,
    coherent_state,
    covariance_matrix,
    dump_operator_csv,
    dump_state_csv,
    expectation,
    load_operator_csv,
    load_state_csv,
    promote,
    second_quantize,
)

from oracles import brute_force_coherent, dense_second_quantize, embed_index

small_n = st.integers(1, 6)
component = st.tuples(st.floats(-1, 1), st.floats(-1, 1))
spinors = st.tuples(component, component, component).map(lambda t: [complex(*c) for c in t]).filter(
    lambda z: np.linalg.norm(z) > 0.1).map(Spinor.normalized)
coeffs = st.lists(st.floats(-2, 2), min_size=8, max_size=8).map(np.array)


def test_basis_dimension_and_ordering():
    for n in (0, 1, 2, 5, 30):
        b = build_basis(n)
        assert b.dim == (n + 1) * (n + 2) // 2
        assert np.all(b.occupations.sum(axis=1) == n)
        for i, (n1, n0, _) in enumerate(b.occupations):
            assert b.index(n1, n0) == i
    b = build_basis(2)
    assert [tuple(r) for r in b.occupations[:3]] == [(2, 0, 0), (1, 1, 0), (1, 0, 1)]


def test_basis_size_limit():
    assert build_basis(300).dim == 45451
    with pytest.raises(SizeLimit):
        build_basis(301)


def test_spinor_must_be_normalized():
    with pytest.raises(ValueError):
        Spinor([1, 1, 0])
    assert np.allclose(Spinor.normalized([1, 1, 0]).zeta, [2 ** -0.5, 2 ** -0.5, 0])


def test_coherent_special_cases():
    b = build_basis(7)
    ferro = coherent_state(b, FERRO).amplitudes
    assert ferro[b.index(7, 0)] == 1 and np.count_nonzero(ferro) == 1
    polar = coherent_state(b, POLAR).amplitudes
    assert polar[b.index(0, 7)] == 1 and np.count_nonzero(polar) == 1


@given(spinors, small_n)
def test_coherent_matches_brute_force(s, n):
    b = build_basis(n)
    ref = brute_force_coherent(n, s.zeta)
    got = coherent_state(b, s).amplitudes
    assert np.allclose(got, ref[b.occupations[:, 0], b.occupations[:, 1]], atol=1e-12)


def test_coherent_norm_large_n():
    s = Spinor.normalized([0.3, 0.8j, -0.5])
    assert coherent_state(build_basis(300), s).norm == pytest.approx(1, abs=1e-12)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_second_quantize_matches_dense_embedding(n):
    rng = np.random.default_rng(n)
    kernel = ObservableCombo(rng.normal(size=8), 0.7).matrix()
    b = build_basis(n)
    idx = [embed_index(n, n1, n0) for n1, n0, _ in b.occupations]
    ref = dense_second_quantize(n, kernel)[np.ix_(idx, idx)]
    assert np.allclose(second_quantize(b, kernel).dense(), ref, atol=1e-12)


@given(coeffs, coeffs, small_n)
def test_second_quantize_is_lie_homomorphism(a, c, n):
    b = build_basis(n)
    ka, kc = ObservableCombo(a).matrix(), ObservableCombo(c).matrix()
    A, C = second_quantize(b, ka).dense(), second_quantize(b, kc).dense()
    lifted = second_quantize(b, -1j * commutator(ka, kc)).dense()
    assert np.allclose(-1j * (A @ C - C @ A), lifted, atol=1e-9)


def test_second_quantize_properties():
    b = build_basis(10)
    op = promote(b, observable("Qyz"))
    assert op.is_hermitian()
    assert op.max_row_nnz() <= 7
    with pytest.raises(NotHermitian):
        second_quantize(b, np.triu(np.ones((3, 3))))
    n_op = second_quantize(b, np.eye(3))
    assert np.allclose(n_op.dense(), 10 * np.eye(b.dim))


def test_expectation_of_coherent_state():
    s = Spinor.normalized([0.2, 0.5 + 0.1j, -0.7])
    b = build_basis(12)
    st_ = coherent_state(b, s)
    for g in GENERATORS:
        single = np.vdot(s.zeta, g @ s.zeta).real
        assert expectation(st_, second_quantize(b, g)) == pytest.approx(12 * single, abs=1e-10)


def test_expectation_rejects_non_hermitian_residual():
    b = build_basis(2)
    st_ = coherent_state(b, POLAR)
    op = promote(b, observable("Jx"))
    bad = type(op)(b, op.matrix * 1j + promote(b, observable("Jz")).matrix)
    psi = ManyBodyState(b, np.ones(b.dim) / np.sqrt(b.dim))
    with pytest.raises(ImaginaryResidual):
        expectation(psi, bad)
    assert expectation(st_, op) == 0


@given(spinors, st.integers(2, 8))
def test_covariance_psd_and_coherent_variance(s, n):
    b = build_basis(n)
    st_ = coherent_state(b, s)
    ops = [promote(b, observable(k)) for k in ("Jx", "Jy", "Jz")]
    cov = covariance_matrix(st_, ops)
    assert np.allclose(cov, cov.T)
    assert np.min(np.linalg.eigvalsh(cov)) > -1e-9
    # product state: N times the single-particle covariance
    single = []
    for k in ("Jx", "Jy", "Jz"):
        g = observable(k).matrix()
        single.append(g)
    z = s.zeta
    ref = np.array([[0.5 * np.vdot(z, (a @ c + c @ a) @ z).real - np.vdot(z, a @ z).real * np.vdot(z, c @ z).real
                     for c in single] for a in single])
    assert np.allclose(cov, n * ref, atol=1e-9)


def test_state_csv_roundtrip_exact():
    b = build_basis(9)
    st_ = coherent_state(b, Spinor.normalized([0.1 + 0.3j, -0.4, 0.2j]))
    buf = io.StringIO()
    dump_state_csv(st_, buf)
    buf.seek(0)
    back = load_state_csv(buf)
    assert np.array_equal(back.amplitudes, st_.amplitudes)
    assert buf.getvalue().splitlines()[0] == "n1,n0,nm1,re,im"


def test_operator_csv_roundtrip_exact():
    b = build_basis(6)
    op = promote(b, observable("Qzx") + 0.3 * observable("Jy"))
    buf = io.StringIO()
    dump_operator_csv(op, buf)
    buf.seek(0)
    back = load_operator_csv(buf, b)
    assert (back.matrix != op.matrix).nnz == 0
