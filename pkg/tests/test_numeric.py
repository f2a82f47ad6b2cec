import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracle
from dlakit.errors import DimensionMismatchError, NotHermitianError
from dlakit.numeric import (
    DEFAULT_POLICY,
    Coordinates,
    OrthonormalSpan,
    TolerancePolicy,
    hermitian_eig,
    hs_inner,
    jacobi_eigh,
    orthonormal_extend,
    power_span_check,
    proportional,
    proportionality_residual,
    rank,
    SpectralDecomposition,
)
from dlakit.pauli import PauliCombination

P = PauliCombination.from_label
SQ2 = math.sqrt(2.0)


def test_policy_defaults_and_validation():
    assert DEFAULT_POLICY.rank_threshold == 1e-9
    assert DEFAULT_POLICY.eig_group_threshold == 1e-8
    assert DEFAULT_POLICY.proportionality_threshold == 1e-10
    with pytest.raises(ValueError):
        TolerancePolicy(rank_threshold=0.0)
    with pytest.raises(ValueError):
        TolerancePolicy(eig_group_threshold=-1.0)
    assert DEFAULT_POLICY.with_rank(1e-6).rank_threshold == 1e-6


# -- hs_inner -----------------------------------------------------------------

def test_hs_inner_examples():
    assert hs_inner(np.eye(2), np.eye(2)) == 2.0
    assert hs_inner(P("X"), P("Z")) == 0.0
    assert hs_inner(P("X"), P("X")) == 2.0
    assert hs_inner(P("X").to_dense(), P("X").to_dense()) == 2.0


def test_hs_inner_mismatch():
    with pytest.raises(DimensionMismatchError):
        hs_inner(np.eye(2), np.eye(4))


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**31))
def test_hs_inner_symmetric_positive(seed):
    rng = np.random.default_rng(seed)
    a, b = oracle.random_anti_hermitian(4, rng), oracle.random_anti_hermitian(4, rng)
    assert abs(hs_inner(a, b) - hs_inner(b, a)) < 1e-14
    assert hs_inner(a, a) > 0
    assert abs(hs_inner(a, b) - np.trace(a.conj().T @ b).real) < 1e-14


def test_coordinates_dot_is_hs_inner():
    a = PauliCombination.from_terms([("XY", 0.5), ("ZZ", -1.0)])
    b = PauliCombination.from_terms([("ZZ", 2.0), ("IX", 1.0)])
    c = Coordinates(a)
    va, vb = c.vector(a), c.vector(b)
    va = np.pad(va, (0, len(vb) - len(va)))
    assert abs(va @ vb - hs_inner(a, b)) < 1e-12
    assert c.operator(c.vector(b)) == b


# -- orthonormal_extend --------------------------------------------------------

def test_extend_rejects_member_with_coefficient():
    ext = orthonormal_extend([P("X") / SQ2], P("X"))
    assert ext.status == "rejected"
    np.testing.assert_allclose(ext.coefficients, [SQ2])
    assert len(ext.basis) == 1


def test_extend_with_orthogonal_pauli():
    ext = orthonormal_extend([P("X") / SQ2], P("Z"))
    assert ext.extended
    assert ext.element == P("Z") / SQ2


def test_extend_with_mixed_candidate():
    cand = PauliCombination.from_terms([("X", 1), ("Z", 1)])
    ext = orthonormal_extend([P("X") / SQ2], cand)
    assert ext.extended
    assert proportionality_residual(ext.element, P("Z")) < 1e-15
    assert abs(ext.residual_norm - SQ2) < 1e-14
    assert len(ext.basis) == 2


def test_extend_zero_candidate_is_trivial():
    ext = orthonormal_extend([P("X") / SQ2], PauliCombination(1))
    assert ext.status == "trivial"
    ext = orthonormal_extend([], np.zeros((2, 2), dtype=complex))
    assert ext.status == "trivial"


def test_extend_does_not_mutate_basis():
    basis = [P("X") / SQ2]
    orthonormal_extend(basis, P("Y"))
    assert basis == [P("X") / SQ2]


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**31), st.integers(1, 8))
def test_rank_is_permutation_invariant(seed, count):
    rng = np.random.default_rng(seed)
    base = [oracle.random_anti_hermitian(4, rng) for _ in range(3)]
    ops = base + [sum(rng.normal() * b for b in base) for _ in range(count)]
    perm = [ops[i] for i in rng.permutation(len(ops))]
    assert rank(ops) == rank(perm) == oracle.rank(ops) == 3


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**31))
def test_span_basis_is_orthonormal(seed):
    rng = np.random.default_rng(seed)
    ops = [oracle.random_anti_hermitian(4, rng) for _ in range(6)]
    span = OrthonormalSpan(Coordinates(ops[0]))
    for op in ops:
        span.offer(op)
    gram = np.array([[hs_inner(a, b) for b in span.elements] for a in span.elements])
    np.testing.assert_allclose(gram, np.eye(len(ops)), atol=1e-12)


def test_proportional():
    x = P("X")
    assert proportional(x, x * -3.0)
    assert not proportional(x, P("Z"))
    assert not proportional(x, PauliCombination(1))
    assert proportionality_residual(x, PauliCombination(1)) == math.inf


# -- Jacobi / hermitian_eig -------------------------------------------------------

def test_hermitian_eig_diagonal():
    d = hermitian_eig(np.diag([1.0, 2.0]))
    assert d.eigenvalues == pytest.approx((1.0, 2.0), abs=1e-14)
    np.testing.assert_allclose(d.projectors[0], np.diag([1, 0]), atol=1e-14)
    np.testing.assert_allclose(d.projectors[1], np.diag([0, 1]), atol=1e-14)
    assert d.multiplicities == (1, 1)


def test_hermitian_eig_pauli_x():
    d = hermitian_eig(oracle.PAULI["X"])
    assert d.eigenvalues == pytest.approx((-1.0, 1.0), abs=1e-14)
    np.testing.assert_allclose(d.projectors[0], (np.eye(2) - oracle.PAULI["X"]) / 2, atol=1e-14)
    np.testing.assert_allclose(d.projectors[1], (np.eye(2) + oracle.PAULI["X"]) / 2, atol=1e-14)


def test_hermitian_eig_random_8x8_reconstruction():
    h = oracle.random_hermitian(8, np.random.default_rng(11))
    d = hermitian_eig(h)
    assert np.linalg.norm(h - d.reconstruct()) < 1e-10
    np.testing.assert_allclose(sorted(d.eigenvalues), np.linalg.eigvalsh(h), atol=1e-12)


def test_hermitian_eig_groups_degenerate_values():
    u = np.linalg.qr(np.random.default_rng(2).normal(size=(4, 4)))[0]
    h = u @ np.diag([1.0, 1.0, 1.0 + 1e-12, 3.0]) @ u.T
    d = hermitian_eig(h)
    assert d.K == 2 and d.multiplicities == (3, 1)


def test_hermitian_eig_rejects_non_hermitian():
    with pytest.raises(NotHermitianError):
        hermitian_eig(np.array([[0, 1], [0, 0]], dtype=complex))


def test_jacobi_matches_numpy():
    a = np.random.default_rng(5).normal(size=(10, 10))
    a = a + a.T
    w, v = jacobi_eigh(a)
    np.testing.assert_allclose(sorted(w), np.linalg.eigvalsh(a), atol=1e-12)
    np.testing.assert_allclose(v @ np.diag(w) @ v.T, a, atol=1e-12)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**31), st.sampled_from([2, 4, 8, 16]), st.integers(1, 3))
def test_eig_reconstruction_and_projectors(seed, d, spread):
    rng = np.random.default_rng(seed)
    h = oracle.random_hermitian(d, rng)
    if spread > 1:
        # force degeneracy to exercise grouping
        w, u = np.linalg.eigh(h)
        w = np.round(w * spread) / spread
        h = (u * w) @ u.conj().T
    dec = hermitian_eig(h)
    assert np.linalg.norm(h - dec.reconstruct()) < 1e-10
    for i, p in enumerate(dec.projectors):
        assert np.linalg.norm(p @ p - p) < 1e-10
        for q in dec.projectors[i + 1:]:
            assert np.linalg.norm(p @ q) < 1e-10
    vals = dec.eigenvalues
    assert all(b - a > DEFAULT_POLICY.eig_group_threshold * dec.spectral_radius for a, b in zip(vals, vals[1:]))


def test_eig_reconstruction_dimension_64():
    h = oracle.random_hermitian(64, np.random.default_rng(3))
    assert np.linalg.norm(h - hermitian_eig(h).reconstruct()) < 1e-10


# -- power_span_check ----------------------------------------------------------------

def _decomp(values):
    return hermitian_eig(np.diag(np.asarray(values, dtype=float)))


def test_power_span_examples():
    assert power_span_check(_decomp([1, 2]), 0, 1).independent
    assert not power_span_check(_decomp([1, -1]), 1, 2).independent
    assert power_span_check(_decomp([1, 2]), 1, 2).independent


def test_power_span_zero_eigenvalue_with_offset():
    chk = power_span_check(_decomp([0, 1, 2, 3]), offset=1, stride=1)
    assert chk.structurally_singular and not chk.independent
    assert power_span_check(_decomp([0, 1, 2, 3]), offset=0, stride=1).independent


@settings(max_examples=40, deadline=None)
@given(st.lists(st.floats(-5, 5), min_size=1, max_size=5, unique=True))
def test_power_span_lemma(values):
    values = sorted(values)
    if any(b - a < 0.05 for a, b in zip(values, values[1:])):
        return
    dec = SpectralDecomposition(tuple(values), tuple(np.eye(1) for _ in values), (1,) * len(values),
                                max(abs(v) for v in values) or 1.0)
    assert power_span_check(dec, 0, 1).independent
