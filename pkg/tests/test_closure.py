import warnings

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracle
from dlakit.closure import (
    all_pairs_closure_oracle,
    analyze,
    center,
    commutator_subalgebra,
    contains,
    lie_closure,
)
from dlakit.constructions import cycle_graph, qaoa_generators
from dlakit.errors import CappedClosureError, DependentGeneratorsError, InvalidGeneratorError
from dlakit.numeric import commutator, hs_inner, hs_norm, proportionality_residual, rank, span_of
from dlakit.pauli import PauliCombination
from dlakit.rewrite import evaluate_sequence

P = PauliCombination.from_label
S = PauliCombination.from_terms

XZ = [P("X"), P("Z")]
Z1Z2 = [P("ZI"), P("IZ")]
X1_Z12 = [P("XI"), S([("ZI", 1), ("IZ", 1)])]


def random_pauli_generators(rng, combos=False):
    n = int(rng.integers(2, 5))
    L = int(rng.integers(2, 5))
    gens, seen = [], set()
    while len(gens) < L:
        terms = int(rng.integers(1, 3)) if combos else 1
        labels = ["".join(rng.choice(list("IXYZ"), n)) for _ in range(terms)]
        if any(set(s) == {"I"} for s in labels) or tuple(labels) in seen:
            continue
        g = S((s, float(rng.choice([1.0, -1.0, 0.5, 2.0]))) for s in labels)
        if not g or (gens and rank(gens + [g]) <= len(gens)):
            continue
        seen.add(tuple(labels))
        gens.append(g)
    return gens


# -- examples -------------------------------------------------------------------

def test_lie_closure_examples():
    assert lie_closure(XZ).dim == 3
    z = lie_closure(Z1Z2)
    assert z.dim == 2 and z.rounds == 1
    g = lie_closure(X1_Z12)
    assert g.dim == 4


def test_oracle_examples():
    assert all_pairs_closure_oracle(XZ).dim == 3
    assert all_pairs_closure_oracle(Z1Z2).dim == 2


def test_commutator_subalgebra_examples():
    assert commutator_subalgebra(lie_closure(XZ)).dim == 3
    assert commutator_subalgebra(lie_closure(Z1Z2)).dim == 0
    gg = commutator_subalgebra(lie_closure(X1_Z12))
    assert gg.dim == 3
    assert contains(gg, P("IZ")) > 0.99


def test_center_examples():
    assert center(lie_closure(XZ)).dim == 0
    assert center(lie_closure(Z1Z2)).dim == 2
    z = center(lie_closure(X1_Z12))
    assert z.dim == 1
    assert proportionality_residual(z.elements[0], P("IZ")) < 1e-12


@pytest.mark.parametrize("gens,expected", [
    (XZ, (3, 3, 0, 2)),
    (Z1Z2, (2, 0, 2, 0)),
    (X1_Z12, (4, 3, 1, 1)),
])
def test_analyze_examples(gens, expected):
    r = analyze(gens)
    assert (r.dim_g, r.dim_gg, r.dim_center, r.dim_spanA_cap_gg) == expected
    assert r.generator_count == 2 and r.reductive_ok and r.lemma7_ok
    assert r.reductive_residual < 1e-12 and r.decomposition_residual < 1e-12


def test_analyze_matches_numpy_oracle_on_examples():
    for gens in (XZ, Z1Z2, X1_Z12):
        dense = [g.to_dense() for g in gens]
        basis = oracle.closure(dense)
        r = analyze(gens)
        assert (r.dim_g, r.dim_gg, r.dim_center) == (
            len(basis), oracle.derived_dim(basis), oracle.center_dim(basis))


@pytest.mark.parametrize("n", [3, 4, 5])
def test_qaoa_cycle_closure_against_oracle(n):
    spec = qaoa_generators(*cycle_graph(n))
    r = analyze(spec.generators)
    basis = oracle.closure([g.to_dense() for g in spec.generators])
    assert r.dim_g == len(basis) == 3 * n - 1
    assert r.dim_gg == oracle.derived_dim(basis) == 3 * (n - 1)
    assert r.dim_center == oracle.center_dim(basis) == 2


def test_single_generator_warns():
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        r = analyze([P("XY")])
    assert any("single generator" in str(w.message) for w in caught)
    assert (r.dim_g, r.dim_gg, r.dim_center) == (1, 0, 1)


def test_random_dense_pair_generates_su4():
    rng = np.random.default_rng(2024)
    gens = [oracle.random_anti_hermitian(4, rng) for _ in range(2)]
    assert lie_closure(gens).dim == 15


def test_dense_and_pauli_backends_agree():
    for gens in (XZ, X1_Z12):
        a = analyze(gens)
        b = analyze([g.to_dense() for g in gens])
        assert (a.dim_g, a.dim_gg, a.dim_center) == (b.dim_g, b.dim_gg, b.dim_center)
        assert b.algebra.backend == "dense"


# -- errors and caps --------------------------------------------------------------

def test_dependent_generators_rejected():
    with pytest.raises(DependentGeneratorsError):
        lie_closure([P("X"), P("X", 2.0)])


@pytest.mark.parametrize("gens", [
    [],
    [S([("II", 1.0), ("XI", 1.0)]), P("ZZ")],
    [P("X"), P("XZ")],
    [P("X"), P("Z").to_dense()],
    [np.eye(2, dtype=complex) * 1j, P("Z").to_dense()],
    [np.array([[0, 1], [1, 0]], dtype=complex), P("Z").to_dense()],
])
def test_invalid_generators(gens):
    with pytest.raises(InvalidGeneratorError):
        lie_closure(gens)


def test_caps():
    spec = qaoa_generators(*cycle_graph(4))
    with pytest.warns(UserWarning, match="capped"):
        g = lie_closure(spec.generators, max_dim=5)
    assert g.capped and g.dim == 6
    with pytest.raises(CappedClosureError):
        commutator_subalgebra(g)
    with pytest.raises(CappedClosureError):
        center(g)
    with pytest.warns(UserWarning):
        r = analyze(spec.generators, max_rounds=1)
    assert r.capped and r.dim_gg is None and not r.reductive_ok
    assert r.to_dict()["capped"] is True


# -- structure of the returned bases ----------------------------------------------------

def _gram(els):
    return np.array([[hs_inner(a, b) for b in els] for a in els])


def test_provenance_is_proper_and_evaluates():
    spec = qaoa_generators(*cycle_graph(4), family="sn_equivariant")
    gens = spec.generators
    for basis in (lie_closure(gens), commutator_subalgebra(lie_closure(gens))):
        np.testing.assert_allclose(_gram(basis.elements), np.eye(basis.dim), atol=1e-10)
        assign = dict(enumerate(gens))
        for k, (seq, value) in enumerate(zip(basis.provenance, basis.values)):
            if len(seq) >= 2:
                assert seq[0] != seq[1]
            v = evaluate_sequence(seq, assign)
            assert proportionality_residual(v, value) < 1e-12
            # values and elements span the same flag of subspaces
            flag = span_of(basis.elements[: k + 1])
            assert flag.residual(value) < 1e-10


def test_derived_provenance_has_length_at_least_two():
    gg = commutator_subalgebra(lie_closure(X1_Z12))
    assert all(len(p) >= 2 for p in gg.provenance)


def test_to_dense_basis():
    g = lie_closure(XZ).to_dense()
    assert g.backend == "dense" and g.dim == 3
    np.testing.assert_allclose(_gram(g.elements), np.eye(3), atol=1e-12)


# -- properties -------------------------------------------------------------------

@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**32 - 1), st.booleans())
def test_frontier_matches_all_pairs(seed, combos):
    gens = random_pauli_generators(np.random.default_rng(seed), combos)
    a, b = lie_closure(gens), all_pairs_closure_oracle(gens)
    assert a.dim == b.dim
    sa, sb = a.span(), b.span()
    assert max(sb.residual(e) for e in a.elements) < 1e-8
    assert max(sa.residual(e) for e in b.elements) < 1e-8


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2**32 - 1), st.booleans())
def test_reductive_and_lemma7(seed, combos):
    gens = random_pauli_generators(np.random.default_rng(seed), combos)
    r = analyze(gens)
    assert r.dim_g == r.dim_gg + r.dim_center
    assert r.reductive_residual < 1e-8
    assert r.dim_center + r.dim_spanA_cap_gg == len(gens)
    assert r.decomposition_residual < 1e-8


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_center_commutes_with_whole_algebra(seed):
    gens = random_pauli_generators(np.random.default_rng(seed), combos=True)
    r = analyze(gens)
    for c in r.center_basis.elements:
        for e in r.algebra.elements:
            assert hs_norm(commutator(c, e)) < 1e-10


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_generator_recombination_invariance(seed):
    rng = np.random.default_rng(seed)
    gens = random_pauli_generators(rng, combos=True)
    L = len(gens)
    while True:
        m = rng.normal(size=(L, L))
        if abs(np.linalg.det(m)) > 0.1:
            break
    mixed = [sum((float(m[i, j]) * gens[j] for j in range(L)), PauliCombination(gens[0].qubit_count))
             for i in range(L)]
    a, b = analyze(gens), analyze(mixed)
    assert (a.dim_g, a.dim_gg, a.dim_center) == (b.dim_g, b.dim_gg, b.dim_center)
