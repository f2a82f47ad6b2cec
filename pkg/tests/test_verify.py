import numpy as np
import pytest

import oracle
from dlakit.closure import analyze, lie_closure
from dlakit.constructions import (
    GeneratorSpec,
    complete_graph,
    cycle_graph,
    extend_naive,
    pauli_spec,
    qaoa_generators,
)
from dlakit.dense import build_hermitian_with_spectrum, random_unitary
from dlakit.numeric import SpectralDecomposition, hermitian_eig
from dlakit.pauli import PauliCombination
from dlakit.verify import (
    THEOREMS,
    _block_algebra_direct,
    _block_algebra_factored,
    _tensor,
    base_spec,
    projector_containment_check,
    random_connected_pauli_set,
    random_two_generator_set,
    table_row,
    verify_direct_power,
    verify_theorem,
)

P = PauliCombination.from_label
S = PauliCombination.from_terms
XZ = base_spec("pauli-xz")
X1Z12 = base_spec("pauli-x1z12")


def chi_of(*values):
    return build_hermitian_with_spectrum(list(values))


# -- direct-power evidence ----------------------------------------------------------

def test_evidence_thm1_xz():
    chi = chi_of(1, 2)
    mod = lie_closure(extend_naive(XZ, chi).generators)
    ev = verify_direct_power(mod, lie_closure(XZ.generators), hermitian_eig(chi))
    assert ev.accepted and ev.block_count == 2 and ev.per_block_dim == (3, 3)
    assert mod.dim == 6


def test_evidence_single_block():
    base = lie_closure(XZ.generators)
    lifted = lie_closure([_tensor(g, np.eye(2)) for g in XZ.generators])
    ev = verify_direct_power(lifted, base, hermitian_eig(np.eye(2)))
    assert ev.accepted and ev.block_count == 1 and ev.per_block_dim == (3,)


def test_evidence_swapped_projectors():
    chi = chi_of(1, 2, 3)
    dec = hermitian_eig(chi)
    swapped = SpectralDecomposition(dec.eigenvalues[::-1], dec.projectors[::-1], dec.multiplicities[::-1],
                                    dec.spectral_radius)
    mod = lie_closure(extend_naive(XZ, chi).generators)
    ev = verify_direct_power(mod, lie_closure(XZ.generators), swapped)
    assert ev.accepted and ev.block_count == 3


def test_evidence_rejects_single_copy_against_two_blocks():
    # the identity layer alone is one diagonal copy, not two independent ones
    mod = lie_closure(extend_naive(XZ, chi_of(1, 2), q=1).generators)
    ev = verify_direct_power(mod, lie_closure(XZ.generators), hermitian_eig(chi_of(1, 2)))
    assert not ev.blocks_span_match and not ev.accepted


@pytest.mark.parametrize("spec", [XZ, X1Z12, qaoa_generators(*cycle_graph(3))])
def test_factored_and_direct_block_checks_agree(spec):
    u = lie_closure(spec.generators).elements
    dec = hermitian_eig(chi_of(1, 2, 3))
    blocks = [[_tensor(x, p) for x in u] for p in dec.projectors]
    traces = [float(np.trace(p).real) for p in dec.projectors]
    direct = _block_algebra_direct(u, blocks, traces)
    factored = _block_algebra_factored(np.array([x.to_dense() for x in u]), dec.projectors)
    assert max(direct) < 1e-12 and max(factored) < 1e-12
    # projectors that overlap must show up as non-commuting blocks
    bad = (dec.projectors[0] + dec.projectors[1], dec.projectors[1])
    cross, _ = _block_algebra_factored(np.array([x.to_dense() for x in u]), bad)
    assert cross > 1e-3


# -- verdicts -----------------------------------------------------------------------

def test_thm1_verdict():
    v = verify_theorem("thm1", XZ, {"K": 2})
    assert v.passed and v.predicted == {"dim_g": 6} and v.measured == {"dim_g": 6}
    assert v.evidence.accepted
    d = v.to_dict()
    assert d["pass"] is True and set(d) >= {"theorem_id", "predicted", "measured", "evidence", "timings"}
    assert "timings" not in v.to_dict(timings=False)


@pytest.mark.parametrize("K", [2, 3, 4])
@pytest.mark.parametrize("spec", [XZ, qaoa_generators(2, [(0, 1)])])
def test_thm1_sweep(spec, K):
    v = verify_theorem("thm1", spec, {"K": K})
    base = analyze(spec.generators)
    assert v.passed and v.measured["dim_g"] == K * base.dim_g


def test_thm2_verdict_example():
    v = verify_theorem("thm2", XZ, {"chi": np.diag([1.0, 2.0, 3.0, 3.0])})
    assert v.passed and v.predicted == {"dim_gg": 9, "dim_center": 0}
    assert v.checks["projector_containment"]


@pytest.mark.parametrize("K", [2, 3])
def test_thm2_doubles_center(K):
    v = verify_theorem("thm2", X1Z12, {"K": K})
    assert v.passed and v.measured == {"dim_gg": 3 * K, "dim_center": 2}


@pytest.mark.parametrize("q", [2, 3])
def test_thm2_interpolation(q):
    v = verify_theorem("thm2", X1Z12, {"K": 3, "q": q})
    assert v.passed and v.measured["dim_center"] == q


def test_thm2_interpolation_needs_two_layers():
    assert verify_theorem("thm2", X1Z12, {"K": 3, "q": 1}).status == "not-applicable"


def test_thm3_verdict_and_hypotheses():
    spec = pauli_spec("XI", "ZZ", "IX")
    for i in range(3):
        v = verify_theorem("thm3", spec, {"index": i})
        assert v.passed, v.to_dict()
    assert verify_theorem("thm3", X1Z12).status == "not-applicable"
    assert verify_theorem("thm3", pauli_spec("XI", "IX")).status == "not-applicable"


@pytest.mark.parametrize("seed", range(5))
def test_thm3_random_connected(seed):
    spec = random_connected_pauli_set(np.random.default_rng(seed))
    for i in range(spec.L):
        assert verify_theorem("thm3", spec, {"index": i}).passed


def test_table_rows():
    assert [table_row(a, b) for a in (True, False) for b in (True, False)] == [1, 2, 3, 4]


def test_thm4_row_two():
    v = verify_theorem("thm4", X1Z12, {"index": 0})
    assert v.passed and v.notes["table_row"] == 2
    assert v.predicted["dim_center"] == 1 == v.measured["dim_center"]
    other = verify_theorem("thm4", X1Z12, {"index": 1})
    assert other.passed and other.notes["table_row"] == 3 and other.measured["dim_center"] == 2


@pytest.mark.parametrize("seed", range(10))
def test_thm4_random_two_generator_sets(seed):
    rng = np.random.default_rng(seed)
    spec = random_two_generator_set(rng)
    for i in (0, 1):
        v = verify_theorem("thm4", spec, {"index": i})
        assert v.passed, v.to_dict()


def test_thm4_needs_two_generators():
    assert verify_theorem("thm4", pauli_spec("XI", "ZI", "IX")).status == "not-applicable"
    assert verify_theorem("thm4", XZ, {"index": 2}).status == "not-applicable"


def test_thm5_cycle4():
    v = verify_theorem("thm5", qaoa_generators(*cycle_graph(4)), {"Q": np.diag([1.0, 2.0])})
    assert v.passed and v.measured == {"dim_gg": 18, "dim_center": 2}
    assert v.checks == {"center_form": True, "power_span": True}
    assert v.notes["center_form_residual"] < 1e-8 and v.notes["cycle_length"] == 2


def test_thm5_rejects_sign_ambiguous():
    v = verify_theorem("thm5", qaoa_generators(*cycle_graph(4)), {"Q": oracle.PAULI["Z"]})
    assert v.status == "not-applicable" and "sign" in v.notes["reason"]


@pytest.mark.parametrize("family", ["maxcut", "sn_equivariant"])
@pytest.mark.parametrize("graph", [cycle_graph(3), cycle_graph(4), complete_graph(3), complete_graph(4),
                                   cycle_graph(5), complete_graph(5)])
def test_thm5_sweep(graph, family):
    spec = qaoa_generators(*graph, family=family)
    v = verify_theorem("thm5", spec)
    base = analyze(spec.generators)
    assert v.passed
    assert v.measured["dim_gg"] == 2 * base.dim_gg


def test_lemma7_and_ambiguity():
    assert verify_theorem("lemma7", X1Z12).passed
    near = GeneratorSpec.of([P("X"), S([("X", 1.0), ("Z", 3e-9)])])
    v = verify_theorem("lemma7", near)
    assert v.status == "ambiguous" and "ambiguous" in v.notes


def test_thm8_identity():
    v = verify_theorem("thm8-identity", pauli_spec("XI", "ZZ", "YX"))
    assert v.passed and v.measured == {"violations": 0}
    assert verify_theorem("thm8-identity", GeneratorSpec.of(
        [S([("XI", 1), ("IX", 1)]), S([("ZI", 1), ("IZ", 1)])])).status == "not-applicable"


def test_capped_verdict_fails():
    with pytest.warns(UserWarning, match="capped"):
        v = verify_theorem("thm1", qaoa_generators(*cycle_graph(4)), caps={"max_dim": 4})
    assert v.status == "fail" and v.notes["capped"]


def test_unknown_theorem():
    with pytest.raises(ValueError):
        verify_theorem("thm9", XZ)
    assert set(THEOREMS) == {"thm1", "thm2", "thm3", "thm4", "thm5", "lemma7", "thm8-identity"}


def test_digest_is_deterministic():
    a = verify_theorem("thm1", XZ, {"K": 2})
    b = verify_theorem("thm1", XZ, {"K": 2})
    c = verify_theorem("thm1", XZ, {"K": 3})
    assert a.inputs_digest == b.inputs_digest != c.inputs_digest
    assert a.to_dict(timings=False) == b.to_dict(timings=False)


# -- containment -------------------------------------------------------------------

def test_projector_containment():
    chi = chi_of(1, 2)
    dec = hermitian_eig(chi)
    base = analyze(XZ.generators)
    mod = analyze(extend_naive(XZ, chi).generators)
    assert projector_containment_check(mod, base, dec)
    eye = hermitian_eig(np.eye(2))
    lifted = analyze([_tensor(g, np.eye(2)) for g in XZ.generators])
    assert projector_containment_check(lifted, base, eye)
    # the modified closure is not inside g (x) span{I}
    assert not projector_containment_check(mod, base, eye)


# -- spectrum-level robustness ---------------------------------------------------------

@pytest.mark.parametrize("theorem,spec", [
    ("thm1", XZ),
    ("thm2", X1Z12),
    ("thm5", qaoa_generators(*cycle_graph(3))),
])
@pytest.mark.parametrize("seed", [0, 1])
def test_conjugated_operators_give_same_verdict(theorem, spec, seed):
    key = "Q" if theorem == "thm5" else "chi"
    h = np.diag([1.0, 2.0, 3.0, 3.0]) if theorem != "thm5" else np.diag([1.0, 2.0])
    u = random_unitary(h.shape[0], np.random.default_rng(seed))
    plain = verify_theorem(theorem, spec, {key: h})
    rotated = verify_theorem(theorem, spec, {key: u @ h @ u.conj().T})
    assert plain.passed and rotated.passed
    assert plain.measured == rotated.measured
