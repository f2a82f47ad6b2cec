"""Executable checks of the direct-power theorems.

Each check builds the modified generator set, computes both closures and
compares measured dimensions with the predicted ones. Isomorphism claims are
backed by an explicit block basis ``{U_p (x) P_j}`` (``DirectPowerEvidence``).
Dimensions are confirmed at two rank thresholds (10x looser and 10x tighter
than the policy's); disagreement gives an ``ambiguous`` verdict.
"""
from __future__ import annotations

import hashlib
import json
import time
from dataclasses import dataclass, field

import numpy as np

from .closure import ClosureReport, LieBasis, analyze, contains, is_pauli_term_set
from .constructions import (
    GeneratorSpec,
    detect_cyclic,
    extend_naive,
    extend_subset,
    pauli_spec,
    tensor_q,
    verify_4lambda_identity,
)
from .dense import build_hermitian_with_spectrum, matrix_to_json, sign_unambiguous, square_scalar_check
from .errors import DependentGeneratorsError, DLAError, DimensionMismatchError
from .numeric import (
    DEFAULT_POLICY,
    SpectralDecomposition,
    TolerancePolicy,
    commutator,
    hermitian_eig,
    hs_inner,
    hs_norm,
    is_pauli,
    power_span_check,
    span_of,
)
from .pauli import PauliCombination, anticommutation_graph, tensor_with_hermitian

THEOREMS = ("thm1", "thm2", "thm3", "thm4", "thm5", "lemma7", "thm8-identity")
EVIDENCE_TOL = 1e-8
# base registers up to this size are checked through dense Kronecker identities
FACTORED_QUBIT_CAP = 7


def _tensor(u, h: np.ndarray):
    if is_pauli(u):
        return tensor_with_hermitian(u, h)
    return np.kron(u, h)


# ---------------------------------------------------------------------------
# Direct-power evidence


@dataclass(frozen=True)
class DirectPowerEvidence:
    block_count: int
    per_block_dim: tuple
    base_dim: int
    blocks_span_match: bool
    pairwise_commuting: bool
    structure_constants_match: bool
    max_containment_residual: float = 0.0
    max_cross_commutator: float = 0.0
    max_structure_error: float = 0.0

    @property
    def accepted(self) -> bool:
        return (self.blocks_span_match and self.pairwise_commuting and self.structure_constants_match
                and all(d == self.base_dim for d in self.per_block_dim))

    def to_dict(self) -> dict:
        return {
            "block_count": self.block_count,
            "per_block_dim": list(self.per_block_dim),
            "base_dim": self.base_dim,
            "blocks_span_match": self.blocks_span_match,
            "pairwise_commuting": self.pairwise_commuting,
            "structure_constants_match": self.structure_constants_match,
            "max_containment_residual": self.max_containment_residual,
            "max_cross_commutator": self.max_cross_commutator,
            "max_structure_error": self.max_structure_error,
            "accepted": self.accepted,
        }


def verify_direct_power(modified: LieBasis, base: LieBasis, projectors: SpectralDecomposition,
                        policy: TolerancePolicy = DEFAULT_POLICY, tol: float = EVIDENCE_TOL) -> DirectPowerEvidence:
    """Check that ``{U_p (x) P_j}`` exhibits ``modified`` as K commuting copies of ``base``.

    ``base`` must be orthonormal (as closure outputs are), so its structure
    constants are ``f_pq^r = <[U_p, U_q], U_r>``.
    """
    if modified.capped or base.capped:
        raise ValueError("direct-power evidence needs completed closures")
    if modified.backend == "dense" and base.backend == "pauli":
        base = base.to_dense()
    if not base.elements:
        return DirectPowerEvidence(projectors.K, (0,) * projectors.K, 0, modified.dim == 0, True, True)
    u = base.elements
    d_base = u[0].qubit_count if is_pauli(u[0]) else np.shape(u[0])[0]
    d_mod = modified.generators[0]
    d_mod = 2**d_mod.qubit_count if is_pauli(d_mod) else np.shape(d_mod)[0]
    d_base = 2**d_base if is_pauli(u[0]) else d_base
    if d_base * projectors.dim != d_mod:
        raise DimensionMismatchError(f"{d_base} x {projectors.dim} does not match modified dimension {d_mod}")

    blocks = [[_tensor(x, p) for x in u] for p in projectors.projectors]
    traces = [float(np.trace(p).real) for p in projectors.projectors]

    target = modified.span(policy)
    flat = [e for block in blocks for e in block]
    max_res = max(target.residual(e) for e in flat)
    joint = span_of(flat, policy, target.coords)
    per_block = tuple(span_of(block, policy, target.coords).dim for block in blocks)
    span_match = max_res < tol and joint.dim == modified.dim

    if is_pauli(u[0]) and u[0].qubit_count > FACTORED_QUBIT_CAP:
        max_cross, max_err = _block_algebra_direct(u, blocks, traces)
    else:
        dense_u = np.array([x.to_dense() if is_pauli(x) else np.asarray(x) for x in u])
        max_cross, max_err = _block_algebra_factored(dense_u, projectors.projectors)

    return DirectPowerEvidence(
        block_count=len(blocks),
        per_block_dim=per_block,
        base_dim=len(u),
        blocks_span_match=bool(span_match),
        pairwise_commuting=bool(max_cross < tol),
        structure_constants_match=bool(max_err < tol),
        max_containment_residual=float(max_res),
        max_cross_commutator=float(max_cross),
        max_structure_error=float(max_err),
    )


def _block_algebra_direct(u, blocks, traces) -> tuple[float, float]:
    """Cross-block and intra-block checks by forming every block commutator."""
    max_cross = 0.0
    for i in range(len(blocks)):
        for j in range(i + 1, len(blocks)):
            for a in blocks[i]:
                na = hs_norm(a)
                for b in blocks[j]:
                    max_cross = max(max_cross, hs_norm(commutator(a, b)) / (na * hs_norm(b)))

    D = len(u)
    f = np.zeros((D, D, D))
    for p in range(D):
        for q in range(p + 1, D):
            c = commutator(u[p], u[q])
            for r in range(D):
                f[p, q, r] = hs_inner(c, u[r])
            f[q, p] = -f[p, q]
    scale = max(1.0, float(np.max(np.abs(f))))
    max_err = 0.0
    for block, tr in zip(blocks, traces):
        for p in range(D):
            for q in range(p + 1, D):
                c = commutator(block[p], block[q])
                coeffs = np.array([hs_inner(c, block[r]) / tr for r in range(D)])
                rebuilt = sum((coeffs[r] * block[r] for r in range(D)), 0 * c)
                err = max(float(np.max(np.abs(coeffs - f[p, q]))) / scale,
                          hs_norm(c - rebuilt) / (scale * np.sqrt(tr)))
                max_err = max(max_err, err)
    return max_cross, max_err


def _block_algebra_factored(u: np.ndarray, projectors) -> tuple[float, float]:
    """Same checks as ``_block_algebra_direct`` via Kronecker-product identities.

    With ``E_pi = U_p (x) P_i``:
    ``[E_pi, E_qj] = U_p U_q (x) P_i P_j - U_q U_p (x) P_j P_i``, whose norm
    follows from the Gram data of the two factors, and
    ``[E_pj, E_qj] = [U_p, U_q] (x) P_j**2``. Nothing larger than the base
    operators and the projectors is ever formed.
    """
    D, d, _ = u.shape
    flat = u.reshape(D, d * d)
    unorm = np.linalg.norm(flat, axis=1)
    projs = [np.asarray(p, dtype=complex) for p in projectors]
    pnorm = [float(np.linalg.norm(p)) for p in projs]

    # products U_p U_q (rows p) and U_q U_p, one p at a time
    left = [np.matmul(u[p], u).reshape(D, -1) for p in range(D)]
    right = [np.matmul(u, u[p]).reshape(D, -1) for p in range(D)]

    max_cross = 0.0
    for i in range(len(projs)):
        for j in range(i + 1, len(projs)):
            a = projs[i] @ projs[j]
            b = projs[j] @ projs[i]
            na2, nb2 = np.vdot(a, a).real, np.vdot(b, b).real
            ab = np.vdot(a, b)
            for p in range(D):
                x, y = left[p], right[p]
                sq = ((np.abs(x) ** 2).sum(1) * na2 + (np.abs(y) ** 2).sum(1) * nb2
                      - 2.0 * (np.einsum("qk,qk->q", x.conj(), y) * ab).real)
                rel = np.sqrt(np.maximum(sq, 0.0)) / (unorm[p] * unorm * pnorm[i] * pnorm[j])
                max_cross = max(max_cross, float(rel.max()))

    f = np.zeros((D, D, D))
    gram = []
    for p in range(D):
        c = left[p] - right[p]
        g = c.conj() @ flat.T
        gram.append((c, g))
        f[p] = g.real
    scale = max(1.0, float(np.max(np.abs(f))))
    max_err = 0.0
    for proj in projs:
        tr = float(np.trace(proj).real)
        sq = proj @ proj
        t3 = np.vdot(sq, proj)
        idem = float(np.linalg.norm(sq - proj))
        for p in range(D):
            c, g = gram[p]
            coeffs = (g * t3).real / tr
            base_res = np.linalg.norm(c - coeffs @ flat, axis=1)
            cnorm = np.linalg.norm(c, axis=1)
            rebuild = (cnorm * idem + base_res * np.sqrt(tr)) / (scale * np.sqrt(tr))
            err = max(float(np.max(np.abs(coeffs - f[p]))) / scale, float(rebuild.max()))
            max_err = max(max_err, err)
    return max_cross, max_err


@dataclass(frozen=True)
class ContainmentResult:
    closure_residual: float
    derived_residual: float
    center_residual: float
    tol: float = EVIDENCE_TOL

    @property
    def ok(self) -> bool:
        return max(self.closure_residual, self.derived_residual, self.center_residual) < self.tol

    def __bool__(self) -> bool:
        return self.ok


def _max_residual(ops, spanning, policy) -> float:
    ops = list(ops)
    if not ops:
        return 0.0
    if not spanning:
        return 1.0
    s = span_of(spanning, policy)
    return max(s.residual(op) for op in ops)


def projector_containment_check(modified: ClosureReport, base: ClosureReport, decomp: SpectralDecomposition,
                                policy: TolerancePolicy = DEFAULT_POLICY) -> ContainmentResult:
    """Residuals of g', [g',g'] and Z(g') against g, [g,g] and Z(g) tensored with span{P_j}."""
    def lift(basis: LieBasis):
        els = basis.elements
        if modified.algebra.backend == "dense" and basis.backend == "pauli":
            els = basis.to_dense().elements
        return [_tensor(x, p) for p in decomp.projectors for x in els]

    return ContainmentResult(
        _max_residual(modified.algebra.elements, lift(base.algebra), policy),
        _max_residual(modified.derived.elements, lift(base.derived), policy),
        _max_residual(modified.center_basis.elements, lift(base.center_basis), policy),
    )


# ---------------------------------------------------------------------------
# Verdicts


@dataclass
class TheoremVerdict:
    theorem_id: str
    status: str
    inputs_digest: str
    predicted: dict
    measured: dict
    evidence: DirectPowerEvidence | None = None
    checks: dict = field(default_factory=dict)
    notes: dict = field(default_factory=dict)
    timings: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_dict(self, timings: bool = True) -> dict:
        out = {
            "theorem_id": self.theorem_id,
            "status": self.status,
            "pass": self.passed,
            "inputs_digest": self.inputs_digest,
            "predicted": self.predicted,
            "measured": self.measured,
            "evidence": None if self.evidence is None else self.evidence.to_dict(),
            "checks": self.checks,
            "notes": self.notes,
        }
        if timings:
            out["timings"] = self.timings
        return out


def _aux_json(aux: dict) -> dict:
    out = {}
    for key, value in sorted(aux.items()):
        if isinstance(value, np.ndarray):
            out[key] = matrix_to_json(value)
        elif isinstance(value, PauliCombination):
            out[key] = value.to_json()
        else:
            out[key] = value
    return out


def inputs_digest(theorem_id: str, spec: GeneratorSpec, aux: dict) -> str:
    from .serialize import spec_to_json

    payload = {"theorem": theorem_id, "spec": spec_to_json(spec), "aux": _aux_json(aux)}
    return hashlib.sha256(json.dumps(payload, sort_keys=True).encode()).hexdigest()


def _dims(r: ClosureReport) -> tuple:
    return (r.dim_g, r.dim_gg, r.dim_center, r.dim_spanA_cap_gg)


class _Run:
    """Timing and dual-tolerance bookkeeping for a single verdict."""

    def __init__(self, caps: dict, policy: TolerancePolicy):
        self.caps = caps
        self.policy = policy
        self.loose = policy.with_rank(policy.rank_threshold * 10)
        self.tight = policy.with_rank(policy.rank_threshold / 10)
        self.timings: dict = {}
        self.ambiguous: list = []
        self.capped: list = []

    def measure(self, name: str, gens) -> ClosureReport:
        t0 = time.perf_counter()
        kw = {"max_dim": self.caps.get("max_dim"), "max_rounds": self.caps.get("max_rounds", 64)}
        tight = analyze(gens, policy=self.tight, **kw)
        if tight.capped:
            self.capped.append(name)
        else:
            try:
                loose = _dims(analyze(gens, policy=self.loose, cross_check=False, **kw))
            except DependentGeneratorsError:
                loose = "dependent generators"
            if loose != _dims(tight):
                self.ambiguous.append({name: {"tight": _dims(tight), "loose": loose}})
        self.timings[name] = time.perf_counter() - t0
        return tight


def _finish(theorem_id, digest, run: _Run, predicted, measured, evidence=None, checks=None, notes=None):
    checks = dict(checks or {})
    notes = dict(notes or {})
    if run.capped:
        notes["capped"] = run.capped
        status = "fail"
    elif run.ambiguous:
        notes["ambiguous"] = run.ambiguous
        status = "ambiguous"
    else:
        ok = predicted == measured and all(checks.values())
        if evidence is not None:
            ok = ok and evidence.accepted
        status = "pass" if ok else "fail"
    return TheoremVerdict(theorem_id, status, digest, predicted, measured, evidence, checks, notes,
                          dict(run.timings))


def _not_applicable(theorem_id, digest, reason: str) -> TheoremVerdict:
    return TheoremVerdict(theorem_id, "not-applicable", digest, {}, {}, notes={"reason": reason})


def _chi(aux: dict, key: str = "chi", default_k: int = 2) -> np.ndarray:
    if aux.get(key) is not None:
        op = aux[key]
        return op.to_dense() if is_pauli(op) else np.asarray(op, dtype=complex)
    k = int(aux.get("K", default_k))
    return build_hermitian_with_spectrum(list(range(1, k + 1)))


def _in_derived(report: ClosureReport, op, policy) -> bool:
    return contains(report.derived, op, policy) < EVIDENCE_TOL


def verify_theorem(theorem_id: str, spec: GeneratorSpec, aux: dict | None = None, caps: dict | None = None,
                   policy: TolerancePolicy = DEFAULT_POLICY) -> TheoremVerdict:
    """Predicted-vs-measured verdict for one theorem on one generator set.

    ``aux`` keys: ``chi`` (Hermitian matrix) or ``K`` (use diag(1..K)) for
    thm1-thm4, ``q`` for the interpolated thm2 variant, ``index`` (0-based)
    for thm3/thm4, ``Q`` for thm5 (default diag(1, 2)).
    """
    if theorem_id not in THEOREMS:
        raise ValueError(f"unknown theorem {theorem_id!r}; choose from {THEOREMS}")
    aux = dict(aux or {})
    caps = dict(caps or {})
    digest = inputs_digest(theorem_id, spec, aux)
    run = _Run(caps, policy)
    handler = _HANDLERS[theorem_id]
    try:
        return handler(theorem_id, digest, spec, aux, run)
    except DLAError as exc:
        return _not_applicable(theorem_id, digest, f"{type(exc).__name__}: {exc}")


def _thm1(tid, digest, spec, aux, run):
    chi = _chi(aux)
    decomp = hermitian_eig(chi, run.policy)
    base = run.measure("base", spec.generators)
    mod = run.measure("modified", extend_naive(spec, chi, policy=run.policy).generators)
    if run.capped:
        return _finish(tid, digest, run, {}, {})
    predicted = {"dim_g": decomp.K * base.dim_g}
    measured = {"dim_g": mod.dim_g}
    evidence = verify_direct_power(mod.algebra, base.algebra, decomp, run.policy)
    return _finish(tid, digest, run, predicted, measured, evidence, notes={"K": decomp.K})


def _thm2(tid, digest, spec, aux, run):
    chi = _chi(aux)
    decomp = hermitian_eig(chi, run.policy)
    q = aux.get("q")
    if q is not None and int(q) < 2:
        return _not_applicable(tid, digest, f"q={q}: the interpolated family starts at q=2")
    base = run.measure("base", spec.generators)
    if q is None:
        mod_spec = extend_subset(spec, chi, range(spec.L))
        copies = 2
    else:
        mod_spec = extend_naive(spec, chi, int(q), policy=run.policy)
        copies = int(q)
    mod = run.measure("modified", mod_spec.generators)
    if run.capped:
        return _finish(tid, digest, run, {}, {})
    predicted = {"dim_gg": decomp.K * base.dim_gg, "dim_center": copies * base.dim_center}
    measured = {"dim_gg": mod.dim_gg, "dim_center": mod.dim_center}
    evidence = verify_direct_power(mod.derived, base.derived, decomp, run.policy)
    containment = projector_containment_check(mod, base, decomp, run.policy)
    checks = {"projector_containment": containment.ok}
    notes = {"K": decomp.K, "center_copies": copies}
    return _finish(tid, digest, run, predicted, measured, evidence, checks, notes)


def _thm3(tid, digest, spec, aux, run):
    if not is_pauli_term_set(spec.generators):
        return _not_applicable(tid, digest, "generators are not single Pauli strings")
    if not anticommutation_graph(spec.generators).connected:
        return _not_applicable(tid, digest, "anticommutation graph is not connected")
    i = int(aux.get("index", 0))
    chi = _chi(aux)
    decomp = hermitian_eig(chi, run.policy)
    base = run.measure("base", spec.generators)
    mod = run.measure("modified", extend_subset(spec, chi, [i]).generators)
    if run.capped:
        return _finish(tid, digest, run, {}, {})
    predicted = {"dim_g": decomp.K * base.dim_g}
    measured = {"dim_g": mod.dim_g}
    evidence = verify_direct_power(mod.algebra, base.algebra, decomp, run.policy)
    return _finish(tid, digest, run, predicted, measured, evidence, notes={"K": decomp.K, "index": i})


def table_row(extended_in_gg: bool, other_in_gg: bool) -> int:
    """Row (1-4) of the two-generator case table, extended generator listed first."""
    return 1 + 2 * (not extended_in_gg) + (not other_in_gg)


def _thm4(tid, digest, spec, aux, run):
    if spec.L != 2:
        return _not_applicable(tid, digest, f"needs exactly two generators, got {spec.L}")
    i = int(aux.get("index", 0))
    if i not in (0, 1):
        return _not_applicable(tid, digest, f"index {i} is not 0 or 1")
    chi = _chi(aux)
    decomp = hermitian_eig(chi, run.policy)
    base = run.measure("base", spec.generators)
    mod = run.measure("modified", extend_subset(spec, chi, [i]).generators)
    if run.capped:
        return _finish(tid, digest, run, {}, {})
    in_gg = [_in_derived(base, a, run.tight) for a in spec.generators]
    center = base.dim_center + (0 if in_gg[i] else 1)
    predicted = {
        "dim_gg": decomp.K * base.dim_gg,
        "dim_center": center,
        "dim_spanA_cap_gg": spec.L + 1 - center,
    }
    measured = {"dim_gg": mod.dim_gg, "dim_center": mod.dim_center, "dim_spanA_cap_gg": mod.dim_spanA_cap_gg}
    evidence = verify_direct_power(mod.derived, base.derived, decomp, run.policy)
    notes = {
        "K": decomp.K,
        "index": i,
        "generator_in_gg": in_gg,
        "table_row": table_row(in_gg[i], in_gg[1 - i]),
        "base_center": base.dim_center,
    }
    return _finish(tid, digest, run, predicted, measured, evidence, notes=notes)


def _thm5(tid, digest, spec, aux, run):
    q_op = _chi(aux, "Q")
    if not sign_unambiguous(q_op, run.policy):
        return _not_applicable(tid, digest, "Q is not sign unambiguous")
    cyc = detect_cyclic(spec, policy=run.policy)
    if cyc.common_cycle_length is None:
        return _not_applicable(tid, digest, "no common cycle length found within the search cap")
    M = cyc.common_cycle_length
    decomp = hermitian_eig(q_op, run.policy).nonzero(run.policy)
    base = run.measure("base", spec.generators)
    mod_spec = tensor_q(spec, q_op, policy=run.policy)
    mod = run.measure("modified", mod_spec.generators)
    if run.capped:
        return _finish(tid, digest, run, {}, {})
    predicted = {"dim_gg": decomp.K * base.dim_gg, "dim_center": base.dim_center}
    measured = {"dim_gg": mod.dim_gg, "dim_center": mod.dim_center}
    evidence = verify_direct_power(mod.derived, base.derived, decomp, run.policy)
    centre_els = base.center_basis.elements
    if mod.algebra.backend == "dense" and base.algebra.backend == "pauli":
        centre_els = base.center_basis.to_dense().elements
    form = [_tensor(c, q_op) for c in centre_els]
    centre_res = _max_residual(mod.center_basis.elements, form, run.policy)
    vander = power_span_check(decomp, offset=2, stride=M, policy=run.policy)
    checks = {"center_form": centre_res < EVIDENCE_TOL, "power_span": vander.independent}
    notes = {"K": decomp.K, "cycle_length": M, "center_form_residual": centre_res,
             "hadamard_ratio": vander.hadamard_ratio}
    return _finish(tid, digest, run, predicted, measured, evidence, checks, notes)


def _lemma7(tid, digest, spec, aux, run):
    r = run.measure("base", spec.generators)
    if run.capped:
        return _finish(tid, digest, run, {}, {})
    predicted = {"dim_center+dim_spanA_cap_gg": spec.L}
    measured = {"dim_center+dim_spanA_cap_gg": r.dim_center + r.dim_spanA_cap_gg}
    checks = {"reductive": r.reductive_ok}
    return _finish(tid, digest, run, predicted, measured, checks=checks,
                   notes={"dim_center": r.dim_center, "dim_spanA_cap_gg": r.dim_spanA_cap_gg})


def _thm8(tid, digest, spec, aux, run):
    gens = spec.generators
    tested, failures = [], []
    t0 = time.perf_counter()
    for a_idx, a in enumerate(gens):
        lam = square_scalar_check(a)
        if lam is None or lam >= 0:
            continue
        for b_idx, b in enumerate(gens):
            if b_idx == a_idx:
                continue
            ok, _ = verify_4lambda_identity(a, b)
            tested.append([a_idx, b_idx])
            if not ok:
                failures.append([a_idx, b_idx])
    run.timings["identity"] = time.perf_counter() - t0
    if not tested:
        return _not_applicable(tid, digest, "no generator squares to a negative multiple of the identity")
    return _finish(tid, digest, run, {"violations": 0}, {"violations": len(failures)},
                   notes={"pairs_tested": tested, "failed_pairs": failures})


_HANDLERS = {
    "thm1": _thm1,
    "thm2": _thm2,
    "thm3": _thm3,
    "thm4": _thm4,
    "thm5": _thm5,
    "lemma7": _lemma7,
    "thm8-identity": _thm8,
}


# ---------------------------------------------------------------------------
# Seeded random inputs for sweeps

COEFF_CHOICES = (1.0, -1.0, 2.0, 0.5)


def random_pauli_label(rng: np.random.Generator, n: int) -> str:
    while True:
        label = "".join(rng.choice(list("IXYZ"), size=n))
        if set(label) != {"I"}:
            return label


def _distinct_labels(rng, n: int, count: int) -> list[str]:
    labels: list[str] = []
    while len(labels) < count:
        s = random_pauli_label(rng, n)
        if s not in labels:
            labels.append(s)
    return labels


def random_pauli_set(rng: np.random.Generator, qubits=(2, 4), sizes=(2, 4)) -> GeneratorSpec:
    """Distinct random Pauli strings; sizes and qubit counts drawn uniformly from the ranges."""
    n = int(rng.integers(qubits[0], qubits[1] + 1))
    L = int(rng.integers(sizes[0], sizes[1] + 1))
    return pauli_spec(*_distinct_labels(rng, n, L), family_tag="random-pauli")


def random_connected_pauli_set(rng: np.random.Generator, qubits=(2, 4), sizes=(3, 5)) -> GeneratorSpec:
    """Random Pauli strings whose anticommutation graph is connected (rejection sampling)."""
    while True:
        n = int(rng.integers(qubits[0], qubits[1] + 1))
        L = int(rng.integers(sizes[0], sizes[1] + 1))
        labels = _distinct_labels(rng, n, L)
        spec = pauli_spec(*labels, family_tag="random-connected-pauli")
        if anticommutation_graph(spec.generators).connected:
            return spec


def random_two_generator_set(rng: np.random.Generator, max_qubits: int = 2) -> GeneratorSpec:
    """Two generators, each a combination of one or two random strings with small coefficients."""
    while True:
        n = int(rng.integers(1, max_qubits + 1))
        gens = []
        for _ in range(2):
            t = int(rng.integers(1, 3))
            labels = _distinct_labels(rng, n, min(t, 4**n - 1))
            gens.append(PauliCombination.from_terms(
                (s, float(rng.choice(COEFF_CHOICES))) for s in labels
            ))
        try:
            return GeneratorSpec.of(gens, "random-two-generator")
        except DLAError:
            continue


def base_spec(name: str) -> GeneratorSpec:
    """Named base sets used by the command line and the sweeps."""
    if name == "pauli-xz":
        return pauli_spec("X", "Z", family_tag="pauli-xz")
    if name == "pauli-x1z12":
        return GeneratorSpec.of(
            [PauliCombination.from_label("XI"), PauliCombination.from_terms([("ZI", 1.0), ("IZ", 1.0)])],
            "pauli-x1z12",
        )
    if name == "pauli-z1z2":
        return pauli_spec("ZI", "IZ", family_tag="pauli-z1z2")
    raise ValueError(f"unknown base set {name!r}")


BASE_SETS = ("pauli-xz", "pauli-x1z12", "pauli-z1z2")
