"""Lie closure, commutator subalgebra and center of a generator set.

The main closure uses the right-nested frontier schedule: every round brackets
each generator with the elements added in the previous round. Nested
commutators of any shape reduce to right-nested ones (see ``rewrite``), so
this schedule reaches the whole algebra. ``all_pairs_closure_oracle`` is the
brute-force alternative used to check that claim.

Provenance sequences list generator indices innermost-first: ``(k1, ..., kl)``
stands for ``[A_kl, [..., [A_k2, A_k1]]]``.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import CappedClosureError, DependentGeneratorsError, InvalidGeneratorError
from .dense import is_anti_hermitian, is_traceless
from .numeric import (
    DEFAULT_POLICY,
    Coordinates,
    OrthonormalSpan,
    TolerancePolicy,
    commutator,
    hs_norm,
    is_pauli,
    span_of,
)
from .pauli import PauliCombination

DEFAULT_MAX_ROUNDS = 64
CROSS_CHECK_RTOL = 1e-8


@dataclass(frozen=True, eq=False)
class LieBasis:
    """Orthonormal basis of a computed real Lie algebra.

    ``values[k]`` is the normalized right-nested commutator recorded in
    ``provenance[k]``; the values and the elements span the same flag of
    subspaces, i.e. ``values[:k+1]`` and ``elements[:k+1]`` have equal span.
    Provenance is ``None`` for elements without a right-nested record.
    """

    elements: tuple
    values: tuple
    provenance: tuple
    backend: str
    generators: tuple = ()
    capped: bool = False
    rounds: int = 0

    @property
    def dim(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def span(self, policy: TolerancePolicy = DEFAULT_POLICY, coords: Coordinates | None = None) -> OrthonormalSpan:
        template = self.elements[0] if self.elements else self.generators[0]
        return span_of(self.elements, policy, coords or Coordinates(template))

    def to_dense(self) -> "LieBasis":
        if self.backend == "dense":
            return self
        conv = lambda ops: tuple(op.to_dense() for op in ops)  # noqa: E731
        return LieBasis(conv(self.elements), conv(self.values), self.provenance, "dense",
                        conv(self.generators), self.capped, self.rounds)


def validate_generators(generators) -> list:
    """Check backend uniformity, tracelessness and anti-Hermiticity."""
    gens = list(generators)
    if not gens:
        raise InvalidGeneratorError("empty generator list")
    if all(is_pauli(g) for g in gens):
        n = gens[0].qubit_count
        for i, g in enumerate(gens):
            if g.qubit_count != n:
                raise InvalidGeneratorError(f"generator {i} acts on {g.qubit_count} qubits, not {n}")
            if not g.is_traceless():
                raise InvalidGeneratorError(f"generator {i} has an identity component")
            if not g:
                raise InvalidGeneratorError(f"generator {i} is zero")
        return gens
    if any(is_pauli(g) for g in gens):
        raise InvalidGeneratorError("mixed Pauli and dense generators")
    out = []
    for i, g in enumerate(gens):
        g = np.asarray(g, dtype=complex)
        if g.shape != np.shape(gens[0]):
            raise InvalidGeneratorError(f"generator {i} has shape {g.shape}")
        if not is_anti_hermitian(g):
            raise InvalidGeneratorError(f"generator {i} is not anti-Hermitian")
        if not is_traceless(g):
            raise InvalidGeneratorError(f"generator {i} is not traceless")
        out.append(g)
    return out


def ambient_dimension(template) -> int:
    """Dimension of su(d) for the space the template acts on."""
    d = 2**template.qubit_count if is_pauli(template) else np.shape(template)[0]
    return d * d - 1


def _seed(gens, policy):
    coords = Coordinates(gens[0])
    span = OrthonormalSpan(coords, policy)
    norms = []
    for i, g in enumerate(gens):
        if not span.offer(g).extended:
            raise DependentGeneratorsError(f"generator {i} is in the span of the previous ones")
        norms.append(hs_norm(g))
    if len(gens) == 1:
        warnings.warn("a single generator spans an abelian one-dimensional algebra", stacklevel=3)
    return span, norms


def lie_closure(generators, max_dim: int | None = None, max_rounds: int = DEFAULT_MAX_ROUNDS,
                policy: TolerancePolicy = DEFAULT_POLICY) -> LieBasis:
    """Real Lie closure of linearly independent traceless anti-Hermitian generators.

    Candidates inside a round are processed in (generator index, basis index)
    order, so the result is deterministic for a fixed input order. If the
    dimension exceeds ``max_dim`` or ``max_rounds`` rounds elapse without
    convergence, the partial basis is returned with ``capped=True``.
    """
    gens = validate_generators(generators)
    span, norms = _seed(gens, policy)
    cap = ambient_dimension(gens[0]) if max_dim is None else max_dim
    values = [g / n for g, n in zip(gens, norms)]
    provenance: list = [(i,) for i in range(len(gens))]
    frontier = list(range(len(gens)))
    capped = span.dim > cap
    rounds = 0
    while frontier and not capped:
        if rounds >= max_rounds:
            capped = True
            break
        rounds += 1
        added = []
        for i, g in enumerate(gens):
            for b in frontier:
                cand = commutator(g, values[b])
                ext = span.offer(cand, scale=norms[i])
                if ext.extended:
                    values.append(cand / ext.candidate_norm)
                    provenance.append(provenance[b] + (i,))
                    added.append(len(values) - 1)
                    if span.dim > cap:
                        capped = True
                        break
            if capped:
                break
        frontier = added
    if capped:
        warnings.warn(f"closure capped at dimension {span.dim} after {rounds} rounds", stacklevel=2)
    backend = "pauli" if is_pauli(gens[0]) else "dense"
    return LieBasis(tuple(span.elements), tuple(values), tuple(provenance), backend,
                    tuple(gens), capped, rounds)


def all_pairs_closure_oracle(generators, max_dim: int | None = None, max_rounds: int = DEFAULT_MAX_ROUNDS,
                             policy: TolerancePolicy = DEFAULT_POLICY) -> LieBasis:
    """Brute-force closure: bracket every pair of basis elements until stable.

    Independent of the right-nested schedule; the elements themselves (not
    recorded commutator values) are bracketed, and no provenance is kept.
    Each pass of the outer loop counts as one round.
    """
    gens = validate_generators(generators)
    span, _ = _seed(gens, policy)
    cap = ambient_dimension(gens[0]) if max_dim is None else max_dim
    els = span.elements
    done = 0
    capped = False
    rounds = 0
    while done < len(els) and not capped:
        if rounds >= max_rounds:
            capped = True
            break
        rounds += 1
        stop = len(els)
        for j in range(done, stop):
            for k in range(j):
                ext = span.offer(commutator(els[k], els[j]), scale=1.0)
                if ext.extended and span.dim > cap:
                    capped = True
                    break
            if capped:
                break
        done = stop
    backend = "pauli" if is_pauli(gens[0]) else "dense"
    prov = tuple((i,) for i in range(len(gens))) + (None,) * (span.dim - len(gens))
    return LieBasis(tuple(els), tuple(els), prov, backend, tuple(gens), capped, rounds)


def _require_complete(basis: LieBasis) -> None:
    if basis.capped:
        raise CappedClosureError("operation needs a completed (uncapped) closure")


def _dense_feasible(basis: LieBasis, max_dim: int = 64, max_qubits: int = 7) -> bool:
    if basis.dim > max_dim:
        return False
    if basis.backend == "dense":
        return True
    return basis.generators[0].qubit_count <= max_qubits


def _pairwise_bracket_rank(els, rtol: float = CROSS_CHECK_RTOL) -> int:
    """Rank of the structure-constant matrix ``<[e_j, e_k], e_r>`` of an orthonormal basis.

    Brackets must stay inside the span; the rank is read off the singular
    values with a relative cutoff, which is insensitive to the small
    orthogonalization error carried by elements built from nearly dependent
    commutator values.
    """
    if len(els) < 2:
        return 0
    flat = np.array([e.reshape(-1) for e in els])
    rows = []
    for j in range(len(els)):
        for k in range(j):
            c = commutator(els[k], els[j]).reshape(-1)
            coeffs = (flat.conj() @ c).real
            # unit-norm operands, so the leak is already on a relative scale
            leak = float(np.linalg.norm(c - coeffs @ flat))
            if leak > CROSS_CHECK_RTOL:
                raise AssertionError(f"bracket leaves the computed algebra (residual {leak:.2e})")
            rows.append(coeffs)
    s = np.linalg.svd(np.array(rows), compute_uv=False)
    if not s.size or s[0] == 0.0:
        return 0
    return int(np.sum(s > rtol * s[0]))


def commutator_subalgebra(basis: LieBasis, generators=None, policy: TolerancePolicy = DEFAULT_POLICY,
                          cross_check: bool | None = None) -> LieBasis:
    """Basis of ``[g, g]`` with a proper right-nested provenance for every element.

    Uses ``[g, g] = span{[A_i, v] : i, v in g}``; candidates ``[A_i, v_b]``
    extend the provenance of ``v_b`` by ``i``. With ``cross_check`` (default:
    on for small algebras) the rank of all pairwise brackets of basis elements
    is computed densely and must be the same.
    """
    _require_complete(basis)
    gens = list(basis.generators if generators is None else generators)
    coords = Coordinates(gens[0])
    span = OrthonormalSpan(coords, policy)
    values, provenance = [], []
    norms = [hs_norm(g) for g in gens]
    for b, v in enumerate(basis.values):
        for i, g in enumerate(gens):
            cand = commutator(g, v)
            ext = span.offer(cand, scale=norms[i] * hs_norm(v))
            if ext.extended:
                values.append(cand / ext.candidate_norm)
                prov = basis.provenance[b]
                provenance.append(None if prov is None else prov + (i,))
    if cross_check is None:
        cross_check = _dense_feasible(basis)
    if cross_check:
        pair_dim = _pairwise_bracket_rank(basis.to_dense().elements)
        if pair_dim != span.dim:
            raise AssertionError(
                f"[g,g] dimension mismatch: right-nested {span.dim} vs all-pairs {pair_dim}"
            )
    return LieBasis(tuple(span.elements), tuple(values), tuple(provenance), basis.backend,
                    tuple(gens), False, basis.rounds)


def center(basis: LieBasis, generators=None, policy: TolerancePolicy = DEFAULT_POLICY) -> LieBasis:
    """Orthonormal basis of the center, as the null space of ``x -> ([A_i, x])_i``.

    Commuting with every generator is enough: by the Jacobi identity such an
    element then commutes with every nested commutator.
    """
    _require_complete(basis)
    gens = list(basis.generators if generators is None else generators)
    els = basis.elements
    if not els:
        return LieBasis((), (), (), basis.backend, tuple(gens))
    coords = Coordinates(gens[0])
    blocks = []
    for g in gens:
        cols = [coords.vector(commutator(g, e)) for e in els]
        blocks.append(cols)
    width = coords.size
    rows = []
    for cols in blocks:
        mat = np.zeros((width, len(els)))
        for k, vec in enumerate(cols):
            mat[: vec.shape[0], k] = vec
        rows.append(mat)
    big = np.vstack(rows)
    _, s, vt = np.linalg.svd(big, full_matrices=True)
    smax = float(s[0]) if s.size else 0.0
    tol = policy.rank_threshold * max(big.shape) * max(smax, 1.0)
    rank = int(np.sum(s > tol))
    null = vt[rank:]
    template = Coordinates(els[0])
    basis_span = span_of(els, policy, template)
    out = [basis_span.combine(c) for c in null]
    return LieBasis(tuple(out), tuple(out), (None,) * len(out), basis.backend, tuple(gens),
                    False, basis.rounds)


@dataclass(frozen=True, eq=False)
class ClosureReport:
    """Dimensions and decomposition residuals of a generated algebra."""

    dim_g: int
    dim_gg: int | None
    dim_center: int | None
    generator_count: int
    dim_spanA_cap_gg: int | None
    reductive_residual: float | None
    decomposition_residual: float | None
    capped: bool
    rounds: int
    algebra: LieBasis = field(repr=False)
    derived: LieBasis | None = field(default=None, repr=False)
    center_basis: LieBasis | None = field(default=None, repr=False)

    @property
    def reductive_ok(self) -> bool:
        return not self.capped and self.dim_g == self.dim_gg + self.dim_center

    @property
    def lemma7_ok(self) -> bool:
        """Center dimension plus dim(span(A) intersect [g,g]) equals L."""
        return not self.capped and self.dim_center + self.dim_spanA_cap_gg == self.generator_count

    def to_dict(self) -> dict:
        return {
            "dim_g": self.dim_g,
            "dim_gg": self.dim_gg,
            "dim_center": self.dim_center,
            "generator_count": self.generator_count,
            "dim_spanA_cap_gg": self.dim_spanA_cap_gg,
            "reductive_residual": self.reductive_residual,
            "decomposition_residual": self.decomposition_residual,
            "reductive_ok": self.reductive_ok,
            "lemma7_ok": self.lemma7_ok,
            "capped": self.capped,
            "rounds": self.rounds,
        }


def analyze(generators, max_dim: int | None = None, max_rounds: int = DEFAULT_MAX_ROUNDS,
            policy: TolerancePolicy = DEFAULT_POLICY, cross_check: bool | None = None) -> ClosureReport:
    """Closure, commutator subalgebra, center and the identities relating them."""
    gens = validate_generators(generators)
    g = lie_closure(gens, max_dim, max_rounds, policy)
    L = len(gens)
    if g.capped:
        return ClosureReport(g.dim, None, None, L, None, None, None, True, g.rounds, g)
    gg = commutator_subalgebra(g, policy=policy, cross_check=cross_check)
    z = center(g, policy=policy)
    coords = Coordinates(gens[0])
    joint = span_of(list(gens) + list(gg.elements), policy, coords)
    cap_dim = L + gg.dim - joint.dim
    decomposition_residual = max(joint.residual(e) for e in g.elements)
    split = span_of(list(gg.elements) + list(z.elements), policy, coords)
    reductive_residual = max(split.residual(e) for e in g.elements)
    return ClosureReport(g.dim, gg.dim, z.dim, L, cap_dim, reductive_residual, decomposition_residual,
                         False, g.rounds, g, gg, z)


def contains(span_basis: LieBasis, op, policy: TolerancePolicy = DEFAULT_POLICY) -> float:
    """Relative residual of ``op`` against the span of a basis."""
    if not span_basis.elements:
        return 0.0 if hs_norm(op) == 0 else 1.0
    return span_basis.span(policy).residual(op)


def is_pauli_term_set(generators) -> bool:
    return all(isinstance(g, PauliCombination) and len(g) == 1 for g in generators)
