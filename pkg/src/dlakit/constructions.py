"""Generator-set factories: extensions by a Hermitian ancilla operator, QAOA families, cyclicity."""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .closure import validate_generators
from .dense import sign_unambiguous, square_scalar_check
from .errors import (
    DependentGeneratorsError,
    DimensionMismatchError,
    InvalidGeneratorError,
    SignAmbiguousError,
    SpectrumError,
)
from .numeric import (
    DEFAULT_POLICY,
    Coordinates,
    OrthonormalSpan,
    TolerancePolicy,
    check_hermitian,
    commutator,
    hermitian_eig,
    hs_norm,
    is_pauli,
    proportional,
)
from .pauli import PauliCombination, tensor_with_hermitian

DEFAULT_EXTENSION_LENGTH = 6


def _qubits_of_dim(d: int) -> int:
    m = d.bit_length() - 1
    if d < 2 or 2**m != d:
        raise DimensionMismatchError(f"dimension {d} is not a power of two >= 2")
    return m


@dataclass(frozen=True, eq=False)
class GeneratorSpec:
    """A validated, linearly independent list of traceless anti-Hermitian generators."""

    qubit_count: int
    generators: tuple
    family_tag: str = ""
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        gens = validate_generators(self.generators)
        if is_pauli(gens[0]):
            n = gens[0].qubit_count
        else:
            n = _qubits_of_dim(gens[0].shape[0])
        if n != self.qubit_count:
            raise DimensionMismatchError(f"generators act on {n} qubits, spec says {self.qubit_count}")
        span = OrthonormalSpan(Coordinates(gens[0]), DEFAULT_POLICY)
        for i, g in enumerate(gens):
            if not span.offer(g).extended:
                raise DependentGeneratorsError(f"generator {i} is in the span of the previous ones")
        object.__setattr__(self, "generators", tuple(gens))

    @classmethod
    def of(cls, generators, family_tag: str = "", meta=None) -> "GeneratorSpec":
        gens = list(generators)
        if not gens:
            raise InvalidGeneratorError("empty generator list")
        g = gens[0]
        n = g.qubit_count if is_pauli(g) else _qubits_of_dim(np.shape(g)[0])
        return cls(n, tuple(gens), family_tag, dict(meta or {}))

    @property
    def L(self) -> int:
        return len(self.generators)

    @property
    def backend(self) -> str:
        return "pauli" if is_pauli(self.generators[0]) else "dense"

    def __len__(self) -> int:
        return len(self.generators)


def pauli_spec(*labels: str, family_tag: str = "") -> GeneratorSpec:
    """Spec of single-string generators ``i*P`` from labels such as ``"XZ"``."""
    return GeneratorSpec.of([PauliCombination.from_label(s) for s in labels], family_tag or "pauli")


def _tensor(a, h: np.ndarray):
    if is_pauli(a):
        return tensor_with_hermitian(a, h)
    return np.kron(a, h)


def _ancilla_operator(chi) -> np.ndarray:
    h = check_hermitian(chi.to_dense() if is_pauli(chi) else chi)
    _qubits_of_dim(h.shape[0])
    return h


def distinct_eigenvalue_count(h, policy: TolerancePolicy = DEFAULT_POLICY) -> int:
    return hermitian_eig(h, policy).K


def extend_naive(spec: GeneratorSpec, chi, q: int | None = None,
                 policy: TolerancePolicy = DEFAULT_POLICY) -> GeneratorSpec:
    """``{A_i (x) chi**j : j < q}`` listed layer by layer (all i for j=0, then j=1, ...).

    ``chi**0`` is the identity on the ancilla, and ``q`` defaults to the number
    K of distinct eigenvalues of ``chi``.
    """
    h = _ancilla_operator(chi)
    K = distinct_eigenvalue_count(h, policy)
    if K < 2:
        raise SpectrumError("chi needs at least two distinct eigenvalues")
    q = K if q is None else int(q)
    if q < 1 or q > K:
        raise SpectrumError(f"q={q} outside [1, {K}]: higher powers of chi are dependent")
    m = _qubits_of_dim(h.shape[0])
    gens = []
    for j in range(q):
        power = np.linalg.matrix_power(h, j)
        gens.extend(_tensor(a, power) for a in spec.generators)
    tag = f"{spec.family_tag}|naive(q={q},K={K})"
    return GeneratorSpec(spec.qubit_count + m, tuple(gens), tag, {"K": K, "q": q})


def extend_subset(spec: GeneratorSpec, chi, subset) -> GeneratorSpec:
    """``{A_i (x) I : all i} + {A_i (x) chi : i in subset}``; indices are 0-based."""
    h = _ancilla_operator(chi)
    idx = sorted(set(int(i) for i in subset))
    if not idx:
        raise InvalidGeneratorError("subset must be non-empty")
    if len(idx) != len(list(subset)):
        raise InvalidGeneratorError("subset contains duplicate indices")
    if idx[0] < 0 or idx[-1] >= spec.L:
        raise InvalidGeneratorError(f"subset indices must lie in [0, {spec.L - 1}]")
    m = _qubits_of_dim(h.shape[0])
    eye = np.eye(h.shape[0], dtype=complex)
    gens = [_tensor(a, eye) for a in spec.generators]
    gens += [_tensor(spec.generators[i], h) for i in idx]
    tag = f"{spec.family_tag}|subset({','.join(map(str, idx))})"
    return GeneratorSpec(spec.qubit_count + m, tuple(gens), tag, {"subset": idx})


def tensor_q(spec: GeneratorSpec, q_op, check_sign: bool = True,
             policy: TolerancePolicy = DEFAULT_POLICY) -> GeneratorSpec:
    """``{A_i (x) Q}``; Q must be non-zero and, unless overridden, sign unambiguous."""
    h = _ancilla_operator(q_op)
    if np.linalg.norm(h) == 0.0:
        raise SpectrumError("Q must be non-zero")
    if check_sign and not sign_unambiguous(h, policy):
        raise SignAmbiguousError("Q has eigenvalues lambda and -lambda")
    m = _qubits_of_dim(h.shape[0])
    gens = [_tensor(a, h) for a in spec.generators]
    K = hermitian_eig(h, policy).nonzero(policy).K
    return GeneratorSpec(spec.qubit_count + m, tuple(gens), f"{spec.family_tag}|tensor_q", {"K": K})


# ---------------------------------------------------------------------------
# QAOA families


def cycle_graph(n: int) -> tuple[int, list[tuple[int, int]]]:
    return n, [(j, (j + 1) % n) for j in range(n)]


def complete_graph(n: int) -> tuple[int, list[tuple[int, int]]]:
    return n, [(j, k) for j in range(n) for k in range(j + 1, n)]


def _check_graph(n: int, edges) -> list[tuple[int, int]]:
    if n < 2:
        raise InvalidGeneratorError("graph needs at least two vertices")
    seen = set()
    out = []
    for u, v in edges:
        u, v = int(u), int(v)
        if u == v:
            raise InvalidGeneratorError(f"self-loop at vertex {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise InvalidGeneratorError(f"edge ({u}, {v}) out of range")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise InvalidGeneratorError(f"duplicate edge {key}")
        seen.add(key)
        out.append(key)
    if not out:
        raise InvalidGeneratorError("graph has no edges")
    return out


def _site_sum(n: int, ch: str) -> PauliCombination:
    return PauliCombination.from_terms(
        ("I" * j + ch + "I" * (n - j - 1), 1.0) for j in range(n)
    )


def qaoa_generators(n: int, edges, family: str = "maxcut") -> GeneratorSpec:
    """QAOA generators on an n-vertex graph (0-based edges).

    ``maxcut`` gives ``{sum iX_j, sum_edges iZ_jZ_k}``; ``sn_equivariant``
    inserts ``sum iY_j`` as the second generator.
    """
    edges = _check_graph(n, edges)
    zz = []
    for u, v in edges:
        label = ["I"] * n
        label[u] = label[v] = "Z"
        zz.append(("".join(label), 1.0))
    mixer = _site_sum(n, "X")
    cost = PauliCombination.from_terms(zz)
    if family == "maxcut":
        gens = [mixer, cost]
    elif family == "sn_equivariant":
        gens = [mixer, _site_sum(n, "Y"), cost]
    else:
        raise ValueError(f"unknown family {family!r}")
    return GeneratorSpec(n, tuple(gens), f"qaoa-{family}(n={n},edges={edges})")


# ---------------------------------------------------------------------------
# Cyclicity


@dataclass(frozen=True)
class CyclicityReport:
    noncommuting_pairs: tuple
    stable_extension: dict
    common_cycle_length: int | None
    search_depth_cap: int

    @property
    def cyclic(self) -> bool | None:
        """True when every pair has a stable extension, None when inconclusive."""
        if all(v is not None for v in self.stable_extension.values()):
            return True
        return None

    def extension_length(self, pair) -> int | None:
        found = self.stable_extension.get(tuple(pair))
        return None if found is None else len(found)


def sequence_value(gens, start: tuple[int, int], extension=()):
    """Value of the sequence ``start + extension``: ``[A_kl, ..., [A_j, A_i]]``."""
    i, j = start
    value = commutator(gens[j], gens[i])
    for k in extension:
        value = commutator(gens[k], value)
    return value


def _search(gens, i: int, j: int, depth: int, policy: TolerancePolicy):
    start = commutator(gens[j], gens[i])
    level = [((), start)]
    zero_cut = policy.rank_threshold * hs_norm(start)
    for _ in range(depth):
        nxt = []
        for seq, value in level:
            for k in range(len(gens)):
                v = commutator(gens[k], value)
                if hs_norm(v) <= zero_cut:
                    continue
                ext = seq + (k,)
                if proportional(v, start, policy):
                    return ext
                nxt.append((ext, v))
        level = nxt
    return None


def detect_cyclic(spec: GeneratorSpec, max_extension_length: int = DEFAULT_EXTENSION_LENGTH,
                  policy: TolerancePolicy = DEFAULT_POLICY) -> CyclicityReport:
    """Shortest stable extension of every noncommuting pair ``i < j``.

    Extensions are searched by length, then lexicographically in generator
    index. A pair without an extension up to the cap is recorded as ``None``
    (inconclusive) and leaves the common cycle length undetermined.
    """
    gens = spec.generators
    pairs, found = [], {}
    for i, j in itertools.combinations(range(len(gens)), 2):
        c = commutator(gens[j], gens[i])
        if hs_norm(c) <= policy.rank_threshold * hs_norm(gens[i]) * hs_norm(gens[j]):
            continue
        pairs.append((i, j))
        found[(i, j)] = _search(gens, i, j, max_extension_length, policy)
    lengths = [len(e) for e in found.values() if e is not None]
    M = None
    if pairs and len(lengths) == len(pairs):
        M = math.lcm(*lengths)
    return CyclicityReport(tuple(pairs), found, M, max_extension_length)


def verify_4lambda_identity(a, b, tol: float = 1e-10) -> tuple[bool, float]:
    """Check ``[a,[a,[a,b]]] == 4*lambda*[a,b]`` where ``a @ a == lambda * I``."""
    lam = square_scalar_check(a)
    if lam is None:
        raise InvalidGeneratorError("a squared is not a multiple of the identity")
    if lam >= 0:
        raise InvalidGeneratorError(f"a squared is {lam} * I, expected a negative multiple")
    ab = commutator(a, b)
    nab = hs_norm(ab)
    if nab == 0.0:
        return True, lam
    triple = commutator(a, commutator(a, ab))
    return bool(hs_norm(triple - 4.0 * lam * ab) <= tol * nab), lam
