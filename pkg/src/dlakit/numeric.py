"""Real-span linear algebra on anti-Hermitian operators and Hermitian spectra.

Every operator is compared over the reals through the Hilbert-Schmidt form
``Re tr(a^dagger b)``. Operators are either ``PauliCombination`` instances or
complex numpy matrices; both are mapped to real coordinate vectors whose
Euclidean dot product equals ``hs_inner``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Sequence

import numpy as np

from .errors import DimensionMismatchError, NotHermitianError
from .pauli import PauliCombination

ABSOLUTE_FLOOR = 1e-13


@dataclass(frozen=True)
class TolerancePolicy:
    """Numerical reading of "linearly independent", "distinct" and "proportional".

    rank_threshold
        A candidate is new when its residual after projection exceeds
        ``rank_threshold * norm(candidate)``.
    eig_group_threshold
        Eigenvalues closer than this times the spectral radius are merged.
    proportionality_threshold
        ``u`` and ``v`` are proportional when ``|cos(u, v)| > 1 - threshold``.
    """

    rank_threshold: float = 1e-9
    eig_group_threshold: float = 1e-8
    proportionality_threshold: float = 1e-10

    def __post_init__(self):
        for name in ("rank_threshold", "eig_group_threshold", "proportionality_threshold"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be strictly positive")

    def with_rank(self, rank_threshold: float) -> "TolerancePolicy":
        return replace(self, rank_threshold=rank_threshold)


DEFAULT_POLICY = TolerancePolicy()


# ---------------------------------------------------------------------------
# inner products and coordinates


def is_pauli(op) -> bool:
    return isinstance(op, PauliCombination)


def _as_dense(op) -> np.ndarray:
    return op.to_dense() if is_pauli(op) else np.asarray(op)


def hs_inner(a, b) -> float:
    """Real part of ``tr(a^dagger b)``."""
    if is_pauli(a) and is_pauli(b):
        return a.hs_inner(b)
    a, b = _as_dense(a), _as_dense(b)
    if a.shape != b.shape:
        raise DimensionMismatchError(f"shapes differ: {a.shape} vs {b.shape}")
    return float(np.vdot(a, b).real)


def hs_norm(a) -> float:
    if is_pauli(a):
        return a.norm()
    return float(np.linalg.norm(a))


def commutator(a, b):
    """``ab - ba`` on either backend."""
    if is_pauli(a) and is_pauli(b):
        return a.commutator(b)
    a, b = _as_dense(a), _as_dense(b)
    if a.shape != b.shape:
        raise DimensionMismatchError(f"shapes differ: {a.shape} vs {b.shape}")
    return a @ b - b @ a


class Coordinates:
    """Map operators of one backend to real vectors with dot product = hs_inner.

    For the Pauli backend the coordinate axes are Pauli strings, registered
    lazily the first time they are seen, so vector length grows over time.
    Earlier vectors stay valid after zero padding.
    """

    def __init__(self, template):
        if is_pauli(template):
            self.backend = "pauli"
            self.qubit_count = template.qubit_count
            self._scale = math.sqrt(2.0**self.qubit_count)
            self._index: dict[tuple[int, int], int] = {}
            self._keys: list[tuple[int, int]] = []
        else:
            a = np.asarray(template)
            if a.ndim != 2 or a.shape[0] != a.shape[1]:
                raise DimensionMismatchError("dense operators must be square")
            self.backend = "dense"
            self.shape = a.shape
            d = a.shape[0]
            self.qubit_count = d.bit_length() - 1 if d and d & (d - 1) == 0 else None
            self._size = 2 * d * d

    @property
    def size(self) -> int:
        return len(self._keys) if self.backend == "pauli" else self._size

    def vector(self, op) -> np.ndarray:
        if self.backend == "pauli":
            if not is_pauli(op) or op.qubit_count != self.qubit_count:
                raise DimensionMismatchError("operator does not match the coordinate backend")
            index, keys = self._index, self._keys
            items = list(op.items())
            for key, _ in items:
                if key not in index:
                    index[key] = len(keys)
                    keys.append(key)
            vec = np.zeros(len(keys))
            for key, c in items:
                vec[index[key]] = c
            return vec * self._scale
        a = np.asarray(op)
        if a.shape != self.shape:
            raise DimensionMismatchError(f"shapes differ: {a.shape} vs {self.shape}")
        return np.concatenate([a.real.ravel(), a.imag.ravel()]).astype(float)

    def operator(self, vec: np.ndarray):
        if self.backend == "pauli":
            vec = np.asarray(vec) / self._scale
            table = {self._keys[i]: float(vec[i]) for i in np.flatnonzero(vec)}
            return PauliCombination._raw(self.qubit_count, table)
        half = len(vec) // 2
        return (np.asarray(vec[:half]) + 1j * np.asarray(vec[half:])).reshape(self.shape)


@dataclass(frozen=True)
class Extension:
    """Outcome of offering a candidate to an orthonormal set.

    status is ``"extended"``, ``"rejected"`` (already in the span) or
    ``"trivial"`` (candidate numerically zero). ``coefficients`` expand the
    candidate's projection in the existing basis.
    """

    status: str
    coefficients: np.ndarray
    residual_norm: float
    candidate_norm: float
    element: object = None
    basis: tuple = ()

    @property
    def extended(self) -> bool:
        return self.status == "extended"


def _cgs2(rows: np.ndarray, vec: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Project ``vec`` off the row space of orthonormal ``rows`` (two passes)."""
    if rows.shape[0] == 0:
        return np.zeros(0), vec
    coeffs = rows @ vec
    resid = vec - coeffs @ rows
    again = rows @ resid
    return coeffs + again, resid - again @ rows


class OrthonormalSpan:
    """Incrementally grown orthonormal basis (Gram-Schmidt, reorthogonalized).

    Mutable builder used inside the closure engine; ``orthonormal_extend`` is
    the pure functional front end.
    """

    def __init__(self, coords: Coordinates, policy: TolerancePolicy = DEFAULT_POLICY):
        self.coords = coords
        self.policy = policy
        self._rows = np.zeros((8, max(coords.size, 8)))
        self._count = 0
        self.elements: list = []

    @property
    def dim(self) -> int:
        return self._count

    def _fit(self, vec: np.ndarray) -> np.ndarray:
        width = self._rows.shape[1]
        if vec.shape[0] > width:
            grown = np.zeros((self._rows.shape[0], max(vec.shape[0], 2 * width)))
            grown[:, :width] = self._rows
            self._rows = grown
            width = grown.shape[1]
        if vec.shape[0] < width:
            vec = np.concatenate([vec, np.zeros(width - vec.shape[0])])
        return vec

    def rows(self) -> np.ndarray:
        return self._rows[: self._count]

    def decompose(self, op) -> tuple[np.ndarray, np.ndarray, float]:
        """Return (coefficients, residual vector, candidate norm)."""
        vec = self._fit(self.coords.vector(op))
        coeffs, resid = _cgs2(self.rows(), vec)
        return coeffs, resid, float(np.linalg.norm(vec))

    def residual(self, op) -> float:
        """Relative distance of ``op`` from the span (0 for the zero operator)."""
        _, resid, norm = self.decompose(op)
        return float(np.linalg.norm(resid)) / norm if norm > ABSOLUTE_FLOOR else 0.0

    def offer(self, op, scale: float | None = None) -> Extension:
        """Add ``op`` if it leaves the span; ``scale`` sets the zero test.

        A candidate is trivial when its norm is below ``ABSOLUTE_FLOOR`` or
        below ``rank_threshold * scale`` (used for commutators, where ``scale``
        is the product of the operand norms).
        """
        coeffs, resid, norm = self.decompose(op)
        floor = ABSOLUTE_FLOOR
        if scale is not None:
            floor = max(floor, self.policy.rank_threshold * scale)
        if norm <= floor:
            return Extension("trivial", coeffs, 0.0, norm)
        rnorm = float(np.linalg.norm(resid))
        if rnorm <= self.policy.rank_threshold * norm:
            return Extension("rejected", coeffs, rnorm, norm)
        unit = resid / rnorm
        self._push(unit)
        element = self.coords.operator(unit)
        self.elements.append(element)
        return Extension("extended", coeffs, rnorm, norm, element=element)

    def _push(self, unit: np.ndarray) -> None:
        if self._count == self._rows.shape[0]:
            grown = np.zeros((2 * self._count, self._rows.shape[1]))
            grown[: self._count] = self._rows
            self._rows = grown
        self._rows[self._count] = self._fit(unit)
        self._count += 1

    def coordinates_of(self, op) -> np.ndarray:
        """Expansion coefficients of ``op`` in the current basis."""
        coeffs, _, _ = self.decompose(op)
        return coeffs

    def combine(self, coefficients: np.ndarray):
        """Operator ``sum_k c_k e_k``."""
        return self.coords.operator(np.asarray(coefficients) @ self.rows())


def span_of(ops: Sequence, policy: TolerancePolicy = DEFAULT_POLICY, coords: Coordinates | None = None):
    """Orthonormal span of ``ops`` (dependent members are skipped)."""
    ops = list(ops)
    if coords is None:
        if not ops:
            raise ValueError("need at least one operator or explicit coordinates")
        coords = Coordinates(ops[0])
    span = OrthonormalSpan(coords, policy)
    for op in ops:
        span.offer(op)
    return span


def orthonormal_extend(basis: Sequence, candidate, policy: TolerancePolicy = DEFAULT_POLICY) -> Extension:
    """Offer ``candidate`` to an hs-orthonormal ``basis`` without mutating it.

    Returns an ``Extension``; when extended, ``basis`` on the result holds the
    old elements followed by the normalized residual.
    """
    coords = Coordinates(candidate)
    span = OrthonormalSpan(coords, policy)
    for b in basis:
        span._push(coords.vector(b))
    span.elements = list(basis)
    ext = span.offer(candidate)
    if ext.extended:
        return replace(ext, basis=tuple(basis) + (ext.element,))
    return replace(ext, basis=tuple(basis))


def rank(ops: Sequence, policy: TolerancePolicy = DEFAULT_POLICY) -> int:
    ops = list(ops)
    return span_of(ops, policy).dim if ops else 0


def proportional(u, v, policy: TolerancePolicy = DEFAULT_POLICY) -> bool:
    """``|cos(u, v)| > 1 - proportionality_threshold``; zero is never proportional."""
    nu, nv = hs_norm(u), hs_norm(v)
    if nu <= ABSOLUTE_FLOOR or nv <= ABSOLUTE_FLOOR:
        return False
    return abs(hs_inner(u, v)) / (nu * nv) > 1.0 - policy.proportionality_threshold


def proportionality_residual(u, v) -> float:
    """Relative distance ``min_c ||u - c v|| / ||u||`` (inf if either is zero)."""
    nu, nv = hs_norm(u), hs_norm(v)
    if nu <= ABSOLUTE_FLOOR or nv <= ABSOLUTE_FLOOR:
        return math.inf
    # explicit rejection instead of sqrt(1 - cos^2), which cancels near 1
    c = hs_inner(u, v) / (nv * nv)
    return hs_norm(u - c * v) / nu


# ---------------------------------------------------------------------------
# Hermitian spectra


@dataclass(frozen=True, eq=False)
class SpectralDecomposition:
    eigenvalues: tuple[float, ...]
    projectors: tuple[np.ndarray, ...]
    multiplicities: tuple[int, ...]
    spectral_radius: float = field(default=0.0)

    @property
    def K(self) -> int:
        return len(self.eigenvalues)

    @property
    def dim(self) -> int:
        return self.projectors[0].shape[0]

    def reconstruct(self) -> np.ndarray:
        return sum(lam * p for lam, p in zip(self.eigenvalues, self.projectors))

    def nonzero(self, policy: TolerancePolicy = DEFAULT_POLICY) -> "SpectralDecomposition":
        """The part of the decomposition with eigenvalues away from zero."""
        cut = policy.eig_group_threshold * max(self.spectral_radius, ABSOLUTE_FLOOR)
        keep = [i for i, lam in enumerate(self.eigenvalues) if abs(lam) > cut]
        return SpectralDecomposition(
            tuple(self.eigenvalues[i] for i in keep),
            tuple(self.projectors[i] for i in keep),
            tuple(self.multiplicities[i] for i in keep),
            self.spectral_radius,
        )


def jacobi_eigh(sym: np.ndarray, tol: float = 1e-15, max_sweeps: int = 100) -> tuple[np.ndarray, np.ndarray]:
    """Eigen-decomposition of a real symmetric matrix by cyclic Jacobi rotations.

    Returns ``(w, V)`` with ``sym = V diag(w) V^T``.
    """
    a = np.array(sym, dtype=float)
    n = a.shape[0]
    v = np.eye(n)
    scale = np.linalg.norm(a)
    if scale == 0.0:
        return np.zeros(n), v
    for _ in range(max_sweeps):
        off = float(np.linalg.norm(a - np.diag(np.diag(a))))
        if off <= tol * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= 1e-300 or abs(apq) < 1e-18 * scale:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                col_p, col_q = a[:, p].copy(), a[:, q].copy()
                a[:, p] = c * col_p - s * col_q
                a[:, q] = s * col_p + c * col_q
                row_p, row_q = a[p, :].copy(), a[q, :].copy()
                a[p, :] = c * row_p - s * row_q
                a[q, :] = s * row_p + c * row_q
                a[p, q] = a[q, p] = 0.0
                vp, vq = v[:, p].copy(), v[:, q].copy()
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
    else:
        raise RuntimeError("Jacobi iteration did not converge")
    return np.diag(a).copy(), v


def check_hermitian(h: np.ndarray, tol: float = 1e-10) -> np.ndarray:
    h = np.asarray(h, dtype=complex)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise DimensionMismatchError("expected a square matrix")
    if np.linalg.norm(h - h.conj().T) > tol * max(1.0, float(np.linalg.norm(h))):
        raise NotHermitianError("matrix is not Hermitian")
    return h


def hermitian_eig(h, policy: TolerancePolicy = DEFAULT_POLICY) -> SpectralDecomposition:
    """Distinct eigenvalues and orthogonal eigenprojectors of a Hermitian matrix.

    The complex matrix ``A + iB`` is diagonalized through its real symmetric
    embedding ``[[A, -B], [B, A]]``; every eigenvalue appears there twice and
    the complex projector is read off the top-left and bottom-left blocks.
    """
    h = check_hermitian(_as_dense(h) if is_pauli(h) else h)
    n = h.shape[0]
    embed = np.block([[h.real, -h.imag], [h.imag, h.real]])
    w, vecs = jacobi_eigh(embed)
    order = np.argsort(w, kind="stable")
    w, vecs = w[order], vecs[:, order]
    radius = float(np.max(np.abs(w))) if n else 0.0
    gap = policy.eig_group_threshold * radius
    groups: list[list[int]] = []
    for i in range(len(w)):
        if groups and w[i] - w[groups[-1][-1]] <= gap:
            groups[-1].append(i)
        else:
            groups.append([i])
    eigenvalues, projectors, mults = [], [], []
    for idx in groups:
        block = vecs[:, idx]
        real_proj = block @ block.T
        proj = real_proj[:n, :n] + 1j * real_proj[n:, :n]
        eigenvalues.append(float(np.mean(w[idx])))
        projectors.append(proj)
        mults.append(int(round(np.trace(proj).real)))
    return SpectralDecomposition(tuple(eigenvalues), tuple(projectors), tuple(mults), radius)


@dataclass(frozen=True)
class PowerSpanCheck:
    independent: bool
    hadamard_ratio: float
    condition: float
    structurally_singular: bool = False


def power_span_check(decomp: SpectralDecomposition, offset: int = 0, stride: int = 1,
                     policy: TolerancePolicy = DEFAULT_POLICY) -> PowerSpanCheck:
    """Do the powers ``chi**(offset + j*stride)``, j < K, span the projectors?

    Builds the generalized Vandermonde matrix ``V[j, i] = lam_i**(offset + j*stride)``
    and tests it for invertibility through the scale-free Hadamard ratio
    ``|det V| / prod_j ||row_j||``.
    """
    lam = np.asarray(decomp.eigenvalues, dtype=float)
    k = len(lam)
    zero_cut = policy.eig_group_threshold * max(decomp.spectral_radius, ABSOLUTE_FLOOR)
    if offset > 0 and np.any(np.abs(lam) <= zero_cut):
        return PowerSpanCheck(False, 0.0, math.inf, structurally_singular=True)
    exps = offset + stride * np.arange(k)
    vander = lam[None, :] ** exps[:, None]
    row_norms = np.linalg.norm(vander, axis=1)
    if np.any(row_norms == 0):
        return PowerSpanCheck(False, 0.0, math.inf, structurally_singular=True)
    ratio = abs(float(np.linalg.det(vander))) / float(np.prod(row_norms))
    cond = float(np.linalg.cond(vander))
    return PowerSpanCheck(ratio > policy.rank_threshold, ratio, cond)
