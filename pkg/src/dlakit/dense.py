"""Dense complex-matrix backend: oracle for the symbolic path, home of chi and Q."""
from __future__ import annotations

import math

import numpy as np

from .errors import DimensionMismatchError, SignAmbiguousError, SpectrumError
from .numeric import DEFAULT_POLICY, TolerancePolicy, check_hermitian, hermitian_eig

DENSE_QUBIT_CAP = 10


def _square(a) -> np.ndarray:
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionMismatchError("expected a square matrix")
    return a


def dense_commutator(a, b) -> np.ndarray:
    a, b = _square(a), _square(b)
    if a.shape != b.shape:
        raise DimensionMismatchError(f"shapes differ: {a.shape} vs {b.shape}")
    return a @ b - b @ a


def dense_tensor(a, b) -> np.ndarray:
    return np.kron(_square(a), _square(b))


def is_anti_hermitian(a, tol: float = 1e-12) -> bool:
    a = _square(a)
    return bool(np.linalg.norm(a + a.conj().T) <= tol * max(1.0, float(np.linalg.norm(a))))


def is_traceless(a, tol: float = 1e-12) -> bool:
    a = _square(a)
    return abs(np.trace(a)) <= tol * max(1.0, float(np.linalg.norm(a)))


def random_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    z = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_anti_hermitian(dim: int, rng: np.random.Generator, traceless: bool = True) -> np.ndarray:
    """Gaussian anti-Hermitian matrix with unit Hilbert-Schmidt norm."""
    z = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    a = (z - z.conj().T) / 2
    if traceless:
        a -= np.trace(a) / dim * np.eye(dim)
    return a / np.linalg.norm(a)


def build_hermitian_with_spectrum(spectrum, style: str = "diagonal", rng=None,
                                  distinct: bool = True, require_sign_unambiguous: bool = False,
                                  policy: TolerancePolicy = DEFAULT_POLICY) -> np.ndarray:
    """Hermitian operator on ceil(log2 K) qubits with exactly the given distinct spectrum.

    When K is not a power of two the last eigenvalue is repeated to fill the
    dimension, which keeps the number of distinct eigenvalues at K. The
    ``"random-conjugated"`` style applies a random unitary similarity.
    """
    values = [float(v) for v in spectrum]
    if not values:
        raise SpectrumError("spectrum must be non-empty")
    radius = max(abs(v) for v in values)
    gap = policy.eig_group_threshold * radius
    if distinct:
        ordered = sorted(values)
        if any(b - a <= gap for a, b in zip(ordered, ordered[1:])):
            raise SpectrumError("spectrum has repeated eigenvalues")
    if require_sign_unambiguous and not _spectrum_sign_unambiguous(values, radius, policy):
        raise SignAmbiguousError(f"spectrum {values} contains a pair lambda, -lambda")
    qubits = max(1, math.ceil(math.log2(len(values)))) if len(values) > 1 else 1
    dim = 2**qubits
    padded = values + [values[-1]] * (dim - len(values))
    h = np.diag(np.array(padded, dtype=complex))
    if style == "diagonal":
        return h
    if style == "random-conjugated":
        rng = rng if rng is not None else np.random.default_rng()
        u = random_unitary(dim, rng)
        h = u @ h @ u.conj().T
        return (h + h.conj().T) / 2
    raise ValueError(f"unknown style {style!r}")


def _spectrum_sign_unambiguous(values, radius: float, policy: TolerancePolicy) -> bool:
    cut = policy.eig_group_threshold * max(radius, 1e-300)
    nonzero = [v for v in values if abs(v) > cut]
    return not any(abs(a + b) <= cut for i, a in enumerate(nonzero) for b in nonzero[i:])


def sign_unambiguous(q, policy: TolerancePolicy = DEFAULT_POLICY) -> bool:
    """True iff no two non-zero eigenvalues of ``q`` satisfy lambda = -lambda'.

    The zero operator is not sign unambiguous (the notion needs Q != 0).
    """
    decomp = hermitian_eig(check_hermitian(q), policy)
    if decomp.spectral_radius == 0.0:
        return False
    return _spectrum_sign_unambiguous(decomp.eigenvalues, decomp.spectral_radius, policy)


def square_scalar_check(a, tol: float = 1e-10) -> float | None:
    """Return lambda when ``a @ a == lambda * I`` to tolerance, else None."""
    a = _square(getattr(a, "to_dense", lambda: a)())
    sq = a @ a
    d = a.shape[0]
    lam = np.trace(sq) / d
    if np.linalg.norm(sq - lam * np.eye(d)) <= tol * max(1.0, float(np.linalg.norm(sq))):
        return float(lam.real)
    return None


def matrix_to_json(a) -> list:
    a = _square(a)
    return [[[format(z.real, ".17g"), format(z.imag, ".17g")] for z in row] for row in a]


def matrix_from_json(rows) -> np.ndarray:
    try:
        a = np.array([[complex(float(re), float(im)) for re, im in row] for row in rows])
    except (TypeError, ValueError) as exc:
        raise ValueError(f"malformed dense matrix: {exc}") from None
    return _square(a)
