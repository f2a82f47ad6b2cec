"""Symbolic anti-Hermitian operators as real combinations of i*(Pauli string).

Pauli strings use the symplectic representation: bit ``j`` of ``x_mask`` and
``z_mask`` refers to qubit ``j``, which is position ``j`` of the text label
(leftmost character = qubit 0 = first tensor factor). Y is stored as both bits
set, with the phase convention Y = iXZ.
"""
from __future__ import annotations

import functools
import math
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

import numpy as np

from .errors import (
    DenseCapExceededError,
    DimensionMismatchError,
    InvalidGeneratorError,
    NotHermitianError,
)

ZERO_FLOOR = 1e-13
DENSE_QUBIT_CAP = 10

_CHAR_TO_BITS = {"I": (0, 0), "X": (1, 0), "Y": (1, 1), "Z": (0, 1)}
_BITS_TO_CHAR = {bits: ch for ch, bits in _CHAR_TO_BITS.items()}

_SINGLE = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def _label(x: int, z: int, n: int) -> str:
    return "".join(_BITS_TO_CHAR[((x >> j) & 1, (z >> j) & 1)] for j in range(n))


def _parse_label(label: str) -> tuple[int, int]:
    x = z = 0
    for j, ch in enumerate(label.upper()):
        try:
            bx, bz = _CHAR_TO_BITS[ch]
        except KeyError:
            raise ValueError(f"invalid Pauli character {ch!r} in {label!r}") from None
        x |= bx << j
        z |= bz << j
    return x, z


def _product_phase(x1: int, z1: int, x2: int, z2: int) -> tuple[int, int, int]:
    """Return (k, x, z) with P(x1,z1) P(x2,z2) = i**k P(x,z)."""
    x, z = x1 ^ x2, z1 ^ z2
    k = (
        (x1 & z1).bit_count()
        + (x2 & z2).bit_count()
        - (x & z).bit_count()
        + 2 * (z1 & x2).bit_count()
    )
    return k % 4, x, z


def _anticommute(x1: int, z1: int, x2: int, z2: int) -> bool:
    return bool(((x1 & z2).bit_count() + (z1 & x2).bit_count()) & 1)


@dataclass(frozen=True, slots=True)
class PauliTerm:
    """A single n-qubit Pauli string (no coefficient)."""

    x_mask: int
    z_mask: int
    qubit_count: int

    def __post_init__(self):
        if self.qubit_count < 1:
            raise ValueError("qubit_count must be positive")
        limit = 1 << self.qubit_count
        if not (0 <= self.x_mask < limit and 0 <= self.z_mask < limit):
            raise ValueError("mask has bits outside the qubit range")

    @classmethod
    def from_label(cls, label: str) -> "PauliTerm":
        x, z = _parse_label(label)
        return cls(x, z, len(label))

    def to_label(self) -> str:
        return _label(self.x_mask, self.z_mask, self.qubit_count)

    @property
    def key(self) -> tuple[int, int]:
        return self.x_mask, self.z_mask

    @property
    def is_identity(self) -> bool:
        return self.x_mask == 0 and self.z_mask == 0

    def anticommutes(self, other: "PauliTerm") -> bool:
        _check_same_size(self.qubit_count, other.qubit_count)
        return _anticommute(self.x_mask, self.z_mask, other.x_mask, other.z_mask)

    def multiply(self, other: "PauliTerm") -> tuple[int, "PauliTerm"]:
        """Return ``(k, R)`` such that ``self @ other == 1j**k * R``."""
        _check_same_size(self.qubit_count, other.qubit_count)
        k, x, z = _product_phase(self.x_mask, self.z_mask, other.x_mask, other.z_mask)
        return k, PauliTerm(x, z, self.qubit_count)

    def to_dense(self) -> np.ndarray:
        return _string_matrix(self.to_label())

    def __str__(self) -> str:
        return self.to_label()


def _check_same_size(n1: int, n2: int) -> None:
    if n1 != n2:
        raise DimensionMismatchError(f"qubit counts differ: {n1} vs {n2}")


def _reverse_bits(mask: int, n: int) -> int:
    return int(format(mask, f"0{n}b")[::-1], 2) if n else 0


@functools.lru_cache(maxsize=16)
def _parity_table(n: int) -> np.ndarray:
    table = np.zeros(2**n, dtype=np.int8)
    for j in range(n):
        table[1 << j:1 << (j + 1)] = 1 - table[: 1 << j]
    table.setflags(write=False)
    return table


def _string_matrix(label: str) -> np.ndarray:
    mat = np.ones((1, 1), dtype=complex)
    for ch in label:
        mat = np.kron(mat, _SINGLE[ch])
    return mat


def pauli_commutator(p: PauliTerm, q: PauliTerm) -> tuple[float, PauliTerm] | None:
    """Commutator ``[iP, iQ]`` as ``(c, R)`` meaning ``c * iR``, or None if zero.

    Commuting strings give zero. Anticommuting ones give ``-2 PQ``; since PQ is
    then anti-Hermitian the phase is odd and the coefficient is exactly +-2.
    """
    _check_same_size(p.qubit_count, q.qubit_count)
    if not _anticommute(p.x_mask, p.z_mask, q.x_mask, q.z_mask):
        return None
    k, x, z = _product_phase(p.x_mask, p.z_mask, q.x_mask, q.z_mask)
    if k % 2 == 0:
        raise AssertionError("anticommuting Pauli product with even phase")
    # -2 * i**k * R = (-2 * i**(k-1)) * iR
    return (-2.0 if k == 1 else 2.0), PauliTerm(x, z, p.qubit_count)


class PauliCombination:
    """The anti-Hermitian operator ``i * sum_P c_P P`` with real ``c_P``.

    Instances are immutable. Coefficients with magnitude at or below
    ``ZERO_FLOOR`` are pruned on construction.
    """

    __slots__ = ("_coeffs", "qubit_count")

    def __init__(self, qubit_count: int, coeffs: Mapping | None = None):
        if qubit_count < 1:
            raise ValueError("qubit_count must be positive")
        self.qubit_count = qubit_count
        table: dict[tuple[int, int], float] = {}
        for key, value in (coeffs or {}).items():
            if isinstance(key, str):
                if len(key) != qubit_count:
                    raise DimensionMismatchError(f"label {key!r} is not {qubit_count} qubits")
                key = _parse_label(key)
            elif isinstance(key, PauliTerm):
                _check_same_size(key.qubit_count, qubit_count)
                key = key.key
            value = float(value)
            if abs(value) > ZERO_FLOOR:
                table[key] = table.get(key, 0.0) + value
        self._coeffs = {k: v for k, v in table.items() if abs(v) > ZERO_FLOOR}

    @classmethod
    def _raw(cls, qubit_count: int, table: dict) -> "PauliCombination":
        obj = cls.__new__(cls)
        obj.qubit_count = qubit_count
        obj._coeffs = {k: v for k, v in table.items() if abs(v) > ZERO_FLOOR}
        return obj

    @classmethod
    def from_label(cls, label: str, coeff: float = 1.0) -> "PauliCombination":
        return cls(len(label), {label: coeff})

    @classmethod
    def from_terms(cls, terms: Iterable[tuple[str, float]]) -> "PauliCombination":
        terms = list(terms)
        if not terms:
            raise ValueError("empty term list; use PauliCombination(n) for zero")
        n = len(terms[0][0])
        table: dict[tuple[int, int], float] = {}
        for label, coeff in terms:
            if len(label) != n:
                raise DimensionMismatchError("labels of different lengths")
            key = _parse_label(label)
            table[key] = table.get(key, 0.0) + float(coeff)
        return cls._raw(n, table)

    @classmethod
    def from_hermitian(cls, h: np.ndarray, tol: float = 1e-10) -> "PauliCombination":
        """``i * h`` for a Hermitian matrix ``h`` on a power-of-two dimension."""
        m = _qubits_of(h)
        return cls._raw(m, pauli_decompose(h, tol))

    @classmethod
    def from_dense(cls, a: np.ndarray, tol: float = 1e-10) -> "PauliCombination":
        """Symbolic form of an anti-Hermitian matrix ``a``."""
        return cls.from_hermitian(-1j * np.asarray(a), tol)

    # -- mapping-like access -------------------------------------------------
    def terms(self) -> Iterator[tuple[PauliTerm, float]]:
        n = self.qubit_count
        for (x, z), c in self._coeffs.items():
            yield PauliTerm(x, z, n), c

    def items(self):
        return self._coeffs.items()

    def coefficient(self, term: PauliTerm | str) -> float:
        key = _parse_label(term) if isinstance(term, str) else term.key
        return self._coeffs.get(key, 0.0)

    def __len__(self) -> int:
        return len(self._coeffs)

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    @property
    def identity_coefficient(self) -> float:
        return self._coeffs.get((0, 0), 0.0)

    def is_traceless(self) -> bool:
        return (0, 0) not in self._coeffs

    # -- arithmetic ----------------------------------------------------------
    def __add__(self, other: "PauliCombination") -> "PauliCombination":
        if not isinstance(other, PauliCombination):
            return NotImplemented
        _check_same_size(self.qubit_count, other.qubit_count)
        table = dict(self._coeffs)
        for k, v in other._coeffs.items():
            table[k] = table.get(k, 0.0) + v
        return PauliCombination._raw(self.qubit_count, table)

    def __neg__(self) -> "PauliCombination":
        return PauliCombination._raw(self.qubit_count, {k: -v for k, v in self._coeffs.items()})

    def __sub__(self, other: "PauliCombination") -> "PauliCombination":
        if not isinstance(other, PauliCombination):
            return NotImplemented
        return self + (-other)

    def __mul__(self, scalar: float) -> "PauliCombination":
        if isinstance(scalar, PauliCombination):
            return NotImplemented
        s = float(scalar)
        return PauliCombination._raw(self.qubit_count, {k: s * v for k, v in self._coeffs.items()})

    __rmul__ = __mul__

    def __truediv__(self, scalar: float) -> "PauliCombination":
        return self * (1.0 / float(scalar))

    def __eq__(self, other) -> bool:
        if not isinstance(other, PauliCombination):
            return NotImplemented
        return self.qubit_count == other.qubit_count and self._coeffs == other._coeffs

    def __hash__(self):
        return hash((self.qubit_count, frozenset(self._coeffs.items())))

    def commutator(self, other: "PauliCombination") -> "PauliCombination":
        _check_same_size(self.qubit_count, other.qubit_count)
        out: dict[tuple[int, int], float] = {}
        for (x1, z1), c1 in self._coeffs.items():
            for (x2, z2), c2 in other._coeffs.items():
                if not _anticommute(x1, z1, x2, z2):
                    continue
                k, x, z = _product_phase(x1, z1, x2, z2)
                if k % 2 == 0:
                    raise AssertionError("anticommuting Pauli product with even phase")
                c = (-2.0 if k == 1 else 2.0) * c1 * c2
                key = (x, z)
                out[key] = out.get(key, 0.0) + c
        return PauliCombination._raw(self.qubit_count, out)

    def kron_hermitian(self, other: "PauliCombination") -> "PauliCombination":
        """Operator ``self (x) (-i * other)``, i.e. ``i(sum aP) (x) (sum bQ)``.

        The second factor is read as the Hermitian ``sum bQ`` so the result
        stays a combination with real coefficients.
        """
        n = self.qubit_count
        out: dict[tuple[int, int], float] = {}
        for (x1, z1), c1 in self._coeffs.items():
            for (x2, z2), c2 in other._coeffs.items():
                key = (x1 | (x2 << n), z1 | (z2 << n))
                out[key] = out.get(key, 0.0) + c1 * c2
        return PauliCombination._raw(n + other.qubit_count, out)

    # -- norms and conversion --------------------------------------------------
    def hs_inner(self, other: "PauliCombination") -> float:
        _check_same_size(self.qubit_count, other.qubit_count)
        small, big = sorted((self._coeffs, other._coeffs), key=len)
        acc = math.fsum(c * big[k] for k, c in small.items() if k in big)
        return float(2**self.qubit_count * acc)

    def norm(self) -> float:
        return math.sqrt(2**self.qubit_count * math.fsum(c * c for c in self._coeffs.values()))

    def to_dense(self, cap: int = DENSE_QUBIT_CAP) -> np.ndarray:
        n = self.qubit_count
        if n > cap:
            raise DenseCapExceededError(f"{n} qubits exceeds dense cap {cap}")
        dim = 2**n
        out = np.zeros((dim, dim), dtype=complex)
        cols = np.arange(dim)
        parity = _parity_table(n)
        for (x, z), c in self._coeffs.items():
            # label character j is the most significant bit of the row index
            xr, zr = _reverse_bits(x, n), _reverse_bits(z, n)
            phase = 1j ** ((x & z).bit_count() + 1)
            out[cols ^ xr, cols] += (c * phase) * (1 - 2 * parity[zr & cols])
        return out

    def to_json(self) -> list[dict]:
        return [
            {"string": _label(x, z, self.qubit_count), "coeff": format(c, ".17g")}
            for (x, z), c in sorted(self._coeffs.items())
        ]

    @classmethod
    def from_json(cls, items: list[dict], qubit_count: int | None = None) -> "PauliCombination":
        if not items:
            if qubit_count is None:
                raise ValueError("cannot infer qubit count of an empty combination")
            return cls(qubit_count)
        n = len(items[0]["string"]) if qubit_count is None else qubit_count
        table: dict[tuple[int, int], float] = {}
        for item in items:
            label = item["string"]
            if len(label) != n:
                raise DimensionMismatchError(f"label {label!r} is not {n} qubits")
            key = _parse_label(label)
            table[key] = table.get(key, 0.0) + float(item["coeff"])
        return cls._raw(n, table)

    def __repr__(self) -> str:
        if not self._coeffs:
            return f"PauliCombination({self.qubit_count}, 0)"
        body = " + ".join(
            f"{c:g}*i{_label(x, z, self.qubit_count)}" for (x, z), c in sorted(self._coeffs.items())
        )
        return f"PauliCombination({body})"


def combination_commutator(a: PauliCombination, b: PauliCombination) -> PauliCombination:
    return a.commutator(b)


def _qubits_of(h: np.ndarray) -> int:
    h = np.asarray(h)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise DimensionMismatchError("expected a square matrix")
    d = h.shape[0]
    m = d.bit_length() - 1
    if d < 2 or 2**m != d:
        raise DimensionMismatchError(f"dimension {d} is not a power of two >= 2")
    return m


def pauli_decompose(h: np.ndarray, tol: float = 1e-10) -> dict[tuple[int, int], float]:
    """Real Pauli-basis coefficients of a Hermitian matrix."""
    h = np.asarray(h, dtype=complex)
    m = _qubits_of(h)
    scale = max(1.0, float(np.linalg.norm(h)))
    if np.linalg.norm(h - h.conj().T) > tol * scale:
        raise NotHermitianError("matrix is not Hermitian")
    dim = 2**m
    out: dict[tuple[int, int], float] = {}
    total = 0.0
    for x in range(dim):
        for z in range(dim):
            p = _string_matrix(_label(x, z, m))
            c = np.trace(p @ h) / dim
            if abs(c.imag) > tol * scale:
                raise NotHermitianError("non-real Pauli coefficient")
            if abs(c.real) > ZERO_FLOOR:
                out[(x, z)] = float(c.real)
                total += c.real**2
    # Parseval: ||h||_F^2 = 2^m * sum c^2
    residual = abs(np.linalg.norm(h) ** 2 - dim * total)
    if residual > tol * scale**2:
        raise NotHermitianError("Pauli expansion residual too large")
    return out


def tensor_with_hermitian(a: PauliCombination, h: np.ndarray) -> PauliCombination:
    """``a (x) h`` for Hermitian ``h`` on m qubits, as an (n+m)-qubit combination."""
    m = _qubits_of(h)
    return a.kron_hermitian(PauliCombination._raw(m, pauli_decompose(h)))


def to_dense(a: PauliCombination, cap: int = DENSE_QUBIT_CAP) -> np.ndarray:
    return a.to_dense(cap)


@dataclass(frozen=True)
class AnticommutationGraph:
    vertex_count: int
    edges: tuple[tuple[int, int], ...]
    connected: bool

    def neighbours(self, v: int) -> list[int]:
        return [j if i == v else i for i, j in self.edges if v in (i, j)]


def _single_term(g) -> PauliTerm:
    if isinstance(g, PauliTerm):
        return g
    if isinstance(g, PauliCombination) and len(g) == 1:
        return next(g.terms())[0]
    raise InvalidGeneratorError("anticommutation graph needs single Pauli-term generators")


def anticommutation_graph(generators) -> AnticommutationGraph:
    """Graph on the generators with an edge for every anticommuting pair."""
    terms = [_single_term(g) for g in generators]
    n = len(terms)
    edges = tuple(
        (i, j) for i in range(n) for j in range(i + 1, n) if terms[i].anticommutes(terms[j])
    )
    adjacency: dict[int, list[int]] = {i: [] for i in range(n)}
    for i, j in edges:
        adjacency[i].append(j)
        adjacency[j].append(i)
    seen = {0} if n else set()
    queue = deque(seen)
    while queue:
        v = queue.popleft()
        for w in adjacency[v]:
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return AnticommutationGraph(n, edges, len(seen) == n)
