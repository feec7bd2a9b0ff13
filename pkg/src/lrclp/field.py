"""Prime-field arithmetic and dense linear algebra over GF(q).

Field elements are plain Python ints reduced into ``[0, q)``.  Matrices are
wrapped numpy integer arrays that are never mutated after construction.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

# int64 products stay exact while q**2 * cols < 2**63
_INT64_SAFE_Q = 1 << 26


def is_prime(q: int) -> bool:
    if q < 2:
        return False
    if q < 4:
        return True
    if q % 2 == 0:
        return False
    d = 3
    while d * d <= q:
        if q % d == 0:
            return False
        d += 2
    return True


def _check_modulus(q: int) -> None:
    if not isinstance(q, (int, np.integer)) or not is_prime(int(q)):
        raise ValueError(f"field modulus must be prime, got {q!r}")


def fe_add(a: int, b: int, q: int) -> int:
    return (a + b) % q


def fe_sub(a: int, b: int, q: int) -> int:
    return (a - b) % q


def fe_mul(a: int, b: int, q: int) -> int:
    return (a * b) % q


def fe_neg(a: int, q: int) -> int:
    return (-a) % q


def fe_inv(a: int, q: int) -> int:
    """Multiplicative inverse of ``a`` in GF(q).

    Raises ZeroDivisionError for ``a == 0 (mod q)``.
    """
    a %= q
    if a == 0:
        raise ZeroDivisionError(f"0 has no inverse in GF({q})")
    return pow(a, -1, q)


@dataclass(frozen=True)
class PrimeField:
    """GF(q) for a prime q.  Thin object wrapper over the ``fe_*`` functions."""

    q: int

    def __post_init__(self):
        _check_modulus(self.q)

    def __call__(self, a: int) -> int:
        return a % self.q

    def add(self, a, b):
        return fe_add(a, b, self.q)

    def mul(self, a, b):
        return fe_mul(a, b, self.q)

    def neg(self, a):
        return fe_neg(a, self.q)

    def inv(self, a):
        return fe_inv(a, self.q)

    def elements(self):
        return range(self.q)


class FieldMatrix:
    """Immutable dense matrix over GF(q).

    Zero-row matrices are allowed (e.g. the null space of an invertible
    matrix); the column count must be positive.
    """

    __slots__ = ("q", "_a")

    def __init__(self, entries, q: int):
        _check_modulus(q)
        dtype = np.int64 if q < _INT64_SAFE_Q else object
        a = np.array(entries, dtype=dtype)
        if a.ndim == 1 and a.size == 0:
            raise ValueError("cannot infer column count of an empty matrix; use FieldMatrix.zeros")
        if a.ndim == 1:
            a = a.reshape(1, -1)
        if a.ndim != 2:
            raise ValueError(f"expected a 2-d array, got shape {a.shape}")
        if a.shape[1] == 0:
            raise ValueError("matrix must have at least one column")
        a = a % q
        a.flags.writeable = False
        self.q = int(q)
        self._a = a

    @classmethod
    def zeros(cls, rows: int, cols: int, q: int) -> FieldMatrix:
        m = cls.__new__(cls)
        _check_modulus(q)
        a = np.zeros((rows, cols), dtype=np.int64 if q < _INT64_SAFE_Q else object)
        if cols <= 0:
            raise ValueError("matrix must have at least one column")
        a.flags.writeable = False
        m.q = int(q)
        m._a = a
        return m

    @classmethod
    def identity(cls, n: int, q: int) -> FieldMatrix:
        return cls(np.eye(n, dtype=np.int64), q)

    @property
    def array(self) -> np.ndarray:
        """Read-only view of the entries."""
        return self._a

    @property
    def shape(self) -> tuple[int, int]:
        return self._a.shape

    @property
    def rows(self) -> int:
        return self._a.shape[0]

    @property
    def cols(self) -> int:
        return self._a.shape[1]

    def tolist(self) -> list[list[int]]:
        return [[int(x) for x in row] for row in self._a]

    def row(self, i: int) -> tuple[int, ...]:
        return tuple(int(x) for x in self._a[i])

    def columns(self, idx) -> FieldMatrix:
        return FieldMatrix(self._a[:, list(idx)], self.q)

    def transpose(self) -> FieldMatrix:
        if self.rows == 0:
            raise ValueError("cannot transpose a matrix with no rows")
        return FieldMatrix(self._a.T, self.q)

    T = property(transpose)

    def hstack(self, other: FieldMatrix) -> FieldMatrix:
        _same_field(self, other)
        return FieldMatrix(np.hstack([self._a, other._a]), self.q)

    def vstack(self, other: FieldMatrix) -> FieldMatrix:
        _same_field(self, other)
        return FieldMatrix(np.vstack([self._a, other._a]), self.q)

    def is_zero(self) -> bool:
        return not self._a.any()

    def __matmul__(self, other: FieldMatrix) -> FieldMatrix:
        return mat_mul(self, other)

    def __eq__(self, other):
        if not isinstance(other, FieldMatrix):
            return NotImplemented
        return self.q == other.q and self.shape == other.shape and bool((self._a == other._a).all())

    def __hash__(self):
        return hash((self.q, self.shape, tuple(map(int, self._a.ravel()))))

    def __repr__(self):
        return f"FieldMatrix({self.tolist()}, q={self.q})"

    def __str__(self):
        return "\n".join(" ".join(str(int(x)) for x in row) for row in self._a)


def _same_field(a: FieldMatrix, b: FieldMatrix) -> None:
    if a.q != b.q:
        raise ValueError(f"field mismatch: GF({a.q}) vs GF({b.q})")


def mat_mul(a: FieldMatrix, b: FieldMatrix) -> FieldMatrix:
    _same_field(a, b)
    if a.cols != b.rows:
        raise ValueError(f"dimension mismatch: {a.shape} @ {b.shape}")
    if a.rows == 0:
        return FieldMatrix.zeros(0, b.cols, a.q)
    return FieldMatrix((a.array @ b.array) % a.q, a.q)


def rref(m: FieldMatrix) -> tuple[FieldMatrix, int, list[int]]:
    """Reduced row echelon form over GF(q).

    Columns are scanned left to right and the pivot is the first row (at or
    below the current pivot row) with a nonzero entry.

    Returns (reduced matrix, rank, pivot columns).
    """
    q = m.q
    R = np.array(m.array, copy=True)
    nrows, ncols = R.shape
    pivots: list[int] = []
    prow = 0
    for col in range(ncols):
        if prow == nrows:
            break
        nz = np.nonzero(R[prow:, col])[0]
        if nz.size == 0:
            continue
        found = prow + int(nz[0])
        if found != prow:
            R[[prow, found]] = R[[found, prow]]
        inv = fe_inv(int(R[prow, col]), q)
        R[prow] = (R[prow] * inv) % q
        for r in range(nrows):
            if r != prow and R[r, col]:
                R[r] = (R[r] - R[r, col] * R[prow]) % q
        pivots.append(col)
        prow += 1
    return FieldMatrix(R, q) if nrows else m, len(pivots), pivots


def rank(m: FieldMatrix) -> int:
    return rref(m)[1]


def nullspace_basis(m: FieldMatrix) -> FieldMatrix:
    """Basis (as rows) of ``{x : m @ x^T = 0}``.

    The result has ``cols(m) - rank(m)`` rows, possibly zero.
    """
    q = m.q
    R, rk, pivots = rref(m)
    n = m.cols
    free = [j for j in range(n) if j not in set(pivots)]
    if not free:
        return FieldMatrix.zeros(0, n, q)
    basis = np.zeros((len(free), n), dtype=R.array.dtype)
    for k, f in enumerate(free):
        basis[k, f] = 1
        for i, p in enumerate(pivots):
            basis[k, p] = (-R.array[i, f]) % q
    return FieldMatrix(basis, q)


def row_space_equal(a: FieldMatrix, b: FieldMatrix) -> bool:
    """True if both matrices span the same subspace."""
    ra, ka, _ = rref(a)
    rb, kb, _ = rref(b)
    if ka != kb or a.cols != b.cols:
        return False
    return bool((ra.array[:ka] == rb.array[:kb]).all())
