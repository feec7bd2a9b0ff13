"""Linear storage codes, their supports and enumerators.

Coordinates are 0-based throughout the library.  A support is an ``int``
bit mask: bit ``j`` is set iff coordinate ``j`` is nonzero.  Reports and the
CLI print 1-based node labels.
"""

from __future__ import annotations

import os
from collections.abc import Iterator, Mapping
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import comb
from types import MappingProxyType

import numpy as np

from .field import FieldMatrix, nullspace_basis, rref

DEFAULT_ENUM_GUARD = 1 << 22
MAX_MASK_BITS = 64
_CHUNK = 1 << 15


class GuardExceeded(RuntimeError):
    """An exhaustive enumeration would exceed its configured ceiling."""


class ZeroCodeError(ValueError):
    """The requested code has dimension zero and cannot store anything."""


def enumeration_guard() -> int:
    """Current ceiling on enumerated messages (env ``LRC_ENUM_GUARD``)."""
    raw = os.environ.get("LRC_ENUM_GUARD")
    if raw is None:
        return DEFAULT_ENUM_GUARD
    try:
        value = int(raw)
    except ValueError:
        raise ValueError(f"LRC_ENUM_GUARD must be an integer, got {raw!r}") from None
    if value < 1:
        raise ValueError("LRC_ENUM_GUARD must be positive")
    return value


def check_guard(q: int, k: int, what: str = "q^K", guard: int | None = None) -> None:
    limit = enumeration_guard() if guard is None else guard
    if q**k > limit:
        raise GuardExceeded(f"{what} = {q}^{k} = {q**k} exceeds enumeration guard {limit}")


# -- supports -----------------------------------------------------------------


def mask_of(indices) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def indices_of(mask: int) -> tuple[int, ...]:
    out = []
    j = 0
    while mask:
        if mask & 1:
            out.append(j)
        mask >>= 1
        j += 1
    return tuple(out)


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def support_of(v) -> int:
    """Support of a vector as a bit mask."""
    return mask_of(j for j, x in enumerate(v) if x)


def _support_masks(words: np.ndarray) -> np.ndarray:
    n = words.shape[1]
    weights = np.left_shift(np.uint64(1), np.arange(n, dtype=np.uint64))
    return ((words != 0).astype(np.uint64) * weights).sum(axis=1, dtype=np.uint64)


# -- codes ----------------------------------------------------------------------


@dataclass(frozen=True, eq=True)
class LinearCode:
    """Linear [N, K] code over GF(q) stored by its rref generator matrix."""

    G: FieldMatrix

    def __post_init__(self):
        if self.G.rows == 0 or rref(self.G)[1] != self.G.rows:
            raise ValueError("LinearCode requires a full-rank generator; use code_from_generator")
        if self.G.cols > MAX_MASK_BITS:
            raise ValueError(f"code length {self.G.cols} exceeds {MAX_MASK_BITS} coordinates")

    @property
    def q(self) -> int:
        return self.G.q

    @property
    def n(self) -> int:
        return self.G.cols

    @property
    def k(self) -> int:
        return self.G.rows

    @property
    def size(self) -> int:
        return self.q**self.k

    @cached_property
    def H(self) -> FieldMatrix:
        """Parity-check matrix (generator of the dual); may have zero rows."""
        return nullspace_basis(self.G)

    def __repr__(self):
        return f"LinearCode([{self.n},{self.k}] over GF({self.q}))"


def code_from_generator(G: FieldMatrix) -> LinearCode:
    """Code spanned by the rows of ``G``; rank-deficient input is reduced."""
    R, rk, _ = rref(G)
    if rk == 0:
        raise ZeroCodeError("generator matrix is zero")
    return LinearCode(FieldMatrix(R.array[:rk], G.q))


def code_from_parity_check(H: FieldMatrix) -> LinearCode:
    """Code whose dual is spanned by the rows of ``H``."""
    basis = nullspace_basis(H)
    if basis.rows == 0:
        raise ZeroCodeError(f"parity-check matrix has full column rank {H.cols}; the code is {{0}}")
    return code_from_generator(basis)


def dual(c: LinearCode) -> LinearCode:
    if c.k == c.n:
        raise ZeroCodeError("dual of a full-space code is the zero code")
    return code_from_generator(c.H)


def _messages(q: int, k: int, start: int, stop: int) -> np.ndarray:
    idx = np.arange(start, stop, dtype=np.int64)
    powers = q ** np.arange(k - 1, -1, -1, dtype=np.int64)
    return (idx[:, None] // powers[None, :]) % q


def _generator_chunks(G: FieldMatrix) -> Iterator[np.ndarray]:
    q, k = G.q, G.rows
    total = q**k
    A = G.array
    for start in range(0, total, _CHUNK):
        msgs = _messages(q, k, start, min(total, start + _CHUNK))
        yield (msgs @ A) % q


def codeword_chunks(c: LinearCode, guard: int | None = None) -> Iterator[np.ndarray]:
    """Codewords in lexicographic message order, as 2-d array chunks."""
    check_guard(c.q, c.k, guard=guard)
    yield from _generator_chunks(c.G)


def codeword_array(c: LinearCode, guard: int | None = None) -> np.ndarray:
    return np.vstack(list(codeword_chunks(c, guard)))


def enumerate_codewords(c: LinearCode, guard: int | None = None) -> Iterator[tuple[int, ...]]:
    for chunk in codeword_chunks(c, guard):
        for row in chunk.tolist():
            yield tuple(row)


def _span_supports(G: FieldMatrix, guard: int | None, what: str) -> tuple[list[int], list[int]]:
    check_guard(G.q, G.rows, what=what, guard=guard)
    counts: dict[int, int] = {}
    for chunk in _generator_chunks(G):
        masks, cnt = np.unique(_support_masks(chunk), return_counts=True)
        for m, n in zip(masks.tolist(), cnt.tolist()):
            counts[m] = counts.get(m, 0) + n
    keys = sorted(counts)
    return keys, [counts[k] for k in keys]


class SupportEnumerator(Mapping):
    """Map from support mask to codeword count; absent supports count zero.

    Values are ints for enumerators of real codes and may be Fractions for
    transformed profiles.
    """

    def __init__(self, n: int, counts: Mapping[int, object]):
        self.n = n
        self._counts = MappingProxyType({k: v for k, v in sorted(counts.items()) if v != 0})

    def __getitem__(self, mask):
        return self._counts.get(mask, 0)

    def __iter__(self):
        return iter(self._counts)

    def __len__(self):
        return len(self._counts)

    def __contains__(self, mask):
        return mask in self._counts

    def total(self):
        return sum(self._counts.values())

    def __eq__(self, other):
        if isinstance(other, SupportEnumerator):
            return self.n == other.n and dict(self._counts) == dict(other._counts)
        return NotImplemented

    def __hash__(self):
        return hash((self.n, tuple(self._counts.items())))

    def __repr__(self):
        body = ", ".join(f"{set(j + 1 for j in indices_of(k)) or '{}'}: {v}" for k, v in self._counts.items())
        return f"SupportEnumerator(n={self.n}, {{{body}}})"

    def by_weight(self) -> list:
        """Aggregate counts per support size."""
        out = [0] * (self.n + 1)
        for m, v in self._counts.items():
            out[popcount(m)] += v
        return out


def support_enumerator(c: LinearCode, guard: int | None = None) -> SupportEnumerator:
    keys, vals = _span_supports(c.G, guard, "q^K")
    return SupportEnumerator(c.n, dict(zip(keys, vals)))


def dual_support_enumerator(c: LinearCode, guard: int | None = None) -> SupportEnumerator:
    """Support enumerator of the dual, by spanning the parity-check rows."""
    if c.H.rows == 0:
        return SupportEnumerator(c.n, {0: 1})
    keys, vals = _span_supports(c.H, guard, "q^(N-K)")
    return SupportEnumerator(c.n, dict(zip(keys, vals)))


def weight_enumerator(c: LinearCode, guard: int | None = None) -> list[int]:
    return support_enumerator(c, guard).by_weight()


def min_distance(c: LinearCode, guard: int | None = None) -> int:
    a = weight_enumerator(c, guard)
    return next(t for t in range(1, c.n + 1) if a[t] > 0)


# -- update-efficient (pseudo-systematic) codes ----------------------------------


@dataclass(frozen=True)
class UpdateCode:
    """K x (N+K) generator ``[G1 | I_K]``; only the first N symbols are stored."""

    G: FieldMatrix
    n: int

    def __post_init__(self):
        k = self.G.rows
        if self.G.cols != self.n + k:
            raise ValueError(f"generator has {self.G.cols} columns, expected N+K = {self.n + k}")
        if self.n + k > MAX_MASK_BITS:
            raise ValueError(f"N+K = {self.n + k} exceeds {MAX_MASK_BITS} coordinates")
        tail = self.G.array[:, self.n:]
        if not (tail == np.eye(k, dtype=tail.dtype)).all():
            raise ValueError("last K columns of the generator must form the identity (pseudo-systematic)")
        if rref(self.G.columns(range(self.n)))[1] != k:
            raise ValueError("first N columns of the generator must have rank K")

    @property
    def q(self) -> int:
        return self.G.q

    @property
    def k(self) -> int:
        return self.G.rows

    @cached_property
    def stored(self) -> LinearCode:
        """The storage code spanned by the first N columns."""
        return code_from_generator(self.G.columns(range(self.n)))

    @cached_property
    def H(self) -> FieldMatrix:
        """N x (N+K) parity-check matrix of the full-length code."""
        return nullspace_basis(self.G)


def _is_rref(m: FieldMatrix) -> bool:
    return rref(m)[0] == m


def to_update_code(c: LinearCode) -> UpdateCode:
    """Append the K x K identity as the virtual source-symbol columns."""
    return UpdateCode(c.G.hstack(FieldMatrix.identity(c.k, c.q)), c.n)


def _split_sizes(masks: np.ndarray, n: int, k: int) -> tuple[np.ndarray, np.ndarray]:
    low = np.uint64((1 << n) - 1)
    m1 = masks & low
    m2 = masks >> np.uint64(n)
    return _popcount64(m1), _popcount64(m2)


def _popcount64(x: np.ndarray) -> np.ndarray:
    x = x.astype(np.uint64)
    out = np.zeros(x.shape, dtype=np.int64)
    for shift in range(0, 64, 16):
        out += _POP16[((x >> np.uint64(shift)) & np.uint64(0xFFFF)).astype(np.int64)]
    return out


_POP16 = np.array([bin(i).count("1") for i in range(1 << 16)], dtype=np.int64)


@dataclass(frozen=True)
class BivariateEnumerator:
    """counts[t1][t2]: codewords with |support in stored part| = t1 and
    |support in source part| = t2."""

    n: int
    k: int
    counts: tuple[tuple[int, ...], ...]

    def __getitem__(self, key):
        t1, t2 = key
        return self.counts[t1][t2]

    def total(self) -> int:
        return sum(map(sum, self.counts))


def _bivariate_from_generator(G: FieldMatrix, n: int, k: int, guard, what) -> BivariateEnumerator:
    check_guard(G.q, G.rows, what=what, guard=guard)
    counts = np.zeros((n + 1, k + 1), dtype=np.int64)
    for chunk in _generator_chunks(G):
        t1, t2 = _split_sizes(_support_masks(chunk), n, k)
        np.add.at(counts, (t1, t2), 1)
    return BivariateEnumerator(n, k, tuple(tuple(int(x) for x in row) for row in counts))


def bivariate_enumerator(u: UpdateCode, guard: int | None = None) -> BivariateEnumerator:
    return _bivariate_from_generator(u.G, u.n, u.k, guard, "q^K")


def dual_bivariate_enumerator(u: UpdateCode, guard: int | None = None) -> BivariateEnumerator:
    return _bivariate_from_generator(u.H, u.n, u.k, guard, "q^N (dual of update code)")


def update_support_enumerators(u: UpdateCode, guard: int | None = None):
    """Per-support enumerators (over N+K coordinates) of the code and its dual."""
    full = LinearCode(u.G) if _is_rref(u.G) else code_from_generator(u.G)
    return support_enumerator(full, guard), dual_support_enumerator(full, guard)


@dataclass(frozen=True)
class UpdateCriteriaReport:
    lr: bool
    gr: bool
    eu: bool
    lr_failures: tuple[int, ...]  # stored nodes without a qualifying dual word
    gr_witness: tuple[int, ...] | None
    eu_witness: tuple[int, ...] | None

    @property
    def passed(self) -> bool:
        return self.lr and self.gr and self.eu


def verify_update_criteria(u: UpdateCode, r: int, beta: int, delta: int,
                           guard: int | None = None) -> UpdateCriteriaReport:
    """Check local recovery, global recovery and efficient update.

    Local repair needs a dual word with zero source part whose stored support
    contains the node and has between 2 and r+1 elements.
    """
    n = u.n
    covered = 0
    check_guard(u.q, u.H.rows, what="q^N (dual of update code)", guard=guard)
    for chunk in _generator_chunks(u.H):
        for m in set(_support_masks(chunk).tolist()):
            if m >> n == 0 and 2 <= popcount(m) <= r + 1:
                covered |= m
    lr_fail = tuple(i for i in range(n) if not covered >> i & 1)

    gr_witness = eu_witness = None
    check_guard(u.q, u.k, guard=guard)
    for chunk in _generator_chunks(u.G):
        masks = _support_masks(chunk)
        t1, t2 = _split_sizes(masks, n, u.k)
        if gr_witness is None:
            bad = np.nonzero((t1 >= 1) & (t1 <= beta))[0]
            if bad.size:
                gr_witness = tuple(int(x) for x in chunk[bad[0]])
        if eu_witness is None:
            bad = np.nonzero((t2 == 1) & (t1 > delta))[0]
            if bad.size:
                eu_witness = tuple(int(x) for x in chunk[bad[0]])
    return UpdateCriteriaReport(
        lr=not lr_fail, gr=gr_witness is None, eu=eu_witness is None,
        lr_failures=lr_fail, gr_witness=gr_witness, eu_witness=eu_witness,
    )


def symmetrize_bivariate(e: BivariateEnumerator, scale: int = 1):
    """Per-support average profile: counts[t1][t2] / (C(N,t1) C(K,t2)), times ``scale``."""
    return [[Fraction(scale * e.counts[t1][t2], comb(e.n, t1) * comb(e.k, t2))
             for t2 in range(e.k + 1)] for t1 in range(e.n + 1)]
