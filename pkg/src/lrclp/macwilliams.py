"""MacWilliams transforms over the Hamming scheme, in exact arithmetic.

Three levels of the same identity are provided:

* ``support_transform``: per-support enumerators (2^N entries),
* ``symmetric_transform``: profiles indexed by support size,
* ``bivariate_transform``: profiles indexed by (stored size, source size)
  for pseudo-systematic update codes.

The size-indexed forms are also exposed as integer coefficient matrices so
the LP builders can reuse exactly the same numbers.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb

import numpy as np

from .code import GuardExceeded, SupportEnumerator, popcount

MAX_TRANSFORM_BITS = 22

_POP16 = np.array([bin(i).count("1") for i in range(1 << 16)], dtype=np.int64)


def kappa(s: int, w: int, q: int) -> int:
    """Single-coordinate MacWilliams kernel."""
    if s not in (0, 1) or w not in (0, 1):
        raise ValueError("kappa takes bits")
    if w == 0:
        return 1
    if s == 0:
        return q - 1
    return -1


def product_kernel(s: int, w: int, n: int, q: int) -> int:
    """Product of ``kappa`` over all N coordinates, in closed form."""
    if (s | w) >> n:
        raise ValueError(f"support outside {n} coordinates")
    sign = -1 if popcount(s & w) % 2 else 1
    return sign * (q - 1) ** popcount(w & ~s)


def support_transform(enum: SupportEnumerator, q: int, codebook_size=None) -> SupportEnumerator:
    """Per-support MacWilliams transform.

    ``out(w) = (1/|C|) * sum_s enum(s) * prod_j kappa(s_j, w_j)`` for every
    w in 2^N.  For the enumerator of a linear code the result is the dual's
    support enumerator.
    """
    n = enum.n
    if n > MAX_TRANSFORM_BITS:
        raise GuardExceeded(f"support transform over 2^{n} supports exceeds 2^{MAX_TRANSFORM_BITS}")
    size = enum.total() if codebook_size is None else codebook_size
    if size != enum.total():
        raise ValueError(f"codebook size {size} does not match enumerator total {enum.total()}")
    w = np.arange(1 << n, dtype=np.int64)
    pop_w = _popcount(w)
    exact_ints = all(isinstance(v, int) for v in enum.values())
    # int64 is exact while every partial sum is below 2**62
    bound = sum(abs(v) for v in enum.values()) * (q - 1) ** n if exact_ints else None
    if exact_ints and bound < (1 << 62):
        acc = np.zeros(1 << n, dtype=np.int64)
        powers = np.array([(q - 1) ** j for j in range(n + 1)], dtype=np.int64)
        for s, count in enum.items():
            inter = _popcount(w & s)
            sign = 1 - 2 * (inter & 1)
            acc += count * sign * powers[pop_w - inter]
        return SupportEnumerator(n, {int(m): Fraction(int(v), size) for m, v in zip(w, acc) if v})
    out = {}
    for wm in range(1 << n):
        total = sum(Fraction(v) * product_kernel(s, wm, n, q) for s, v in enum.items())
        if total:
            out[wm] = total / size
    return SupportEnumerator(n, out)


def _popcount(x: np.ndarray) -> np.ndarray:
    out = np.zeros(x.shape, dtype=np.int64)
    for shift in range(0, 64, 16):
        out += _POP16[(x >> shift) & 0xFFFF]
    return out


@lru_cache(maxsize=None)
def symmetric_matrix(n: int, q: int) -> tuple[tuple[int, ...], ...]:
    """M with ``b_t = sum_s M[t][s] * a_s`` for size-indexed profiles.

    M[t][s] = sum over i + j = s of C(t,i) C(N-t,j) (-1)^i (q-1)^(t-i).
    """
    rows = []
    for t in range(n + 1):
        row = [0] * (n + 1)
        for i in range(t + 1):
            c_i = comb(t, i) * (-1) ** i * (q - 1) ** (t - i)
            for j in range(n - t + 1):
                row[i + j] += c_i * comb(n - t, j)
        rows.append(tuple(row))
    return tuple(rows)


def symmetric_transform(a, q: int) -> list[Fraction]:
    """Size-indexed transform; ``a[t]`` is the value per support of size t."""
    n = len(a) - 1
    M = symmetric_matrix(n, q)
    a = [Fraction(x) for x in a]
    return [sum((M[t][s] * a[s] for s in range(n + 1) if M[t][s] and a[s]), Fraction(0))
            for t in range(n + 1)]


def xi_coefficient(u1: int, v1: int, u2: int, v2: int, t1: int, t2: int,
                   n: int, k: int, q: int) -> int:
    """Number-weighted kernel value for pairs of supports of given overlap.

    Counts supports (s1, s2) with |s1 & w1| = u1, |s1 - w1| = v1,
    |s2 & w2| = u2, |s2 - w2| = v2 for fixed |w1| = t1, |w2| = t2, each
    weighted by its product kernel.
    """
    if not (0 <= t1 <= n and 0 <= t2 <= k):
        raise ValueError("support sizes out of range")
    if not (0 <= u1 <= t1 and 0 <= v1 <= n - t1 and 0 <= u2 <= t2 and 0 <= v2 <= k - t2):
        raise ValueError(f"overlap indices out of range: {(u1, v1, u2, v2)} for t=({t1},{t2})")
    return ((-1) ** (u1 + u2) * (q - 1) ** (t1 + t2 - u1 - u2)
            * comb(t1, u1) * comb(n - t1, v1) * comb(t2, u2) * comb(k - t2, v2))


@lru_cache(maxsize=None)
def bivariate_matrix(n: int, k: int, q: int) -> dict:
    """Sparse coefficients: ``{(t1, t2): {(s1, s2): coeff}}`` with
    ``c[t1][t2] = sum coeff * a[s1][s2]``."""
    out = {}
    for t1 in range(n + 1):
        for t2 in range(k + 1):
            row: dict = {}
            for u1 in range(t1 + 1):
                for v1 in range(n - t1 + 1):
                    for u2 in range(t2 + 1):
                        for v2 in range(k - t2 + 1):
                            key = (u1 + v1, u2 + v2)
                            row[key] = row.get(key, 0) + xi_coefficient(u1, v1, u2, v2, t1, t2, n, k, q)
            out[(t1, t2)] = {s: v for s, v in row.items() if v}
    return out


def bivariate_transform(a, q: int) -> list[list[Fraction]]:
    """Transform an (N+1) x (K+1) size-indexed profile."""
    n = len(a) - 1
    k = len(a[0]) - 1
    M = bivariate_matrix(n, k, q)
    a = [[Fraction(x) for x in row] for row in a]
    return [[sum((v * a[s1][s2] for (s1, s2), v in M[(t1, t2)].items()), Fraction(0))
             for t2 in range(k + 1)] for t1 in range(n + 1)]


def symmetrize(enum: SupportEnumerator) -> list[Fraction]:
    """Average value per support of each size."""
    by_weight = enum.by_weight()
    return [Fraction(by_weight[t]) / comb(enum.n, t) for t in range(enum.n + 1)]
