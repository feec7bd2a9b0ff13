"""Repair groups and the robust-locality / global-recovery criteria.

A repair alternative for node i is a distinct support of a nonzero dual
codeword containing i, of size between 2 and r+1.  Scalar multiples of a
dual word share a support and therefore count once.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import ceil, comb

import numpy as np

from .code import (
    LinearCode,
    _generator_chunks,
    _support_masks,
    check_guard,
    indices_of,
    mask_of,
    min_distance,
    popcount,
)
from .field import fe_inv

DEFAULT_GAMMA_CAP = 10**6


class SubsetCapExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class RepairGroup:
    """Helpers that recover ``node`` through the dual word ``coefficients``."""

    node: int
    helpers: int  # mask
    dual_support: int  # mask, helpers | node
    coefficients: tuple[int, ...]

    def repair(self, stored, q: int) -> int:
        """Recompute the symbol of ``node`` from the helper symbols of ``stored``."""
        h = self.coefficients
        acc = sum(h[j] * stored[j] for j in indices_of(self.helpers)) % q
        return (-fe_inv(h[self.node], q) * acc) % q


@lru_cache(maxsize=64)
def _dual_words_by_support(c: LinearCode) -> dict[int, tuple[int, ...]]:
    """One representative dual codeword per nonzero dual support."""
    if c.H.rows == 0:
        return {}
    check_guard(c.q, c.H.rows, what="q^(N-K)")
    reps: dict[int, tuple[int, ...]] = {}
    for chunk in _generator_chunks(c.H):
        masks = _support_masks(chunk).tolist()
        for idx, m in enumerate(masks):
            if m and m not in reps:
                reps[m] = tuple(int(x) for x in chunk[idx])
    return reps


def repair_groups(c: LinearCode, i: int, r: int) -> list[RepairGroup]:
    if not 0 <= i < c.n:
        raise IndexError(f"node {i} outside 0..{c.n - 1}")
    bit = 1 << i
    out = []
    for m, word in sorted(_dual_words_by_support(c).items()):
        if m & bit and 2 <= popcount(m) <= r + 1:
            out.append(RepairGroup(i, m & ~bit, m, word))
    return out


def repair_supports(c: LinearCode, i: int, r: int) -> list[int]:
    """Distinct dual supports usable to repair node ``i`` with locality ``r``,
    sorted by mask."""
    return [g.dual_support for g in repair_groups(c, i, r)]


@dataclass(frozen=True)
class RlrResult:
    passed: bool
    zeta_max: int
    witness: tuple[int, tuple[int, ...]] | None  # (node, extra failures) attaining zeta_max


def _worst_case(c: LinearCode, r: int, gamma: int, cap: int) -> tuple[int, tuple[int, tuple[int, ...]]]:
    if not 0 <= gamma <= max(c.n - 2, 0):
        raise ValueError(f"gamma must lie in 0..N-2, got {gamma}")
    if comb(c.n - 1, gamma) > cap:
        raise SubsetCapExceeded(f"C({c.n - 1},{gamma}) = {comb(c.n - 1, gamma)} erasure sets per node exceeds cap {cap}")
    best = None
    for i in range(c.n):
        sups = np.array(repair_supports(c, i, r), dtype=np.uint64)
        others = [j for j in range(c.n) if j != i]
        for extra in combinations(others, gamma):
            count = int((sups & np.uint64(mask_of(extra)) == 0).sum()) if sups.size else 0
            if best is None or count < best[0]:
                best = (count, (i, extra))
                if count == 0:
                    return best
    return best


def zeta_max(c: LinearCode, r: int, gamma: int, cap: int = DEFAULT_GAMMA_CAP) -> int:
    """Largest zeta such that every node keeps zeta repair alternatives
    under every set of ``gamma`` extra failures."""
    return _worst_case(c, r, gamma, cap)[0]


def verify_rlr(c: LinearCode, r: int, gamma: int, zeta: int, cap: int = DEFAULT_GAMMA_CAP) -> RlrResult:
    z, witness = _worst_case(c, r, gamma, cap)
    return RlrResult(z >= zeta, z, None if z >= zeta else witness)


def verify_gr(c: LinearCode, beta: int) -> bool:
    return min_distance(c) >= beta + 1


@dataclass(frozen=True)
class RobustnessProfile:
    r: int
    beta_max: int
    rows: tuple[tuple[int, int], ...]  # (gamma, zeta_max)


def classify(c: LinearCode, r: int, gamma_max: int) -> RobustnessProfile:
    gamma_max = min(gamma_max, max(c.n - 2, 0))
    rows = tuple((g, zeta_max(c, r, g)) for g in range(gamma_max + 1))
    return RobustnessProfile(r, min_distance(c) - 1, rows)


@dataclass(frozen=True)
class ClassicalBounds:
    gopalan_satisfied: bool
    singleton_satisfied: bool


def classical_bounds(n: int, k: int, d: int, r: int) -> ClassicalBounds:
    """Necessary conditions: N-K >= ceil(K/r) + d - 2 and N-K >= d-1.

    For r >= K the locality term is 1 and the first reduces to the second.
    """
    if min(n, k, d, r) < 1:
        raise ValueError("parameters must be positive")
    return ClassicalBounds(
        gopalan_satisfied=n - k >= ceil(k / r) + d - 2,
        singleton_satisfied=n - k >= d - 1,
    )
