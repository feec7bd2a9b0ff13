"""Brute-force oracles that share no code with the library's enumeration paths."""

from collections import Counter
from fractions import Fraction
from itertools import combinations, product

import numpy as np


def brute_codewords(G):
    """Every combination of the rows of G, via itertools."""
    A = G.array.astype(np.int64)
    return {tuple(int(x) for x in (np.array(u) @ A) % G.q) for u in product(range(G.q), repeat=G.rows)}


def brute_dual(c):
    """Every vector of GF(q)^N orthogonal to the generator rows."""
    G = c.G.array.astype(np.int64)
    return {v for v in product(range(c.q), repeat=c.n) if not ((G @ np.array(v)) % c.q).any()}


def support(v) -> frozenset:
    return frozenset(i for i, x in enumerate(v) if x)


def support_counts(words) -> Counter:
    return Counter(support(v) for v in words)


def to_mask(s) -> int:
    return sum(1 << i for i in s)


def recount_zeta(c, r, gamma):
    """min over (i, gamma-set) of distinct dual supports of size 2..r+1 containing i and avoiding the set."""
    sups = {support(h) for h in brute_dual(c) if 2 <= len(support(h)) <= r + 1}
    best = None
    for i in range(c.n):
        mine = [s for s in sups if i in s]
        for extra in combinations([j for j in range(c.n) if j != i], gamma):
            n_ok = sum(1 for s in mine if not s & set(extra))
            best = n_ok if best is None else min(best, n_ok)
    return best


def _solve_square(A, b):
    """Gauss-Jordan over Fractions; None when singular."""
    n = len(A)
    M = [[Fraction(v) for v in row] + [Fraction(bv)] for row, bv in zip(A, b)]
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col] != 0), None)
        if piv is None:
            return None
        M[col], M[piv] = M[piv], M[col]
        inv = 1 / M[col][col]
        M[col] = [v * inv for v in M[col]]
        for r in range(n):
            if r != col and M[r][col] != 0:
                f = M[r][col]
                M[r] = [a - f * c for a, c in zip(M[r], M[col])]
    return [M[r][n] for r in range(n)]


def vertex_optimum(objective, rows, sense="max", free=()):
    """Best objective over all basic feasible solutions.

    ``rows`` are (coeffs, relation, rhs) with relation in '<=', '>=', '='.
    Returns None when no vertex is feasible.  Only valid for bounded,
    pointed feasible regions.
    """
    n = len(objective)
    allrows = list(rows) + [([1 if k == j else 0 for k in range(n)], ">=", 0) for j in range(n) if j not in free]

    def feasible(x):
        for a, rel, b in allrows:
            v = sum(ai * xi for ai, xi in zip(a, x))
            if (rel == "<=" and v > b) or (rel == ">=" and v < b) or (rel == "=" and v != b):
                return False
        return True

    best = None
    for subset in combinations(range(len(allrows)), n):
        x = _solve_square([allrows[i][0] for i in subset], [allrows[i][2] for i in subset])
        if x is None or not feasible(x):
            continue
        val = sum(c * v for c, v in zip(objective, x))
        if best is None or (val > best if sense == "max" else val < best):
            best = val
    return best


def random_lp(rng, box=10):
    """Small integer LP with every variable boxed in [0, box]."""
    n = rng.randint(1, 4)
    m = rng.randint(1, 6)
    rows = []
    for _ in range(m):
        coeffs = [rng.randint(-4, 4) for _ in range(n)]
        rel = rng.choice(["<=", "<=", ">=", "="])
        rows.append((coeffs, rel, rng.randint(-6, 12)))
    for j in range(n):
        rows.append(([1 if k == j else 0 for k in range(n)], "<=", box))
    objective = [rng.randint(-5, 5) for _ in range(n)]
    return objective, rows, rng.choice(["max", "min"])
