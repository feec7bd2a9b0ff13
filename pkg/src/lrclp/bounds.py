"""LP upper bounds on code size and update-efficiency feasibility.

Three systems are built here:

* the full LP over one variable per support (small N only),
* the symmetric LP over one variable per support size,
* the (stored size, source size) feasibility system for pseudo-systematic
  update codes, optionally with the robust-locality constraint.

Repair alternatives are dual supports of size 2..r+1 containing the failed
node; size-1 supports are excluded from the full LP by default so that it
agrees with the symmetric LP (pass ``include_singletons=True`` to count them).
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb

from .code import (
    UpdateCode,
    bivariate_enumerator,
    dual_bivariate_enumerator,
    popcount,
    symmetrize_bivariate,
    update_support_enumerators,
)
from .field import is_prime
from .macwilliams import bivariate_matrix, product_kernel, support_transform, symmetric_matrix
from .ratlp import EQ, GE, LpBuilder, LpProblem, Status, check_assignment, solve, solve_feasibility

FULL_LP_MAX_N = 8


@dataclass(frozen=True)
class RlrcParams:
    n: int
    q: int
    r: int
    beta: int
    gamma: int = 0
    zeta: int = 1

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("N must be at least 2")
        if not is_prime(self.q):
            raise ValueError(f"q must be prime, got {self.q}")
        if not 1 <= self.r <= self.n - 1:
            raise ValueError(f"r must lie in 1..N-1 = 1..{self.n - 1}, got {self.r}")
        if not 0 <= self.beta <= self.n:
            raise ValueError(f"beta must lie in 0..N, got {self.beta}")
        if not 0 <= self.gamma <= self.n - 2:
            raise ValueError(f"gamma must lie in 0..N-2 = 0..{self.n - 2}, got {self.gamma}")
        if self.zeta < 1:
            raise ValueError(f"zeta must be at least 1, got {self.zeta}")

    def label(self) -> str:
        return f"({self.r},{self.beta},{self.gamma},{self.zeta})"


def build_symmetric_rlrc_lp(p: RlrcParams) -> LpProblem:
    """Variables a_0..a_N: codewords per support of each size."""
    n, q = p.n, p.q
    M = symmetric_matrix(n, q)
    size = [comb(n, t) for t in range(n + 1)]
    lp = LpBuilder(n + 1, "max", [f"a{t}" for t in range(n + 1)])
    lp.set_objective(size)
    for t in range(n + 1):
        lp.add(M[t], GE, 0, f"b{t}>=0")
    for t in range(1, p.beta + 1):
        lp.add({t: 1}, EQ, 0, f"a{t}=0")
    lp.add({0: 1}, EQ, 1, "a0=1")
    # repair alternatives for a node, avoiding gamma extra failures
    row = [Fraction(0)] * (n + 1)
    for t in range(1, p.r + 1):
        w = comb(n - 1 - p.gamma, t)
        if w:
            for s in range(n + 1):
                row[s] += w * M[t + 1][s]
    for s in range(n + 1):
        row[s] -= p.zeta * (q - 1) * size[s]
    lp.add(row, GE, 0, "repair")
    return lp.build()


def build_full_rlrc_lp(p: RlrcParams, include_singletons: bool = False) -> LpProblem:
    """Variables A_w for every support w (bit mask index)."""
    n, q = p.n, p.q
    if n > FULL_LP_MAX_N:
        raise ValueError(f"full LP has 2^N variables; N = {n} exceeds {FULL_LP_MAX_N}")
    nw = 1 << n
    kernel = [[product_kernel(s, w, n, q) for s in range(nw)] for w in range(nw)]
    lp = LpBuilder(nw, "max", [f"A{w:0{n}b}" for w in range(nw)])
    lp.set_objective([1] * nw)
    for w in range(nw):
        lp.add(kernel[w], GE, 0, f"B[{w}]>=0")
    for w in range(1, nw):
        if popcount(w) <= p.beta:
            lp.add({w: 1}, EQ, 0, f"A[{w}]=0")
    lp.add({0: 1}, EQ, 1, "A[0]=1")
    lo = 1 if include_singletons else 2
    for i in range(n):
        omega = [w for w in range(nw) if w >> i & 1 and lo <= popcount(w) <= p.r + 1]
        others = [j for j in range(n) if j != i]
        for g in range(p.gamma + 1):
            for extra in combinations(others, g):
                gm = sum(1 << j for j in extra)
                row = [-p.zeta * (q - 1)] * nw
                for w in omega:
                    if not w & gm:
                        kw = kernel[w]
                        for s in range(nw):
                            row[s] += kw[s]
                lp.add(row, GE, 0, f"repair[{i};{extra}]")
    return lp.build()


@dataclass(frozen=True)
class BoundRow:
    params: RlrcParams
    lp_optimum: Fraction | None
    dim_bound: int
    status: str = "optimal"
    error: str | None = field(default=None)

    def csv_fields(self) -> list[str]:
        p = self.params
        opt = _fmt_rational(self.lp_optimum) if self.lp_optimum is not None else self.status
        return [str(p.n), str(p.q), str(p.beta), str(p.r), str(p.gamma), str(p.zeta), opt, str(self.dim_bound)]


def _fmt_rational(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def floor_log(value: Fraction, q: int) -> int:
    """Largest k >= 0 with q**k <= value (exact, no logarithms)."""
    k = 0
    while q ** (k + 1) <= value:
        k += 1
    return k


def rlrc_bound(p: RlrcParams) -> BoundRow:
    out = solve(build_symmetric_rlrc_lp(p))
    if out.status is Status.INFEASIBLE:
        # no code at all meets the repair requirement; report the trivial bound
        return BoundRow(p, None, 0, "infeasible")
    if out.status is Status.UNBOUNDED:
        raise RuntimeError(f"symmetric LP unbounded for {p}; the MacWilliams constraints should bound it")
    return BoundRow(p, out.value, floor_log(out.value, p.q))


def _safe_bound(p):
    try:
        return rlrc_bound(p)
    except Exception as exc:  # recorded per row, sweep continues
        return BoundRow(p, None, 0, "error", str(exc))


def bound_sweep(n: int, q: int, beta: int, r_values, gamma_values, zeta_values,
                jobs: int = 1) -> list[BoundRow]:
    """One row per (r, gamma, zeta), ordered by r, then gamma, then zeta."""
    grid = []
    for r in r_values:
        for g in gamma_values:
            for z in zeta_values:
                grid.append((n, q, r, beta, g, z))
    params = []
    for args in grid:
        try:
            params.append(RlrcParams(*args))
        except ValueError as exc:
            params.append((args, str(exc)))
    todo = [p for p in params if isinstance(p, RlrcParams)]
    if jobs > 1 and len(todo) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            solved = dict(zip(todo, pool.map(_safe_bound, todo)))
    else:
        solved = {p: _safe_bound(p) for p in todo}
    rows = []
    for p in params:
        if isinstance(p, RlrcParams):
            rows.append(solved[p])
        else:
            (n_, q_, r_, b_, g_, z_), msg = p
            rows.append(BoundRow(_UncheckedParams(n_, q_, r_, b_, g_, z_), None, 0, "error", msg))
    return rows


@dataclass(frozen=True)
class _UncheckedParams:
    """Parameter record for rows that failed validation."""

    n: int
    q: int
    r: int
    beta: int
    gamma: int
    zeta: int


# -- update efficiency ------------------------------------------------------------


@dataclass(frozen=True)
class UpdateParams:
    n: int
    k: int
    q: int
    r: int
    beta: int
    delta: int
    gamma: int | None = None
    zeta: int | None = None

    def __post_init__(self):
        if self.n < 2 or self.k < 1:
            raise ValueError("need N >= 2 and K >= 1")
        if not is_prime(self.q):
            raise ValueError(f"q must be prime, got {self.q}")
        if not 1 <= self.r <= self.n - 1:
            raise ValueError(f"r must lie in 1..N-1, got {self.r}")
        if not 0 <= self.beta <= self.n:
            raise ValueError(f"beta must lie in 0..N, got {self.beta}")
        if not 0 <= self.delta <= self.n:
            raise ValueError(f"delta must lie in 0..N, got {self.delta}")
        if (self.gamma is None) != (self.zeta is None):
            raise ValueError("gamma and zeta must be given together")
        if self.gamma is not None:
            if not 0 <= self.gamma <= self.n - 2:
                raise ValueError(f"gamma must lie in 0..N-2, got {self.gamma}")
            if self.zeta < 1:
                raise ValueError("zeta must be at least 1")

    @property
    def robust(self) -> tuple[int, int]:
        return (0, 1) if self.gamma is None else (self.gamma, self.zeta)


def _a(t1, t2, k):
    return t1 * (k + 1) + t2


def build_update_feasibility(p: UpdateParams) -> LpProblem:
    """Variables a[t1,t2] then c[t1,t2], row-major over t1 in 0..N, t2 in 0..K."""
    n, k, q = p.n, p.k, p.q
    m = (n + 1) * (k + 1)
    A = lambda t1, t2: _a(t1, t2, k)  # noqa: E731
    C = lambda t1, t2: m + _a(t1, t2, k)  # noqa: E731
    names = [f"a{t1},{t2}" for t1 in range(n + 1) for t2 in range(k + 1)]
    names += [f"c{t1},{t2}" for t1 in range(n + 1) for t2 in range(k + 1)]
    lp = LpBuilder(2 * m, "max", names)
    Xi = bivariate_matrix(n, k, q)
    for t1 in range(n + 1):
        for t2 in range(k + 1):
            row = {C(t1, t2): 1}
            for (s1, s2), v in Xi[(t1, t2)].items():
                row[A(s1, s2)] = row.get(A(s1, s2), 0) - v
            lp.add(row, EQ, 0, f"D1[{t1},{t2}]")
    for t2 in range(1, k + 1):
        lp.add({A(0, t2): 1}, EQ, 0, f"D4[{t2}]")
        lp.add({C(0, t2): 1}, EQ, 0, f"D5[{t2}]")
    for t2 in range(k + 1):
        lp.add({C(t1, t2): comb(n, t1) for t1 in range(n + 1)}, EQ, (q - 1) ** t2 * q**n, f"D6[{t2}]")
        lp.add({A(t1, t2): comb(n, t1) for t1 in range(n + 1)}, EQ, (q - 1) ** t2, f"D7[{t2}]")
    lp.add({A(0, 0): 1}, EQ, 1, "D8")
    lp.add({C(0, 0): 1}, EQ, q**k, "D9")
    gamma, zeta = p.robust
    lp.add({C(t1, 0): comb(n - gamma - 1, t1 - 1) for t1 in range(2, min(p.r + 1, n) + 1)},
           GE, zeta * (q - 1) * q**k, "D10" if p.gamma is None else "D10-robust")
    for t1 in range(1, p.beta + 1):
        for t2 in range(k + 1):
            lp.add({A(t1, t2): 1}, EQ, 0, f"D11[{t1},{t2}]")
    for t1 in range(p.delta + 1, n + 1):
        lp.add({A(t1, 1): 1}, EQ, 0, f"D12[{t1}]")
    return lp.build()


@dataclass(frozen=True)
class UpdateVerdict:
    feasible: bool
    params: UpdateParams
    witness: dict | None = None
    existence_guaranteed: bool = False  # the system is only a necessary condition


def update_feasible(p: UpdateParams) -> UpdateVerdict:
    prob = build_update_feasibility(p)
    res = solve_feasibility(prob)
    if not res.feasible:
        return UpdateVerdict(False, p)
    m = (p.n + 1) * (p.k + 1)
    x = res.witness
    a = [[x[_a(t1, t2, p.k)] for t2 in range(p.k + 1)] for t1 in range(p.n + 1)]
    c = [[x[m + _a(t1, t2, p.k)] for t2 in range(p.k + 1)] for t1 in range(p.n + 1)]
    return UpdateVerdict(True, p, {"a": a, "c": c})


def update_profile(u: UpdateCode):
    """Symmetrized (a, c) profile of an update code; c is scaled by q^K."""
    a = symmetrize_bivariate(bivariate_enumerator(u))
    c = symmetrize_bivariate(dual_bivariate_enumerator(u), scale=u.q**u.k)
    return a, c


def profile_assignment(a, c) -> list[Fraction]:
    """Flatten an (a, c) profile into the variable order of build_update_feasibility."""
    return [v for row in a for v in row] + [v for row in c for v in row]


def verify_necessary_conditions(u: UpdateCode, r: int, beta: int, delta: int,
                                gamma: int | None = None, zeta: int | None = None) -> dict[str, bool]:
    """Check every per-support necessary condition on the code's own enumerators.

    A is the code's support enumerator over N+K coordinates and C is q^K
    times the dual's.
    """
    n, k, q = u.n, u.k, u.q
    A_enum, B_enum = update_support_enumerators(u)
    qk = q**k
    C = {w: qk * v for w, v in B_enum.items()}
    low = (1 << n) - 1
    w1 = lambda w: w & low  # noqa: E731
    w2 = lambda w: w >> n  # noqa: E731

    transformed = support_transform(A_enum, q)
    checks: dict[str, bool] = {}
    checks["C1"] = all(transformed[w] * qk == C.get(w, 0) for w in set(transformed) | set(C))
    checks["C2"] = all(v >= 0 for v in A_enum.values())
    checks["C3"] = all(v >= 0 for v in C.values())
    checks["C4"] = all(v == 0 for w, v in A_enum.items() if w1(w) == 0 and w2(w) != 0)
    checks["C5"] = all(v == 0 for w, v in C.items() if w1(w) == 0 and w2(w) != 0)
    sums_c: dict[int, int] = {}
    sums_a: dict[int, int] = {}
    for w, v in C.items():
        sums_c[w2(w)] = sums_c.get(w2(w), 0) + v
    for w, v in A_enum.items():
        sums_a[w2(w)] = sums_a.get(w2(w), 0) + v
    checks["C6"] = all(sums_c.get(s, 0) == (q - 1) ** popcount(s) * q**n for s in range(1 << k))
    checks["C7"] = all(sums_a.get(s, 0) == (q - 1) ** popcount(s) for s in range(1 << k))
    checks["C8"] = A_enum[0] == 1
    checks["C9"] = C.get(0, 0) == qk
    g, z = (0, 1) if gamma is None else (gamma, zeta)
    ok10 = True
    for ell in range(n):
        others = [j for j in range(n) if j != ell]
        for extra in combinations(others, g):
            gm = sum(1 << j for j in extra)
            total = sum(v for w, v in C.items()
                        if w2(w) == 0 and w >> ell & 1 and not w & gm and 2 <= popcount(w) <= r + 1)
            ok10 &= total >= z * (q - 1) * qk
    checks["C10"] = ok10
    checks["C11"] = all(v == 0 for w, v in A_enum.items() if 1 <= popcount(w1(w)) <= beta)
    checks["C12"] = all(v == 0 for w, v in A_enum.items() if popcount(w1(w)) > delta and popcount(w2(w)) == 1)
    return checks


def witness_is_feasible(p: UpdateParams, a, c) -> bool:
    return check_assignment(build_update_feasibility(p), profile_assignment(a, c)).ok


__all__ = [
    "RlrcParams", "BoundRow", "UpdateParams", "UpdateVerdict",
    "build_symmetric_rlrc_lp", "build_full_rlrc_lp", "rlrc_bound", "bound_sweep", "floor_log",
    "build_update_feasibility", "update_feasible", "update_profile", "profile_assignment",
    "verify_necessary_conditions", "witness_is_feasible",
]
