"""Exact linear programming over the rationals.

Dense two-phase tableau simplex with Bland's rule.  Arithmetic inside the
tableau uses ``gmpy2.mpq``; everything that crosses the module boundary is
``fractions.Fraction``.
"""

from __future__ import annotations

import enum
from collections.abc import Sequence
from dataclasses import dataclass, field
from fractions import Fraction

from gmpy2 import mpq

LE, GE, EQ = "<=", ">=", "="
_RELATIONS = (LE, GE, EQ)


class Status(enum.Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


def _frac(x) -> Fraction:
    if isinstance(x, float):
        raise TypeError("floats are not accepted; pass ints, Fractions or strings")
    if type(x).__name__ == "mpq":
        return Fraction(int(x.numerator), int(x.denominator))
    return Fraction(x)


@dataclass(frozen=True)
class Constraint:
    coeffs: tuple[Fraction, ...]
    relation: str
    rhs: Fraction
    name: str = ""

    def __post_init__(self):
        if self.relation not in _RELATIONS:
            raise ValueError(f"unknown relation {self.relation!r}")
        object.__setattr__(self, "coeffs", tuple(_frac(c) for c in self.coeffs))
        object.__setattr__(self, "rhs", _frac(self.rhs))

    def lhs(self, x) -> Fraction:
        return sum((c * v for c, v in zip(self.coeffs, x) if c), Fraction(0))

    def satisfied_by(self, x) -> bool:
        v = self.lhs(x)
        if self.relation == LE:
            return v <= self.rhs
        if self.relation == GE:
            return v >= self.rhs
        return v == self.rhs


@dataclass(frozen=True)
class LpProblem:
    """``sense`` objective over n variables, nonnegative unless listed in ``free``."""

    objective: tuple[Fraction, ...]
    constraints: tuple[Constraint, ...]
    sense: str = "max"
    free: frozenset[int] = frozenset()
    names: tuple[str, ...] = ()

    def __post_init__(self):
        if self.sense not in ("max", "min"):
            raise ValueError(f"sense must be 'max' or 'min', got {self.sense!r}")
        object.__setattr__(self, "objective", tuple(_frac(c) for c in self.objective))
        object.__setattr__(self, "constraints", tuple(self.constraints))
        object.__setattr__(self, "free", frozenset(self.free))
        n = len(self.objective)
        if n < 1:
            raise ValueError("problem needs at least one variable")
        for k, con in enumerate(self.constraints):
            if len(con.coeffs) != n:
                raise ValueError(f"constraint {k} ({con.name or 'unnamed'}) has {len(con.coeffs)} coefficients, expected {n}")
        if any(not 0 <= j < n for j in self.free):
            raise ValueError("free variable index out of range")
        if self.names and len(self.names) != n:
            raise ValueError("names must match the variable count")

    @property
    def n(self) -> int:
        return len(self.objective)

    def value(self, x) -> Fraction:
        return sum((c * v for c, v in zip(self.objective, x) if c), Fraction(0))


class LpBuilder:
    """Mutable helper for assembling an LpProblem row by row."""

    def __init__(self, n: int, sense: str = "max", names: Sequence[str] = ()):
        self.n = n
        self.sense = sense
        self.names = tuple(names)
        self.objective = [Fraction(0)] * n
        self.rows: list[Constraint] = []
        self.free: set[int] = set()

    def set_objective(self, coeffs) -> None:
        self.objective = _dense(coeffs, self.n)

    def add(self, coeffs, relation: str, rhs, name: str = "") -> None:
        self.rows.append(Constraint(tuple(_dense(coeffs, self.n)), relation, rhs, name))

    def build(self) -> LpProblem:
        return LpProblem(tuple(self.objective), tuple(self.rows), self.sense, frozenset(self.free), self.names)


def _dense(coeffs, n: int) -> list[Fraction]:
    if isinstance(coeffs, dict):
        out = [Fraction(0)] * n
        for j, v in coeffs.items():
            out[j] += _frac(v)
        return out
    out = [_frac(c) for c in coeffs]
    if len(out) != n:
        raise ValueError(f"expected {n} coefficients, got {len(out)}")
    return out


@dataclass(frozen=True)
class LpOutcome:
    status: Status
    x: tuple[Fraction, ...] | None = None
    value: Fraction | None = None
    pivots: int = field(default=0, compare=False)

    @property
    def optimal(self) -> bool:
        return self.status is Status.OPTIMAL


@dataclass(frozen=True)
class Check:
    ok: bool
    violated: int | None = None  # constraint index, or -(j+1) for sign bound of variable j
    reason: str = ""


def check_assignment(p: LpProblem, x) -> Check:
    """Exact check of every constraint and sign bound."""
    if len(x) != p.n:
        raise ValueError(f"assignment has {len(x)} entries, expected {p.n}")
    x = [_frac(v) for v in x]
    for j, v in enumerate(x):
        if j not in p.free and v < 0:
            return Check(False, -(j + 1), f"variable {j} = {v} violates x >= 0")
    for k, con in enumerate(p.constraints):
        if not con.satisfied_by(x):
            label = con.name or f"#{k}"
            return Check(False, k, f"constraint {label}: {con.lhs(x)} {con.relation} {con.rhs} fails")
    return Check(True)


# -- simplex --------------------------------------------------------------------


class _Tableau:
    """Standard-form tableau ``A x = b, x >= 0`` minimising ``c x``."""

    def __init__(self, rows, rhs, basis, ncols):
        self.T = [r + [b] for r, b in zip(rows, rhs)]
        self.basis = basis
        self.ncols = ncols
        self.pivots = 0

    def set_cost(self, cost):
        z = list(cost) + [mpq(0)]
        for i, bv in enumerate(self.basis):
            cb = z[bv]
            if cb:
                row = self.T[i]
                for j, v in enumerate(row):
                    if v:
                        z[j] -= cb * v
        self.z = z

    def pivot(self, i, j):
        T = self.T
        prow = T[i]
        inv = 1 / prow[j]
        nz = [k for k, v in enumerate(prow) if v]
        for k in nz:
            prow[k] *= inv
        for r, row in enumerate(T):
            if r != i:
                f = row[j]
                if f:
                    for k in nz:
                        row[k] -= f * prow[k]
        f = self.z[j]
        if f:
            z = self.z
            for k in nz:
                z[k] -= f * prow[k]
        self.basis[i] = j
        self.pivots += 1

    def run(self, allowed) -> str:
        """Minimise with Bland's rule over columns where ``allowed[j]``."""
        T, z = self.T, self.z
        while True:
            enter = next((j for j in range(self.ncols) if allowed[j] and z[j] < 0), None)
            if enter is None:
                return "optimal"
            best = None
            for i, row in enumerate(T):
                a = row[enter]
                if a > 0:
                    key = (row[-1] / a, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                return "unbounded"
            self.pivot(best[1], enter)
            z = self.z


def _presolve(p: LpProblem):
    """Substitute out variables pinned by single-variable equality rows.

    Returns (reduced problem, {var: value}, kept variable indices) or None
    when the fixings are contradictory.
    """
    fixed: dict[int, Fraction] = {}
    for con in p.constraints:
        if con.relation != EQ:
            continue
        nz = [j for j, c in enumerate(con.coeffs) if c]
        if len(nz) == 1:
            j = nz[0]
            v = con.rhs / con.coeffs[j]
            if fixed.get(j, v) != v or (v < 0 and j not in p.free):
                return None
            fixed[j] = v
    if not fixed:
        return p, fixed, list(range(p.n))
    keep = [j for j in range(p.n) if j not in fixed]
    if not keep:
        # everything is pinned; a dummy column keeps the reduced problem well formed
        keep_cols: list[int] = []
    else:
        keep_cols = keep
    rows = []
    for con in p.constraints:
        shift = sum((con.coeffs[j] * v for j, v in fixed.items() if con.coeffs[j]), Fraction(0))
        coeffs = tuple(con.coeffs[j] for j in keep_cols) or (Fraction(0),)
        rhs = con.rhs - shift
        if not any(coeffs):
            ok = {LE: 0 <= rhs, GE: 0 >= rhs, EQ: rhs == 0}[con.relation]
            if not ok:
                return None
            continue
        rows.append(Constraint(coeffs, con.relation, rhs, con.name))
    obj = tuple(p.objective[j] for j in keep_cols) or (Fraction(0),)
    free = frozenset(k for k, j in enumerate(keep_cols) if j in p.free)
    reduced = LpProblem(obj, tuple(rows), p.sense, free)
    return reduced, fixed, keep_cols


def solve(p: LpProblem) -> LpOutcome:
    """Solve exactly.  Optimal assignments satisfy every constraint exactly."""
    pre = _presolve(p)
    if pre is None:
        return LpOutcome(Status.INFEASIBLE)
    reduced, fixed, keep = pre
    if not fixed:
        return _solve_standard(p)
    out = _solve_standard(reduced)
    if out.status is not Status.OPTIMAL:
        return out
    x = [Fraction(0)] * p.n
    for j, v in fixed.items():
        x[j] = v
    for k, j in enumerate(keep):
        x[j] = out.x[k]
    x = tuple(x)
    return LpOutcome(Status.OPTIMAL, x, p.value(x), pivots=out.pivots)


def _solve_standard(p: LpProblem) -> LpOutcome:
    # column layout: structural (free vars split), slacks/surpluses, artificials
    cols_of = []
    ncol = 0
    for j in range(p.n):
        if j in p.free:
            cols_of.append((ncol, ncol + 1))
            ncol += 2
        else:
            cols_of.append((ncol, None))
            ncol += 1
    n_struct = ncol

    rows, rhs, kinds = [], [], []
    for con in p.constraints:
        coeffs = [mpq(0)] * n_struct
        for j, c in enumerate(con.coeffs):
            if c:
                pos, neg = cols_of[j]
                coeffs[pos] = mpq(c.numerator, c.denominator)
                if neg is not None:
                    coeffs[neg] = -coeffs[pos]
        b = mpq(con.rhs.numerator, con.rhs.denominator)
        rel = con.relation
        if b < 0 or (b == 0 and rel == GE):
            coeffs = [-v for v in coeffs]
            b = -b
            rel = {LE: GE, GE: LE, EQ: EQ}[rel]
        rows.append(coeffs)
        rhs.append(b)
        kinds.append(rel)

    n_slack = sum(1 for k in kinds if k != EQ)
    n_art = sum(1 for k in kinds if k != LE)
    total = n_struct + n_slack + n_art
    basis = []
    s_col, a_col = n_struct, n_struct + n_slack
    full_rows = []
    for coeffs, kind in zip(rows, kinds):
        ext = coeffs + [mpq(0)] * (n_slack + n_art)
        if kind == LE:
            ext[s_col] = mpq(1)
            basis.append(s_col)
            s_col += 1
        else:
            if kind == GE:
                ext[s_col] = mpq(-1)
                s_col += 1
            ext[a_col] = mpq(1)
            basis.append(a_col)
            a_col += 1
        full_rows.append(ext)

    tab = _Tableau(full_rows, rhs, basis, total)
    is_art = [j >= n_struct + n_slack for j in range(total)]

    if n_art:
        tab.set_cost([mpq(1) if is_art[j] else mpq(0) for j in range(total)])
        tab.run([True] * total)
        if -tab.z[-1] != 0:
            return LpOutcome(Status.INFEASIBLE, pivots=tab.pivots)
        # drive zero-level artificials out of the basis; drop redundant rows
        i = 0
        while i < len(tab.T):
            if is_art[tab.basis[i]]:
                row = tab.T[i]
                j = next((j for j in range(total) if not is_art[j] and row[j] != 0), None)
                if j is None:
                    del tab.T[i]
                    del tab.basis[i]
                    continue
                tab.pivot(i, j)
            i += 1

    sign = -1 if p.sense == "max" else 1
    cost = [mpq(0)] * total
    for j, c in enumerate(p.objective):
        if c:
            pos, neg = cols_of[j]
            cost[pos] = sign * mpq(c.numerator, c.denominator)
            if neg is not None:
                cost[neg] = -cost[pos]
    tab.set_cost(cost)
    status = tab.run([not a for a in is_art])
    if status == "unbounded":
        return LpOutcome(Status.UNBOUNDED, pivots=tab.pivots)

    values = [mpq(0)] * total
    for i, bv in enumerate(tab.basis):
        values[bv] = tab.T[i][-1]
    x = []
    for pos, neg in cols_of:
        v = values[pos] - (values[neg] if neg is not None else 0)
        x.append(_frac(v))
    x = tuple(x)
    return LpOutcome(Status.OPTIMAL, x, p.value(x), pivots=tab.pivots)


@dataclass(frozen=True)
class Feasibility:
    feasible: bool
    witness: tuple[Fraction, ...] | None = None


def solve_feasibility(p: LpProblem) -> Feasibility:
    """Decide whether the constraint system has a solution."""
    probe = LpProblem(tuple([Fraction(0)] * p.n), p.constraints, "max", p.free, p.names)
    out = solve(probe)
    if out.status is Status.INFEASIBLE:
        return Feasibility(False)
    return Feasibility(True, out.x)


def dump_problem(p: LpProblem) -> str:
    """Plain-text standard form, one constraint per line, rationals as p/q."""
    def term(c, j):
        name = p.names[j] if p.names else f"x{j}"
        return f"{'+' if c >= 0 else '-'} {abs(c)} {name}"

    lines = [f"{p.sense} " + " ".join(term(c, j) for j, c in enumerate(p.objective) if c)]
    lines.append("subject to")
    for k, con in enumerate(p.constraints):
        lhs = " ".join(term(c, j) for j, c in enumerate(con.coeffs) if c) or "0"
        lines.append(f"  {con.name or f'c{k}'}: {lhs} {con.relation} {con.rhs}")
    if p.free:
        lines.append("free " + " ".join(str(j) for j in sorted(p.free)))
    lines.append("end")
    return "\n".join(lines)
