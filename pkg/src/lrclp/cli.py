"""Command-line front end.

Commands::

    lrclp analyze FILE --r 3 [--gamma-max 1] [--with-bound]
    lrclp bound --n 16 --q 2 --beta 3 --r 1..15 --gamma 1 --zeta 1 [--format csv|json] [--plot out.png]
    lrclp bound --preset n16 | n8
    lrclp update-feasible --n 2 --k 1 --q 2 --r 1 --beta 1 --delta 2 [--gamma G --zeta Z] [--witness PATH]
    lrclp catalog list | show NAME | export NAME PATH

Results go to stdout.  Every failure writes one JSON line to stderr and exits
nonzero; ``update-feasible`` exits 3 on an Infeasible verdict.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from pathlib import Path

from .bounds import (
    BoundRow,
    RlrcParams,
    UpdateParams,
    _fmt_rational,
    bound_sweep,
    rlrc_bound,
    update_feasible,
)
from .catalog import entries, get
from .code import GuardExceeded, LinearCode, UpdateCode, min_distance
from .codefile import CodeFileError, format_code, read_code_file
from .locality import SubsetCapExceeded, classical_bounds, classify

CSV_HEADER = ("N", "q", "beta", "r", "gamma", "zeta", "lp_optimum", "dim_bound")

EXIT_OK = 0
EXIT_ERROR = 2
EXIT_INFEASIBLE = 3

# (N, beta, [(gamma, zeta), ...]); r runs over 1..N-1
PRESETS = {
    "n16": (16, 3, [(1, 1), (0, 2)]),
    "n8": (8, 3, [(0, 7), (1, 4), (2, 2)]),
}


class CliError(Exception):
    def __init__(self, kind: str, message: str, **extra):
        super().__init__(message)
        self.kind = kind
        self.extra = extra


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliError("usage", f"{self.prog}: {message}")


# -- analysis --------------------------------------------------------------------


def analyze_code(code: LinearCode, r: int, gamma_max: int, notes=(), with_bound: bool = False) -> dict:
    """AnalysisReport as a plain dict with a fixed key order."""
    if r < 1:
        raise CliError("usage", f"r must be at least 1, got {r}")
    if gamma_max < 0:
        raise CliError("usage", f"gamma-max must be nonnegative, got {gamma_max}")
    d = min_distance(code)
    prof = classify(code, r, gamma_max)
    cb = classical_bounds(code.n, code.k, d, r)
    report = {
        "n": code.n,
        "k": code.k,
        "q": code.q,
        "r": r,
        "min_distance": d,
        "beta_max": prof.beta_max,
        "profile": [{"gamma": g, "zeta_max": z} for g, z in prof.rows],
        "gopalan_ok": cb.gopalan_satisfied,
        "singleton_ok": cb.singleton_satisfied,
        "notes": list(notes),
    }
    if with_bound:
        comparisons = []
        for g, z in prof.rows:
            if z < 1 or r > code.n - 1:
                continue
            row = rlrc_bound(RlrcParams(code.n, code.q, r, prof.beta_max, g, z))
            comparisons.append({
                "gamma": g,
                "zeta": z,
                "lp_optimum": _fmt_rational(row.lp_optimum) if row.lp_optimum is not None else row.status,
                "dim_bound": row.dim_bound,
                "optimal": row.dim_bound == code.k,
            })
        report["lp_bound"] = comparisons
    return report


def cmd_analyze(args) -> int:
    parsed = read_code_file(args.file)
    code = parsed.code
    if isinstance(code, UpdateCode):
        code = code.stored
    report = analyze_code(code, args.r, args.gamma_max, parsed.notes, args.with_bound)
    print(json.dumps(report, indent=2))
    return EXIT_OK


# -- bounds ----------------------------------------------------------------------


def parse_int_list(text: str) -> list[int]:
    """``3``, ``1..7`` (inclusive) or a comma list mixing both."""
    out: list[int] = []
    for part in text.split(","):
        part = part.strip()
        try:
            if ".." in part:
                lo, hi = (int(x) for x in part.split("..", 1))
                if lo > hi:
                    raise CliError("usage", f"empty range {part!r}")
                out.extend(range(lo, hi + 1))
            else:
                out.append(int(part))
        except ValueError:
            raise CliError("usage", f"cannot parse {part!r} as an integer or a..b range") from None
    return out


def parse_pairs(text: str) -> list[tuple[int, int]]:
    """``1:1,0:2`` -> [(1, 1), (0, 2)]."""
    pairs = []
    for part in text.split(","):
        try:
            g, z = part.split(":")
            pairs.append((int(g), int(z)))
        except ValueError:
            raise CliError("usage", f"cannot parse pair {part!r}; expected GAMMA:ZETA") from None
    return pairs


def rows_to_csv(rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for row in rows:
        w.writerow(row.csv_fields())
    return buf.getvalue()


def rows_to_json(rows) -> str:
    out = []
    for row in rows:
        rec = dict(zip(CSV_HEADER, row.csv_fields()))
        for key in ("N", "q", "beta", "r", "gamma", "zeta", "dim_bound"):
            rec[key] = int(rec[key])
        rec["status"] = row.status
        if row.error:
            rec["error"] = row.error
        out.append(rec)
    return json.dumps(out, indent=2) + "\n"


def _validate_single(n, q, r, beta, gamma, zeta):
    try:
        RlrcParams(n, q, r, beta, gamma, zeta)
    except ValueError as exc:
        raise CliError("invalid_params", str(exc)) from None


def sweep_rows(args) -> list[BoundRow]:
    if args.preset:
        n, beta, pairs = PRESETS[args.preset]
        q = args.q if args.q is not None else 2
        r_values = list(range(1, n))
    else:
        for flag in ("n", "q", "beta", "r"):
            if getattr(args, flag) is None:
                raise CliError("usage", f"--{flag} is required unless --preset is given")
        n, q, beta = args.n, args.q, args.beta
        r_values = parse_int_list(args.r)
        pairs = None
    if args.pairs:
        pairs = parse_pairs(args.pairs)
    if pairs is None:
        gammas, zetas = parse_int_list(args.gamma), parse_int_list(args.zeta)
        if len(r_values) == len(gammas) == len(zetas) == 1:
            _validate_single(n, q, r_values[0], beta, gammas[0], zetas[0])
        return bound_sweep(n, q, beta, r_values, gammas, zetas, jobs=args.jobs)
    rows: list[BoundRow] = []
    for g, z in pairs:
        rows += bound_sweep(n, q, beta, r_values, [g], [z], jobs=args.jobs)
    return rows


def cmd_bound(args) -> int:
    rows = sweep_rows(args)
    text = rows_to_csv(rows) if args.format == "csv" else rows_to_json(rows)
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    if args.plot:
        from .plotting import plot_sweep

        try:
            plot_sweep(rows, args.plot)
        except ImportError as exc:  # pragma: no cover - matplotlib is optional
            raise CliError("missing_dependency", f"--plot needs matplotlib: {exc}") from None
    return EXIT_OK


# -- update feasibility ----------------------------------------------------------


def _rational_str(x: Fraction) -> str:
    return _fmt_rational(Fraction(x))


def cmd_update_feasible(args) -> int:
    try:
        p = UpdateParams(args.n, args.k, args.q, args.r, args.beta, args.delta, args.gamma, args.zeta)
    except ValueError as exc:
        raise CliError("invalid_params", str(exc)) from None
    verdict = update_feasible(p)
    out = {
        "verdict": "Feasible" if verdict.feasible else "Infeasible",
        "params": {"N": p.n, "K": p.k, "q": p.q, "r": p.r, "beta": p.beta, "delta": p.delta,
                   "gamma": p.gamma, "zeta": p.zeta},
        "existence_guaranteed": False,
    }
    if verdict.feasible:
        path = Path(args.witness or f"update-witness-N{p.n}-K{p.k}.json")
        witness = {
            "params": out["params"],
            "a": [[_rational_str(v) for v in row] for row in verdict.witness["a"]],
            "c": [[_rational_str(v) for v in row] for row in verdict.witness["c"]],
        }
        path.write_text(json.dumps(witness, indent=2) + "\n")
        out["witness_path"] = str(path)
    print(json.dumps(out, indent=2))
    return EXIT_OK if verdict.feasible else EXIT_INFEASIBLE


# -- catalog ---------------------------------------------------------------------


def _claim_str(claim) -> str:
    return "(" + ",".join(str(x) for x in claim) + ")"


def cmd_catalog(args) -> int:
    if args.action == "list":
        for name, e in entries().items():
            claims = " ".join(_claim_str(c) for c in e.claims) or "-"
            print(f"{name}\t[{e.code.n},{e.code.k}]_q={e.code.q}\tclaims {claims}")
        return EXIT_OK
    if args.name is None:
        raise CliError("usage", f"catalog {args.action} needs a code name")
    try:
        e = get(args.name)
    except KeyError as exc:
        raise CliError("unknown_name", exc.args[0]) from None
    if args.action == "show":
        print(f"name: {e.name}")
        print(f"parameters: N={e.code.n} K={e.code.k} q={e.code.q}")
        print(f"description: {e.provenance}")
        if e.labels:
            print("nodes: " + " ".join(e.labels))
        print("claims (r,beta,gamma,zeta): " + (" ".join(_claim_str(c) for c in e.claims) or "none"))
        print("generator:")
        for row in e.code.G.tolist():
            print("  " + " ".join(str(x) for x in row))
        return EXIT_OK
    if args.path is None:
        raise CliError("usage", "catalog export needs an output path")
    Path(args.path).write_text(format_code(e.code, comment=f"{e.name}: {e.provenance}"))
    return EXIT_OK


# -- entry point -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="lrclp", description="Exact LP bounds for robust locally repairable codes.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    a = sub.add_parser("analyze", help="minimum distance, robustness profile and classical bounds of a code file")
    a.add_argument("file")
    a.add_argument("--r", type=int, required=True)
    a.add_argument("--gamma-max", type=int, default=1)
    a.add_argument("--with-bound", action="store_true", help="compare K with the LP bound at each profile row")
    a.set_defaults(func=cmd_analyze)

    b = sub.add_parser("bound", help="LP bound rows (CSV or JSON)")
    b.add_argument("--n", type=int)
    b.add_argument("--q", type=int)
    b.add_argument("--beta", type=int)
    b.add_argument("--r", help="locality: 3, 1..7 or a comma list")
    b.add_argument("--gamma", default="0")
    b.add_argument("--zeta", default="1")
    b.add_argument("--pairs", help="explicit GAMMA:ZETA pairs instead of the gamma x zeta grid")
    b.add_argument("--preset", choices=sorted(PRESETS), help="beta=3 curves over r=1..N-1 at N=16 or N=8")
    b.add_argument("--format", choices=("csv", "json"), default="csv")
    b.add_argument("--output", help="write the table here instead of stdout")
    b.add_argument("--plot", help="also render dim_bound against r to this image file")
    b.add_argument("--jobs", type=int, default=1)
    b.set_defaults(func=cmd_bound)

    u = sub.add_parser("update-feasible", help="decide the update-efficiency necessary conditions")
    for flag in ("n", "k", "q", "r", "beta", "delta"):
        u.add_argument(f"--{flag}", type=int, required=True)
    u.add_argument("--gamma", type=int)
    u.add_argument("--zeta", type=int)
    u.add_argument("--witness", help="witness JSON path (default ./update-witness-N{N}-K{K}.json)")
    u.set_defaults(func=cmd_update_feasible)

    c = sub.add_parser("catalog", help="built-in codes")
    c.add_argument("action", choices=("list", "show", "export"))
    c.add_argument("name", nargs="?")
    c.add_argument("path", nargs="?")
    c.set_defaults(func=cmd_catalog)
    return ap


def _emit_error(kind: str, message: str, **extra) -> None:
    rec = {"error": kind, "message": message}
    rec.update(extra)
    sys.stderr.write(json.dumps(rec) + "\n")


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except CliError as exc:
        _emit_error(exc.kind, str(exc), **exc.extra)
    except CodeFileError as exc:
        _emit_error("parse", str(exc), line=exc.line)
    except (GuardExceeded, SubsetCapExceeded) as exc:
        _emit_error("guard_exceeded", str(exc))
    except (ValueError, KeyError) as exc:
        _emit_error("invalid_params", str(exc))
    except OSError as exc:
        _emit_error("io", str(exc))
    return EXIT_ERROR


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
