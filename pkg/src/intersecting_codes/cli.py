"""Command-line interface.

Exit codes: 0 success, 2 checked and refuted, 3 budget exhausted, 4 malformed input, 64 bad flags.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path
from typing import Any, Sequence

import numpy as np

from . import bounds, constructions, davenport, expander, search, tables
from .intersecting_checks import is_intersecting_geometric, is_intersecting_supports, is_minimal_code
from .linalg_codes import LinearCode
from .errors import BudgetExceeded, DegenerateCode, InsufficientCoverage
from .finite_field import gf

SCHEMA_VERSION = "1"

EXIT_OK = 0
EXIT_REFUTED = 2
EXIT_BUDGET = 3
EXIT_MALFORMED = 4
EXIT_USAGE = 64


class UsageError(Exception):
    pass


class MalformedFile(ValueError):
    pass


# ---------- matrix files ----------


def parse_matrix_text(text: str) -> tuple[int, np.ndarray]:
    """Header "q k n" then k rows of n integers in [0, q); '#' starts a comment line."""
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise MalformedFile("empty matrix file")
    try:
        header = [int(x) for x in lines[0].split()]
        rows = [[int(x) for x in ln.split()] for ln in lines[1:]]
    except ValueError as exc:
        raise MalformedFile(f"non-integer entry: {exc}") from None
    if len(header) != 3:
        raise MalformedFile("header must be 'q k n'")
    q, k, n = header
    if len(rows) != k or any(len(r) != n for r in rows):
        raise MalformedFile(f"expected {k} rows of {n} entries")
    m = np.array(rows, dtype=np.int64).reshape(k, n)
    if m.size and (m.min() < 0 or m.max() >= q):
        raise MalformedFile(f"entries must lie in [0, {q})")
    return q, m


def read_matrix_file(path: str | Path) -> LinearCode:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise MalformedFile(str(exc)) from None
    q, m = parse_matrix_text(text)
    try:
        return LinearCode(gf(q), m)
    except ValueError as exc:
        raise MalformedFile(str(exc)) from None


def format_matrix(code: LinearCode, comment: str | None = None) -> str:
    out = []
    if comment:
        out.extend(f"# {line}" for line in comment.splitlines())
    out.append(f"{code.q} {code.k} {code.n}")
    out.extend(" ".join(str(int(x)) for x in row) for row in code.gen)
    return "\n".join(out) + "\n"


# ---------- output ----------


def _jsonable(x: Any) -> Any:
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, frozenset, set)):
        items = sorted(x) if isinstance(x, (set, frozenset)) else x
        return [_jsonable(v) for v in items]
    if isinstance(x, np.ndarray):
        return _jsonable(x.tolist())
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, np.floating):
        return float(x)
    return x


def _rows(result: Any) -> list[dict[str, Any]]:
    if isinstance(result, list):
        return result
    return [result]


def _cell(v: Any) -> str:
    if isinstance(v, (dict, list)):
        return json.dumps(v, sort_keys=True)
    if v is None:
        return ""
    if isinstance(v, float):
        return f"{v:.6f}"
    return str(v)


def render(command: str, result: Any, fmt: str) -> str:
    result = _jsonable(result)
    if fmt == "json":
        doc = {"schema_version": SCHEMA_VERSION, "command": command, "result": result}
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"
    rows = _rows(result)
    keys: list[str] = []
    for r in rows:
        keys.extend(k for k in r if k not in keys)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(keys)
        for r in rows:
            w.writerow([_cell(r.get(k)) for k in keys])
        return buf.getvalue()
    cells = [[_cell(r.get(k)) for k in keys] for r in rows]
    widths = [max([len(k)] + [len(c[i]) for c in cells]) for i, k in enumerate(keys)]
    lines = ["  ".join(k.ljust(w) for k, w in zip(keys, widths))]
    lines.extend("  ".join(c.ljust(w) for c, w in zip(row, widths)) for row in cells)
    return "\n".join(line.rstrip() for line in lines) + "\n"


# ---------- commands ----------


def cmd_verify(args) -> tuple[Any, int]:
    code = read_matrix_file(args.file)
    supports = is_intersecting_supports(code)
    try:
        geometric = is_intersecting_geometric(code)
    except DegenerateCode:
        geometric = None
    if geometric is not None and geometric.verdict != supports.verdict:
        raise AssertionError("intersecting verifiers disagree")
    try:
        minimal = is_minimal_code(code).verdict
    except BudgetExceeded:
        # pair scan is quadratic in q^k; the intersecting verdict stands without it
        minimal = None
    result = {
        "q": code.q,
        "k": code.k,
        "n": code.n,
        "d": code.min_distance,
        "intersecting": supports.verdict,
        "intersecting_geometric": None if geometric is None else geometric.verdict,
        "minimal": minimal,
        "witness": None if supports.verdict else [list(w) for w in supports.witness],
    }
    return result, EXIT_OK if supports.verdict else EXIT_REFUTED


def cmd_construct(args) -> tuple[Any, int]:
    kind = args.kind
    if kind in ("rs", "tetra") and (args.k is None or args.q is None):
        raise UsageError(f"{kind} needs --k and --q")
    if kind == "rs":
        n = args.n if args.n is not None else 2 * args.k - 1
        code = constructions.rs_code(gf(args.q), n, args.k)
        label = f"Reed-Solomon [{n},{args.k}] over GF({args.q})"
    elif kind == "tetra":
        code = constructions.sparse_tetrahedron(args.k, args.q)
        label = f"sparse tetrahedron k={args.k} over GF({args.q})"
    elif kind == "concat":
        if not (args.inner and args.outer):
            raise UsageError("concat needs --inner and --outer")
        inner, outer = read_matrix_file(args.inner), read_matrix_file(args.outer)
        code = constructions.concatenate(inner, outer)
        label = f"concatenation of {args.inner} and {args.outer}"
    else:
        if args.name:
            matches = [e for e in constructions.catalogue() if e.name == args.name]
            if not matches:
                raise UsageError(f"no catalogue entry named {args.name}")
            entry = matches[0]
        elif args.q is not None and args.k is not None:
            entry = constructions.catalogue_entry(args.q, args.k)
        else:
            raise UsageError("catalogue needs --name or --q and --k")
        code = entry.code()
        label = f"catalogue {entry.name}"
    return {"label": label, "matrix": format_matrix(code, label), "q": code.q, "k": code.k, "n": code.n}, EXIT_OK


def cmd_bounds(args) -> tuple[Any, int]:
    itable = None
    if args.budget is not None:
        itable = {(args.k, args.q): search.build_entry(args.k, args.q, budget=args.budget, threads=args.threads)}
    return bounds.bound_report(args.k, args.q, itable).as_dict(), EXIT_OK


def cmd_search(args) -> tuple[Any, int]:
    budget = args.budget if args.budget is not None else search.NODE_BUDGET
    if args.base:
        base = read_matrix_file(args.base)
        if args.n is None:
            raise UsageError("randomized extension needs --n")
        code, cert = search.randomized_extend(base, args.n, trials=args.trials, seed=args.seed)
        return cert.as_dict(args.timing), EXIT_OK
    if args.k is None or args.q is None:
        raise UsageError("search needs --k and --q")
    if args.n is None:
        entry = search.build_entry(args.k, args.q, budget=budget, reported=args.reported, threads=args.threads)
        out = entry.as_dict()
        out["certificates"] = [c.as_dict(args.timing) for c in entry.certificates]
        return out, EXIT_OK
    exists, cert = search.exhaustive_exists(args.n, args.k, args.q, budget=budget, threads=args.threads)
    out = cert.as_dict(args.timing)
    out["exists"] = exists
    return out, EXIT_OK


def cmd_davenport(args) -> tuple[Any, int]:
    spec = davenport.GroupSpec(args.p, args.h, args.r)
    budget = args.budget if args.budget is not None else 2 * 10**5
    itable = search.build_itable(args.r + 2, [spec.q], budget=budget, reported=args.reported, threads=args.threads)
    if args.oracle:
        res = davenport.cross_check(spec, itable)
    else:
        res = davenport.d2_weighted(spec, itable)
    return res.as_dict(), EXIT_OK


def cmd_expander(args) -> tuple[Any, int]:
    if args.graph:
        try:
            g = expander.Graph.parse(Path(args.graph).read_text())
        except (OSError, ValueError) as exc:
            raise MalformedFile(str(exc)) from None
        sp = expander.spectrum(g)
        out: dict[str, Any] = {
            "n": g.n,
            "edges": len(g.edges),
            "eigenvalues": list(sp.eigenvalues),
            "lambda": sp.second,
            "regular_degree": g.regular_degree(),
        }
        if g.n <= expander.INTEGRITY_MAX_N:
            val, s = expander.integrity(g)
            out["integrity"] = val
            out["integrity_set"] = sorted(s)
        if g.regular_degree():
            out["spectral_integrity_lower_bound"] = float(expander.spectral_integrity_lower_bound(g))
        return out, EXIT_OK
    if args.q is None:
        raise UsageError("expander needs --q or --graph")
    try:
        t, a = expander.alpha_optimizer(args.q)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return {"q": args.q, "t": t, "alpha": a}, EXIT_OK


def cmd_tables(args) -> tuple[Any, int]:
    if args.which == "2":
        budget = args.budget if args.budget is not None else 2 * 10**5
        return tables.table2(args.kmax, budget=budget, reported=args.reported, threads=args.threads), EXIT_OK
    return tables.TABLES[args.which](), EXIT_OK


COMMANDS = {
    "verify": cmd_verify,
    "construct": cmd_construct,
    "bounds": cmd_bounds,
    "search": cmd_search,
    "davenport": cmd_davenport,
    "expander": cmd_expander,
    "tables": cmd_tables,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=["json", "csv", "table"], default="table")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--budget", type=int, default=None)
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--timing", action="store_true", help="include wall-clock times")

    parser = _Parser(prog="intersecting-codes", description="Intersecting codes: verify, construct, bound, search.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("verify", parents=[common])
    p.add_argument("file")

    p = sub.add_parser("construct", parents=[common])
    p.add_argument("kind", choices=["rs", "tetra", "concat", "catalogue"])
    p.add_argument("--k", type=int)
    p.add_argument("--q", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--inner")
    p.add_argument("--outer")
    p.add_argument("--name")
    p.add_argument("--output", help="write the matrix file here")

    p = sub.add_parser("bounds", parents=[common])
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--q", type=int, required=True)

    p = sub.add_parser("search", parents=[common])
    p.add_argument("--k", type=int)
    p.add_argument("--q", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--base", help="matrix file to extend randomly")
    p.add_argument("--trials", type=int, default=10**5)
    p.add_argument("--reported", action="store_true")

    p = sub.add_parser("davenport", parents=[common])
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--h", type=int, default=1)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--reported", action="store_true")
    p.add_argument("--oracle", action="store_true", help="cross-check with the sequence search")

    p = sub.add_parser("expander", parents=[common])
    p.add_argument("--q", type=int)
    p.add_argument("--graph", help="edge-list file")

    p = sub.add_parser("tables", parents=[common])
    p.add_argument("--which", choices=list(tables.TABLES), required=True)
    p.add_argument("--kmax", type=int, default=5)
    p.add_argument("--reported", action="store_true")
    return parser


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        if args.threads < 1:
            raise UsageError("--threads must be positive")
        if args.budget is not None and args.budget < 0:
            raise UsageError("--budget must be non-negative")
        result, status = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_USAGE
    except MalformedFile as exc:
        print(f"malformed input: {exc}", file=stderr)
        return EXIT_MALFORMED
    except (BudgetExceeded, InsufficientCoverage) as exc:
        print(f"budget exhausted: {exc}", file=stderr)
        return EXIT_BUDGET
    except ValueError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_USAGE
    if args.command == "construct":
        if args.output:
            Path(args.output).write_text(result["matrix"])
        if args.format == "table":
            stdout.write(result["matrix"])
            return status
    stdout.write(render(args.command, result, args.format))
    return status


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
