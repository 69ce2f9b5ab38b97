"""Command-line front end: ``stratlab <command> [options]``.

Exit codes: 0 success, 2 usage error, 3 domain error, 4 internal contradiction.
Errors are a single line on stderr of the form ``error: <kind>: <message>``.
"""
from __future__ import annotations

import argparse
import sys

from . import render
from .classifier import DEFAULT_LEDGER, FactsLedger, classify, explain
from .eo_seq import a_number, enumerate_elementary, eo_dimension, p_rank, to_seq
from .errors import Contradiction, NuCollision, StratError
from .final_type import es_decompose, es_sum, final_type_of, minimal_sequence
from .newton import enumerate_symmetric_np, to_np
from .slope import first_newton_slope, slope_trace
from .weyl import CONVENTIONS, closure_poset, poset_to_dot

SCHEMA = "stratlab/1"
FORMATS = ("table", "json", "csv", "dot", "markdown")
EXIT_USAGE, EXIT_DOMAIN, EXIT_CONTRADICTION = 2, 3, 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _frac(x) -> str:
    return f"{x.numerator}/{x.denominator}"


def _json(obj: dict) -> str:
    return render.dump_json({"schema": SCHEMA, **obj})


def _need(args, *names):
    for n in names:
        if getattr(args, n) is None:
            raise UsageError(f"--{n.replace('_', '-')} is required for {args.command}")


def _allow(args, *formats):
    if args.format not in formats:
        raise UsageError(f"--format {args.format} is not available for {args.command} (use {', '.join(formats)})")


def _csv(header, rows) -> str:
    def q(v):
        s = str(v)
        return f'"{s}"' if "," in s or " " in s else s

    return "\n".join([",".join(header)] + [",".join(q(v) for v in r) for r in rows]) + "\n"


def _md(header, rows) -> str:
    lines = ["| " + " | ".join(header) + " |", "|" + "---|" * len(header)]
    lines += ["| " + " | ".join(str(v) for v in r) + " |" for r in rows]
    return "\n".join(lines) + "\n"


def _grid(header, rows) -> str:
    rows = [[str(v) for v in r] for r in rows]
    widths = [max(len(h), *(len(r[i]) for r in rows)) if rows else len(h) for i, h in enumerate(header)]
    fmt = lambda r: "  ".join(v.ljust(w) for v, w in zip(r, widths)).rstrip()
    return "\n".join([fmt(header)] + [fmt(r) for r in rows]) + "\n"


def _tabular(args, header, rows, key) -> str:
    _allow(args, "table", "json", "csv", "markdown")
    if args.format == "json":
        return _json({key: [dict(zip(header, r)) for r in rows]})
    if args.format == "csv":
        return _csv(header, rows)
    if args.format == "markdown":
        return _md(header, rows)
    return _grid(header, rows)


# -- commands ----------------------------------------------------------------


def cmd_eo(args) -> str:
    if args.phi is not None:
        seqs = [to_seq(args.phi[0])]
    else:
        _need(args, "g")
        seqs = enumerate_elementary(args.g, args.p_rank)
    header = ["phi", "p_rank", "a_number", "dimension", "first_slope", "final_type"]
    rows = [
        [p.format(), p_rank(p), a_number(p), eo_dimension(p), _frac(first_newton_slope(p)), str(final_type_of(p))]
        for p in seqs
    ]
    return _tabular(args, header, rows, "strata")


def cmd_np(args) -> str:
    if args.np is not None:
        polys = [to_np(args.np)]
    else:
        _need(args, "g")
        polys = enumerate_symmetric_np(args.g, args.p_rank)
    if args.format == "json":
        return _json({"polygons": [xi.to_json() for xi in polys]})
    header = ["np", "dimension", "p_rank", "first_slope", "minimal"]
    rows = []
    for xi in polys:
        j = xi.to_json()
        minimal = minimal_sequence(xi).format() if xi.is_symmetric else "-"
        rows.append([j["np"], j["dimension"], j["p_rank"], j["first_slope"], minimal])
    return _tabular(args, header, rows, "polygons")


def cmd_closure(args) -> str:
    _need(args, "g")
    _allow(args, "table", "json", "dot")
    poset = closure_poset(args.g, args.p_rank, args.convention)
    if args.format == "dot":
        return poset_to_dot(poset)
    if args.format == "json":
        return _json(
            {
                "g": poset.g,
                "p_rank": poset.prank,
                "convention": poset.convention,
                "nodes": [p.format() for p in poset.nodes],
                "relation": [[int(x) for x in row] for row in poset.relation],
                "hasse_edges": [[a.format(), b.format()] for a, b in poset.hasse_edges],
            }
        )
    lines = [f"{len(poset.nodes)} strata, {len(poset.hasse_edges)} covering relations"]
    lines += [f"{a} < {b}" for a, b in poset.hasse_edges]
    return "\n".join(lines) + "\n"


def cmd_slope(args) -> str:
    _need(args, "phi")
    _allow(args, "table", "json")
    tr = slope_trace(args.phi[0])
    if args.format == "json":
        return _json(
            {
                "phi": to_seq(args.phi[0]).format(),
                "lambda": _frac(tr.lam),
                "psi": list(tr.psi.values),
                "Phi": list(tr.phi_map),
                "D": sorted(tr.D),
                "C": sorted(tr.C),
            }
        )
    if args.trace:
        return tr.format() + "\n"
    return _frac(tr.lam) + "\n"


def cmd_sum(args) -> str:
    _need(args, "phi")
    _allow(args, "table", "json")
    seqs = [to_seq(p) for p in args.phi]
    res = es_sum(*seqs)
    if args.format == "json":
        return _json({"summands": [s.format() for s in seqs], "sum": res.format()})
    return " ⊕ ".join(str(s) for s in seqs) + f" = {res}\n"


def cmd_decompose(args) -> str:
    _need(args, "phi")
    _allow(args, "table", "json")
    d = es_decompose(args.phi[0])
    if args.format == "json":
        return _json(
            {
                "phi": d.target.format(),
                "factors": [f.format() for f in d.factors],
                "indecomposable": d.indecomposable,
                "alternatives": [[f.format() for f in alt] for alt in d.alternatives],
            }
        )
    return d.format() + "\n"


def cmd_minseq(args) -> str:
    _need(args, "np")
    _allow(args, "table", "json")
    xi = to_np(args.np)
    phi = minimal_sequence(xi)
    if args.format == "json":
        return _json({"np": xi.format(), "minimal": phi.format()})
    return f"{xi.format()} → {phi}\n"


def _ledger(args):
    if args.no_ledger:
        return None
    if args.ledger:
        return FactsLedger.load(args.ledger)
    return DEFAULT_LEDGER


def cmd_classify(args) -> str:
    _need(args, "g")
    m = classify(args.g, _ledger(args))
    if args.phi is not None or args.np is not None:
        _need(args, "phi", "np")
        _allow(args, "table", "json")
        firings = explain(m, args.phi[0], args.np)
        status = m.status(args.phi[0], args.np)
        if args.format == "json":
            return _json(
                {
                    "phi": to_seq(args.phi[0]).format(),
                    "np": to_np(args.np).format(),
                    "status": status.value,
                    "explanation": [f.as_dict() for f in firings],
                }
            )
        lines = [f"{status.value}"] + [f"  {f.format()}" for f in firings]
        return "\n".join(lines) + "\n"
    _allow(args, "table", "json", "csv", "markdown")
    if args.format == "json":
        return render.dump_json(m.to_dict())
    if args.format == "csv":
        return m.to_csv()
    if args.format == "markdown":
        return m.to_markdown()
    return m.to_table()


def cmd_goldens(args) -> str:
    paths = render.emit_goldens(args.out, _ledger(args))
    return "".join(f"{p}\n" for p in paths)


COMMANDS = {
    "eo": (cmd_eo, "list EO strata with their invariants"),
    "np": (cmd_np, "list symmetric Newton polygons"),
    "closure": (cmd_closure, "closure relations between EO strata"),
    "slope": (cmd_slope, "first Newton slope of an EO stratum"),
    "sum": (cmd_sum, "elementary sequence of a direct sum"),
    "decompose": (cmd_decompose, "factor an elementary sequence into ⊕-indecomposables"),
    "minseq": (cmd_minseq, "elementary sequence of the minimal p-divisible group"),
    "classify": (cmd_classify, "intersection matrix of EO and Newton strata"),
    "goldens": (cmd_goldens, "write the reference tables, figure and matrices"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="stratlab", description="EO / Newton stratum combinatorics")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    for name, (_, help_) in COMMANDS.items():
        p = sub.add_parser(name, help=help_)
        p.add_argument("--g", type=int)
        p.add_argument("--p-rank", type=int, dest="p_rank")
        p.add_argument("--phi", action="append", help="elementary sequence, e.g. 0,1,1,2 (repeat for sum)")
        p.add_argument("--np", help='Newton polygon, e.g. "[2,1] + 2[1,1] + [1,2]"')
        p.add_argument("--format", choices=FORMATS, default="table")
        p.add_argument("--ledger", help="JSON facts ledger (replaces the built-in one)")
        p.add_argument("--no-ledger", action="store_true", dest="no_ledger")
        p.add_argument("--convention", choices=CONVENTIONS, default="standard")
        p.add_argument("--trace", action="store_true")
        if name == "goldens":
            p.add_argument("--out", required=True)
    return parser


def _fail(code: int, kind: str, msg: str) -> int:
    msg = " ".join(str(msg).split())
    print(f"error: {kind}: {msg}", file=sys.stderr)
    return code


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        if args.command is None:
            raise UsageError("a command is required: " + ", ".join(COMMANDS))
        if args.ledger and args.no_ledger:
            raise UsageError("--ledger and --no-ledger are mutually exclusive")
        if args.phi is not None and len(args.phi) > 1 and args.command != "sum":
            raise UsageError("--phi given more than once")
        text = COMMANDS[args.command][0](args)
    except UsageError as exc:
        return _fail(EXIT_USAGE, "usage", exc)
    except StratError as exc:
        return _fail(EXIT_DOMAIN, type(exc).__name__, exc)
    except OSError as exc:
        return _fail(EXIT_DOMAIN, "io", exc)
    except (Contradiction, NuCollision) as exc:
        return _fail(EXIT_CONTRADICTION, type(exc).__name__, exc)
    out.write(text)
    return 0


def main() -> None:
    sys.exit(run())
