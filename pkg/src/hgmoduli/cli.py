"""Command line interface.

Exit codes: 0 success, 1 bad arguments, 2 internal consistency failure,
3 corrupted cache file.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .cache import (
    ENV_VAR,
    MemoStore,
    component_to_json,
    default_cache_path,
    load_store,
    poly_to_json,
    save_store,
)
from .errors import BadRange, HGError
from .exactring import format_lpoly
from .modulirec import config_class, hodge_report
from .quotclasses import mor_class, strom_cell_counts
from .symq import format_terms, to_h_basis

OUTPUTS = ("class", "betti", "epoly", "poincare", "euler", "all")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _nonneg(text):
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {text}")
    return value


def _add_cache_flags(p):
    p.add_argument("--cache", metavar="PATH", help=f"cache file (default: ${ENV_VAR} or ~/.cache)")
    p.add_argument("--no-cache", action="store_true", help="do not read or write the cache file")


def _add_format(p):
    p.add_argument("--format", choices=("json", "text"), default="text")


def build_parser():
    parser = _Parser(prog="hgmoduli", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("compute", help="HG-characteristic and Betti numbers of M̄_0,n(G(r,k),d)")
    for name in ("r", "k", "n", "d"):
        p.add_argument(f"--{name}", type=int, required=True)
    p.add_argument("--output", choices=OUTPUTS, default="all")
    p.add_argument("--basis", choices=("p", "h"), default="p")
    _add_format(p)
    _add_cache_flags(p)

    p = sub.add_parser("quot", help="cell counts of the Quot scheme compactification")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--delta", type=int, required=True)
    _add_format(p)

    p = sub.add_parser("mor", help="class of Mor_d(P^1, G(r,k))")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    _add_format(p)

    p = sub.add_parser("config", help="equivariant class of F(P^1, n)")
    p.add_argument("--n", type=_nonneg, required=True)
    _add_format(p)

    p = sub.add_parser("selfcheck", help="run the acceptance checks")
    _add_cache_flags(p)

    p = sub.add_parser("cache", help="inspect or clear the cache file")
    p.add_argument("action", choices=("info", "clear", "path"))
    p.add_argument("--cache", metavar="PATH")
    return parser


# -- report rendering --------------------------------------------------------

def _selected(output):
    return OUTPUTS[:-1] if output == "all" else (output,)


def _class_items(report, basis):
    return report.p_basis if basis == "p" else report.h_basis


def report_to_json(report, output="all", basis="p"):
    doc = {"r": report.r, "k": report.k, "n": report.n, "d": report.d, "dimension": report.dimension}
    for field in _selected(output):
        if field == "class":
            doc["class"] = {"basis": basis, "terms": component_to_json(_class_items(report, basis))}
            doc["rank"] = poly_to_json(report.rank)
        elif field == "betti":
            doc["betti"] = list(report.betti)
        elif field == "epoly":
            doc["epoly"] = [[i, c] for i, c in report.e_poly]
        elif field == "poincare":
            doc["poincare"] = list(report.poincare)
        elif field == "euler":
            doc["euler"] = report.euler
    return doc


def format_epoly(e_poly):
    if not e_poly:
        return "0"
    chunks = []
    for i, c in sorted(e_poly, reverse=True):
        mono = "" if i == 0 else ("tu" if i == 1 else f"t^{i}u^{i}")
        coeff = str(c) if (c != 1 or not mono) else ""
        chunks.append(coeff + mono)
    return " + ".join(chunks)


def format_poincare(betti):
    chunks = []
    for i in range(len(betti) - 1, -1, -1):
        c = betti[i]
        if c:
            mono = "" if i == 0 else ("t" if i == 1 else f"t^{i}")
            chunks.append((str(c) if (c != 1 or not mono) else "") + mono)
    return " + ".join(chunks) if chunks else "0"


def report_to_text(report, output="all", basis="p"):
    lines = []
    if output == "all":
        lines.append(f"dimension: {'empty' if report.dimension is None else report.dimension}")
    for field in _selected(output):
        if field == "class":
            lines.append(f"class: {format_terms(_class_items(report, basis).items(), basis)}")
            lines.append(f"rank: {format_lpoly(report.rank)}")
        elif field == "betti":
            lines.append("b: " + " ".join(str(b) for b in report.betti) if report.betti else "b:")
        elif field == "epoly":
            lines.append(f"E: {format_epoly(report.e_poly)}")
        elif field == "poincare":
            lines.append(f"P: {format_poincare(report.poincare)}")
        elif field == "euler":
            lines.append(f"euler: {report.euler}")
    return "\n".join(lines)


def _dump(doc):
    return json.dumps(doc, sort_keys=True, separators=(",", ":"))


# -- commands ----------------------------------------------------------------

def _open_store(args):
    if getattr(args, "no_cache", False):
        return MemoStore(), None
    path = args.cache or default_cache_path()
    return load_store(path), path


def _close_store(store, path):
    if path is not None and store.dirty:
        save_store(store, path)


def cmd_compute(args, out):
    if not 1 <= args.r <= args.k - 1:
        raise BadRange(f"need 1 <= r <= k-1, got r={args.r}, k={args.k}")
    if args.n < 0 or args.d < 0:
        raise BadRange("n and d must be nonnegative")
    store, path = _open_store(args)
    report = hodge_report(args.r, args.k, args.n, args.d, store)
    _close_store(store, path)
    if args.format == "json":
        out.write(_dump(report_to_json(report, args.output, args.basis)) + "\n")
    else:
        out.write(report_to_text(report, args.output, args.basis) + "\n")
    return 0


def cmd_quot(args, out):
    cells = strom_cell_counts(args.r, args.k, args.delta)
    if args.format == "json":
        out.write(_dump({"counts": list(cells.counts), "delta": cells.delta, "k": args.k, "r": args.r}) + "\n")
    else:
        out.write(" ".join(str(c) for c in cells.counts) + "\n")
    return 0


def cmd_mor(args, out):
    poly = mor_class(args.r, args.k, args.d)
    if args.format == "json":
        out.write(_dump({"d": args.d, "k": args.k, "poly": poly_to_json(poly), "r": args.r}) + "\n")
    else:
        out.write(format_lpoly(poly) + "\n")
    return 0


def cmd_config(args, out):
    series = config_class(args.n)
    p_comp = series.component(args.n, 0)
    h_comp = {mu: c for (mu, d), c in to_h_basis(series.component_series(args.n, 0)).items()}
    if args.format == "json":
        doc = {"h": component_to_json(h_comp), "n": args.n, "p": component_to_json(p_comp)}
        out.write(_dump(doc) + "\n")
    else:
        out.write(f"p: {format_terms(p_comp.items(), 'p')}\n")
        out.write(f"h: {format_terms(h_comp.items(), 'h')}\n")
    return 0


def cmd_selfcheck(args, out):
    from .acceptance import run_checks

    store, path = _open_store(args)
    ok = run_checks(out, store=store)
    _close_store(store, path)
    return 0 if ok else 2


def cmd_cache(args, out):
    path = args.cache or default_cache_path()
    if args.action == "path":
        out.write(path + "\n")
    elif args.action == "clear":
        if os.path.exists(path):
            os.remove(path)
        out.write(f"removed {path}\n")
    else:
        store = load_store(path)
        out.write(f"{path}: {len(store)} entries\n")
    return 0


COMMANDS = {
    "compute": cmd_compute,
    "quot": cmd_quot,
    "mor": cmd_mor,
    "config": cmd_config,
    "selfcheck": cmd_selfcheck,
    "cache": cmd_cache,
}


def main(argv=None, out=None):
    out = sys.stdout if out is None else out
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args, out)
    except HGError as exc:
        sys.stderr.write(f"hgmoduli: {type(exc).__name__}: {exc}\n")
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
