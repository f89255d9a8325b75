"""Command-line frontend: graph expressions, subcommands and output formats."""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from dataclasses import dataclass
from fractions import Fraction

from .chains import euler_characteristic, format_basis, homology_dims, snapshot
from .digraph import Digraph, box_pow, cartesian_product, family, join, join_pow, parse_digraph
from .errors import ParseError, PathLapError
from .formulas import (
    FAMILIES,
    as_multiset,
    cube_spectrum,
    is_hodge_isospectral,
    join_power_spectrum,
    lambda1_bound,
    power_spectrum_canonical,
    power_spectrum_normalized,
    torus_spectrum,
    verify_family,
)
from .hodge import CANONICAL, NORMALIZED, Weight, hodge_spectrum
from .multiset import format_spectrum, format_value, spectrum_records

# ---------------------------------------------------------------- expressions

ATOMS_BARE = ("I", "T")
ATOMS_INT = ("C", "D", "K", "S")
COMBINATORS = {"box": "graph", "join": "graph", "pow": "int", "jpow": "int"}


@dataclass(frozen=True)
class Atom:
    name: str
    arg: int | None = None


@dataclass(frozen=True)
class FileAtom:
    path: str


@dataclass(frozen=True)
class Combine:
    op: str
    left: object
    right: object


class _Parser:
    def __init__(self, text):
        self.text = text
        self.pos = 0

    def error(self, msg, pos=None):
        pos = self.pos if pos is None else pos
        offset = len(self.text[:pos].encode())
        return ParseError(msg, f"byte {offset}")

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch):
        if self.peek() != ch:
            found = self.peek() or "end of input"
            raise self.error(f"expected {ch!r}, found {found!r}")
        self.pos += 1

    def name(self):
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and (self.text[self.pos].isalnum() or self.text[self.pos] == "_"):
            self.pos += 1
        return self.text[start:self.pos], start

    def integer(self):
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise self.error("expected an integer")
        value = int(self.text[start:self.pos])
        if value < 1:
            raise self.error("repetition count must be >= 1", start)
        return value

    def path(self):
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos] not in ",)":
            self.pos += 1
        path = self.text[start:self.pos].strip()
        if not path:
            raise self.error("empty file path", start)
        return path

    def expr(self):
        word, start = self.name()
        if not word:
            found = self.peek() or "end of input"
            raise self.error(f"expected a graph expression, found {found!r}")
        if word == "file":
            self.expect(":")
            return FileAtom(self.path())
        if word in ATOMS_BARE:
            return Atom(word)
        if word in ATOMS_INT:
            self.expect("(")
            n = self.integer()
            self.expect(")")
            return Atom(word, n)
        if word in COMBINATORS:
            self.expect("(")
            left = self.expr()
            self.expect(",")
            right = self.expr() if COMBINATORS[word] == "graph" else self.integer()
            self.expect(")")
            return Combine(word, left, right)
        raise self.error(f"unknown atom {word!r}", start)


def parse_expr(text: str):
    """Parse a graph expression such as ``box(T, pow(I, 2))`` into a tree."""
    p = _Parser(text)
    tree = p.expr()
    p.skip()
    if p.pos != len(text):
        raise p.error(f"unexpected trailing input {text[p.pos:]!r}")
    return tree


def build(tree) -> Digraph:
    """Evaluate an expression tree to a digraph."""
    if isinstance(tree, FileAtom):
        with open(tree.path, encoding="utf-8") as fh:
            return parse_digraph(fh.read())
    if isinstance(tree, Atom):
        if tree.name == "C" and tree.arg < 3:
            raise ParseError("C(n) needs n >= 3")
        return family(tree.name) if tree.arg is None else family(tree.name, tree.arg)
    left = build(tree.left)
    if tree.op == "box":
        return cartesian_product(left, build(tree.right))
    if tree.op == "join":
        return join(left, build(tree.right))
    if tree.op == "pow":
        return box_pow(left, tree.right)
    return join_pow(left, tree.right)


def digraph_from_expr(text: str) -> Digraph:
    return build(parse_expr(text))


def parse_weight(text: str) -> Weight:
    if text in ("canonical", "normalized"):
        return CANONICAL if text == "canonical" else NORMALIZED
    try:
        return Weight.explicit(Fraction(x.strip()) for x in text.split(","))
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad weight list {text!r}: {exc}") from None


# ---------------------------------------------------------------- output

class Output:
    """Collects records and renders them as a table, JSON or CSV."""

    def __init__(self, fmt, stream):
        self.fmt = fmt
        self.stream = stream

    def emit(self, records, fields, summary=None, text=None):
        if self.fmt == "json":
            doc = {"records": records}
            if summary:
                doc.update(summary)
            self.stream.write(json.dumps(doc, sort_keys=True) + "\n")
        elif self.fmt == "csv":
            buf = io.StringIO()
            w = csv.DictWriter(buf, fieldnames=fields, extrasaction="ignore", lineterminator="\n")
            w.writeheader()
            w.writerows(records)
            self.stream.write(buf.getvalue())
        else:
            if text is None:
                text = _table(records, fields)
            self.stream.write(text)
            if summary:
                for k, v in summary.items():
                    self.stream.write(f"{k}: {v}\n")


def _table(records, fields):
    rows = [[str(r.get(f, "")) for f in fields] for r in records]
    widths = [max([len(f)] + [len(r[i]) for r in rows]) for i, f in enumerate(fields)]
    lines = ["  ".join(f.ljust(w) for f, w in zip(fields, widths)).rstrip()]
    lines += ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in rows]
    return "\n".join(lines) + "\n"


SPECTRUM_FIELDS = ["value", "multiplicity", "exact"]


def _emit_spectrum(out, spec, summary=None):
    out.emit(spectrum_records(spec), SPECTRUM_FIELDS, summary, text=format_spectrum(spec) + "\n")


# ---------------------------------------------------------------- commands

def cmd_omega(args, out):
    g = digraph_from_expr(args.expr)
    snap = snapshot(g)
    records = [{"degree": p, "dim": snap.dim(p)} for p in range(args.max_p + 1)]
    out.emit(records, ["degree", "dim"])
    if args.dump_basis and out.fmt == "table":
        for p in range(args.max_p + 1):
            for line in format_basis(snap.omega(p), g.labels):
                out.stream.write(f"Omega_{p}: {line}\n")
    return 0


def cmd_homology(args, out):
    g = digraph_from_expr(args.expr)
    betti = homology_dims(g, args.max_p)
    records = [{"degree": p, "betti": b} for p, b in enumerate(betti)]
    out.emit(records, ["degree", "betti"], {"euler_characteristic": euler_characteristic(g)})
    return 0


def cmd_spectrum(args, out):
    g = digraph_from_expr(args.expr)
    w = parse_weight(args.weight)
    spec = hodge_spectrum(g, args.p, w, args.op, args.augmented)
    _emit_spectrum(out, spec)
    return 0


def cmd_closed_form(args, out):
    fam = args.family
    if fam == "cube":
        spec = cube_spectrum(args.n, args.p)
    elif fam == "torus":
        spec = torus_spectrum(args.n, args.p)
    elif fam in ("simplex", "sphere", "join"):
        m = {"simplex": 1, "sphere": 2}.get(fam, args.m)
        spec = join_power_spectrum(m, args.n, args.p + 1)
    else:
        base = digraph_from_expr(args.base)
        if args.normalized:
            spec = power_spectrum_normalized(base, args.n, args.p)
        else:
            spec = power_spectrum_canonical(base, args.n, args.p)
    tag = getattr(spec, "provenance", f"power pipeline n={args.n} p={args.p}")
    _emit_spectrum(out, as_multiset(spec), {"provenance": tag})
    return 0


REPORT_FIELDS = ["family", "n", "p", "closed_entries", "numeric_entries",
                 "max_deviation", "multiplicity_mismatches", "status"]


def cmd_verify(args, out):
    rows = verify_family(args.family, args.max_n, args.max_p, args.m)
    records = [{
        "family": r.family, "n": r.n, "p": r.p,
        "closed_entries": r.closed_entries, "numeric_entries": r.numeric_entries,
        "max_deviation": f"{r.max_deviation:.3e}",
        "multiplicity_mismatches": r.multiplicity_mismatches,
        "status": "OK" if r.ok else "MISMATCH",
    } for r in rows]
    out.emit(records, REPORT_FIELDS)
    return 0 if all(r.ok for r in rows) else 1


def cmd_bound(args, out):
    g = digraph_from_expr(args.expr)
    rep = lambda1_bound(g)
    rec = {"bound": rep.bound, "vertex_term": rep.vertex_term, "motif_term": rep.motif_term,
           "corollary_applies": rep.corollary_applies,
           "corollary_bound": "" if rep.corollary_bound is None else rep.corollary_bound}
    fields = list(rec)
    if args.check:
        lmax = hodge_spectrum(g, 1).max
        rec["lambda_max"] = format_value(0 if lmax is None else lmax)
        fields.append("lambda_max")
    out.emit([rec], fields)
    return 0


def cmd_isospectral(args, out):
    g1, g2 = digraph_from_expr(args.expr1), digraph_from_expr(args.expr2)
    verdict = is_hodge_isospectral(g1, g2, args.max_p)
    records = [{"degree": p,
                "first": format_spectrum(hodge_spectrum(g1, p)),
                "second": format_spectrum(hodge_spectrum(g2, p))}
               for p in range(args.max_p + 1)]
    out.emit(records, ["degree", "first", "second"], {"isospectral": str(verdict).lower()})
    return 0


def make_parser():
    parser = argparse.ArgumentParser(prog="pathlap", description="Path homology and Hodge spectra of digraphs.")
    parser.add_argument("--format", choices=["table", "json", "csv"], default="table")
    sub = parser.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("omega", help="dimensions of the Omega spaces")
    p.add_argument("expr")
    p.add_argument("--max-p", type=int, default=3)
    p.add_argument("--dump-basis", action="store_true")
    p.set_defaults(func=cmd_omega)

    p = sub.add_parser("homology", help="Betti numbers and Euler characteristic")
    p.add_argument("expr")
    p.add_argument("--max-p", type=int, default=3)
    p.set_defaults(func=cmd_homology)

    p = sub.add_parser("spectrum", help="eigenvalues of a Hodge Laplacian")
    p.add_argument("expr")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--weight", default="canonical", help="canonical, normalized or a list a0,a1,...")
    p.add_argument("--augmented", action="store_true")
    p.add_argument("--op", choices=["delta", "k", "l"], default="delta")
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("closed-form", help="spectrum predicted by a closed formula")
    p.add_argument("family", choices=list(FAMILIES) + ["power"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--m", type=int, default=2, help="part size for the join family")
    p.add_argument("--base", default="I", help="base digraph for the power family")
    p.add_argument("--normalized", action="store_true")
    p.set_defaults(func=cmd_closed_form)

    p = sub.add_parser("verify", help="compare closed forms with the eigensolver")
    p.add_argument("family", choices=FAMILIES)
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--max-p", type=int)
    p.add_argument("--m", type=int, default=2)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bound", help="upper bound for the top eigenvalue in degree 1")
    p.add_argument("expr")
    p.add_argument("--check", action="store_true")
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("isospectral", help="compare Hodge spectra of two digraphs")
    p.add_argument("expr1")
    p.add_argument("expr2")
    p.add_argument("--max-p", type=int, default=3)
    p.set_defaults(func=cmd_isospectral)
    return parser


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    args = make_parser().parse_args(argv)
    out = Output(args.format, stdout)
    try:
        return args.func(args, out)
    except PathLapError as exc:
        stderr.write(f"pathlap: {exc}\n")
        return exc.exit_code
    except (ValueError, OSError) as exc:
        stderr.write(f"pathlap: {exc}\n")
        return 1


def main(argv=None):
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
