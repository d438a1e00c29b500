"""The ``mph`` command line front end."""
import argparse
import json
import logging
import os
import sys
import time

from . import __version__
from . import filtration, frames, hilbert, onepar, presentation, render, strata
from .algebra import CoordinatePrime, Field, FieldError, fmt_degree, leq, parse_degree, parse_degrees
from .filtration import ParseError, ValidationError
from .frames import InvariantError

SCHEMA = "mph-report/1"
EXIT_OK, EXIT_INPUT, EXIT_INVARIANT = 0, 2, 3

log = logging.getLogger("mph")


class UsageError(ValueError):
    pass


# ---------------------------------------------------------------- inputs

def detect_format(text):
    """'mfsc' or 'gpres', from the first directive after r/field."""
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head = line.split()[0]
        if head == "simplex":
            return "mfsc"
        if head in ("gens", "rel"):
            return "gpres"
    return "mfsc"


class Source:
    """A parsed input: a complex (with homology index) or a presentation."""

    def __init__(self, path, field=None, index=1, box=None):
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
        self.path = path
        self.name = os.path.basename(path)
        self.kind = detect_format(text)
        self.index = index
        self.K = self.P = None
        if self.kind == "mfsc":
            self.K = filtration.parse(text)
            if field is not None:
                self.K.field = field
            self.field = self.K.field
            self.r = self.K.r
            self.s = filtration.stabilization_degree(self.K)
        else:
            self.P = presentation.parse(text, field)
            self.field = self.P.field
            self.r = self.P.r
            self.s = self.P.bounding_degree()
        self.box = self.s
        if box is not None:
            if len(box) != self.r:
                raise UsageError("--box %s has %d coordinates, input has r=%d" % (fmt_degree(box), len(box), self.r))
            if not leq(self.s, box):
                raise UsageError("--box %s does not contain the stabilization degree %s"
                                 % (fmt_degree(box), fmt_degree(self.s)))
            self.box = tuple(box)
        self._frame = None

    def describe(self):
        if self.kind == "mfsc":
            return "H_%d of %s" % (self.index, self.name)
        return "module presented by %s" % self.name

    def frame(self):
        if self._frame is None:
            if self.kind == "mfsc":
                self._frame = frames.homology_frame(self.K, self.index, top=self.box).validate()
            else:
                self._frame = frames.frame_of_presentation(self.P, self.box).validate()
        return self._frame

    def presentation(self):
        """Minimal presentation of the module (computed from the frame)."""
        return frames.minimal_presentation(self.frame())


# ---------------------------------------------------------------- commands

def cmd_homology(src, args):
    M = src.frame()
    P = frames.minimal_presentation(M)
    summands, _ = presentation.split(P, M)
    gens, rels, mat = presentation.canonical_form(P)
    data = {
        "presentation": {"gens": [list(g) for g in P.gen_degrees], "rels": [list(d) for d in P.rel_degrees],
                         "matrix": P.matrix_strings(), "minimal": P.is_minimal()},
        "canonical": {"gens": [list(g) for g in gens], "rels": [list(d) for d in rels], "matrix": mat},
        "decomposition": {"text": presentation.describe_splitting(summands),
                          "summands": [s.to_json() for s in summands]},
    }
    lines = ["generators: %s" % _degs(P.gen_degrees), "relations: %s" % _degs(P.rel_degrees), "matrix:"]
    lines += _matrix_lines(P.matrix_strings())
    lines.append("decomposition: %s" % data["decomposition"]["text"])
    for s in summands:
        if s.cyclic and not s.free:
            lines.append("  %s: born %s, dies at {%s}" % (s.describe(), fmt_degree(s.gen_degrees[0]),
                                                        ", ".join(fmt_degree(d) for d in s.death_degrees)))
    return data, lines, None


def cmd_hilbert(src, args):
    M = src.frame()
    rep = hilbert.hilbert_report(M)
    P = rep["numerator"]
    data = {"hf": rep["hf"].to_json(), "numerator": P.to_json(), "series": hilbert.series_str(P),
            "rank": rep["rank"], "polynomial": rep["polynomial"].to_json()}
    lines = ["Hilbert function on the box %s:" % fmt_degree(M.top)]
    lines += _hf_lines(rep["hf"])
    lines += ["numerator: %s" % P, "series: %s" % data["series"], "rank: %d" % rep["rank"],
              "Hilbert polynomial: HP(n) = %s for n >= %d" % (rep["polynomial"], rep["polynomial"].n0)]
    if "decomposition" in rep:
        D = rep["decomposition"]
        data["decomposition"] = D.to_json()
        lines.append("decomposition: %s" % D)
    svg = None
    if args.format == "svg":
        if M.r != 2:
            raise UsageError("svg output of the Hilbert function needs r = 2")
        svg = render.hf_svg(rep["hf"], tuple(k + 2 for k in M.top))
    return data, lines, svg


def cmd_ass(src, args):
    M = src.frame()
    ass = strata.associated_primes(M)
    data = {"ass": ass.to_json(), "minimal": [str(p) for p in ass.minimal()]}
    lines = ["Ass: %s" % ass, "minimal: %s" % ", ".join(str(p) for p in ass.minimal())]
    if src.kind == "mfsc":
        a_c, a_h, case = strata.ass_via_cokernel(src.K, src.index, top=src.box)
        data["via_cokernel"] = {"ass": a_c.to_json(), "case": case}
        lines.append("Ass(coker d_%d): %s (%s)" % (src.index + 1, a_c, case))
    svg = None
    if args.format == "svg":
        svg = render.strata_svg(strata.support_shape(ass), [], _extent(src))
    return data, lines, svg


def cmd_strata(src, args):
    M = src.frame()
    rep = strata.stratification_report(M)
    data = {
        "ass": rep["ass"].to_json(),
        "minimal": [str(p) for p in rep["minimal"]],
        "chains": [[str(p) for p in c] for c in rep["chains"]],
        "support_shape": rep["shape"].to_json(),
        "elements": [e.to_json() for e in rep["elements"]],
        "cp_ranks": {str(p): k for p, k in rep["cp_ranks"].items()},
    }
    lines = ["Ass: %s" % rep["ass"], "support shape: %s" % rep["shape"], "chains:"]
    lines += ["  " + " ⊂ ".join(str(p) for p in c) for c in rep["chains"]]
    lines.append("elements:")
    lines += ["  " + e.describe() for e in rep["elements"]]
    if rep["cp_ranks"]:
        lines.append("c_p-ranks: " + ", ".join("%s: %d" % (p, k) for p, k in rep["cp_ranks"].items()))
    svg = None
    if args.format == "svg":
        svg = render.strata_svg(rep["shape"], rep["chains"], _extent(src))
    return data, lines, svg


def cmd_cprank(src, args):
    M = src.frame()
    try:
        prime = CoordinatePrime.parse(args.prime, src.r)
    except ValueError as exc:
        raise UsageError(str(exc))
    if not prime.vars:
        raise UsageError("--prime must name at least one variable")
    L = strata.local_cohomology_H0(M, prime)
    k = strata.cp_rank(M, prime)
    num = strata.hs_of_H0(L)
    data = {"prime": str(prime), "cp_rank": k, "h0_numerator": num.to_json(),
            "h0_series": strata.h0_series_str(L), "power": L.power}
    lines = ["prime: %s" % prime, "c_p-rank: %d" % k, "HS(H^0): %s" % data["h0_series"],
             "killed by p^%d" % L.power]
    return data, lines, None


def cmd_rankinv(src, args):
    M = src.frame()
    u, v = _degree_arg(args.source, src.r, "--from"), _degree_arg(args.target, src.r, "--to")
    if not leq(u, v):
        raise UsageError("--from %s is not <= --to %s" % (fmt_degree(u), fmt_degree(v)))
    val = strata.rank_invariant(M, u, v)
    return ({"from": list(u), "to": list(v), "rank": val},
            ["rho(%s, %s) = %d" % (fmt_degree(u), fmt_degree(v), val)], None)


def _barcode_output(bc, args, extra=None):
    data = {"barcode": bc.to_json(), "infinite_bars": bc.infinite()}
    data.update(extra or {})
    if bc.bars:
        lines = ["barcode:"] + ["  " + str(b) for b in bc.bars]
    else:
        lines = ["barcode: (empty)"]
    svg = render.barcode_svg(bc) if args.format == "svg" else None
    return data, lines, svg


def cmd_restrict(src, args):
    M = src.frame()
    d = _degree_arg(args.dir, src.r, "--dir")
    o = _degree_arg(args.offset, src.r, "--offset") if args.offset else (0,) * src.r
    try:
        line = onepar.LineMap(d, o)
    except ValueError as exc:
        raise UsageError(str(exc))
    bc = onepar.barcode(onepar.restrict_to_line(M, line))
    data, lines, svg = _barcode_output(bc, args, {"direction": list(d), "offset": list(o)})
    lines.insert(0, "line: i -> i*%s + %s" % (fmt_degree(d), fmt_degree(o)))
    return data, lines, svg


def cmd_path(src, args):
    M = src.frame()
    with open(args.file, encoding="utf-8") as fh:
        text = "\n".join(line.split("#", 1)[0] for line in fh)
    pts = parse_degrees(text)
    if not pts:
        raise UsageError("no degrees found in %s" % args.file)
    try:
        N = onepar.restrict_to_path(M, pts)
    except ValueError as exc:
        raise UsageError(str(exc))
    bc = onepar.barcode(N)
    data, lines, svg = _barcode_output(bc, args, {"path": [list(p) for p in pts]})
    lines.insert(0, "path: %s" % " ".join(fmt_degree(p) for p in pts))
    return data, lines, svg


def cmd_diagonal(src, args):
    M = src.frame()
    P = src.P if src.kind == "gpres" else frames.minimal_presentation(M)
    N = onepar.diagonal_tensor(P)
    bc = onepar.barcode(N)
    rk = hilbert.rank(M)
    if bc.infinite() != rk:
        raise InvariantError("diagonal tensor has %d infinite bars, module rank is %d" % (bc.infinite(), rk))
    line_bc = onepar.barcode(onepar.restrict_to_line(M, onepar.LineMap((1,) * src.r, (0,) * src.r)))
    same = line_bc == bc
    data, lines, svg = _barcode_output(bc, args, {
        "rank": rk, "rank_check": True,
        "line_barcode": line_bc.to_json(), "isomorphic_to_line_restriction": same})
    lines.append("rank: %d (= number of infinite bars)" % rk)
    lines.append("restriction to the diagonal line: " + (", ".join(str(b) for b in line_bc.bars) or "zero module"))
    lines.append("diagonal tensor and line restriction are %s" % ("isomorphic" if same else "not isomorphic"))
    return data, lines, svg


def cmd_resolve(src, args):
    M = src.frame()
    R = frames.minimal_free_resolution(M)
    betti = frames.betti_numbers(R)
    HF = hilbert.hilbert_function(M)
    euler = all(R.hf(u) == HF(u) for u in M.degrees())
    if not euler:
        raise InvariantError("Euler characteristic of the resolution does not match HF")
    data = {"resolution": R.to_json(), "text": R.describe(),
            "betti": [{"i": i, "degree": list(d), "multiplicity": k} for i, d, k in betti],
            "euler_check": euler}
    lines = ["resolution: %s" % R.describe(), "length: %d" % R.length, "Betti numbers:"]
    for i in range(len(R.degrees)):
        row = ["%s%s" % (fmt_degree(d), "" if k == 1 else "^%d" % k) for j, d, k in betti if j == i]
        lines.append("  beta_%d: %s" % (i, " ".join(row) if row else "-"))
    return data, lines, None


def cmd_canon(src, args):
    P = src.P if src.kind == "gpres" else frames.minimal_presentation(src.frame())
    cf = presentation.canonical_form(P)
    data = {"gens": [list(g) for g in cf[0]], "rels": [list(d) for d in cf[1]], "matrix": cf[2]}
    lines = ["generators: %s" % _degs(cf[0]), "relations: %s" % _degs(cf[1]), "matrix:"] + _matrix_lines(cf[2])
    if args.compare:
        other = Source(args.compare, src.field if args.field else None, args.index)
        Q = other.P if other.kind == "gpres" else frames.minimal_presentation(other.frame())
        equal = presentation.canonical_form(Q) == cf
        data["equal"] = equal
        lines.append("canonical forms %s" % ("agree" if equal else "differ"))
    return data, lines, None


COMMANDS = {
    "homology": (cmd_homology, "minimal presentation and cyclic decomposition"),
    "hilbert": (cmd_hilbert, "Hilbert function, series, rank, polynomial"),
    "ass": (cmd_ass, "associated primes (direct and via the cokernel)"),
    "strata": (cmd_strata, "stratification report with element life reports"),
    "cprank": (cmd_cprank, "c_p-rank and the Hilbert series of H^0_p"),
    "rankinv": (cmd_rankinv, "rank invariant rho(u, v)"),
    "restrict": (cmd_restrict, "barcode of the restriction to a line"),
    "path": (cmd_path, "barcode of the restriction to a monotone path"),
    "diagonal": (cmd_diagonal, "barcode of the diagonal tensor"),
    "resolve": (cmd_resolve, "minimal free resolution and Betti numbers"),
    "canon": (cmd_canon, "canonical form of the minimal presentation"),
}


# ---------------------------------------------------------------- helpers

def _degs(ds):
    return " ".join(fmt_degree(d) for d in ds) if ds else "-"


def _matrix_lines(mat):
    if not mat or not mat[0]:
        return ["  (empty)"]
    width = max(len(x) for row in mat for x in row)
    return ["  [" + "  ".join(x.rjust(width) for x in row) + "]" for row in mat]


def _hf_lines(HF):
    if HF.r == 2:
        s1, s2 = HF.top
        width = max(len(str(v)) for v in HF.table.values())
        out = []
        for j in range(s2, -1, -1):
            out.append("  %2d | " % j + " ".join(str(HF((i, j))).rjust(width) for i in range(s1 + 1)))
        out.append("     +-" + "-" * ((width + 1) * (s1 + 1)))
        out.append("       " + " ".join(str(i).rjust(width) for i in range(s1 + 1)))
        return out
    return ["  %s: %d" % (fmt_degree(u), d) for u, d in sorted(HF.table.items()) if d]


def _extent(src):
    return tuple(k + 2 for k in src.box)


def _degree_arg(text, r, flag):
    if text is None:
        raise UsageError("%s is required" % flag)
    t = text.strip()
    if not t.startswith("("):
        t = "(%s)" % t
    try:
        d = parse_degree(t)
    except ValueError:
        raise UsageError("%s: bad degree %r" % (flag, text))
    if len(d) != r:
        raise UsageError("%s: degree %s does not have r=%d coordinates" % (flag, fmt_degree(d), r))
    return d


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("input", help=".mfsc complex or .gpres presentation")
    common.add_argument("--format", choices=["text", "json", "svg"], default="text")
    common.add_argument("--field", help="q (rationals, default) or f<p>; overrides the input's field line")
    common.add_argument("-i", "--index", type=int, default=1, help="homology index for .mfsc inputs (default 1)")
    common.add_argument("--box", help="enlarged computation box, e.g. (4,4)")
    common.add_argument("--timing", action="store_true", help="report wall-clock time")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="mph", description="Exact invariants of multiparameter persistence modules.")
    parser.add_argument("--version", action="version", version="mph %s" % __version__)
    sub = parser.add_subparsers(dest="command", metavar="command")
    sub.required = True
    subs = {}
    for name, (_, help_) in COMMANDS.items():
        subs[name] = sub.add_parser(name, parents=[common], help=help_, description=help_)
    subs["cprank"].add_argument("--prime", required=True, help="variables of the prime, e.g. x1 or x1,x2")
    subs["rankinv"].add_argument("--from", dest="source", required=True)
    subs["rankinv"].add_argument("--to", dest="target", required=True)
    subs["restrict"].add_argument("--dir", required=True, help="line direction, e.g. (1,1)")
    subs["restrict"].add_argument("--offset", help="line offset (default 0)")
    subs["path"].add_argument("--file", required=True, help="file listing the path's degrees in order")
    subs["canon"].add_argument("--compare", help="second input; report whether canonical forms agree")
    return parser


def run(argv=None, out=None):
    """Run one command; returns the exit code."""
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="mph: %(message)s")
    started = time.perf_counter()
    try:
        field = Field.parse(args.field) if args.field else None
        box = None
        if args.box:
            b = args.box.strip()
            box = parse_degree(b if b.startswith("(") else "(%s)" % b)
        if args.index < 0:
            raise UsageError("-i must be non-negative")
        src = Source(args.input, field, args.index, box)
        fn = COMMANDS[args.command][0]
        if args.format == "svg" and args.command not in ("hilbert", "ass", "strata", "restrict", "path", "diagonal"):
            raise UsageError("svg output is not available for %s" % args.command)
        data, lines, svg = fn(src, args)
    except (ParseError, ValidationError, UsageError, FieldError, ValueError, OSError) as exc:
        print("mph: error: %s" % exc, file=sys.stderr)
        return EXIT_INPUT
    except InvariantError as exc:
        print("mph: internal invariant failed: %s" % exc, file=sys.stderr)
        return EXIT_INVARIANT
    elapsed = time.perf_counter() - started
    if args.format == "svg":
        out.write(svg)
    elif args.format == "json":
        report = {"schema": SCHEMA, "command": args.command, "input": src.name, "kind": src.kind,
                  "field": src.field.name, "r": src.r, "box": list(src.box)}
        if src.kind == "mfsc":
            report["index"] = src.index
        report.update(data)
        if args.timing:
            report["timing_seconds"] = round(elapsed, 6)
        out.write(json.dumps(report, indent=2, sort_keys=True, ensure_ascii=False) + "\n")
    else:
        head = ["%s: %s" % (args.command, src.describe()), "field: %s" % src.field.name,
                "box: %s" % fmt_degree(src.box)]
        if args.timing:
            lines = lines + ["time: %.3fs" % elapsed]
        out.write("\n".join(head + lines) + "\n")
    return EXIT_OK


def main(argv=None):
    sys.exit(run(argv))
