"""Command-line front end.

Exit codes: 0 success or verdict pass, 1 usage error, 2 search budget
exhausted, 3 verdict fail (the computation disagrees with the theorem).
"""
from __future__ import annotations

import argparse
import json
import re
import sys

from . import constructions as C
from . import textio
from .graph import GraphError, girth, is_strongly_connected, underlying_graph
from .schemes import IntersectionTensor, drg_check, is_commutative, verify_structural_lemmas, wdrd_check
from .search import FLAG_ORDER, OrientationSearchConfig, classify_orientations, default_jobs
from .theorems import FAMILIES, verify_product_proposition, verify_theorem

EXIT_OK, EXIT_USAGE, EXIT_BUDGET, EXIT_VERDICT = 0, 1, 2, 3

NAMED = ("hamming", "folded_cube", "doob", "shrikhande", "complete", "cayley", "paley")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def parse_ints(text: str) -> list[int]:
    try:
        return [int(t) for t in text.replace("(", " ").replace(")", " ").replace(",", " ").split()]
    except ValueError:
        raise UsageError(f"expected integers, got {text!r}") from None


def parse_connection(text: str):
    """``"(1,0),(0,1),(-1,-1)"`` -> tuples; ``"1,2"`` -> ints."""
    if "(" not in text:
        return parse_ints(text)
    groups = re.findall(r"\(([^()]*)\)", text)
    rest = re.sub(r"\(([^()]*)\)", "", text).replace(",", "").strip()
    if rest or not groups:
        raise UsageError(f"malformed connection set {text!r}")
    return [tuple(parse_ints(g)) for g in groups]


def _need(args, *names):
    missing = [f"--{n}" for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"{args.family} needs {' '.join(missing)}")


def build_named(args):
    fam = args.family.replace("-", "_")
    if fam == "hamming":
        _need(args, "d", "q")
        return C.hamming(args.d, args.q)
    if fam == "folded_cube":
        _need(args, "n")
        return C.folded_cube(args.n)
    if fam == "doob":
        _need(args, "d1", "d2")
        return C.doob(args.d1, args.d2)
    if fam == "shrikhande":
        return C.shrikhande()
    if fam == "complete":
        _need(args, "q")
        return C.complete_graph(args.q)
    if fam == "paley":
        _need(args, "q")
        return C.paley_tournament(args.q)
    if fam == "cayley":
        _need(args, "moduli", "conn")
        return C.cayley(parse_ints(args.moduli), parse_connection(args.conn))
    raise UsageError(f"unknown family {args.family!r}; choose from {', '.join(NAMED)}")


def load_input(args):
    """The digraph named by family flags or read from --in (exactly one)."""
    has_file = bool(args.inputs)
    if getattr(args, "base", None):
        if args.family and args.family != args.base:
            raise UsageError("give the family once (positional or --base)")
        args.family = args.base
    if has_file and args.family:
        raise UsageError("give either a named family or --in, not both")
    if has_file:
        if len(args.inputs) > 1:
            raise UsageError("this command takes a single --in file")
        return textio.read(args.inputs[0])
    if not args.family:
        raise UsageError("no input: name a family or pass --in FILE")
    return build_named(args)


def _emit(obj, fh):
    fh.write(json.dumps(obj, indent=2) + "\n")


def _label(lab):
    return f"({lab[0]},{lab[1]})"


def cmd_construct(args, out):
    g = load_input(args)
    if args.json:
        _emit({"n": g.n, "arcs": [list(a) for a in g.arcs()]}, out)
    else:
        out.write(textio.dumps(g))
    return EXIT_OK


def analyse(g) -> dict:
    res = {"strongly_connected": is_strongly_connected(g)}
    t = wdrd_check(g)
    if isinstance(t, IntersectionTensor):
        comm = is_commutative(t)
        res.update(wdrd=True, commutative=comm is True, tensor=t.to_json(comm is True))
        if comm is not True:
            res["witness"] = _witness_json(comm)
    else:
        res.update(wdrd=False, commutative=False, witness=_witness_json(t))
    return res


def _witness_json(w) -> dict:
    def conv(x):
        return [conv(y) for y in x] if isinstance(x, (tuple, list)) else x
    return {"kind": w.kind, "pairs": conv(w.pairs), "triple": conv(w.triple), "values": conv(w.values)}


def cmd_check(args, out):
    g = load_input(args)
    res = analyse(g)
    if args.json:
        _emit(res, out)
        return EXIT_OK
    out.write(f"vertices: {g.n}  arcs: {g.num_arcs}\n")
    out.write(f"strongly connected: {res['strongly_connected']}\n")
    out.write(f"weakly distance-regular: {res['wdrd']}\n")
    if res["wdrd"]:
        out.write(f"commutative: {res['commutative']}\n")
        t = res["tensor"]
        out.write("two-way distances: " + " ".join(_label(l) for l in t["labels"]) + "\n")
        out.write("girth: %d\n" % girth(g) if g.num_arcs else "")
    if "witness" in res:
        w = res["witness"]
        out.write(f"witness: {w['kind']} pairs={w['pairs']} triple={w['triple']} values={w['values']}\n")
    return EXIT_OK


def cmd_tensor(args, out):
    g = load_input(args)
    t = wdrd_check(g)
    if not isinstance(t, IntersectionTensor):
        raise UsageError(f"not weakly distance-regular ({t.kind}); no tensor to print")
    data = t.to_json()
    if args.json:
        _emit(data, out)
        return EXIT_OK
    for lab in t.labels:
        out.write(f"k{_label(lab)} = {t.k[lab]}\n")
    for h, i, j, v in t.nonzero():
        out.write(f"p^{_label(h)}_{_label(i)},{_label(j)} = {v}\n")
    out.write(f"commutative: {data['commutative']}\n")
    return EXIT_OK


def _search_config(args, base, name):
    prune = [p for p in (args.prune or "").split(",") if p]
    return OrientationSearchConfig(
        base, prune, dedup=not args.no_dedup, symmetry_break=args.symmetry_break,
        budget_leaves=args.budget_leaves, budget_secs=args.budget_secs,
        jobs=args.jobs or default_jobs(), name=name,
    )


def cmd_search(args, out):
    base = load_input(args)
    rep = classify_orientations(_search_config(args, base, args.family or args.inputs[0]))
    if args.json:
        _emit(rep.to_json(), out)
    else:
        out.write(f"leaves visited: {rep.total_visited}\n")
        for f in FLAG_ORDER:
            if rep.pruned[f]:
                out.write(f"  cut by {f}: {rep.pruned[f]}\n")
        out.write(f"undirected solutions: {rep.undirected_solutions}\n")
        out.write(f"proper solutions found: {rep.proper_found}\n")
        out.write(f"proper classes: {len(rep.proper_solutions)}\n")
        for s in rep.proper_solutions:
            labels = " ".join(_label(l) for l in s.tensor.labels)
            out.write(f"  {s.states}  commutative={s.commutative}  {labels}\n")
        out.write(f"complete: {rep.complete}\n")
    return EXIT_OK if rep.complete else EXIT_BUDGET


def _params(args, family):
    fam = family.replace("-", "_")
    need = {"hamming": ("d", "q"), "folded_cube": ("n",), "doob": ("d1", "d2")}.get(fam)
    if need is None:
        raise UsageError(f"verify thm needs --base from {', '.join(FAMILIES)}")
    args.family = fam
    _need(args, *need)
    return fam, {k: getattr(args, k) for k in need}


def cmd_verify(args, out):
    if args.what == "thm":
        if args.inputs:
            raise UsageError("verify thm takes --base, not --in")
        if not args.base:
            raise UsageError("verify thm needs --base")
        fam, params = _params(args, args.base)
        prune = [p for p in (args.prune or "").split(",") if p]
        v = verify_theorem(fam, params, prune=prune, jobs=args.jobs or default_jobs(),
                           budget_leaves=args.budget_leaves, budget_secs=args.budget_secs)
        if args.json:
            _emit(v.to_json(), out)
        else:
            out.write(f"{fam} {params}: mode {v.mode}\n")
            if v.report is not None:
                r = v.report
                out.write(f"leaves visited: {r.total_visited}  proper classes: {len(r.commutative_classes())}"
                          f"  complete: {r.complete}\n")
            for line in v.matches:
                out.write(f"  ok  {line}\n")
            for line in v.discrepancies:
                out.write(f"  BAD {line}\n")
            for line in v.notes:
                out.write(f"  note: {line}\n")
            out.write("verdict: " + ("pass" if v.passed else "FAIL") + "\n")
        if not v.complete:
            return EXIT_BUDGET
        return EXIT_OK if v.passed else EXIT_VERDICT
    # product
    if args.inputs and (args.family or args.base):
        raise UsageError("give either a named family or --in, not both")
    if args.inputs:
        if len(args.inputs) > 2:
            raise UsageError("verify product takes at most two --in files")
        gs = [textio.read(p) for p in args.inputs]
    else:
        args.family = args.family or args.base
        if not args.family:
            raise UsageError("no input: name a family or pass --in FILE")
        gs = [build_named(args)]
    delta = gs[0]
    delta2 = gs[1] if len(gs) > 1 else gs[0]
    v = verify_product_proposition(delta, delta2)
    if args.json:
        _emit({"passed": v.passed, "pairs_checked": v.pairs_checked, "failures": v.failures,
               "tensor": v.tensor.to_json() if v.tensor is not None else None}, out)
    else:
        out.write(f"product weakly distance-regular: {v.tensor is not None}\n")
        out.write(f"additivity checked on {v.pairs_checked} pairs, failures: {len(v.failures)}\n")
        for f in v.failures[:10]:
            out.write(f"  {f}\n")
        out.write("verdict: " + ("pass" if v.passed else "FAIL") + "\n")
    return EXIT_OK if v.passed else EXIT_VERDICT


def cmd_lemmas(args, out):
    g = load_input(args)
    t = wdrd_check(g)
    if not isinstance(t, IntersectionTensor):
        raise UsageError(f"not weakly distance-regular ({t.kind})")
    arr = drg_check(underlying_graph(g))
    if not arr:
        raise UsageError(f"underlying graph is not distance-regular ({arr.kind})")
    res = verify_structural_lemmas(t, arr)
    if args.json:
        _emit({k: {"status": r.status, "detail": [str(d) for d in r.detail]} for k, r in res.items()}, out)
    else:
        out.write(f"underlying array: b={list(arr.b)} c={list(arr.c)}\n")
        for k, r in res.items():
            out.write(f"{k}: {r.status} {r.detail if r.detail else ''}\n")
    failed = any(r.status == "fail" for r in res.values())
    return EXIT_VERDICT if failed else EXIT_OK


def _add_input(p, family=True):
    if family:
        p.add_argument("family", nargs="?", help="named family: " + ", ".join(NAMED))
    p.add_argument("--base", help="named family (alternative to the positional)")
    for flag in ("d", "q", "n", "d1", "d2"):
        p.add_argument(f"--{flag}", type=int)
    p.add_argument("--moduli", help="cyclic group orders, e.g. 4,4")
    p.add_argument("--conn", help='connection set, e.g. "(1,0),(0,1),(-1,-1)" or "1,2"')
    p.add_argument("--in", dest="inputs", action="append", metavar="FILE", help="digraph text file")
    p.add_argument("--json", action="store_true", help="emit JSON")


def _add_search(p):
    p.add_argument("--prune", help="comma-separated: " + ", ".join(FLAG_ORDER))
    p.add_argument("--no-dedup", action="store_true", help="keep isomorphic solutions")
    p.add_argument("--symmetry-break", action="store_true", help="fix the first edge up to reversal")
    p.add_argument("--budget-leaves", type=int, default=2 ** 31)
    p.add_argument("--budget-secs", type=float, default=600.0)
    p.add_argument("--jobs", type=int, default=None, help="worker processes (default: all CPUs)")


def make_parser():
    parser = _Parser(prog="wdrd", description="Weakly distance-regular digraph toolkit.")
    sub = parser.add_subparsers(dest="verb", required=True, parser_class=_Parser)
    for verb, helptext in (("construct", "print a digraph in text format"),
                           ("check", "test strong connectivity, regularity, commutativity"),
                           ("tensor", "print the intersection numbers"),
                           ("lemmas", "check the structural tensor lemmas")):
        _add_input(sub.add_parser(verb, help=helptext))
    p = sub.add_parser("search", help="enumerate orientations of an undirected base")
    _add_input(p)
    _add_search(p)
    p = sub.add_parser("verify", help="compare with a classification theorem or product rule")
    p.add_argument("what", choices=("thm", "product"))
    _add_input(p)
    _add_search(p)
    return parser


COMMANDS = {"construct": cmd_construct, "check": cmd_check, "tensor": cmd_tensor,
            "search": cmd_search, "verify": cmd_verify, "lemmas": cmd_lemmas}


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = make_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.verb](args, out)
    except (UsageError, GraphError, OSError) as exc:
        sys.stderr.write(f"wdrd {args.verb}: error: {exc}\n")
        return EXIT_USAGE


def main(argv=None) -> int:
    try:
        return run(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
