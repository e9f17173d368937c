"""Command-line front end.  Output is deterministic; ``--json`` emits a versioned object."""
from __future__ import annotations

import argparse
import contextlib
import json
import os
import sys
from typing import List, Optional

from ..bichar import Bicharacter, braiding_R, lattice_example, main_example, translation_Rgamma
from ..hopf import VElem
from ..qva import Fields, QVA, TruncationSpec
from .grammar import StateSyntaxError, format_state, parse_state

SCHEMA = 1
DEFAULTS = {"t_order": 3, "z_window": 4, "weight_cap": 5}
ENV_SPEC = "QVA_DEFAULT_SPEC"


class UsageError(Exception):
    pass


def env_defaults(environ=None) -> dict:
    """QVA_DEFAULT_SPEC as ``T,W,C`` or ``t_order=T,z_window=W,weight_cap=C`` (any subset)."""
    out = dict(DEFAULTS)
    raw = (environ if environ is not None else os.environ).get(ENV_SPEC, "").strip()
    if not raw:
        return out
    items = [x.strip() for x in raw.split(",") if x.strip()]
    keys = list(DEFAULTS)
    try:
        if all("=" not in x for x in items):
            if len(items) > 3:
                raise ValueError
            for k, v in zip(keys, items):
                out[k] = int(v)
        else:
            for x in items:
                k, v = x.split("=", 1)
                k = k.strip().replace("-", "_")
                if k not in DEFAULTS:
                    raise ValueError
                out[k] = int(v)
    except ValueError:
        raise UsageError("bad %s value %r" % (ENV_SPEC, raw))
    return out


def _common(defaults: dict) -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--t-order", type=int, default=defaults["t_order"], help="truncation order in t")
    p.add_argument("--z-window", type=int, default=defaults["z_window"], help="exponent window")
    p.add_argument("--weight-cap", type=int, default=defaults["weight_cap"], help="output weight cap")
    p.add_argument("--bichar", default="jing", help="jing, lattice, or a sigma expression in z1, z2, t")
    p.add_argument("--json", action="store_true", help="emit JSON")
    return p


def build_parser(defaults: Optional[dict] = None) -> argparse.ArgumentParser:
    defaults = defaults or env_defaults()
    common = _common(defaults)
    parser = argparse.ArgumentParser(prog="qva", description="Exact computations in bicharacter quantum vertex algebras.")
    sub = parser.add_subparsers(dest="group", required=True)

    bi = sub.add_parser("bichar", help="bicharacter values").add_subparsers(dest="cmd", required=True)
    for name, hlp in (("eval", "r_{z1,z2}(a (x) b)"), ("braiding", "R_{z1,z2}(a (x) b)"),
                      ("translation", "R^gamma_{z1,z2}(a (x) b)")):
        c = bi.add_parser(name, parents=[common], help=hlp)
        c.add_argument("--a", required=True)
        c.add_argument("--b", required=True)

    vx = sub.add_parser("vx", help="vertex algebra products").add_subparsers(dest="cmd", required=True)
    c = vx.add_parser("x2", parents=[common], help="X_{z1,z2}(a (x) b)")
    c.add_argument("--a", required=True)
    c.add_argument("--b", required=True)
    c = vx.add_parser("y", parents=[common], help="Y(a, z) b")
    c.add_argument("--a", required=True)
    c.add_argument("--b", required=True)
    c = vx.add_parser("nprod", parents=[common], help="a_(n) b")
    c.add_argument("--a", required=True)
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--b", required=True)
    c = vx.add_parser("fprod", parents=[common], help="a(z)_(n) b(z) as a field")
    c.add_argument("--a", required=True)
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--b", required=True)
    c = vx.add_parser("scomm", parents=[common], help="[a(z1), b(z2)]_S")
    c.add_argument("--a", required=True)
    c.add_argument("--b", required=True)
    c = vx.add_parser("nop", parents=[common], help=":a(z1) b(z2): c in a box")
    c.add_argument("--a", required=True)
    c.add_argument("--b", required=True)
    c.add_argument("--c", default="1")
    c = vx.add_parser("locality", parents=[common], help="locality order of (a, b)")
    c.add_argument("--a", required=True)
    c.add_argument("--b", required=True)

    ver = sub.add_parser("verify", parents=[common], help="axiom and identity sweeps")
    g = ver.add_mutually_exclusive_group(required=True)
    g.add_argument("--axiom", help="axiom name, or 'all'")
    g.add_argument("--property", help="derived property name, or 'all'")
    g.add_argument("--braided", action="store_true", help="toy braided algebras")
    g.add_argument("--list", action="store_true", help="list names")
    ver.add_argument("--max-weight", type=int, default=None,
                     help="tuple weight bound (default: weight cap)")

    hl = sub.add_parser("hl", help="Hall-Littlewood functions").add_subparsers(dest="cmd", required=True)
    c = hl.add_parser("q", parents=[common], help="Q_lambda")
    c.add_argument("--partition", required=True)
    c.add_argument("--basis", choices=("p", "m"), default="p")
    c = hl.add_parser("h", parents=[common], help="H_lambda")
    c.add_argument("--partition", required=True)
    c.add_argument("--basis", choices=("p", "m"), default="m")
    c = hl.add_parser("table", parents=[common], help="H and Q up to a weight")
    c.add_argument("--max-weight", type=int, default=3)
    c.add_argument("--basis", choices=("p", "m"), default="p")
    c = hl.add_parser("jing", parents=[common], help="constant term of iterated vertex operators")
    c.add_argument("--mtilde", required=True)
    c.add_argument("--report", action="store_true", help="compare with the Gram-Schmidt oracle")

    br = sub.add_parser("braid", help="braiding maps of permutations").add_subparsers(dest="cmd", required=True)
    c = br.add_parser("words", parents=[common], help="reduced words of a permutation")
    c.add_argument("--perm", required=True, help="0-based one-line notation, e.g. 2,0,1")
    c.add_argument("--check", action="store_true", help="also check word independence of S^f")
    return parser


# helpers -----------------------------------------------------------------------------
def spec_of(args) -> TruncationSpec:
    for k in ("t_order", "z_window", "weight_cap"):
        if getattr(args, k) < 0:
            raise UsageError("--%s must be non-negative" % k.replace("_", "-"))
    return TruncationSpec(args.t_order, args.z_window, args.weight_cap)


def bichar_of(name: str, T: int) -> Bicharacter:
    if name == "jing":
        return main_example(T)
    if name == "lattice":
        return lattice_example(T)
    return Bicharacter.from_sigma(name, T, name="user")


def qva_of(args) -> QVA:
    spec = spec_of(args)
    return QVA(bichar_of(args.bichar, spec.t_order), spec)


def state(text: str) -> VElem:
    try:
        return parse_state(text)
    except StateSyntaxError as e:
        raise UsageError("bad state %r: %s" % (text, e))


def _spec_json(spec: TruncationSpec) -> dict:
    return {"t_order": spec.t_order, "z_window": spec.z_window, "weight_cap": spec.weight_cap}


class Output:
    def __init__(self, args, command: str):
        self.args = args
        self.command = command
        self.lines: List[str] = []
        self.payload: dict = {}
        self.spec: Optional[TruncationSpec] = None

    def text(self, line: str):
        self.lines.append(line)

    def render(self) -> str:
        if self.args.json:
            obj = {"schema": SCHEMA, "command": self.command}
            if self.spec is not None:
                obj["spec"] = _spec_json(self.spec)
                obj["bichar"] = self.args.bichar
            obj.update(self.payload)
            return json.dumps(obj, indent=2, sort_keys=True, default=str)
        return "\n".join(self.lines)


# commands ----------------------------------------------------------------------------
def cmd_bichar(args, out: Output) -> int:
    spec = out.spec = spec_of(args)
    r = bichar_of(args.bichar, spec.t_order)
    target = r
    if args.cmd == "braiding":
        target = braiding_R(r)
    elif args.cmd == "translation":
        target = translation_Rgamma(r)
    value = target.eval(state(args.a), state(args.b))
    out.text(str(value))
    out.payload["result"] = str(value)
    return 0


def cmd_vx(args, out: Output) -> int:
    q = qva_of(args)
    out.spec = q.spec
    if args.cmd == "x2":
        res = format_state(q.x2(state(args.a), state(args.b)))
    elif args.cmd == "y":
        res = format_state(q.y(state(args.a), state(args.b)))
    elif args.cmd == "nprod":
        res = format_state(q.mode(state(args.a), args.n, state(args.b)))
    elif args.cmd == "fprod":
        res = str(Fields(q).field_nproduct(state(args.a), state(args.b), args.n))
    elif args.cmd == "scomm":
        fd = Fields(q).s_commutator(state(args.a), state(args.b))
        res = str(fd)
        out.payload["terms"] = fd.to_json()
    elif args.cmd == "nop":
        res = str(Fields(q).normal_ordered(state(args.a), state(args.b), state(args.c)))
    else:
        from ..verify import locality_order
        res = str(locality_order(q, state(args.a), state(args.b)))
    out.text(res)
    out.payload["result"] = res
    return 0


def cmd_verify(args, out: Output) -> int:
    from ..verify import CATALOGUE, PROPERTIES, braided_algebra_check, verify_axiom, verify_property
    from ..verify.braided import instances

    if args.list:
        out.text("axioms: " + " ".join(CATALOGUE))
        out.text("properties: " + " ".join(PROPERTIES))
        out.payload["axioms"] = list(CATALOGUE)
        out.payload["properties"] = list(PROPERTIES)
        return 0
    reports = []
    if args.braided:
        for alg in instances():
            reports.extend(braided_algebra_check(alg))
    else:
        spec = spec_of(args)
        max_weight = args.max_weight if args.max_weight is not None else spec.weight_cap
        spec = TruncationSpec(spec.t_order, spec.z_window, max(spec.weight_cap, max_weight + 1))
        q = QVA(bichar_of(args.bichar, spec.t_order), spec)
        out.spec = spec
        if args.axiom is not None:
            names = list(CATALOGUE) if args.axiom == "all" else [args.axiom]
            unknown = [n for n in names if n not in CATALOGUE]
            if unknown:
                raise UsageError("unknown axiom %r (try --list)" % unknown[0])
            reports = [verify_axiom(n, q=q, max_weight=max_weight) for n in names]
        else:
            names = list(PROPERTIES) if args.property == "all" else [args.property]
            unknown = [n for n in names if n not in PROPERTIES]
            if unknown:
                raise UsageError("unknown property %r (try --list)" % unknown[0])
            reports = [verify_property(n, q, max_weight) for n in names]
    for r in reports:
        name = r.axiom if not args.braided else "%s/%s" % (r.statement, r.axiom)
        line = "%s %s: %d tuples" % ("PASS" if r.ok else "FAIL", name, r.tested)
        out.text(line if r.ok else line + "\n  witness: %s" % (r.witness,))
    out.payload["reports"] = [_report_json(r, args.braided) for r in reports]
    return 0 if all(r.ok for r in reports) else 1


def _report_json(r, braided: bool) -> dict:
    d = {"name": r.axiom, "ok": r.ok, "tested": r.tested,
         "witness": None if r.witness is None else str(r.witness)}
    if braided:
        d["instance"] = r.statement
    else:
        d["statement"] = r.statement
    return d


def _partition(text: str):
    from ..symfun import InvalidShape, parse_partition
    try:
        return parse_partition(text)
    except (InvalidShape, ValueError) as e:
        raise UsageError("bad partition %r: %s" % (text, e))


def cmd_hl(args, out: Output) -> int:
    from ..symfun import hl_basis, hl_H, hl_Q, jing_constant_term, jing_vs_oracle, partitions_upto

    if args.cmd in ("q", "h"):
        lam = _partition(args.partition)
        f = (hl_Q if args.cmd == "q" else hl_H)(lam)
        res = f.render(args.basis)
        out.text(res)
        out.payload.update(result=res, partition=list(lam), basis=args.basis)
        return 0
    if args.cmd == "table":
        if args.max_weight < 0:
            raise UsageError("--max-weight must be non-negative")
        B = hl_basis(args.max_weight)
        rows = []
        for lam in partitions_upto(args.max_weight):
            hs, qs = B.H[lam].render("m"), B.Q[lam].render(args.basis)
            out.text("H%s = %s" % (lam, hs))
            out.text("Q%s = %s" % (lam, qs))
            rows.append({"partition": list(lam), "H_m": hs, "Q": qs})
        out.payload["rows"] = rows
        return 0
    parts = tuple(int(x) for x in args.mtilde.split(","))
    from ..symfun import InvalidShape
    try:
        if not args.report:
            ct = jing_constant_term(parts)
            out.text(str(ct))
            out.payload["result"] = str(ct)
            return 0
        rep = jing_vs_oracle(parts)
    except InvalidShape as e:
        raise UsageError(str(e))
    out.text("constant term: %s" % rep.constant_term)
    out.text("oracle Q%s: %s" % (rep.target, rep.oracle))
    out.text("literal equality: %s" % ("yes" if rep.literal_equal else "no"))
    out.text("relation: %s" % rep.relation)
    out.payload.update(constant_term=str(rep.constant_term), target=list(rep.target), oracle=str(rep.oracle),
                       literal_equal=rep.literal_equal, shifted=list(rep.shifted),
                       shifted_equal=rep.shifted_equal, relation=rep.relation)
    return 0


def cmd_braid(args, out: Output) -> int:
    from ..verify.perm import reduced_words, word_independence
    try:
        f = tuple(int(x) for x in args.perm.split(","))
    except ValueError:
        raise UsageError("bad permutation %r" % args.perm)
    if sorted(f) != list(range(len(f))):
        raise UsageError("%r is not a permutation of 0..%d" % (args.perm, len(f) - 1))
    words = reduced_words(f)
    for w in words:
        out.text(" ".join("w%d" % (i + 1) for i in w) if w else "(identity)")
    out.payload["words"] = [list(w) for w in words]
    if args.check:
        if len(f) > 4:
            raise UsageError("word independence is checked for at most 4 legs")
        rep = word_independence(qva_of(args), f, max_weight=min(args.weight_cap, 2))
        out.text("%s word_independence: %d tuples" % ("PASS" if rep.ok else "FAIL", rep.tested))
        out.payload["word_independence"] = rep.ok
        return 0 if rep.ok else 1
    return 0


DISPATCH = {"bichar": cmd_bichar, "vx": cmd_vx, "verify": cmd_verify, "hl": cmd_hl, "braid": cmd_braid}


def run(argv: Optional[List[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        parser = build_parser()
    except UsageError as e:
        print("qva: error: %s" % e, file=stderr)
        return 2
    try:
        with contextlib.redirect_stdout(stdout), contextlib.redirect_stderr(stderr):
            args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    command = args.group + (" " + args.cmd if getattr(args, "cmd", None) else "")
    out = Output(args, command)
    try:
        code = DISPATCH[args.group](args, out)
    except UsageError as e:
        print("qva: error: %s" % e, file=stderr)
        return 2
    except Exception as e:  # computation errors are surfaced verbatim
        print("qva: %s: %s" % (type(e).__name__, e), file=stderr)
        return 3
    print(out.render(), file=stdout)
    return code


def main(argv: Optional[List[str]] = None) -> int:
    return run(argv)
