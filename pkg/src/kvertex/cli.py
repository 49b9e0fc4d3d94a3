"""Command-line front end.

Verbs: residue, expand, pfrac, hopf, vertex, bracket, axioms, wallcross,
suite.  Output is deterministic (exact fractions, sorted terms, no
timestamps); exit codes: 0 success, 1 evaluation/suite failure, 2 parse
error.  KVERTEX_SUITE_SEED seeds the randomized suites.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .exprparse import EvalError, ParseError, parse_laurent, parse_rational
from .hopf import PhiElement, chern_character, coproduct, phi_pair, star, translation_pairing
from .laurent import LP_ONE, LaurentPoly, PolyFraction
from .quiver import (GradedElement, Quiver, axiom_check, lie_bracket,
                     vertex_kernel, vertex_shuffle)
from .residues import COHOMOLOGICAL, K_THEORY, NAIVE, residue, residue_coh
from .series import expand_at, partial_fractions
from .suites import DEFAULT_SEED, SUITES
from .wallcross import (StabilityData, forward_transform, invert_transform,
                        lie_to_text, master_identity_residual, parse_lie_text)


def parse_quiver_text(text: str) -> Quiver:
    """Line-oriented format: `vertex <name>` and `edge <src> <dst>` records,
    `#` comments, blank lines ignored."""
    vertices = []
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "vertex" and len(parts) == 2:
            vertices.append(parts[1])
        elif parts[0] == "edge" and len(parts) == 3:
            edges.append((parts[1], parts[2]))
        else:
            raise EvalError(f"bad quiver record on line {lineno}: {raw!r}")
    return Quiver(tuple(vertices), tuple(edges))


def load_quiver(path: str) -> Quiver:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_quiver_text(fh.read())


def parse_grade(q: Quiver, text: str) -> tuple:
    text = text.strip()
    if text.startswith("e"):
        return q.unit(text[1:])
    if text.startswith("(") and text.endswith(")"):
        return tuple(int(x) for x in text[1:-1].split(","))
    raise EvalError(f"bad grade {text!r}; use e<vertex> or (d1,d2,...)")


def parse_state(q: Quiver, text: str) -> GradedElement:
    """`<expr>@<grade>` with block variables s_{i,a}."""
    if "@" not in text:
        raise EvalError(f"state {text!r} must have the form expr@grade")
    expr, grade = text.rsplit("@", 1)
    poly = parse_laurent(expr, var="\x00never")
    return GradedElement(q, parse_grade(q, grade), poly)


def load_stability(path: str) -> StabilityData:
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    slope = [Fraction(s) if isinstance(s, str) else Fraction(s) for s in data["slope"]]
    return StabilityData.make(tuple(data["rank"]), tuple(slope),
                              {k: tuple(v) for k, v in data["frames"].items()})


def load_table(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        data = json.load(fh)
    out = {}
    for key, expr in data.items():
        alpha = tuple(int(x) for x in key.strip("()").split(","))
        out[alpha] = parse_lie_text(expr)
    return out


def dump_table(table: dict) -> str:
    obj = {"(" + ",".join(str(a) for a in alpha) + ")": lie_to_text(v)
           for alpha, v in sorted(table.items())}
    return json.dumps(obj, indent=2, sort_keys=True)


def _print_value(v) -> str:
    if isinstance(v, (LaurentPoly, PolyFraction)):
        return str(v)
    return str(v)


def cmd_residue(args) -> int:
    if args.kind == "coh":
        poly = parse_laurent(args.expr, var=args.var or "u")
        print(_print_value(residue_coh(poly, args.var or "u")))
        return 0
    f, content = parse_rational(args.expr, args.var or "z")
    kind = K_THEORY if args.kind == "k" else NAIVE
    value = residue(f, kind)
    if not (content == LP_ONE):
        value = PolyFraction.of(value) / PolyFraction.of(content)
    print(_print_value(value))
    return 0


def cmd_expand(args) -> int:
    f, content = parse_rational(args.expr, args.var)
    ser = expand_at(f, args.point, args.order)
    if not (content == LP_ONE):
        ser = ser * PolyFraction(LP_ONE, content)
    print(str(ser))
    return 0


def cmd_pfrac(args) -> int:
    f, content = parse_rational(args.expr, args.var)
    if not (content == LP_ONE):
        raise EvalError("pfrac expects a denominator built from (1 - c z^n) factors only")
    print(str(partial_fractions(f)))
    return 0


def cmd_hopf(args) -> int:
    ints = [int(x) for x in args.args]
    if args.action == "star":
        print(str(star(PhiElement.basis(ints[0]), PhiElement.basis(ints[1]))))
    elif args.action == "pair":
        print(str(phi_pair(PhiElement.basis(ints[0]), ints[1])))
    elif args.action == "coproduct":
        pairs = coproduct(PhiElement.basis(ints[0]))
        print(" + ".join(f"({l}) (x) ({r})" for l, r in pairs))
    elif args.action == "chern":
        print(str(chern_character(PhiElement.basis(ints[0]))))
    elif args.action == "translation":
        print(str(translation_pairing(ints[0], ints[1])))
    else:
        raise EvalError(f"unknown hopf action {args.action!r}")
    return 0


def cmd_vertex(args) -> int:
    q = load_quiver(args.quiver)
    f = parse_state(q, args.f)
    g = parse_state(q, args.g)
    if args.kernel:
        print(str(vertex_kernel(f, g)))
    else:
        print(str(vertex_shuffle(f, g)))
    return 0


def cmd_bracket(args) -> int:
    q = load_quiver(args.quiver)
    f = parse_state(q, args.f)
    g = parse_state(q, args.g)
    print(str(lie_bracket(f, g)))
    return 0


def cmd_axioms(args) -> int:
    q = load_quiver(args.quiver)
    f = parse_state(q, args.f)
    g = parse_state(q, args.g)
    h = parse_state(q, args.h) if args.h else None
    ok, witness = axiom_check(q, args.which, f, g, h)
    print(f"{args.which}: {'PASS' if ok else 'FAIL'}")
    if witness is not None:
        print(f"differing coefficient {witness['coefficient']} at {witness['monomial']}")
    return 0 if ok else 1


def cmd_wallcross(args) -> int:
    stability = load_stability(args.stability)
    if args.action == "forward":
        table = load_table(args.table)
        alpha = tuple(int(x) for x in args.alpha.strip("()").split(","))
        print(lie_to_text(forward_transform(table, args.k, alpha, stability)))
    elif args.action == "invert":
        table = load_table(args.table)
        print(dump_table(invert_transform(table, args.k, stability)))
    elif args.action == "master":
        table = load_table(args.table)
        table2 = load_table(args.table2) if args.table2 else table
        alpha = tuple(int(x) for x in args.alpha.strip("()").split(","))
        print(lie_to_text(master_identity_residual(table, table2, args.k, args.k2,
                                                   alpha, stability)))
    else:
        raise EvalError(f"unknown wallcross action {args.action!r}")
    return 0


def cmd_suite(args) -> int:
    fn = SUITES.get(args.name)
    if fn is None:
        raise EvalError(f"unknown suite {args.name!r}; choose from {sorted(SUITES)}")
    kwargs = {}
    if args.name == "residue-constraints":
        kwargs = {"n_max": args.nmax, "k_max": args.kmax}
    elif args.name == "residue-oracle":
        kwargs = {"count": args.count, "seed": args.seed}
    elif args.name == "residue-theorem":
        kwargs = {"seed": args.seed}
    elif args.name == "diagonal-expansion":
        kwargs = {"order": args.order}
    elif args.name in ("vertex-axioms", "reduced"):
        kwargs = {"seed": args.seed, "per_config": args.count if args.count != 200 else 20}
    elif args.name == "conner-floyd":
        kwargs = {"count": args.count if args.count != 200 else 50, "seed": args.seed}
    cases = fn(**kwargs)
    npass = 0
    for name, ok, detail in cases:
        status = "PASS" if ok else "FAIL"
        line = f"{status} {name}"
        if detail:
            line += f": {detail}"
        print(line)
        npass += ok
    print(f"PASS {npass}/{len(cases)}")
    return 0 if npass == len(cases) else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="kvertex",
        description="Exact engine for residues, multiplicative expansions and "
                    "vertex operations on quiver character rings.")
    sub = p.add_subparsers(dest="verb", required=True)

    pr = sub.add_parser("residue", help="apply a residue map to a rational expression")
    pr.add_argument("expr")
    pr.add_argument("--kind", choices=("k", "naive", "coh"), default="k")
    pr.add_argument("--var", default=None)
    pr.set_defaults(fn=cmd_residue)

    pe = sub.add_parser("expand", help="formal series expansion at 0, infinity or 1")
    pe.add_argument("expr")
    pe.add_argument("--point", choices=("zero", "infinity", "one"), required=True)
    pe.add_argument("--order", type=int, required=True)
    pe.add_argument("--var", default="z")
    pe.set_defaults(fn=cmd_expand)

    pp = sub.add_parser("pfrac", help="partial fractions over the cyclotomic cover")
    pp.add_argument("expr")
    pp.add_argument("--var", default="z")
    pp.set_defaults(fn=cmd_pfrac)

    ph = sub.add_parser("hopf", help="dual Hopf algebra operations")
    ph.add_argument("action", choices=("star", "pair", "coproduct", "chern", "translation"))
    ph.add_argument("args", nargs="+")
    ph.set_defaults(fn=cmd_hopf)

    pv = sub.add_parser("vertex", help="vertex operation on quiver states")
    pv.add_argument("--quiver", required=True)
    pv.add_argument("--f", required=True)
    pv.add_argument("--g", required=True)
    pv.add_argument("--kernel", action="store_true")
    pv.set_defaults(fn=cmd_vertex)

    pb = sub.add_parser("bracket", help="residue bracket of degree-0 states")
    pb.add_argument("--quiver", required=True)
    pb.add_argument("--f", required=True)
    pb.add_argument("--g", required=True)
    pb.set_defaults(fn=cmd_bracket)

    pa = sub.add_parser("axioms", help="check one vertex-algebra axiom")
    pa.add_argument("--quiver", required=True)
    pa.add_argument("--which", choices=("vacuum", "skew", "weak_assoc", "locality"),
                    required=True)
    pa.add_argument("--f", required=True)
    pa.add_argument("--g", required=True)
    pa.add_argument("--h", default=None)
    pa.set_defaults(fn=cmd_axioms)

    pw = sub.add_parser("wallcross", help="framed-invariant transforms")
    pw.add_argument("action", choices=("forward", "invert", "master"))
    pw.add_argument("--stability", required=True)
    pw.add_argument("--table", required=True)
    pw.add_argument("--table2", default=None)
    pw.add_argument("--k", required=True)
    pw.add_argument("--k2", default=None)
    pw.add_argument("--alpha", default=None)
    pw.set_defaults(fn=cmd_wallcross)

    ps = sub.add_parser("suite", help="run a batch property suite")
    ps.add_argument("name")
    ps.add_argument("--nmax", type=int, default=6)
    ps.add_argument("--kmax", type=int, default=4)
    ps.add_argument("--count", type=int, default=200)
    ps.add_argument("--order", type=int, default=12)
    ps.add_argument("--seed", type=int,
                    default=int(os.environ.get("KVERTEX_SUITE_SEED", DEFAULT_SEED)))
    ps.set_defaults(fn=cmd_suite)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except (EvalError, ValueError, KeyError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
