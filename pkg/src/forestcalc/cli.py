"""Command-line interface.

    forestcalc coproduct "[[][]]"
    forestcalc antipode "[[][]]" --method geometric
    forestcalc convolve a.coef b.coef --out c.coef
    forestcalc birkhoff phi.coef --scheme ms --degree 5 --out-minus m.coef --out-plus p.coef
    forestcalc graft "[]" "[[]]"
    forestcalc magnus --order 5
    forestcalc bch --order 4
    forestcalc butcher "[]" "[[]]"
    forestcalc contract-coproduct "[[[]]]"
    forestcalc substitute alpha.coef beta.coef --order 3
    forestcalc elemdiff "[[]]" --field f.vf
    forestcalc bseries compose a.bs b.bs --order 4 [--verify-field f.vf]
    forestcalc operad check --which prelie --max-arity 4
    forestcalc check --which novikov --table t.tab
"""

from __future__ import annotations

import argparse
import sys

from . import fileformats
from .bseries import BSeries, bseries_compose, bseries_eval
from .ck_hopf import TensorSum, TreeSum, antipode, coproduct
from .conv import convolve
from .forests import parse_forest, parse_tree
from .nap import butcher_product
from .prelie import bch, graft, magnus_omega
from .renorm import birkhoff, default_window
from .structures import novikov_prototype, shuffle_axiom_sweep, structure_axiom_check
from .substitution import contraction_coproduct
from .vector_fields import cayley, parse_vector_field


def render_treesum(x: TreeSum) -> str:
    if x.is_zero():
        return "0"
    keys = sorted(x.support(), key=lambda f: (f.vertex_count, f.render()))
    return " + ".join(f"{x.coefficient(f)} * {f.render()}" for f in keys)


def render_tensorsum(x: TensorSum) -> str:
    if x.is_zero():
        return "0"
    keys = sorted(x.support(), key=lambda k: tuple((f.vertex_count, f.render()) for f in k))
    return " + ".join(
        f"{x.coefficient(k)} * " + " | ".join(f.render() for f in k) for k in keys
    )


def _cmd_coproduct(args) -> int:
    print(render_tensorsum(coproduct(parse_forest(args.forest))))
    return 0


def _cmd_antipode(args) -> int:
    print(render_treesum(antipode(parse_forest(args.forest), args.method)))
    return 0


def _cmd_convolve(args) -> int:
    with open(args.left) as fh:
        window = None
        if "z^" in fh.read():
            fh.seek(0)
            pole = fileformats.file_pole_order(fh)
            fh.seek(0)
            header = next(line for line in fh if line.startswith("#truncation"))
            window = default_window(pole, int(header.split()[1]))
        fh.seek(0)
        left = fileformats.read_functional(fh, window)
    with open(args.right) as fh:
        right = fileformats.read_functional(fh, window)
    result = convolve(left, right)
    with open(args.out, "w") as fh:
        fileformats.write_functional(result, fh)
    print(f"wrote {args.out} (truncation {result.truncation})")
    return 0


def _cmd_birkhoff(args) -> int:
    if args.scheme != "ms":
        print(f"unknown scheme {args.scheme!r}; only minimal subtraction (ms) is built in", file=sys.stderr)
        return 2
    with open(args.functional) as fh:
        pole = fileformats.file_pole_order(fh)
    window = default_window(pole, args.degree)
    with open(args.functional) as fh:
        phi = fileformats.read_functional(fh, window)
    pair = birkhoff(phi.restrict(args.degree), method=args.method)
    with open(args.out_minus, "w") as fh:
        fileformats.write_functional(pair.phi_minus, fh)
    with open(args.out_plus, "w") as fh:
        fileformats.write_functional(pair.phi_plus, fh)
    print(f"wrote {args.out_minus} and {args.out_plus} (window {window})")
    return 0


def _cmd_graft(args) -> int:
    print(render_treesum(graft(parse_tree(args.left), parse_tree(args.right))))
    return 0


def _cmd_magnus(args) -> int:
    print(render_treesum(magnus_omega(args.order)))
    return 0


def _cmd_bch(args) -> int:
    print(render_treesum(bch(parse_tree("[:0]"), parse_tree("[:1]"), args.order)))
    return 0


def _cmd_butcher(args) -> int:
    print(butcher_product(parse_tree(args.left), parse_tree(args.right)).render())
    return 0


def _cmd_contract_coproduct(args) -> int:
    print(render_tensorsum(contraction_coproduct(parse_tree(args.tree))))
    return 0


def _cmd_substitute(args) -> int:
    from .substitution import substitution_star

    with open(args.alpha) as fh:
        alpha = fileformats.read_functional(fh)
    with open(args.beta) as fh:
        beta = fileformats.read_functional(fh)
    result = substitution_star(alpha.restrict(args.order), beta.restrict(args.order))
    fileformats.write_functional(result, sys.stdout)
    return 0


def _cmd_elemdiff(args) -> int:
    with open(args.field) as fh:
        field = parse_vector_field(fh.read())
    tree = parse_tree(args.tree)
    print(cayley(tree, [field]).render())
    return 0


def _cmd_bseries_compose(args) -> int:
    with open(args.left) as fh:
        alpha = fileformats.read_bseries(fh)
    with open(args.right) as fh:
        beta = fileformats.read_bseries(fh)
    order = args.order or min(alpha.order, beta.order)
    alpha = BSeries(alpha.empty_coeff, alpha.tree_coeffs, min(alpha.order, order))
    beta = BSeries(beta.empty_coeff, beta.tree_coeffs, min(beta.order, order))
    result = bseries_compose(alpha, beta)
    fileformats.write_bseries(result, sys.stdout)
    if args.verify_field:
        with open(args.verify_field) as fh:
            field = parse_vector_field(fh.read())
        lhs = bseries_eval(beta, field).compose(bseries_eval(alpha, field))
        rhs = bseries_eval(result, field)
        ok = lhs.agrees_with(rhs, order)
        print(f"# composition law verified against {args.verify_field}: {'pass' if ok else 'FAIL'}")
        return 0 if ok else 1
    return 0


def _cmd_bseries_from_rk(args) -> int:
    from .bseries import rk_to_bseries

    with open(args.tableau) as fh:
        a_matrix, weights = fileformats.read_tableau(fh)
    fileformats.write_bseries(rk_to_bseries(a_matrix, weights, args.order), sys.stdout)
    return 0


def _cmd_operad_check(args) -> int:
    from .operads import AssocOperad, ComOperad, PreLieOperad, operad_axiom_suite

    which = {"assoc": AssocOperad, "com": ComOperad, "prelie": PreLieOperad}
    report = operad_axiom_suite(which[args.which](), args.max_arity)
    print(report.summary())
    for failure in report.failures[:20]:
        print(f"  {failure.axiom}: {failure.detail}")
    return 0 if report.ok else 1


def _cmd_check(args) -> int:
    if args.which == "shuffle":
        report = shuffle_axiom_sweep()
    else:
        if args.which == "novikov" and args.table is None:
            carrier = novikov_prototype()
        else:
            if args.table is None:
                print("a --table file is required for this check", file=sys.stderr)
                return 2
            with open(args.table) as fh:
                carrier = fileformats.read_product_table(fh)
        report = structure_axiom_check(carrier, args.which)
    print(report.summary())
    for failure in report.failures[:20]:
        print(f"  {failure}")
    return 0 if report.ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="forestcalc", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("coproduct", help="admissible-cut coproduct of a forest")
    p.add_argument("forest")
    p.set_defaults(func=_cmd_coproduct)

    p = sub.add_parser("antipode", help="antipode of a forest")
    p.add_argument("forest")
    p.add_argument("--method", default="left_recursion",
                   choices=("left_recursion", "right_recursion", "geometric"))
    p.set_defaults(func=_cmd_antipode)

    p = sub.add_parser("convolve", help="convolution of two coefficient files")
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_convolve)

    p = sub.add_parser("birkhoff", help="Birkhoff decomposition of a Laurent character")
    p.add_argument("functional")
    p.add_argument("--scheme", default="ms")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--method", default="recursive", choices=("recursive", "iterative"))
    p.add_argument("--out-minus", required=True)
    p.add_argument("--out-plus", required=True)
    p.set_defaults(func=_cmd_birkhoff)

    p = sub.add_parser("graft", help="pre-Lie grafting of two trees")
    p.add_argument("left")
    p.add_argument("right")
    p.set_defaults(func=_cmd_graft)

    p = sub.add_parser("magnus", help="pre-Lie Magnus expansion of the generator")
    p.add_argument("--order", type=int, required=True)
    p.set_defaults(func=_cmd_magnus)

    p = sub.add_parser("bch", help="Baker-Campbell-Hausdorff series of two colours")
    p.add_argument("--order", type=int, required=True)
    p.set_defaults(func=_cmd_bch)

    p = sub.add_parser("butcher", help="Butcher product of two trees")
    p.add_argument("left")
    p.add_argument("right")
    p.set_defaults(func=_cmd_butcher)

    p = sub.add_parser("contract-coproduct", help="extraction-contraction coproduct")
    p.add_argument("tree")
    p.set_defaults(func=_cmd_contract_coproduct)

    p = sub.add_parser("substitute", help="substitution product of coefficient files")
    p.add_argument("alpha")
    p.add_argument("beta")
    p.add_argument("--order", type=int, required=True)
    p.set_defaults(func=_cmd_substitute)

    p = sub.add_parser("elemdiff", help="elementary differential of a tree")
    p.add_argument("tree")
    p.add_argument("--field", required=True)
    p.set_defaults(func=_cmd_elemdiff)

    p = sub.add_parser("bseries", help="B-series operations")
    bsub = p.add_subparsers(dest="bseries_command", required=True)
    pc = bsub.add_parser("compose", help="compose two B-series files")
    pc.add_argument("left")
    pc.add_argument("right")
    pc.add_argument("--order", type=int)
    pc.add_argument("--verify-field")
    pc.set_defaults(func=_cmd_bseries_compose)
    pr = bsub.add_parser("from-rk", help="elementary weights of a Runge-Kutta tableau")
    pr.add_argument("tableau")
    pr.add_argument("--order", type=int, required=True)
    pr.set_defaults(func=_cmd_bseries_from_rk)

    p = sub.add_parser("operad", help="operad axiom suites")
    osub = p.add_subparsers(dest="operad_command", required=True)
    oc = osub.add_parser("check", help="run the axiom suite for an operad")
    oc.add_argument("--which", required=True, choices=("assoc", "com", "prelie"))
    oc.add_argument("--max-arity", type=int, default=3)
    oc.set_defaults(func=_cmd_operad_check)

    p = sub.add_parser("check", help="structure axiom checks")
    p.add_argument("--which", required=True,
                   choices=("left_prelie", "right_prelie", "left_nap", "novikov",
                            "assosymmetric", "zinbiel_nap", "shuffle"))
    p.add_argument("--table")
    p.set_defaults(func=_cmd_check)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
