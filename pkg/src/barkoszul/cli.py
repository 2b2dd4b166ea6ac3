"""Command line: ``barkoszul verify | apply | dims``.

Exit status: 0 success, 1 an identity failed (or a degree cap was hit),
2 usage, parse or group-load errors.  The input grammar is documented in
:mod:`barkoszul.syntax`.
"""

from __future__ import annotations

import argparse
import sys

from .cochains import (
    TaggedForm,
    group_act_on_form,
    koszul_cochain_differential,
    phi_star,
    psi_star_evaluate,
    render_skew_with_symbol,
    reynolds,
    upsilon,
    upsilon_evaluate,
)
from .cohomology import BlockTooLarge, cohomology_dimensions
from .groups import GroupTooLarge, load_group
from .homology import homology_chain, psi_star_twisted
from .psi import DegreeCapExceeded, PsiContext, psi_standard
from .resolutions import bar_tensor, koszul_tensor, phi
from .syntax import (
    ParseError,
    parse_args,
    parse_form_summands,
    parse_homology_chain,
    parse_koszul_tensor,
    parse_polynomial,
    split_top,
)
from .verify import SUITES, VerifyConfig, format_report, run_suites

MAPS = ("psi", "phi", "upsilon", "psistar", "phistar", "dstar", "reynolds", "act", "homology")


class UsageError(Exception):
    pass


def _positive(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def _range(text):
    """``a:b`` (inclusive) or ``a``; a > b gives an empty range."""
    try:
        if ":" in text:
            a, b = text.split(":", 1)
            return range(int(a), int(b) + 1)
        return range(int(text), int(text) + 1)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad range {text!r}, expected a:b") from None


def build_parser():
    ap = argparse.ArgumentParser(prog="barkoszul", description=__doc__.splitlines()[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--group", default="klein4-3d", help="builtin name or group spec file")
    common.add_argument("--max-p", type=_positive, default=4)
    common.add_argument("--max-degree", type=_positive, default=4)
    common.add_argument("--seed", type=int, default=0)
    sub = ap.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", parents=[common], help="run identity suites")
    v.add_argument("--suite", default="all", choices=list(SUITES) + ["all"])
    v.add_argument("--cases", type=_positive, default=500, help="random cases per randomized check")

    a = sub.add_parser("apply", parents=[common], help="apply a map to an input")
    a.add_argument("map", choices=MAPS)
    a.add_argument("input", nargs="?", help="bar tensor, Koszul tensor or homology chain")
    a.add_argument("--form", help="tagged form, e.g. \"[h](f)^dv1^dv2\"")
    a.add_argument("--args", default="", help="comma-separated polynomial arguments")
    a.add_argument("--by", help="group element label for 'act'")
    a.add_argument("--basis-of", help="use the eigenbasis of this element for psi")

    d = sub.add_parser("dims", parents=[common], help="cohomology dimension tables")
    d.add_argument("--g", default="all", help="element label or 'all' (class representatives)")
    d.add_argument("--p", type=_range, default=range(0, 4), dest="p_range")
    d.add_argument("--D", type=_range, default=range(-2, 3), dest="D_range")
    d.add_argument("--invariant", action="store_true", help="restrict to centralizer invariants")
    d.add_argument("--format", choices=("text", "rows"), default="text")
    d.add_argument("--max-block", type=_positive, default=4000)
    return ap


# -- apply ---------------------------------------------------------------------

def _read_form(G, text):
    if not text:
        raise UsageError("this map needs --form")
    n = G.dim
    summands = parse_form_summands(text, n, G.field_order)
    symbols = {s for _, _, s, _ in summands}
    if len(symbols) > 1:
        raise UsageError("all summands must share one symbolic coefficient (or none)")
    degrees = {len(w) for _, _, _, w in summands}
    if len(degrees) != 1:
        raise UsageError("summands have different form degrees")
    total = None
    for label, coeff, _, wedge in summands:
        try:
            g = G.resolve(label)
        except KeyError as exc:
            raise UsageError(str(exc.args[0])) from None
        term = TaggedForm.single(g, coeff, wedge)
        total = term if total is None else total + term
    return total, symbols.pop()


def _render_form(form, G, symbol):
    if symbol is None:
        return form.render(G)
    if not form:
        return "0"
    text = form.render(G)
    # every coefficient is multiplied by the symbol
    return " + ".join(
        piece.replace(") ^", f")*{symbol} ^", 1) if ") ^" in piece else f"{piece}*{symbol}"
        for piece in _split_rendered(text)
    )


def _split_rendered(text):
    return [p.strip() for p, _ in split_top(text, "+")]


def cmd_apply(G, ns, out):
    n = G.dim
    m = G.field_order
    name = ns.map
    if name in ("psi", "phi", "homology"):
        if not ns.input:
            raise UsageError(f"{name} needs an input expression")
        if name == "psi":
            pieces = split_top(ns.input, "|")
            polys = [parse_polynomial(t, n, m, source=ns.input, offset=o) for t, o in pieces]
            if len(polys) < 2:
                raise ParseError("a bar tensor needs at least two factors", ns.input, 0)
            basis = G.eigen(G.resolve(ns.basis_of)).basis if ns.basis_of else None
            ctx = PsiContext(basis, ns.max_p) if basis is not None else PsiContext.standard(n, ns.max_p)
            print(psi_standard(ctx, bar_tensor(polys)), file=out)
        elif name == "phi":
            left, right, wedge = parse_koszul_tensor(ns.input, n, m)
            print(phi(koszul_tensor(left, right, wedge)), file=out)
        else:
            label, polys = parse_homology_chain(ns.input, n, m)
            g = G.resolve(label)
            eig = G.eigen(g)
            local = [eig.to_basis(f) for f in polys]
            c = homology_chain(g, local)
            if c.degree > ns.max_p:
                raise DegreeCapExceeded(f"degree {c.degree} exceeds the cap {ns.max_p}")
            print(psi_star_twisted(c, G).render(G), file=out)
        return 0

    alpha, symbol = _read_form(G, ns.form)
    if name in ("upsilon", "psistar", "phistar"):
        args = parse_args(ns.args, n, m)
        if name == "phistar":
            value = phi_star(upsilon(alpha, G), alpha.degree, G)
            print(_render_form(value, G, symbol), file=out)
            return 0
        if len(args) != alpha.degree:
            raise UsageError(f"a {alpha.degree}-form takes {alpha.degree} arguments, got {len(args)}")
        if alpha.degree > ns.max_p:
            raise DegreeCapExceeded(f"degree {alpha.degree} exceeds the cap {ns.max_p}")
        fn = upsilon_evaluate if name == "upsilon" else psi_star_evaluate
        value = fn(alpha, args, G)
        print(render_skew_with_symbol(value, symbol) if symbol else str(value), file=out)
        return 0
    if name == "dstar":
        print(_render_form(koszul_cochain_differential(alpha, G), G, symbol), file=out)
        return 0
    if symbol is not None:
        raise UsageError(f"{name} acts on coefficients; symbolic coefficients are not supported")
    if name == "reynolds":
        print(reynolds(alpha, G).render(G), file=out)
    else:
        if not ns.by:
            raise UsageError("act needs --by LABEL")
        print(group_act_on_form(G.resolve(ns.by), alpha, G).render(G), file=out)
    return 0


# -- dims ----------------------------------------------------------------------

def cmd_dims(G, ns, out):
    p_range, D_range = ns.p_range, ns.D_range
    if p_range and p_range.start < 0:
        raise UsageError("form degrees must be non-negative")
    if ns.g == "all":
        comps = G.class_representatives
    else:
        comps = [G.resolve(label) for label in ns.g.split(",")]
    rows = []
    totals = {}
    for g in comps:
        table = cohomology_dimensions(G, g, p_range, D_range, ns.invariant, ns.max_block)
        for (p, D), dim in sorted(table.items()):
            rows.append((G.label(g), p, D, dim))
            totals[(p, D)] = totals.get((p, D), 0) + dim
    if ns.invariant and ns.g == "all":
        rows.extend(("total", p, D, dim) for (p, D), dim in sorted(totals.items()))
    kind = "Z(g)-invariant" if ns.invariant else "full"
    if ns.format == "rows":
        print("component,p,D,dim", file=out)
        for r in rows:
            print(",".join(str(x) for x in r), file=out)
    else:
        print(f"# group {G.source} hash {G.fingerprint()} field Q(zeta_{G.field_order}) ({kind})", file=out)
        width = max([len("component")] + [len(r[0]) for r in rows])
        print(f"{'component':<{width}}  {'p':>3}  {'D':>4}  {'dim':>5}", file=out)
        for label, p, D, dim in rows:
            print(f"{label:<{width}}  {p:>3}  {D:>4}  {dim:>5}", file=out)
    return 0


# -- entry ---------------------------------------------------------------------

def main(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        G = load_group(ns.group)
    except (KeyError, ParseError, GroupTooLarge, ValueError) as exc:
        print(f"error: cannot load group: {exc.args[0] if exc.args else exc}", file=err)
        return 2
    try:
        if ns.command == "verify":
            cfg = VerifyConfig(ns.max_p, ns.max_degree, ns.cases, ns.seed)
            results = run_suites([ns.suite], G, cfg)
            print(format_report(G, cfg, results), file=out)
            return 0 if all(r.ok for r in results) else 1
        if ns.command == "apply":
            return cmd_apply(G, ns, out)
        return cmd_dims(G, ns, out)
    except ParseError as exc:
        print(f"parse error: {exc}", file=err)
        return 2
    except (UsageError, KeyError, BlockTooLarge) as exc:
        print(f"error: {exc.args[0] if exc.args else exc}", file=err)
        return 2
    except DegreeCapExceeded as exc:
        print(f"degree cap exceeded: {exc}", file=err)
        return 1


if __name__ == "__main__":
    sys.exit(main())
