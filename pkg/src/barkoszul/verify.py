"""Identity suites: every check here is exact, so a single failure is a bug.

Each suite returns a :class:`SuiteResult` with the number of cases checked
and the first counterexample.  Randomness comes only from
``random.Random(seed)`` seeded per suite, so reports are reproducible.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .cochains import (
    BarCochain,
    TaggedForm,
    _monomials,
    bar_cochain_differential,
    change_frame,
    evaluate_on_koszul,
    form_basis,
    group_act_on_form,
    koszul_cochain_differential,
    naive_koszul_cochain_differential,
    phi_star,
    psi_star_evaluate,
    quantum_partial,
    reynolds,
    upsilon,
    upsilon_evaluate,
)
from .cohomology import dstar_matrix
from .groups import EigenData
from .homology import homology_chain, psi_star_twisted, psi_star_untwisted, tensor_functor_image
from .linalg import LinearMap, nullspace, solve
from .polynomial import Polynomial, SkewElement, act_on_polynomial
from .psi import PsiContext, psi, psi_standard
from .resolutions import (
    BarChain,
    KoszulChain,
    act_on_bar_chain,
    act_on_koszul_chain,
    bar_differential,
    bar_tensor,
    koszul_basis,
    koszul_differential,
    koszul_tensor,
    phi,
)
from .scalars import zeta_power

__all__ = [
    "VerifyConfig",
    "SuiteResult",
    "SUITES",
    "run_suite",
    "run_suites",
    "format_report",
    "random_polynomial",
    "random_invertible",
    "monomial_tuples",
    "act_on_skew",
]


@dataclass
class VerifyConfig:
    max_p: int = 4
    max_degree: int = 4
    cases: int = 500
    seed: int = 0


@dataclass
class SuiteResult:
    name: str
    cases: int = 0
    failures: int = 0
    first_failure: str | None = None

    @property
    def ok(self):
        return self.failures == 0

    def check(self, condition, describe):
        self.cases += 1
        if not condition:
            self.failures += 1
            if self.first_failure is None:
                self.first_failure = describe() if callable(describe) else describe


# -- generators ---------------------------------------------------------------

def monomial_tuples(n, k, max_total):
    """All k-tuples of exponent vectors in n variables with total degree <= max_total."""
    if k == 0:
        yield ()
        return
    for d in range(max_total + 1):
        for e in _monomials(n, d):
            for rest in monomial_tuples(n, k - 1, max_total - d):
                yield (e,) + rest


def _random_exp(rng, n, max_deg):
    d = rng.randint(0, max_deg)
    e = [0] * n
    for _ in range(d):
        e[rng.randrange(n)] += 1
    return tuple(e)


def _random_scalar(rng, order):
    c = rng.choice([1, 1, -1, 2, -3, Fraction(1, 2)])
    if order > 2 and rng.random() < 0.3:
        c = c * zeta_power(order, rng.randrange(order))
    return c


def random_polynomial(rng, n, max_deg, terms=3, order=1):
    f = {}
    for _ in range(rng.randint(1, terms)):
        f[_random_exp(rng, n, max_deg)] = _random_scalar(rng, order)
    return Polynomial(n, f)


def random_invertible(rng, n, lo=-2, hi=2):
    while True:
        m = LinearMap([[rng.randint(lo, hi) for _ in range(n)] for _ in range(n)])
        if m.det():
            return m


def _random_form(rng, G, g, p, max_deg):
    n = G.dim
    J = tuple(sorted(rng.sample(range(n), p)))
    f = random_polynomial(rng, n, max_deg, 2, G.field_order)
    return TaggedForm.single(g, f, J)


def act_on_skew(a, x, G):
    """a.(f gbar) = (a.f) (a g a^-1)bar."""
    mat = G.elements[a]
    out = {}
    for g, f in x.components.items():
        k = G.conj(a, g)
        img = act_on_polynomial(mat, f)
        out[k] = out[k] + img if k in out else img
    return SkewElement(G, out)


def _show(polys):
    return "(" + ", ".join(str(f) for f in polys) + ")"


# -- suites -------------------------------------------------------------------

def suite_chainmap(G, cfg):
    """Psi_{p-1} delta_p = d_p Psi_p, plus delta^2 = 0 and d^2 = 0."""
    res = SuiteResult("chainmap")
    rng = random.Random(cfg.seed)
    exhaustive_p = min(cfg.max_p, 3)
    for n in (1, 2):
        ctx = PsiContext.standard(n, max(cfg.max_p, 1))
        for p in range(1, exhaustive_p + 1):
            for keys in monomial_tuples(n, p + 2, cfg.max_degree):
                c = BarChain._raw(p, n, {keys: 1})
                db = bar_differential(c)
                lhs = psi(ctx, db)
                rhs = koszul_differential(psi(ctx, c)) if p >= 1 else psi(ctx, c)
                res.check(lhs == rhs, lambda: f"n={n} p={p} {c}: Psi(delta c) = {lhs}, d Psi(c) = {rhs}")
                if p >= 2:
                    res.check(not bar_differential(db), lambda: f"delta^2 != 0 on {c}")
    # random: n = 3 (or the group's dimension), top p, higher degree
    dims = sorted({3, G.dim})
    for n in dims:
        ctx = PsiContext.standard(n, cfg.max_p)
        for _ in range(cfg.cases):
            p = cfg.max_p
            keys = [(0,) * n] + [_random_exp(rng, n, 3) for _ in range(p)] + [(0,) * n]
            keys[0] = _random_exp(rng, n, 1)
            keys[-1] = _random_exp(rng, n, 1)
            c = BarChain._raw(p, n, {tuple(keys): 1})
            lhs = psi(ctx, bar_differential(c))
            rhs = koszul_differential(psi(ctx, c))
            res.check(lhs == rhs, lambda: f"n={n} p={p} {c}: Psi(delta c) = {lhs}, d Psi(c) = {rhs}")
    # non-standard bases, in standard coordinates
    for _ in range(max(cfg.cases // 25, 5)):
        n = G.dim
        B = random_invertible(rng, n, -1, 1)
        ctx = PsiContext(B, cfg.max_p)
        p = rng.randint(1, min(cfg.max_p, 3))
        c = bar_tensor([Polynomial.constant(n, 1)] + [random_polynomial(rng, n, 2, 2) for _ in range(p)]
                       + [Polynomial.constant(n, 1)])
        lhs = psi_standard(ctx, bar_differential(c))
        rhs = koszul_differential(psi_standard(ctx, c))
        res.check(lhs == rhs, lambda: f"basis {B!r}, {c}")
    # d^2 = 0 on Koszul chains
    for n in (1, 2, 3):
        for p in range(2, n + 1):
            for kc in koszul_basis(n, p):
                res.check(not koszul_differential(koszul_differential(kc)), lambda: f"d^2 != 0 on {kc}")
    return res


def suite_psi_phi(G, cfg):
    """Psi_B Phi = identity on Koszul chains (standard and the group's eigenbases)."""
    res = SuiteResult("psi-phi")
    rng = random.Random(cfg.seed + 1)
    for n in (1, 2, 3):
        ctx = PsiContext.standard(n, max(cfg.max_p, n))
        for p in range(0, min(cfg.max_p, n) + 1):
            for kc in koszul_basis(n, p):
                res.check(psi(ctx, phi(kc)) == kc, lambda: f"n={n}: Psi(Phi({kc})) = {psi(ctx, phi(kc))}")
                left, right = _random_exp(rng, n, 2), _random_exp(rng, n, 2)
                w = next(iter(kc.terms))[2]
                kc2 = KoszulChain._raw(p, n, {(left, right, w): 1})
                res.check(psi(ctx, phi(kc2)) == kc2, lambda: f"n={n}: Psi(Phi({kc2})) mismatch")
    n = G.dim
    for g in range(G.order):
        eig = G.eigen(g)
        ctx = PsiContext(eig.basis, max(cfg.max_p, n))
        for p in range(0, min(cfg.max_p, n) + 1):
            for kc in koszul_basis(n, p):
                std = act_on_koszul_chain(eig.basis, kc)
                res.check(psi_standard(ctx, phi(std)) == std, lambda: f"basis of {G.label(g)}: {kc}")
    return res


def suite_phi_upsilon(G, cfg):
    """Phi^* Upsilon = id on basis forms; Upsilon(d^* a) = delta^* Upsilon(a);
    (d^*)^2 = 0; fast d^* = naive d^*; d^* = 0 at g = 1; Reynolds idempotent."""
    res = SuiteResult("phi-upsilon")
    rng = random.Random(cfg.seed + 2)
    n = G.dim
    top = min(cfg.max_p, 3, n)
    for g in range(G.order):
        for p in range(0, top + 1):
            for d in range(cfg.max_degree + 1):
                for alpha in form_basis(n, p, d, g):
                    back = phi_star(upsilon(alpha, G), p, G)
                    res.check(back == alpha, lambda: f"Phi*(Upsilon({alpha.render(G)})) = {back.render(G)}")
    for _ in range(max(cfg.cases // 10, 10)):
        g = rng.randrange(G.order)
        p = rng.randint(0, min(top, n - 1))
        alpha = _random_form(rng, G, g, p, 2) + _random_form(rng, G, rng.randrange(G.order), p, 2)
        da = koszul_cochain_differential(alpha, G)
        res.check(da == naive_koszul_cochain_differential(alpha, G), lambda: f"fast/naive d* differ on {alpha.render(G)}")
        res.check(not koszul_cochain_differential(da, G), lambda: f"(d*)^2 != 0 on {alpha.render(G)}")
        if alpha.components() == [G.identity_index]:
            res.check(not da, lambda: f"d* != 0 at g = 1 on {alpha.render(G)}")
        args = [random_polynomial(rng, n, 2, 2) for _ in range(p + 1)]
        lhs = upsilon_evaluate(da, args, G)
        rhs = bar_cochain_differential(upsilon(alpha, G), G)(*args)
        res.check(lhs == rhs, lambda: f"Upsilon(d* a) != delta* Upsilon(a) for {alpha.render(G)} on {_show(args)}")
        r = reynolds(alpha, G)
        res.check(reynolds(r, G) == r, lambda: f"Reynolds not idempotent on {alpha.render(G)}")
        res.check(all(group_act_on_form(h, r, G) == r for h in range(G.order)),
                  lambda: f"Reynolds image not invariant for {alpha.render(G)}")
    # vanishing rule on basis vectors
    one = Polynomial.constant(n, 1)
    for g in range(G.order):
        eig = G.eigen(g)
        cols = [Polynomial.linear_form(c) for c in eig.basis.columns()]
        for p in range(1, top + 1):
            for J in combinations(range(n), p):
                alpha = TaggedForm.single(g, one, J)
                for idx in _index_tuples(n, p):
                    value = upsilon_evaluate(alpha, [cols[i] for i in idx], G)
                    expected = SkewElement(G, {g: one}) if tuple(idx) == J else SkewElement.zero(G)
                    res.check(value == expected, lambda: f"vanishing rule: {alpha.render(G)} on {idx}")
    return res


def _index_tuples(n, p):
    if p == 0:
        yield ()
        return
    for i in range(n):
        for rest in _index_tuples(n, p - 1):
            yield (i,) + rest


def suite_upsilon_psi_star(G, cfg):
    """Upsilon(a)(f_1..f_p) = a(Psi_{B_g}(1 (x) f_1 (x) ... (x) f_p (x) 1))."""
    res = SuiteResult("upsilon-psi-star")
    rng = random.Random(cfg.seed + 3)
    n = G.dim
    top = min(cfg.max_p, 3, n)
    one = Polynomial.constant(n, 1)
    for g in range(G.order):
        eig = G.eigen(g)
        ctx = PsiContext(eig.basis, max(top, 1))
        forms = {p: [TaggedForm.single(g, one, J) for J in combinations(range(n), p)] for p in range(top + 1)}
        for p in range(top + 1):
            for keys in monomial_tuples(n, p, cfg.max_degree):
                local = [Polynomial._raw(n, {e: 1}) for e in keys]
                args = [eig.from_basis(f) for f in local]
                chain = psi(ctx, bar_tensor([one] + local + [one]))
                for alpha in forms[p]:
                    lhs = upsilon_evaluate(alpha, args, G)
                    value = evaluate_on_koszul(alpha, chain, g, G, eig)
                    rhs = SkewElement(G, {g: value})
                    res.check(lhs == rhs, lambda: f"{alpha.render(G)} on {_show(args)}: Upsilon {lhs}, Psi* {rhs}")
    # random coefficients and polynomial arguments
    for _ in range(max(cfg.cases // 10, 10)):
        g = rng.randrange(G.order)
        p = rng.randint(0, top)
        alpha = _random_form(rng, G, g, p, 2)
        args = [random_polynomial(rng, n, 3, 2, G.field_order) for _ in range(p)]
        lhs = upsilon_evaluate(alpha, args, G)
        rhs = psi_star_evaluate(alpha, args, G)
        res.check(lhs == rhs, lambda: f"{alpha.render(G)} on {_show(args)}")
    return res


def suite_change_of_basis(G, cfg):
    """a.Upsilon_{g,B} = Upsilon_{aga^-1, aB}; a.d_{v,eps} a^-1 = d_{a.v,eps};
    Phi is GL(V)-equivariant; Z(g) preserves the g-component; action laws;
    basis independence in cohomology."""
    res = SuiteResult("change-of-basis")
    rng = random.Random(cfg.seed + 4)
    n = G.dim
    top = min(cfg.max_p, 3, n)
    per_group = max(cfg.cases // 5, 100)
    for t in range(per_group):
        a = t % G.order
        g = rng.randrange(G.order)
        eig = G.eigen(g)
        amat = G.elements[a]
        ainv = G.elements[G.inverse[a]]
        # quantum transformation law
        f = random_polynomial(rng, n, 4, 3, G.field_order)
        i = rng.randrange(n)
        moved = eig.transported(amat, G.conj(a, g))
        lhs = act_on_polynomial(amat, quantum_partial(act_on_polynomial(ainv, f), i, basis=eig))
        rhs = quantum_partial(f, i, basis=moved)
        res.check(lhs == rhs, lambda: f"a={G.label(a)} g={G.label(g)} i={i} f={f}")
        # change-of-basis rule for Upsilon
        p = rng.randint(0, top)
        alpha = _random_form(rng, G, g, p, 2)
        k = G.conj(a, g)
        relabeled = TaggedForm._raw(p, n, {(k, e, J): c for (_, e, J), c in alpha.terms.items()})
        args = [random_polynomial(rng, n, 3, 2) for _ in range(p)]
        pulled = [act_on_polynomial(ainv, x) for x in args]
        lhs = act_on_skew(a, upsilon_evaluate(alpha, pulled, G), G)
        rhs = upsilon_evaluate(relabeled, args, G, bases={k: moved})
        res.check(lhs == rhs, lambda: f"a={G.label(a)} alpha={alpha.render(G)} args={_show(args)}")
    # Phi equivariance for random invertible matrices
    for m in (1, 2, 3):
        for _ in range(20):
            h = random_invertible(rng, m)
            p = rng.randint(0, m)
            J = sorted(rng.sample(range(m), p))
            kc = koszul_tensor(random_polynomial(rng, m, 2, 2), random_polynomial(rng, m, 2, 2), J)
            res.check(act_on_bar_chain(h, phi(kc)) == phi(act_on_koszul_chain(h, kc)),
                      lambda: f"h={h!r} on {kc}")
    # centralizer stability and action laws
    for g in range(G.order):
        for _ in range(3):
            p = rng.randint(0, top)
            alpha = _random_form(rng, G, g, p, 2)
            for h in G.centralizers[g]:
                moved = group_act_on_form(h, alpha, G)
                res.check(moved.components() in ([g], []), lambda: f"Z(g) moved component: {alpha.render(G)} by {G.label(h)}")
            h1, h2 = rng.randrange(G.order), rng.randrange(G.order)
            lhs = group_act_on_form(G.mul(h1, h2), alpha, G)
            rhs = group_act_on_form(h1, group_act_on_form(h2, alpha, G), G)
            res.check(lhs == rhs, lambda: f"action law fails for {G.label(h1)}, {G.label(h2)} on {alpha.render(G)}")
    _basis_independence(G, cfg, rng, res)
    return res


def _other_eigenbasis(rng, eig):
    """B M with M invertible and mixing only vectors of equal eigenvalue."""
    n = eig.n
    ex = eig.eigenvalue_exponents
    while True:
        M = LinearMap([[rng.randint(-1, 2) if ex[i] == ex[j] else 0 for j in range(n)] for i in range(n)])
        if M.det() and not M.is_identity():
            return EigenData(eig.element_index, eig.basis @ M, ex, eig.order)
        if all(sum(1 for y in ex if y == x) == 1 for x in ex):
            M = LinearMap.diag([rng.choice([2, -1, 3]) for _ in range(n)])
            return EigenData(eig.element_index, eig.basis @ M, ex, eig.order)


def _basis_independence(G, cfg, rng, res):
    """For a d^*-cocycle a, Phi^*(Upsilon_B(a) - Upsilon_B'(a)) is a d^*-coboundary.

    a is rewritten in the frame B' before applying Upsilon_{B'}; the pushed-back
    difference is compared in the frame B.
    """
    n = G.dim
    for g in range(G.order):
        eig = G.eigen(g)
        other = _other_eigenbasis(rng, eig)
        for p in range(1, min(cfg.max_p, 3, n) + 1):
            d = 1
            rows, src, _ = dstar_matrix(G, p, d, [g])
            if not src:
                continue
            # cocycles: kernel of d^* (rows are images of src basis)
            transposed = [list(col) for col in zip(*rows)] if rows and rows[0] else []
            kernel = nullspace(transposed, len(src)) if transposed else [[1 if i == j else 0 for i in range(len(src))] for j in range(len(src))]
            for vec in kernel[:3]:
                alpha = TaggedForm._raw(p, n, {k: c for k, c in zip(src, vec) if c})
                comp = {(e, J): c for (_, e, J), c in alpha.terms.items()}
                moved = change_frame(comp, n, p, eig.basis, other.basis)
                alpha2 = TaggedForm._raw(p, n, {(g, e, J): c for (e, J), c in moved.items()})
                F = upsilon(alpha, G)
                F2 = upsilon(alpha2, G, bases={g: other})
                diff = BarCochain(p, lambda *xs: F(*xs) - F2(*xs), G, "difference")
                pushed = phi_star(diff, p, G).restrict(g)
                ok = _is_coboundary(G, g, pushed, p, d)
                res.check(ok, lambda: f"basis independence fails for {alpha.render(G)}")


def _is_coboundary(G, g, form, p, d):
    if not form:
        return True
    if p == 0 or d == 0:
        return False
    rows, src, tgt = dstar_matrix(G, p - 1, d - 1, [g])
    index = {k: i for i, k in enumerate(tgt)}
    rhs = [0] * len(tgt)
    for k, c in form.terms.items():
        if k not in index:
            return False
        rhs[index[k]] = c
    mat = [list(col) for col in zip(*rows)]
    return solve(mat, rhs) is not None


def suite_homology_oracle(G, cfg):
    """Closed-form (Psi_B)_* equals S(V)gbar (x)_{S(V)^e} Psi_B, both pairings."""
    res = SuiteResult("homology-oracle")
    rng = random.Random(cfg.seed + 5)
    n = G.dim
    for _ in range(cfg.cases):
        g = rng.randrange(G.order)
        p = rng.randint(0, min(cfg.max_p, n))
        polys = [random_polynomial(rng, n, 3, 2, G.field_order) for _ in range(p + 1)]
        c = homology_chain(g, polys)
        oracle = tensor_functor_image(c, G)
        closed = psi_star_twisted(c, G)
        res.check(closed == oracle, lambda: f"{c.render(G)}: closed {closed.render(G)}, functor {oracle.render(G)}")
        swapped = tensor_functor_image(c, G, side="swapped")
        res.check(psi_star_twisted(c, G, side="swapped") == swapped, lambda: f"swapped pairing on {c.render(G)}")
        if g == G.identity_index:
            res.check(psi_star_untwisted(c) == oracle, lambda: f"untwisted on {c.render(G)}")
    return res


SUITES = {
    "chainmap": suite_chainmap,
    "psi-phi": suite_psi_phi,
    "phi-upsilon": suite_phi_upsilon,
    "upsilon-psi-star": suite_upsilon_psi_star,
    "change-of-basis": suite_change_of_basis,
    "homology-oracle": suite_homology_oracle,
}


def run_suite(name, G, cfg=None):
    cfg = cfg or VerifyConfig()
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}")
    return SUITES[name](G, cfg)


def run_suites(names, G, cfg=None):
    cfg = cfg or VerifyConfig()
    if names == ["all"] or names == "all":
        names = list(SUITES)
    return [run_suite(name, G, cfg) for name in names]


def format_report(G, cfg, results):
    lines = [
        f"group: {G.source}  order: {G.order}  dim: {G.dim}  hash: {G.fingerprint()}",
        f"field: Q(zeta_{G.field_order})",
        f"caps: max-p={cfg.max_p} max-degree={cfg.max_degree} cases={cfg.cases}",
        f"seed: {cfg.seed}",
    ]
    for r in results:
        status = "PASS" if r.ok else "FAIL"
        lines.append(f"suite {r.name}: {status}  cases={r.cases} failures={r.failures}")
        if r.first_failure:
            lines.append(f"  first counterexample: {r.first_failure}")
    lines.append("result: " + ("PASS" if all(r.ok for r in results) else "FAIL"))
    return "\n".join(lines)
