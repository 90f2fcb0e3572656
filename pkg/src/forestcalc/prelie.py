"""Free pre-Lie algebra on rooted trees and the calculus of formal flows.

Grafting s -> t sums the attachments of s below every vertex of t; it is the
free left pre-Lie product.  On top of it live the universal morphism out of
the free algebra, the flow maps W and their Magnus inverse Omega (Bernoulli
coefficients B_i / i!), the transported group law a # b = a + e^{L_Omega(a)} b,
and the truncated star-exponential e^{*a} in the symmetric algebra whose
projection onto trees recovers W.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from .ck_hopf import TreeSum
from .forests import Forest, RootedTree, symmetry_factor
from .linear import bilinear


def _as_treesum(x: RootedTree | TreeSum) -> TreeSum:
    if isinstance(x, RootedTree):
        return TreeSum.from_tree(x)
    return x


def _graft_trees(s: RootedTree, t: RootedTree) -> TreeSum:
    """Attach s as a new branch at each vertex of t, summed."""
    results: dict[Forest, Fraction] = {}
    root_attach = RootedTree(t.children + (s,), t.color)
    results[Forest((root_attach,))] = Fraction(1)
    for idx, child in enumerate(t.children):
        rest = t.children[:idx] + t.children[idx + 1 :]
        for f, coeff in _graft_trees(s, child).items():
            grown = RootedTree(rest + f.trees, t.color)
            key = Forest((grown,))
            results[key] = results.get(key, Fraction(0)) + coeff
    return TreeSum(results)


def graft(s: RootedTree | TreeSum, t: RootedTree | TreeSum) -> TreeSum:
    """The free left pre-Lie product s -> t, extended bilinearly."""
    return bilinear(_graft_trees_keyed, _as_treesum(s), _as_treesum(t), TreeSum)


def _graft_trees_keyed(fs: Forest, ft: Forest) -> TreeSum:
    if len(fs) != 1 or len(ft) != 1:
        raise ValueError("grafting is defined on single trees (extended bilinearly)")
    return _graft_trees(fs.trees[0], ft.trees[0])


def tree_bracket(a: RootedTree | TreeSum, b: RootedTree | TreeSum) -> TreeSum:
    """[a, b] = a -> b - b -> a."""
    return graft(a, b) - graft(b, a)


def grafting_counts(t: RootedTree, u: RootedTree, v: RootedTree) -> tuple[int, Fraction]:
    """(N', M') for the cut/grafting multiplicities of v into crown t, trunk u.

    N' counts order-ideal partitions of v with crown t and trunk u;
    M' = sigma(t) sigma(u) / sigma(v) * N' counts graftings of t on u giving v.
    """
    from .ck_hopf import _tree_cuts

    n_prime = 0
    target = (Forest((t,)), Forest((u,)))
    for crown, trunk, mult in _tree_cuts(v):
        if (crown, trunk) == target:
            n_prime += mult
    m_prime = Fraction(symmetry_factor(t) * symmetry_factor(u), symmetry_factor(v)) * n_prime
    return n_prime, m_prime


def unnormalized_graft(t: RootedTree, u: RootedTree) -> TreeSum:
    """t curved-arrow u = sum_v N'(t, u, v) v, the delta-basis grafting."""
    acc: dict[Forest, Fraction] = {}
    for f, coeff in _graft_trees(t, u).items():
        v = f.trees[0]
        n_prime, _ = grafting_counts(t, u, v)
        acc[f] = Fraction(n_prime)
    return TreeSum(acc)


def pre_lie_morphism(generators, t: RootedTree, product):
    """Universal morphism out of the free pre-Lie algebra.

    ``generators`` is a single target element or a sequence indexed by vertex
    colour; ``product`` is the target pre-Lie product.  Target elements must
    support +, - and Fraction * x.  Branch recursion: with branches
    t_1, ..., t_k grafted on the root,

        F(t) = F(t_1) |> F(B_+(t_2..t_k)) - sum_j F(B_+(t_2, .., t_1 -> t_j, .., t_k))

    and the result does not depend on which branch is singled out when the
    target product is pre-Lie.
    """

    def gen(color: int):
        if isinstance(generators, (list, tuple)):
            return generators[color]
        return generators

    def eval_tree(tree: RootedTree):
        branches = tree.children
        if not branches:
            return gen(tree.color)
        first, rest = branches[0], branches[1:]
        trunk = RootedTree(rest, tree.color)
        acc = product(eval_tree(first), eval_tree(trunk))
        for j in range(len(rest)):
            for f, coeff in _graft_trees(first, rest[j]).items():
                regrown = RootedTree(rest[: j] + f.trees + rest[j + 1 :], tree.color)
                acc = acc - coeff * eval_tree(regrown)
        return acc

    return eval_tree(t)


def pre_lie_morphism_pinned(generators, t: RootedTree, product, pivot: int):
    """Same recursion but singling out branch ``pivot`` (for independence tests)."""

    def gen(color: int):
        if isinstance(generators, (list, tuple)):
            return generators[color]
        return generators

    def eval_tree(tree: RootedTree, pick: int):
        branches = tree.children
        if not branches:
            return gen(tree.color)
        pick = pick % len(branches)
        first = branches[pick]
        rest = branches[:pick] + branches[pick + 1 :]
        trunk = RootedTree(rest, tree.color)
        acc = product(eval_tree(first, pivot), eval_tree(trunk, pivot))
        for j in range(len(rest)):
            for f, coeff in _graft_trees(first, rest[j]).items():
                regrown = RootedTree(rest[: j] + f.trees + rest[j + 1 :], tree.color)
                acc = acc - coeff * eval_tree(regrown, pivot)
        return acc

    return eval_tree(t, pivot)


@lru_cache(maxsize=None)
def bernoulli_number(n: int) -> Fraction:
    """Exact Bernoulli numbers with B_1 = -1/2."""
    if n == 0:
        return Fraction(1)
    acc = Fraction(0)
    for j in range(n):
        acc += comb(n + 1, j) * bernoulli_number(j)
    return -acc / (n + 1)


def _truncate(x: TreeSum, order: int) -> TreeSum:
    return x.truncate(order)


def w_map(x: RootedTree | TreeSum, order: int) -> TreeSum:
    """W(x) = e^{L_x} 1 - 1 = sum_{n>=1} L_x^{n-1}(x) / n!, truncated by vertex count."""
    if order < 1:
        raise ValueError("truncation order must be >= 1")
    x = _truncate(_as_treesum(x), order)
    acc = TreeSum()
    term = x
    n = 1
    while not term.is_zero():
        acc = acc + term.scale(Fraction(1, factorial(n)))
        n += 1
        term = _truncate(graft(x, term), order)
    return acc


def omega_map(x: RootedTree | TreeSum, order: int) -> TreeSum:
    """Magnus expansion: the compositional inverse of W.

    Fixed point of Omega = sum_i (B_i / i!) L_Omega^i x, one vertex degree of
    agreement gained per pass.
    """
    if order < 1:
        raise ValueError("truncation order must be >= 1")
    x = _truncate(_as_treesum(x), order)
    omega = x
    for _ in range(order):
        acc = TreeSum()
        term = x
        i = 0
        while not term.is_zero():
            acc = acc + term.scale(bernoulli_number(i) / factorial(i))
            i += 1
            term = _truncate(graft(omega, term), order)
        omega = acc
    return omega


def magnus_omega(order: int) -> TreeSum:
    """Omega of the one-vertex generator: a - 1/2 a|>a + 1/4 (a|>a)|>a + 1/12 a|>(a|>a) + ..."""
    return omega_map(RootedTree(), order)


def apply_exp_L(x: TreeSum, b: TreeSum, order: int) -> TreeSum:
    """e^{L_x} b = sum_{n>=0} L_x^n(b) / n!, truncated."""
    acc = b
    term = b
    n = 1
    while not term.is_zero():
        term = _truncate(graft(x, term), order)
        acc = acc + term.scale(Fraction(1, factorial(n)))
        n += 1
    return acc


def sharp_product(a: RootedTree | TreeSum, b: RootedTree | TreeSum, order: int) -> TreeSum:
    """Group law of formal flows: a # b = a + e^{L_Omega(a)} b."""
    a = _truncate(_as_treesum(a), order)
    b = _truncate(_as_treesum(b), order)
    if a.is_zero():
        return b
    return a + apply_exp_L(omega_map(a, order), b, order)


def sharp_inverse(a: RootedTree | TreeSum, order: int) -> TreeSum:
    """a^{#-1} = W(-Omega(a)) = e^{-L_Omega(a)} 1 - 1."""
    a = _truncate(_as_treesum(a), order)
    if a.is_zero():
        return a
    return w_map(omega_map(a, order).scale(-1), order)


def bch(a: RootedTree | TreeSum, b: RootedTree | TreeSum, order: int) -> TreeSum:
    """Baker-Campbell-Hausdorff product C(a, b) = Omega(W(a) # W(b))."""
    a = _as_treesum(a)
    b = _as_treesum(b)
    return omega_map(sharp_product(w_map(a, order), w_map(b, order), order), order)


def m_action(a: RootedTree | TreeSum, u: TreeSum) -> TreeSum:
    """M_a u = a u + a -> u, grafting extended as a derivation over forest factors."""
    a = _as_treesum(a)
    out = TreeSum()
    for fa, ca in a.items():
        if len(fa) != 1:
            raise ValueError("the acting element must be a sum of single trees")
        s = fa.trees[0]
        for fu, cu in u.items():
            key = Forest((s,) + fu.trees)
            out = out + TreeSum.from_term(key, ca * cu)
            for idx, t in enumerate(fu.trees):
                rest = fu.trees[:idx] + fu.trees[idx + 1 :]
                for g, cg in _graft_trees(s, t).items():
                    out = out + TreeSum.from_term(Forest(rest + g.trees), ca * cu * cg)
    return out


def star_exp(a: RootedTree | TreeSum, order: int) -> TreeSum:
    """e^{*a} = sum_n M_a^n(1) / n! in the symmetric algebra, by vertex count."""
    a = _truncate(_as_treesum(a), order)
    acc = TreeSum.unit()
    term = TreeSum.unit()
    n = 1
    while True:
        term = m_action(a, term).truncate(order)
        if term.is_zero():
            break
        acc = acc + term.scale(Fraction(1, factorial(n)))
        n += 1
    return acc


def star_exp_product(a: RootedTree | TreeSum, b: RootedTree | TreeSum, order: int) -> TreeSum:
    """e^{*a} * e^{*b} computed as sum_n M_a^n(e^{*b}) / n!."""
    a = _truncate(_as_treesum(a), order)
    acc = star_exp(b, order)
    term = acc
    n = 1
    while True:
        term = m_action(a, term).truncate(order)
        if term.is_zero():
            break
        acc = acc + term.scale(Fraction(1, factorial(n)))
        n += 1
    return acc


def project_to_trees(x: TreeSum) -> TreeSum:
    """Projection from the symmetric algebra onto its tree component."""
    return TreeSum({f: c for f, c in x.items() if len(f) == 1})
