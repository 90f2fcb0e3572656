"""Free NAP algebra on rooted trees via the left Butcher product.

Butcher's product grafts one tree directly on the root of another, giving a
single tree (no sums).  Its bilinear extension satisfies the left NAP
identity a |> (b |> c) = b |> (a |> c), and the universal morphism out of it
is a plain right fold over the branches.
"""

from __future__ import annotations

from .ck_hopf import TreeSum
from .forests import Forest, RootedTree
from .linear import bilinear


def butcher_product(s: RootedTree, t: RootedTree) -> RootedTree:
    """Graft s on the root of t: one new branch, re-canonicalized."""
    return RootedTree(t.children + (s,), t.color)


def butcher_sum(a: RootedTree | TreeSum, b: RootedTree | TreeSum) -> TreeSum:
    """Bilinear extension of the Butcher product to tree sums."""

    def on_keys(fa: Forest, fb: Forest) -> TreeSum:
        if len(fa) != 1 or len(fb) != 1:
            raise ValueError("the Butcher product acts on single trees")
        return TreeSum.from_tree(butcher_product(fa.trees[0], fb.trees[0]))

    if isinstance(a, RootedTree):
        a = TreeSum.from_tree(a)
    if isinstance(b, RootedTree):
        b = TreeSum.from_tree(b)
    return bilinear(on_keys, a, b, TreeSum)


def nap_morphism(generators, t: RootedTree, product):
    """The unique NAP morphism G with G(single vertex of colour c) = generators[c].

    G(B_+(t_1, ..., t_k)) = G(t_1) |> (G(t_2) |> ( ... (G(t_k) |> a) ... )).
    """

    def gen(color: int):
        if isinstance(generators, (list, tuple)):
            return generators[color]
        return generators

    acc = gen(t.color)
    for branch in reversed(t.children):
        acc = product(nap_morphism(generators, branch, product), acc)
    return acc
