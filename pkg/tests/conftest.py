"""Shared oracles and generators for the test suite.

Everything here recomputes results by routes independent of the library
internals: trees from raw parent arrays, automorphisms by permutation
search, coproducts from explicit vertex subsets, subforests from disjoint
vertex sets.  Expected values frozen into tests were produced by these.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import permutations, product as cartesian

from forestcalc.ck_hopf import TensorSum
from forestcalc.conv import Functional, RATIONAL, character_from_tree_values
from forestcalc.forests import EMPTY_FOREST, Forest, RootedTree, trees_up_to
from forestcalc.linear import LinComb
from forestcalc.vector_fields import Poly, PolyVectorField


# --- raw tree structure helpers ----------------------------------------------

def tree_to_parents(t: RootedTree) -> tuple[list[int], list[int]]:
    """Preorder (parent, color) arrays; root parent is -1."""
    parents: list[int] = []
    colors: list[int] = []

    def walk(node: RootedTree, parent: int) -> None:
        idx = len(parents)
        parents.append(parent)
        colors.append(node.color)
        for child in node.children:
            walk(child, idx)

    walk(t, -1)
    return parents, colors


def tree_from_parents(parents: list[int], colors: list[int] | None = None) -> RootedTree:
    colors = colors or [0] * len(parents)
    kids: list[list[int]] = [[] for _ in parents]
    root = 0
    for v, p in enumerate(parents):
        if p < 0:
            root = v
        else:
            kids[p].append(v)

    def build(v: int) -> RootedTree:
        return RootedTree(tuple(build(c) for c in kids[v]), colors[v])

    return build(root)


def brute_force_trees(n: int, colors: int = 1) -> set[RootedTree]:
    """All n-vertex trees from raw parent arrays (parent[i] < i), deduplicated."""
    if n == 0:
        return set()
    out: set[RootedTree] = set()
    parent_choices = [range(i) for i in range(1, n)]
    for parents in cartesian(*parent_choices):
        full = [-1] + list(parents)
        for coloring in cartesian(range(colors), repeat=n):
            out.add(tree_from_parents(full, list(coloring)))
    return out


def brute_force_automorphisms(t: RootedTree) -> int:
    """Count root-fixing adjacency-preserving vertex permutations."""
    parents, colors = tree_to_parents(t)
    n = len(parents)
    edges = {(parents[v], v) for v in range(n) if parents[v] >= 0}
    count = 0
    for perm in permutations(range(n)):
        if perm[0] != 0:
            continue
        if any(colors[perm[v]] != colors[v] for v in range(n)):
            continue
        if all((perm[p], perm[v]) in edges for p, v in edges):
            count += 1
    return count


# --- vertex-subset coproduct oracle ------------------------------------------

def _is_downward_closed(subset: set[int], parents: list[int]) -> bool:
    return all(parents[v] < 0 or parents[v] in subset for v in subset)


def _induced_forest(vertices: set[int], parents: list[int], colors: list[int]) -> Forest:
    kids: dict[int, list[int]] = {v: [] for v in vertices}
    roots = []
    for v in vertices:
        if parents[v] in vertices:
            kids[parents[v]].append(v)
        else:
            roots.append(v)

    def build(v: int) -> RootedTree:
        return RootedTree(tuple(build(c) for c in kids[v]), colors[v])

    return Forest(tuple(build(r) for r in roots))


def subset_coproduct(u: Forest) -> TensorSum:
    """Admissible cuts enumerated directly as downward-closed vertex subsets."""
    parents: list[int] = []
    colors: list[int] = []
    for t in u:
        p, c = tree_to_parents(t)
        offset = len(parents)
        parents.extend(offset + v if v >= 0 else -1 for v in p)
        colors.extend(c)
    n = len(parents)
    terms: dict[tuple[Forest, Forest], Fraction] = {}
    for mask in range(1 << n):
        trunk_set = {v for v in range(n) if mask >> v & 1}
        if not _is_downward_closed(trunk_set, parents):
            continue
        crown_set = set(range(n)) - trunk_set
        key = (
            _induced_forest(crown_set, parents, colors),
            _induced_forest(trunk_set, parents, colors),
        )
        terms[key] = terms.get(key, Fraction(0)) + 1
    return TensorSum(terms)


def subset_ordered_partitions(u: Forest, blocks: int) -> TensorSum:
    """Ordered partitions (V_1 > ... > V_blocks ideal-wise), all blocks nonempty.

    Block i+1 must be downward closed below block i, i.e. peeling trunks
    repeatedly; matches the iterated reduced coproduct.
    """
    def peel(forest: Forest, remaining: int) -> list[tuple[Forest, ...]]:
        if remaining == 1:
            return [(forest,)] if not forest.is_empty() else []
        out: list[tuple[Forest, ...]] = []
        for (crown, trunk), mult in subset_coproduct(forest).items():
            if trunk.is_empty() or crown.is_empty():
                continue
            for rest in peel(trunk, remaining - 1):
                out.extend([(crown,) + rest] * int(mult))
        return out

    counter: dict[tuple[Forest, ...], Fraction] = {}
    for key in peel(u, blocks):
        counter[key] = counter.get(key, Fraction(0)) + 1
    return TensorSum(counter)


# --- disjoint-subtree subforest oracle ----------------------------------------

def connected_vertex_sets(parents: list[int]) -> list[frozenset[int]]:
    """All connected vertex subsets with >= 2 vertices."""
    n = len(parents)
    out = []
    for mask in range(1, 1 << n):
        vs = {v for v in range(n) if mask >> v & 1}
        if len(vs) < 2:
            continue
        # connected in the tree: every vertex but one has its parent inside
        tops = [v for v in vs if parents[v] not in vs]
        if len(tops) == 1:
            out.append(frozenset(vs))
    return out


def disjoint_subtree_contraction(t: RootedTree) -> TensorSum:
    """Extraction-contraction terms from collections of disjoint subtrees.

    Enumerates families of pairwise-disjoint connected vertex sets (each with
    at least one edge), extracts the induced subtrees and contracts each
    family member to its top vertex, keeping that vertex's colour.
    """
    parents, colors = tree_to_parents(t)
    n = len(parents)
    singles = connected_vertex_sets(parents)
    terms: dict[tuple[Forest, Forest], Fraction] = {}

    def contract(family: list[frozenset[int]]) -> tuple[Forest, Forest]:
        owner = list(range(n))
        for vs in family:
            head = min(vs, key=lambda v: _depth_of(parents, v))
            for v in vs:
                owner[v] = head
        extracted = Forest(
            tuple(_induced_forest(set(vs), parents, colors).trees[0] for vs in family)
        )
        kids: dict[int, list[int]] = {}
        for v in range(n):
            if owner[v] != v:
                continue
            kids.setdefault(v, [])
        for v in range(n):
            p = parents[v]
            if p < 0:
                continue
            a, b = owner[p], owner[v]
            if a != b:
                kids.setdefault(a, []).append(b)

        def build(v: int) -> RootedTree:
            return RootedTree(tuple(build(c) for c in kids.get(v, ())), colors[v])

        return extracted, Forest((build(owner[0]),))

    def walk(start: int, chosen: list[frozenset[int]]) -> None:
        key = contract(chosen)
        terms[key] = terms.get(key, Fraction(0)) + 1
        for i in range(start, len(singles)):
            if all(not (singles[i] & c) for c in chosen):
                chosen.append(singles[i])
                walk(i + 1, chosen)
                chosen.pop()

    walk(0, [])
    return TensorSum(terms)


def _depth_of(parents: list[int], v: int) -> int:
    d = 0
    while parents[v] >= 0:
        v = parents[v]
        d += 1
    return d


# --- random generators ---------------------------------------------------------

def random_functional(rng: random.Random, truncation: int, span: int = 3) -> Functional:
    from forestcalc.forests import forests_up_to

    values = {
        f: Fraction(rng.randint(-span, span), rng.randint(1, 3))
        for f in forests_up_to(truncation)
    }
    return Functional(RATIONAL, truncation, values)


def random_unital_functional(rng: random.Random, truncation: int) -> Functional:
    phi = random_functional(rng, truncation)
    values = dict(phi.items())
    values[EMPTY_FOREST] = Fraction(1)
    return Functional(RATIONAL, truncation, values)


def random_infinitesimal(rng: random.Random, truncation: int) -> Functional:
    values = {
        Forest((t,)): Fraction(rng.randint(-3, 3), rng.randint(1, 3))
        for t in trees_up_to(truncation)
    }
    return Functional(RATIONAL, truncation, values)


def random_character(rng: random.Random, truncation: int) -> Functional:
    values = {
        t: Fraction(rng.randint(-3, 3), rng.randint(1, 3))
        for t in trees_up_to(truncation)
    }
    return character_from_tree_values(values, truncation)


def random_poly(rng: random.Random, nvars: int, degree: int = 2) -> Poly:
    monos = [m for m in cartesian(range(degree + 1), repeat=nvars) if sum(m) <= degree]
    return Poly(nvars, {m: Fraction(rng.randint(-2, 2)) for m in monos})


def random_field(rng: random.Random, dim: int, degree: int = 2) -> PolyVectorField:
    return PolyVectorField([random_poly(rng, dim, degree) for _ in range(dim)], dim)


def random_tree(rng: random.Random, max_vertices: int) -> RootedTree:
    n = rng.randint(1, max_vertices)
    parents = [-1] + [rng.randrange(i) for i in range(1, n)]
    return tree_from_parents(parents)


# --- free magma target for universal-morphism tests ----------------------------

class MagmaSum(LinComb):
    """Formal linear combinations of parenthesized products of a generator.

    Keys are nested tuples: "a" for the generator (by colour index) and
    ("*", left, right) for a product.  Nothing is simplified, so two
    expressions are equal only when literally equal: the right target to pin
    down symbolic values of universal morphisms.
    """

    @classmethod
    def generator(cls, color: int = 0) -> MagmaSum:
        return cls.from_term(("a", color))


def magma_product(x: MagmaSum, y: MagmaSum) -> MagmaSum:
    out: dict = {}
    for kx, cx in x.items():
        for ky, cy in y.items():
            key = ("*", kx, ky)
            out[key] = out.get(key, Fraction(0)) + cx * cy
    return MagmaSum(out)


# --- exact Runge-Kutta map expansion -------------------------------------------

def rk_taylor_map(a_matrix, weights, field: PolyVectorField, order: int):
    """Expand the Runge-Kutta update map exactly in h, order by order.

    Returns the HSeriesMap of x + h sum_i b_i f(Y_i) with the stage series
    solved by fixed-point iteration (valid for implicit tableaus too).
    """
    from forestcalc.bseries import HSeriesMap

    n = field.dim
    s = len(weights)
    hvar = Poly.var(n + 1, n)
    xvars = [Poly.var(n + 1, j) for j in range(n)]
    fcomp = [p.extend(n + 1) for p in field.components]

    stages = [list(xvars) for _ in range(s)]
    for _ in range(order):
        new_stages = []
        for i in range(s):
            comps = list(xvars)
            for j in range(s):
                coeff = Fraction(a_matrix[i][j])
                if not coeff:
                    continue
                fy = [p.subs(stages[j] + [hvar], truncate_var=(n, order)) for p in fcomp]
                for k in range(n):
                    comps[k] = comps[k] + coeff * (hvar * fy[k]).truncate(n, order)
            new_stages.append(comps)
        stages = new_stages
    out = list(xvars)
    for i in range(s):
        coeff = Fraction(weights[i])
        if not coeff:
            continue
        fy = [p.subs(stages[i] + [hvar], truncate_var=(n, order)) for p in fcomp]
        for k in range(n):
            out[k] = out[k] + coeff * (hvar * fy[k]).truncate(n, order)
    return HSeriesMap.from_hpolys(out, order)
