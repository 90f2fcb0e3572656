"""Extraction-contraction Hopf algebra on forests, graded by edges.

The carrier is the symmetric algebra on trees with at least one edge; the
single vertex is identified with its unit (rendered "1").  The coproduct of a
tree sums over all edge subsets: the extracted part is the forest of the
induced components that kept an edge, the other leg contracts each such
component to a vertex carrying the colour of the component's root.  This
Hopf algebra coacts on the Connes-Kreimer side and its dual product is the
substitution law for B-series.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .ck_hopf import TensorSum, TreeSum
from .conv import Functional, _check_rings, _colors_hint
from .forests import EMPTY_FOREST, Forest, RootedTree, as_forest, forests_up_to


def strip_single_vertices(f: Forest) -> Forest:
    """Identify single-vertex components with the unit of the edge-graded algebra."""
    return Forest(tuple(t for t in f if t.edge_count > 0))


def is_edge_forest(f: Forest) -> bool:
    return all(t.edge_count > 0 for t in f)


def _vertex_table(t: RootedTree) -> tuple[list[int], list[int]]:
    """Flatten to (parent, color) arrays in preorder; the root has parent -1."""
    parents: list[int] = []
    colors: list[int] = []

    def walk(node: RootedTree, parent: int) -> None:
        idx = len(parents)
        parents.append(parent)
        colors.append(node.color)
        for c in node.children:
            walk(c, idx)

    walk(t, -1)
    return parents, colors


def _build_component_tree(vertices: list[int], parents: list[int], colors: list[int]) -> RootedTree:
    """Rebuild the induced subtree on a connected vertex set (root = minimal depth)."""
    vset = set(vertices)
    kids: dict[int, list[int]] = {v: [] for v in vertices}
    root = None
    for v in vertices:
        p = parents[v]
        if p in vset:
            kids[p].append(v)
        else:
            root = v

    def build(v: int) -> RootedTree:
        return RootedTree(tuple(build(c) for c in kids[v]), colors[v])

    assert root is not None
    return build(root)


@lru_cache(maxsize=None)
def _tree_contraction_terms(t: RootedTree) -> tuple[tuple[Forest, Forest, int], ...]:
    """(extracted edge-forest, contracted tree, multiplicity) over all edge subsets."""
    parents, colors = _vertex_table(t)
    n = len(parents)
    edges = [(parents[v], v) for v in range(n) if parents[v] >= 0]
    counts: dict[tuple[Forest, Forest], int] = {}
    for mask in range(1 << len(edges)):
        chosen = [edges[i] for i in range(len(edges)) if mask >> i & 1]
        # components of (V, chosen): union-find over the chosen edges
        rep = list(range(n))

        def find(v: int) -> int:
            while rep[v] != v:
                rep[v] = rep[rep[v]]
                v = rep[v]
            return v

        for p, v in chosen:
            rep[find(p)] = find(v)
        comp_members: dict[int, list[int]] = {}
        for v in range(n):
            comp_members.setdefault(find(v), []).append(v)
        # extracted leg: induced subtrees of the components that kept an edge
        extracted = [
            _build_component_tree(members, parents, colors)
            for members in comp_members.values()
            if len(members) > 1
        ]
        # contracted leg: one vertex per component, colored by the component root
        comp_root: dict[int, int] = {}
        for r, members in comp_members.items():
            top = min(members, key=lambda v: _depth(parents, v))
            comp_root[r] = top
        comp_kids: dict[int, list[int]] = {r: [] for r in comp_members}
        root_comp = find(0)
        for p, v in edges:
            if (p, v) in chosen:
                continue
            cp, cv = find(p), find(v)
            comp_kids[cp].append(cv)

        def build_contracted(comp: int) -> RootedTree:
            return RootedTree(
                tuple(build_contracted(c) for c in comp_kids[comp]),
                colors[comp_root[comp]],
            )

        key = (Forest(tuple(extracted)), Forest((build_contracted(root_comp),)))
        counts[key] = counts.get(key, 0) + 1
    return tuple((ex, co, m) for (ex, co), m in counts.items())


def _depth(parents: list[int], v: int) -> int:
    d = 0
    while parents[v] >= 0:
        v = parents[v]
        d += 1
    return d


def contraction_coproduct(u: Forest | RootedTree) -> TensorSum:
    """Edge-subset coproduct, multiplicatively extended to forests.

    On a tree with k edges it has 2^k terms before collection; each term
    splits the edge count exactly.
    """
    u = as_forest(u)
    acc: dict[tuple[Forest, Forest], Fraction] = {(EMPTY_FOREST, EMPTY_FOREST): Fraction(1)}
    for t in u:
        nxt: dict[tuple[Forest, Forest], Fraction] = {}
        for (ex0, co0), coeff in acc.items():
            for extracted, contracted, mult in _tree_contraction_terms(t):
                key = (ex0 * extracted, co0 * contracted)
                nxt[key] = nxt.get(key, Fraction(0)) + coeff * mult
        acc = nxt
    return TensorSum(acc)


def h_coproduct(u: Forest | RootedTree) -> TensorSum:
    """Contraction coproduct with both legs inside the edge-graded algebra.

    Same terms as :func:`contraction_coproduct` but the contracted leg also
    identifies its single-vertex components with the unit, so every term
    splits the edge count exactly.
    """
    out: dict[tuple[Forest, Forest], Fraction] = {}
    for (extracted, contracted), coeff in contraction_coproduct(u).items():
        key = (extracted, strip_single_vertices(contracted))
        out[key] = out.get(key, Fraction(0)) + coeff
    return TensorSum(out)


def h_reduced_coproduct(u: Forest) -> TensorSum:
    """Both-legs-nonunit part of :func:`h_coproduct` on a nonunit edge-forest."""
    u = normalize_edge_forest(u)
    if u.is_empty():
        raise ValueError("reduced coproduct needs a nonunit edge-forest")
    trivial = TensorSum({(EMPTY_FOREST, u): Fraction(1), (u, EMPTY_FOREST): Fraction(1)})
    return h_coproduct(u) - trivial


def normalize_edge_forest(u: Forest | RootedTree) -> Forest:
    u = as_forest(u)
    return strip_single_vertices(u)


H_ANTIPODE_METHODS = ("crown_recursion", "trunk_recursion")


@lru_cache(maxsize=None)
def _h_antipode_forest(u: Forest, method: str) -> TreeSum:
    if u.is_empty():
        return TreeSum.unit()
    acc = TreeSum.from_forest(u, -1)
    for (extracted, contracted), coeff in h_reduced_coproduct(u).items():
        if method == "crown_recursion":
            part = _h_antipode_forest(extracted, method) * TreeSum.from_forest(contracted)
        elif method == "trunk_recursion":
            part = TreeSum.from_forest(extracted) * _h_antipode_forest(contracted, method)
        else:
            raise ValueError(f"unknown antipode method {method!r}")
        acc = acc - part.scale(coeff)
    return acc


def h_antipode(u: Forest | RootedTree | TreeSum, method: str = "crown_recursion") -> TreeSum:
    """Antipode of the edge-graded Hopf algebra; both recursions must agree."""
    if method not in H_ANTIPODE_METHODS:
        raise ValueError(f"method must be one of {H_ANTIPODE_METHODS}")
    if isinstance(u, TreeSum):
        acc = TreeSum()
        for f, c in u.items():
            acc = acc + _h_antipode_forest(normalize_edge_forest(f), method).scale(c)
        return acc
    return _h_antipode_forest(normalize_edge_forest(as_forest(u)), method)


def h_counit(x: TreeSum) -> Fraction:
    return x.coefficient(EMPTY_FOREST)


def coaction(u: Forest | RootedTree) -> TensorSum:
    """Left coaction of the edge-graded algebra on Connes-Kreimer forests.

    Algebra morphism sending the empty forest to unit x unit and a nonempty
    tree to its contraction coproduct, with single-vertex extracted
    components dropped into the left unit.
    """
    u = as_forest(u)
    out: dict[tuple[Forest, Forest], Fraction] = {}
    for (extracted, contracted), coeff in contraction_coproduct(u).items():
        key = (normalize_edge_forest(extracted), contracted)
        out[key] = out.get(key, Fraction(0)) + coeff
    return TensorSum(out)


def substitution_star(alpha: Functional, beta: Functional) -> Functional:
    """(alpha . beta)(u) = sum alpha(extracted) beta(contracted) over the coaction.

    ``alpha`` must be unital on the empty forest (a character of the
    edge-graded algebra when multiplicative); ``beta`` is any linear form on
    Connes-Kreimer forests.
    """
    _check_rings(alpha, beta)
    if alpha.value(EMPTY_FOREST) != alpha.ring.one:
        raise ValueError("the substituting functional must send the unit to 1")
    trunc = min(alpha.truncation, beta.truncation)
    values = {}
    for f in forests_up_to(trunc, _colors_hint(alpha, beta)):
        acc = alpha.ring.zero
        for (extracted, contracted), coeff in coaction(f).items():
            acc = acc + coeff * (alpha.value(extracted) * beta.value(contracted))
        if acc != alpha.ring.zero:
            values[f] = acc
    return Functional(alpha.ring, trunc, values)
