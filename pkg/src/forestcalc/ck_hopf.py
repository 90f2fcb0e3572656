"""The Connes-Kreimer Hopf algebra of rooted forests.

The coproduct sums over admissible cuts, realized as order ideals of the
vertex poset: the trunk is the induced subforest on a downward-closed vertex
set (it contains the roots it meets), the crown is the forest cut loose above
it.  Grading is by vertex count; the antipode comes in three flavours that
must agree: the two triangular recursions and the geometric series
sum_k (u eps - I)^{*k}.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .forests import EMPTY_FOREST, Forest, RootedTree, as_forest
from .linear import LinComb


class TreeSum(LinComb):
    """Linear combination of forests: an element of the forest algebra."""

    def __mul__(self, other: TreeSum) -> TreeSum:
        data: dict[Forest, Fraction] = {}
        for fa, ca in self.items():
            for fb, cb in other.items():
                key = fa * fb
                c = data.get(key, 0) + ca * cb
                if c:
                    data[key] = c
                elif key in data:
                    del data[key]
        return TreeSum(data)

    @classmethod
    def unit(cls) -> TreeSum:
        return cls.from_term(EMPTY_FOREST)

    @classmethod
    def from_tree(cls, t: RootedTree, coeff=1) -> TreeSum:
        return cls.from_term(Forest((t,)), coeff)

    @classmethod
    def from_forest(cls, f: Forest, coeff=1) -> TreeSum:
        return cls.from_term(f, coeff)

    def max_vertex_count(self) -> int:
        return max((f.vertex_count for f in self.support()), default=0)

    def truncate(self, order: int) -> TreeSum:
        return TreeSum({f: c for f, c in self.items() if f.vertex_count <= order})


class TensorSum(LinComb):
    """Linear combination of tensor words: keys are tuples of forests."""

    def slot_product(self, other: TensorSum) -> TensorSum:
        """Componentwise product, the algebra structure on a tensor power."""
        data: dict[tuple[Forest, ...], Fraction] = {}
        for ka, ca in self.items():
            for kb, cb in other.items():
                if len(ka) != len(kb):
                    raise ValueError("tensor arities differ")
                key = tuple(a * b for a, b in zip(ka, kb))
                c = data.get(key, 0) + ca * cb
                if c:
                    data[key] = c
                elif key in data:
                    del data[key]
        return TensorSum(data)

    def multiply_slots(self) -> TreeSum:
        """Collapse each tensor word by multiplying its slots together."""
        out: dict[Forest, Fraction] = {}
        for key, coeff in self.items():
            prod = EMPTY_FOREST
            for f in key:
                prod = prod * f
            c = out.get(prod, 0) + coeff
            if c:
                out[prod] = c
            elif prod in out:
                del out[prod]
        return TreeSum(out)


@lru_cache(maxsize=None)
def _tree_cuts(t: RootedTree) -> tuple[tuple[Forest, Forest, int], ...]:
    """All admissible cuts of a single tree as (crown, trunk, multiplicity).

    One cut per order ideal of the vertex poset: either the whole tree is
    crown (empty ideal), or the root is kept and each branch chooses a cut
    of its own, the chosen branch trunks being regrafted under the root.
    """
    counts: dict[tuple[Forest, Forest], int] = {(Forest((t,)), EMPTY_FOREST): 1}
    combos: list[tuple[tuple[Forest, Forest, int], ...]] = [_tree_cuts(c) for c in t.children]

    def walk(i: int, crown_parts: tuple[RootedTree, ...], trunk_kids: tuple[RootedTree, ...], mult: int):
        if i == len(combos):
            key = (Forest(crown_parts), Forest((RootedTree(trunk_kids, t.color),)))
            counts[key] = counts.get(key, 0) + mult
            return
        for crown, trunk, m in combos[i]:
            walk(i + 1, crown_parts + crown.trees, trunk_kids + trunk.trees, mult * m)

    walk(0, (), (), 1)
    return tuple((crown, trunk, m) for (crown, trunk), m in counts.items())


@lru_cache(maxsize=None)
def coproduct(u: Forest | RootedTree) -> TensorSum:
    """Admissible-cut coproduct, multiplicatively extended to forests."""
    u = as_forest(u)
    acc: dict[tuple[Forest, Forest], Fraction] = {(EMPTY_FOREST, EMPTY_FOREST): Fraction(1)}
    for t in u:
        nxt: dict[tuple[Forest, Forest], Fraction] = {}
        for (cr0, tr0), coeff in acc.items():
            for crown, trunk, mult in _tree_cuts(t):
                key = (cr0 * crown, tr0 * trunk)
                nxt[key] = nxt.get(key, Fraction(0)) + coeff * mult
        acc = nxt
    return TensorSum(acc)


def _reduce_pair(ts: TensorSum, u: Forest) -> TensorSum:
    return ts - TensorSum({(u, EMPTY_FOREST): Fraction(1), (EMPTY_FOREST, u): Fraction(1)})


@lru_cache(maxsize=None)
def reduced_coproduct(u: Forest | RootedTree, iterations: int = 1) -> TensorSum:
    """Iterated reduced coproduct; keys have ``iterations + 1`` nonempty slots.

    Vanishes once ``iterations`` reaches the vertex count of ``u``.
    """
    u = as_forest(u)
    if u.is_empty():
        raise ValueError("reduced coproduct is only defined on the kernel of the counit")
    if iterations < 1:
        raise ValueError("iterations must be >= 1")
    if iterations == 1:
        return _reduce_pair(coproduct(u), u)
    prev = reduced_coproduct(u, iterations - 1)
    data: dict[tuple[Forest, ...], Fraction] = {}
    for key, coeff in prev.items():
        last = key[-1]
        for (v, w), c in _reduce_pair(coproduct(last), last).items():
            nk = key[:-1] + (v, w)
            val = data.get(nk, 0) + coeff * c
            if val:
                data[nk] = val
            elif nk in data:
                del data[nk]
    return TensorSum(data)


def counit(x: TreeSum) -> Fraction:
    """Coefficient of the empty forest."""
    return x.coefficient(EMPTY_FOREST)


ANTIPODE_METHODS = ("left_recursion", "right_recursion", "geometric")


@lru_cache(maxsize=None)
def _antipode_forest(u: Forest, method: str) -> TreeSum:
    if u.is_empty():
        return TreeSum.unit()
    if method == "geometric":
        # S(x) = sum_{k>=1} (-1)^k m(reduced coproduct iterated k-1 times)(x)
        acc = TreeSum.from_forest(u, -1)
        for k in range(2, u.vertex_count + 1):
            piece = reduced_coproduct(u, k - 1).multiply_slots()
            acc = acc + piece.scale(Fraction((-1) ** k))
        return acc
    acc = TreeSum.from_forest(u, -1)
    for (crown, trunk), coeff in reduced_coproduct(u, 1).items():
        if method == "left_recursion":
            part = _antipode_forest(crown, method) * TreeSum.from_forest(trunk)
        elif method == "right_recursion":
            part = TreeSum.from_forest(crown) * _antipode_forest(trunk, method)
        else:
            raise ValueError(f"unknown antipode method {method!r}")
        acc = acc - part.scale(coeff)
    return acc


def antipode(u: Forest | RootedTree | TreeSum, method: str = "left_recursion") -> TreeSum:
    """Antipode of the forest Hopf algebra, extended linearly to TreeSums."""
    if method not in ANTIPODE_METHODS:
        raise ValueError(f"method must be one of {ANTIPODE_METHODS}")
    if isinstance(u, TreeSum):
        acc = TreeSum()
        for f, c in u.items():
            acc = acc + _antipode_forest(f, method).scale(c)
        return acc
    return _antipode_forest(as_forest(u), method)
