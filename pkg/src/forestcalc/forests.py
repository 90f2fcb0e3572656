"""Canonical rooted trees and forests.

Trees are unordered: children are stored sorted by their rendered text, so
structural equality coincides with rooted-tree isomorphism and hashing is
cheap.  Vertices carry a small non-negative integer colour (0 by default).

Text grammar, spoken by every module and the CLI:

    tree   ::= "[" (":" digits)? tree* "]"
    forest ::= "1" | tree (" " tree)*

A colour of 0 is omitted on output; children appear in canonical order on
output but may come in any order on input.  Examples: "[]" is the single
vertex, "[[]]" the 2-chain, "[[][]]" the cherry, "[:1[]]" a coloured 2-chain.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product as _cartesian


class RootedTree:
    """Immutable rooted tree with unordered, canonically sorted children."""

    __slots__ = ("color", "children", "_text", "_size", "_hash")

    def __init__(self, children: tuple[RootedTree, ...] | list[RootedTree] = (), color: int = 0):
        if color < 0:
            raise ValueError("colors must be non-negative integers")
        kids = tuple(sorted(children, key=lambda c: c._text))
        object.__setattr__(self, "color", int(color))
        object.__setattr__(self, "children", kids)
        label = f":{color}" if color else ""
        text = "[" + label + "".join(c._text for c in kids) + "]"
        object.__setattr__(self, "_text", text)
        object.__setattr__(self, "_size", 1 + sum(c._size for c in kids))
        object.__setattr__(self, "_hash", hash(text))

    def __setattr__(self, name, value):
        raise AttributeError("RootedTree is immutable")

    @property
    def vertex_count(self) -> int:
        return self._size

    @property
    def edge_count(self) -> int:
        return self._size - 1

    def render(self) -> str:
        return self._text

    def __eq__(self, other) -> bool:
        return isinstance(other, RootedTree) and self._text == other._text

    def __lt__(self, other: RootedTree) -> bool:
        return self._text < other._text

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"RootedTree({self._text!r})"


class Forest:
    """Immutable multiset of rooted trees; the empty forest is the unit."""

    __slots__ = ("trees", "_text", "_size", "_hash")

    def __init__(self, trees: tuple[RootedTree, ...] | list[RootedTree] = ()):
        comps = tuple(sorted(trees, key=lambda t: t._text))
        object.__setattr__(self, "trees", comps)
        text = " ".join(t._text for t in comps) if comps else "1"
        object.__setattr__(self, "_text", text)
        object.__setattr__(self, "_size", sum(t._size for t in comps))
        object.__setattr__(self, "_hash", hash(text))

    def __setattr__(self, name, value):
        raise AttributeError("Forest is immutable")

    @property
    def vertex_count(self) -> int:
        return self._size

    @property
    def edge_count(self) -> int:
        return self._size - len(self.trees)

    def is_empty(self) -> bool:
        return not self.trees

    def render(self) -> str:
        return self._text

    def __mul__(self, other: Forest) -> Forest:
        """Disjoint union, the commutative product of the forest algebra."""
        return Forest(self.trees + other.trees)

    def __iter__(self):
        return iter(self.trees)

    def __len__(self) -> int:
        return len(self.trees)

    def __eq__(self, other) -> bool:
        return isinstance(other, Forest) and self._text == other._text

    def __lt__(self, other: Forest) -> bool:
        return (self._size, self._text) < (other._size, other._text)

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Forest({self._text!r})"


EMPTY_FOREST = Forest(())
LEAF = RootedTree(())


def leaf(color: int = 0) -> RootedTree:
    return RootedTree((), color)


def canonical_form(t: RootedTree) -> RootedTree:
    """Rebuild ``t`` bottom-up; idempotent, isomorphic inputs map to equal outputs."""
    return RootedTree(tuple(canonical_form(c) for c in t.children), t.color)


def b_plus(f: Forest, root_color: int = 0) -> RootedTree:
    """Graft the components of ``f`` onto a common new root."""
    return RootedTree(f.trees, root_color)


def b_minus(t: RootedTree) -> Forest:
    """Remove the root, leaving the forest of branches."""
    return Forest(t.children)


def as_forest(x: RootedTree | Forest) -> Forest:
    if isinstance(x, RootedTree):
        return Forest((x,))
    return x


def symmetry_factor(t: RootedTree) -> int:
    """Order of the automorphism group: products of m! sigma^m over branch multiplicities."""
    sigma = 1
    run_tree: RootedTree | None = None
    run = 0
    for c in t.children + (None,):
        if run_tree is not None and c == run_tree:
            run += 1
            continue
        if run_tree is not None:
            fact = 1
            for i in range(2, run + 1):
                fact *= i
            sigma *= fact * symmetry_factor(run_tree) ** run
        run_tree, run = c, 1
    return sigma


@lru_cache(maxsize=None)
def enumerate_trees(n: int, colors: int = 1) -> tuple[RootedTree, ...]:
    """All canonical rooted trees with ``n`` vertices, deterministic order."""
    if colors < 1:
        raise ValueError("need at least one color")
    if n < 1:
        return ()
    if n == 1:
        return tuple(RootedTree((), c) for c in range(colors))
    out = [
        RootedTree(f.trees, c)
        for f in enumerate_forests(n - 1, colors)
        for c in range(colors)
    ]
    return tuple(sorted(out))


@lru_cache(maxsize=None)
def enumerate_forests(n: int, colors: int = 1) -> tuple[Forest, ...]:
    """All forests with ``n`` vertices total (n = 0 gives the empty forest)."""
    if n < 0:
        return ()
    pool: list[RootedTree] = []
    for k in range(1, n + 1):
        pool.extend(enumerate_trees(k, colors))
    # multisets as weakly decreasing index sequences into the pool
    out: list[Forest] = []

    def extend(remaining: int, max_index: int, chosen: list[RootedTree]) -> None:
        if remaining == 0:
            out.append(Forest(tuple(chosen)))
            return
        for idx in range(max_index + 1):
            t = pool[idx]
            if t.vertex_count > remaining:
                continue
            chosen.append(t)
            extend(remaining - t.vertex_count, idx, chosen)
            chosen.pop()

    extend(n, len(pool) - 1, [])
    return tuple(sorted(out))


def trees_up_to(n: int, colors: int = 1) -> list[RootedTree]:
    return [t for k in range(1, n + 1) for t in enumerate_trees(k, colors)]


def forests_up_to(n: int, colors: int = 1) -> list[Forest]:
    return [f for k in range(n + 1) for f in enumerate_forests(k, colors)]


class ParseError(ValueError):
    pass


def _parse_tree_at(text: str, pos: int) -> tuple[RootedTree, int]:
    if pos >= len(text) or text[pos] != "[":
        raise ParseError(f"expected '[' at position {pos} in {text!r}")
    pos += 1
    color = 0
    if pos < len(text) and text[pos] == ":":
        pos += 1
        start = pos
        while pos < len(text) and text[pos].isdigit():
            pos += 1
        if start == pos:
            raise ParseError(f"expected digits after ':' at position {start} in {text!r}")
        color = int(text[start:pos])
    children: list[RootedTree] = []
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            raise ParseError(f"unbalanced brackets in {text!r}")
        if text[pos] == "]":
            return RootedTree(tuple(children), color), pos + 1
        child, pos = _parse_tree_at(text, pos)
        children.append(child)


def parse_tree(text: str) -> RootedTree:
    stripped = text.strip()
    t, end = _parse_tree_at(stripped, 0)
    if stripped[end:].strip():
        raise ParseError(f"trailing input after tree: {stripped[end:]!r}")
    return t


def parse_forest(text: str) -> Forest:
    stripped = text.strip()
    if stripped == "1":
        return EMPTY_FOREST
    trees: list[RootedTree] = []
    pos = 0
    while pos < len(stripped):
        if stripped[pos].isspace():
            pos += 1
            continue
        t, pos = _parse_tree_at(stripped, pos)
        trees.append(t)
    if not trees:
        raise ParseError(f"empty forest must be written '1', got {text!r}")
    return Forest(tuple(trees))


def all_child_orderings(t: RootedTree):
    """Yield every recursive ordering of the child lists of ``t`` (as nested lists).

    Used to confirm the canonical form collapses all presentation orders.
    """
    from itertools import permutations

    if not t.children:
        yield (t.color, ())
        return
    per_child = [list(all_child_orderings(c)) for c in t.children]
    for perm in permutations(range(len(t.children))):
        for picks in _cartesian(*(per_child[i] for i in perm)):
            yield (t.color, picks)


def tree_from_nested(nested) -> RootedTree:
    color, picks = nested
    return RootedTree(tuple(tree_from_nested(p) for p in picks), color)
