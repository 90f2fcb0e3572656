"""Concrete symmetric operads with partial compositions and an axiom suite.

Three instances share one interface (basis per arity, partial composition
into linear combinations, right symmetric-group action, unit): permutations
with block substitution, the one-dimensional commutative family, and
labelled rooted trees with vertex insertion.  The axiom suite exhaustively
checks nested and disjoint associativity, the unit laws and equivariance,
reporting every violation instead of raising.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations as _perms
from typing import Iterable

from .ck_hopf import TreeSum
from .forests import RootedTree, enumerate_trees

Permutation = tuple[int, ...]


def identity_perm(n: int) -> Permutation:
    return tuple(range(1, n + 1))


def perm_mul(a: Permutation, b: Permutation) -> Permutation:
    """(a b)(j) = a(b(j))."""
    return tuple(a[b[j - 1] - 1] for j in range(1, len(a) + 1))


def perm_inverse(a: Permutation) -> Permutation:
    out = [0] * len(a)
    for j, v in enumerate(a, start=1):
        out[v - 1] = j
    return tuple(out)


def block_substitution(sigma: Permutation, i: int, tau: Permutation) -> Permutation:
    """iota_i(sigma, tau): tau permutes the block {i, ..., i+l-1} inside sigma.

    Computed by realizing both permutations as argument-shuffling operations
    on symbols and reading off the resulting word.
    """
    k, l = len(sigma), len(tau)
    if not 1 <= i <= k:
        raise IndexError(f"slot {i} out of range for arity {k}")
    sigma_inv = perm_inverse(sigma)
    tau_inv = perm_inverse(tau)

    def argument_word(j: int) -> tuple[int, ...]:
        if j < i:
            return (j,)
        if j == i:
            return tuple(i - 1 + tau_inv[r] for r in range(l))
        return (j + l - 1,)

    word: list[int] = []
    for m in range(1, k + 1):
        word.extend(argument_word(sigma_inv[m - 1]))
    # word[m-1] = iota^{-1}(m); invert it
    out = [0] * len(word)
    for m, v in enumerate(word, start=1):
        out[v - 1] = m
    return tuple(out)


LinearCombo = dict  # basis element -> Fraction


def combo_add(a: LinearCombo, b: LinearCombo, scale=1) -> LinearCombo:
    out = dict(a)
    s = Fraction(scale)
    for key, c in b.items():
        v = out.get(key, Fraction(0)) + s * c
        if v:
            out[key] = v
        elif key in out:
            del out[key]
    return out


class AssocOperad:
    """Permutations under block substitution; right action = right multiplication."""

    name = "assoc"
    unit: Permutation = (1,)

    def arity(self, element: Permutation) -> int:
        return len(element)

    def arity_basis(self, n: int) -> list[Permutation]:
        if n < 1:
            return []
        return [p for p in _perms(range(1, n + 1))]

    def compose(self, a: Permutation, i: int, b: Permutation) -> LinearCombo:
        return {block_substitution(a, i, b): Fraction(1)}

    def act(self, a: Permutation, sigma: Permutation) -> Permutation:
        return perm_mul(a, sigma)


class ComOperad:
    """One basis element per arity; compositions just add arities."""

    name = "com"
    unit: int = 1

    def arity(self, element: int) -> int:
        return element

    def arity_basis(self, n: int) -> list[int]:
        return [n] if n >= 1 else []

    def compose(self, a: int, i: int, b: int) -> LinearCombo:
        if not 1 <= i <= a:
            raise IndexError(f"slot {i} out of range for arity {a}")
        return {a + b - 1: Fraction(1)}

    def act(self, a: int, sigma: Permutation) -> int:
        return a


# labelled rooted trees: nested tuples (label, (child, ...)) sorted recursively
LabelledTree = tuple


def labelled_node(label: int, children: Iterable[LabelledTree] = ()) -> LabelledTree:
    return (label, tuple(sorted(children)))


def labelled_vertex_count(t: LabelledTree) -> int:
    return 1 + sum(labelled_vertex_count(c) for c in t[1])


def labels_of(t: LabelledTree) -> set[int]:
    out = {t[0]}
    for c in t[1]:
        out |= labels_of(c)
    return out


def relabel(t: LabelledTree, mapping) -> LabelledTree:
    return labelled_node(mapping(t[0]), (relabel(c, mapping) for c in t[1]))


def forget_labels(t: LabelledTree) -> RootedTree:
    return RootedTree(tuple(forget_labels(c) for c in t[1]))


def attach_labels(shape: RootedTree, labels: list[int]) -> LabelledTree:
    """Label the vertices of a shape in preorder with the given list."""
    counter = [0]

    def walk(node: RootedTree) -> LabelledTree:
        label = labels[counter[0]]
        counter[0] += 1
        return labelled_node(label, (walk(c) for c in node.children))

    return walk(shape)


def enumerate_labelled_trees(n: int) -> list[LabelledTree]:
    """All rooted trees on vertex labels 1..n (n^{n-1} of them)."""
    out: set[LabelledTree] = set()
    for shape in enumerate_trees(n):
        for perm in _perms(range(1, n + 1)):
            out.add(attach_labels(shape, list(perm)))
    return sorted(out)


class PreLieOperad:
    """Labelled rooted trees with insertion at a vertex."""

    name = "prelie"
    unit: LabelledTree = (1, ())

    def arity(self, element: LabelledTree) -> int:
        return labelled_vertex_count(element)

    def arity_basis(self, n: int) -> list[LabelledTree]:
        if n < 1:
            return []
        return enumerate_labelled_trees(n)

    def compose(self, a: LabelledTree, i: int, b: LabelledTree) -> LinearCombo:
        return prelie_insert(a, i, b)

    def act(self, a: LabelledTree, sigma: Permutation) -> LabelledTree:
        inv = perm_inverse(sigma)
        return relabel(a, lambda j: inv[j - 1])


def prelie_insert(s: LabelledTree, i: int, t: LabelledTree) -> LinearCombo:
    """Insert t at the vertex of s labelled i, summed over child reattachments.

    The vertex i is replaced by the whole of t (its parent edge moving to t's
    root) and each former child subtree of i reattaches to any vertex of t.
    Labels follow the block convention mirroring permutation substitution:
    s-labels below i keep their rank, t-labels shift up by i - 1, s-labels
    above i shift up by the arity of t minus one.
    """
    k = labelled_vertex_count(s)
    l = labelled_vertex_count(t)
    if i not in labels_of(s):
        raise KeyError(f"no vertex labelled {i}")

    def shift_s(j: int) -> int:
        return j if j < i else j + l - 1

    def shift_t(j: int) -> int:
        return j + i - 1

    t_shifted = relabel(t, shift_t)
    t_vertex_labels = sorted(labels_of(t_shifted))

    # subtrees of s hanging below vertex i, already relabelled on the s side
    def locate(node: LabelledTree):
        if node[0] == i:
            return [relabel(c, shift_s) for c in node[1]]
        for c in node[1]:
            found = locate(c)
            if found is not None:
                return found
        return None

    child_subtrees = locate(s)
    assert child_subtrees is not None

    def graft_into(node: LabelledTree, assignment: dict[int, list[LabelledTree]]) -> LabelledTree:
        extra = assignment.get(node[0], [])
        return labelled_node(node[0], [graft_into(c, assignment) for c in node[1]] + extra)

    def rebuild(node: LabelledTree, replacement: LabelledTree) -> LabelledTree:
        if node[0] == i:
            return replacement
        return labelled_node(shift_s(node[0]), (rebuild(c, replacement) for c in node[1]))

    out: LinearCombo = {}
    m = len(child_subtrees)
    for targets in _cartesian_labels(t_vertex_labels, m):
        assignment: dict[int, list[LabelledTree]] = {}
        for subtree, target in zip(child_subtrees, targets):
            assignment.setdefault(target, []).append(subtree)
        result = rebuild(s, graft_into(t_shifted, assignment))
        out[result] = out.get(result, Fraction(0)) + 1
    return out


def _cartesian_labels(labels: list[int], m: int):
    if m == 0:
        yield ()
        return
    for rest in _cartesian_labels(labels, m - 1):
        for lab in labels:
            yield rest + (lab,)


def compose_sum(operad, a: LinearCombo, i: int, b: LinearCombo) -> LinearCombo:
    out: LinearCombo = {}
    for ka, ca in a.items():
        for kb, cb in b.items():
            out = combo_add(out, operad.compose(ka, i, kb), ca * cb)
    return out


def assoc_compose(a, i: int, b) -> LinearCombo:
    """Partial composition of permutation sums by block substitution."""
    if isinstance(a, tuple):
        a = {a: Fraction(1)}
    if isinstance(b, tuple):
        b = {b: Fraction(1)}
    return compose_sum(AssocOperad(), a, i, b)


def insertion_prelie(s: TreeSum | RootedTree, t: TreeSum | RootedTree) -> TreeSum:
    """The augmented-operad right pre-Lie product on unlabelled trees.

    Sums the insertions of t at every vertex of s and forgets labels; the
    result does not depend on the labellings chosen.
    """
    if isinstance(s, RootedTree):
        s = TreeSum.from_tree(s)
    if isinstance(t, RootedTree):
        t = TreeSum.from_tree(t)
    acc = TreeSum()
    for fs, cs in s.items():
        for ft, ct in t.items():
            (ts,), (tt,) = fs.trees, ft.trees
            ls = attach_labels(ts, list(range(1, ts.vertex_count + 1)))
            lt = attach_labels(tt, list(range(1, tt.vertex_count + 1)))
            for i in range(1, ts.vertex_count + 1):
                for result, coeff in prelie_insert(ls, i, lt).items():
                    acc = acc + TreeSum.from_tree(forget_labels(result), cs * ct * coeff)
    return acc


def operad_product_on_quotient(s: RootedTree, t: RootedTree) -> TreeSum:
    """Free-algebra product induced on the label quotient: graft s below t.

    Realized operadically as gamma(w; s, t) for the two-vertex generator w
    whose root is labelled 2, then forgetting labels.
    """
    w = labelled_node(2, [labelled_node(1)])
    ls = attach_labels(s, list(range(1, s.vertex_count + 1)))
    lt = attach_labels(t, list(range(1, t.vertex_count + 1)))
    acc = TreeSum()
    for mid, c1 in prelie_insert(w, 2, lt).items():
        for result, c2 in prelie_insert(mid, 1, ls).items():
            acc = acc + TreeSum.from_tree(forget_labels(result), c1 * c2)
    return acc


@dataclass
class AxiomFailure:
    axiom: str
    detail: str


@dataclass
class AxiomReport:
    operad_name: str
    max_arity: int
    checks: int = 0
    failures: list[AxiomFailure] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def record(self, condition: bool, axiom: str, detail: str) -> None:
        self.checks += 1
        if not condition:
            self.failures.append(AxiomFailure(axiom, detail))

    def summary(self) -> str:
        status = "pass" if self.ok else f"FAIL ({len(self.failures)} violations)"
        return f"{self.operad_name}: {self.checks} checks, {status}"


def operad_axiom_suite(operad, max_arity: int) -> AxiomReport:
    """Exhaustive nested/disjoint associativity, unit and equivariance checks."""
    report = AxiomReport(operad.name, max_arity)
    bases = {n: operad.arity_basis(n) for n in range(1, max_arity + 1)}

    for n, basis in bases.items():
        for a in basis:
            report.record(
                compose_sum(operad, {operad.unit: Fraction(1)}, 1, {a: Fraction(1)}) == {a: Fraction(1)},
                "unit-left",
                f"e o1 {a}",
            )
            for i in range(1, n + 1):
                report.record(
                    operad.compose(a, i, operad.unit) == {a: Fraction(1)},
                    "unit-right",
                    f"{a} o_{i} e",
                )

    for k, basis_a in bases.items():
        for l, basis_b in bases.items():
            for m, basis_c in bases.items():
                for a in basis_a:
                    for b in basis_b:
                        for c in basis_c:
                            for i in range(1, k + 1):
                                ab = operad.compose(a, i, b)
                                # nested: compose into the b slot
                                for j in range(1, l + 1):
                                    lhs = compose_sum(operad, ab, i + j - 1, {c: Fraction(1)})
                                    rhs = compose_sum(operad, {a: Fraction(1)}, i, operad.compose(b, j, c))
                                    report.record(lhs == rhs, "nested", f"({a} o_{i} {b}) o_{i + j - 1} {c}")
                                # disjoint: compose into a later a slot
                                for j in range(i + 1, k + 1):
                                    lhs = compose_sum(operad, ab, l + j - 1, {c: Fraction(1)})
                                    rhs = compose_sum(operad, operad.compose(a, j, c), i, {b: Fraction(1)})
                                    report.record(lhs == rhs, "disjoint", f"({a} o_{i} {b}) o_{l + j - 1} {c}")

    for k, basis_a in bases.items():
        for l, basis_b in bases.items():
            for a in basis_a:
                for b in basis_b:
                    for sigma in _perms(range(1, k + 1)):
                        for tau in _perms(range(1, l + 1)):
                            for i in range(1, k + 1):
                                lhs = operad.compose(operad.act(a, sigma), i, operad.act(b, tau))
                                iota = block_substitution(sigma, i, tau)
                                rhs = {
                                    operad.act(x, iota): c
                                    for x, c in operad.compose(a, sigma[i - 1], b).items()
                                }
                                report.record(lhs == rhs, "equivariance", f"{a}.s o_{i} {b}.t")
    return report
