"""B-series: tree-indexed formal expansions of near-identity maps.

A B-series assigns a rational weight to the empty tree and to every rooted
tree up to a truncation order.  Evaluated against a polynomial vector field
it produces an exact truncated expansion in the step variable h, with the
tree t contributing h^{|t|} alpha(t)/sigma(t) times the elementary
differential F(t).  Composition is the convolution of the associated
characters (inner method's coefficients act on the crown side); substitution
re-expresses the series over a modified field and is dual to the
extraction-contraction coaction.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .ck_hopf import coproduct
from .conv import Functional, character_from_tree_values, convolve
from .forests import Forest, RootedTree, symmetry_factor, trees_up_to
from .substitution import coaction
from .vector_fields import Poly, PolyVectorField, cayley


@dataclass(frozen=True)
class BSeries:
    """Weights: a rational for the empty tree plus a map on rooted trees."""

    empty_coeff: Fraction
    tree_coeffs: Mapping[RootedTree, Fraction]
    order: int

    def __post_init__(self):
        cleaned = {
            t: Fraction(c)
            for t, c in self.tree_coeffs.items()
            if t.vertex_count <= self.order and c
        }
        object.__setattr__(self, "tree_coeffs", cleaned)
        object.__setattr__(self, "empty_coeff", Fraction(self.empty_coeff))

    def value(self, t: RootedTree) -> Fraction:
        if t.vertex_count > self.order:
            raise ValueError(f"tree {t.render()!r} is beyond the truncation order {self.order}")
        return self.tree_coeffs.get(t, Fraction(0))

    def as_character(self, truncation: int | None = None) -> Functional:
        """Multiplicative extension to forests (the Butcher-group character)."""
        trunc = self.order if truncation is None else min(truncation, self.order)
        values = {t: self.value(t) for t in trees_up_to(trunc)}
        return character_from_tree_values(values, trunc)

    def agrees_with(self, other: BSeries, through: int | None = None) -> bool:
        d = min(self.order, other.order)
        if through is not None:
            d = min(d, through)
        if self.empty_coeff != other.empty_coeff:
            return False
        return all(self.value(t) == other.value(t) for t in trees_up_to(d))


def unit_bseries(order: int) -> BSeries:
    """The identity-map series: weight 1 on the empty tree only."""
    return BSeries(Fraction(1), {}, order)


@dataclass(frozen=True)
class HSeriesMap:
    """Truncated expansion sum_p h^p (polynomial map), exact in x and h."""

    dim: int
    order: int
    coeffs: Mapping[int, tuple[Poly, ...]]

    def __post_init__(self):
        cleaned = {}
        for p, comps in self.coeffs.items():
            comps = tuple(comps)
            if p <= self.order and any(not c.is_zero() for c in comps):
                cleaned[int(p)] = comps
        object.__setattr__(self, "coeffs", cleaned)

    def component(self, p: int) -> tuple[Poly, ...]:
        zero = Poly.zero(self.dim)
        return self.coeffs.get(p, (zero,) * self.dim)

    def to_hpolys(self) -> list[Poly]:
        """Each component as a single polynomial in (x1..xn, h)."""
        n = self.dim
        out = [Poly.zero(n + 1) for _ in range(n)]
        for p, comps in self.coeffs.items():
            hpow = Poly(n + 1, {(0,) * n + (p,): Fraction(1)})
            for j in range(n):
                out[j] = out[j] + comps[j].extend(n + 1) * hpow
        return out

    @classmethod
    def from_hpolys(cls, polys: Sequence[Poly], order: int) -> HSeriesMap:
        n = len(polys)
        split: dict[int, list[Poly]] = {}
        for j, poly in enumerate(polys):
            for mono, c in poly.coeffs.items():
                p = mono[-1]
                if p > order:
                    continue
                split.setdefault(p, [Poly.zero(n) for _ in range(n)])
                split[p][j] = split[p][j] + Poly(n, {mono[:-1]: c})
        return cls(n, order, {p: tuple(comps) for p, comps in split.items()})

    def compose(self, inner: HSeriesMap) -> HSeriesMap:
        """self after inner: substitute the inner expansion into every coefficient."""
        if self.dim != inner.dim:
            raise ValueError("dimension mismatch")
        order = min(self.order, inner.order)
        n = self.dim
        inner_polys = inner.to_hpolys()
        hvar = Poly.var(n + 1, n)
        args = inner_polys + [hvar]
        out = [p.subs(args, truncate_var=(n, order)) for p in self.to_hpolys()]
        return HSeriesMap.from_hpolys(out, order)

    def agrees_with(self, other: HSeriesMap, through: int | None = None) -> bool:
        if self.dim != other.dim:
            return False
        d = min(self.order, other.order)
        if through is not None:
            d = min(d, through)
        return all(self.component(p) == other.component(p) for p in range(d + 1))

    def render(self) -> str:
        lines = []
        for p in sorted(self.coeffs):
            body = " ; ".join(c.render() for c in self.coeffs[p])
            lines.append(f"h^{p}: {body}")
        return "\n".join(lines)


def bseries_eval(alpha: BSeries, field: PolyVectorField) -> HSeriesMap:
    """Exact truncated expansion alpha(empty) x + sum h^{|t|} alpha(t)/sigma(t) F(t)(x).

    The field may already depend on h through an extra trailing variable; the
    expansion is then truncated at total h-degree ``alpha.order``.
    """
    n = field.dim
    if field.nvars == n:
        field = field.extend(n + 1)
    elif field.nvars != n + 1:
        raise ValueError("field must have nvars equal to dim or dim + 1")
    order = alpha.order
    acc = [Poly.zero(n + 1) for _ in range(n)]
    if alpha.empty_coeff:
        for j in range(n):
            acc[j] = acc[j] + alpha.empty_coeff * Poly.var(n + 1, j)
    for t in trees_up_to(order):
        c = alpha.value(t)
        if not c:
            continue
        weight = c / symmetry_factor(t)
        hpow = Poly(n + 1, {(0,) * n + (t.vertex_count,): weight})
        eldiff = cayley(t, [field])
        for j in range(n):
            acc[j] = acc[j] + (eldiff.components[j] * hpow).truncate(n, order)
    return HSeriesMap.from_hpolys(acc, order)


def bseries_compose(alpha: BSeries, beta: BSeries) -> BSeries:
    """Convolution alpha * beta of the associated characters, restricted to trees.

    Convention: the map of the result is (map of beta) after (map of alpha).
    """
    if alpha.empty_coeff != 1 or beta.empty_coeff != 1:
        raise ValueError("composition needs both empty coefficients equal to 1")
    order = min(alpha.order, beta.order)
    chi_a = alpha.as_character(order)
    chi_b = {t: beta.value(t) for t in trees_up_to(order)}

    values: dict[RootedTree, Fraction] = {}
    for t in trees_up_to(order):
        acc = Fraction(0)
        for (crown, trunk), coeff in coproduct(Forest((t,))).items():
            if len(trunk) > 1:
                continue  # beta is a linear form on the empty forest and trees
            b = Fraction(1) if trunk.is_empty() else chi_b.get(trunk.trees[0], Fraction(0))
            if b:
                acc += coeff * chi_a.value(crown) * b
        values[t] = acc
    return BSeries(Fraction(1), values, order)


def bseries_convolution_character(alpha: BSeries, beta: BSeries) -> Functional:
    """Full character convolution (both factors extended multiplicatively)."""
    order = min(alpha.order, beta.order)
    return convolve(alpha.as_character(order), beta.as_character(order))


def bseries_substitute(alpha: BSeries, beta: BSeries) -> BSeries:
    """Substitution law: replace the field of beta by the series of alpha.

    Requires alpha(empty) = 0 and alpha(single vertex) = 1; alpha extends
    multiplicatively over extracted subforests, beta sees the contracted tree.
    """
    if alpha.empty_coeff != 0:
        raise ValueError("substitution needs alpha(empty) = 0")
    dot = RootedTree()
    if alpha.value(dot) != 1:
        raise ValueError("substitution needs alpha(single vertex) = 1")
    order = min(alpha.order, beta.order)

    def alpha_on_forest(f: Forest) -> Fraction:
        acc = Fraction(1)
        for t in f:
            acc *= alpha.value(t)
            if not acc:
                break
        return acc

    values: dict[RootedTree, Fraction] = {}
    for t in trees_up_to(order):
        acc = Fraction(0)
        for (extracted, contracted), coeff in coaction(Forest((t,))).items():
            b = beta.value(contracted.trees[0]) if len(contracted) == 1 else Fraction(0)
            if b:
                acc += coeff * alpha_on_forest(extracted) * b
        values[t] = acc
    return BSeries(beta.empty_coeff, values, order)


def substituted_field(alpha: BSeries, field: PolyVectorField) -> PolyVectorField:
    """The h-dependent field (1/h) B(alpha; field); needs alpha(empty) = 0."""
    if alpha.empty_coeff != 0:
        raise ValueError("the substituted field needs alpha(empty) = 0")
    n = field.dim
    series = bseries_eval(alpha, field)
    comps = [Poly.zero(n + 1) for _ in range(n)]
    for p, parts in series.coeffs.items():
        if p == 0:
            raise AssertionError("h^0 part should vanish when alpha(empty) = 0")
        hpow = Poly(n + 1, {(0,) * n + (p - 1,): Fraction(1)})
        for j in range(n):
            comps[j] = comps[j] + parts[j].extend(n + 1) * hpow
    return PolyVectorField(comps, n)


def rk_to_bseries(a_matrix: Sequence[Sequence[Fraction]], weights: Sequence[Fraction], order: int) -> BSeries:
    """Elementary weights of a Runge-Kutta tableau as a B-series.

    Works for implicit tableaus as well: the stage expansions are solved
    order by order, so only the tableau shape needs validating.
    """
    s = len(weights)
    a = [[Fraction(v) for v in row] for row in a_matrix]
    if len(a) != s or any(len(row) != s for row in a):
        raise ValueError("tableau shape mismatch: A must be s x s with s = len(b)")
    b = [Fraction(v) for v in weights]

    stage_cache: dict[RootedTree, list[Fraction]] = {}

    def stage_weights(t: RootedTree) -> list[Fraction]:
        if t in stage_cache:
            return stage_cache[t]
        if not t.children:
            out = [Fraction(1)] * s
        else:
            out = [Fraction(1)] * s
            for branch in t.children:
                w = stage_weights(branch)
                for i in range(s):
                    out[i] *= sum(a[i][j] * w[j] for j in range(s))
        stage_cache[t] = out
        return out

    values: dict[RootedTree, Fraction] = {}
    for t in trees_up_to(order):
        w = stage_weights(t)
        values[t] = sum(b[i] * w[i] for i in range(s))
    return BSeries(Fraction(1), values, order)
