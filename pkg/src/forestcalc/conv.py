"""Convolution algebra of linear forms on the forest Hopf algebra.

A Functional stores exact values on every forest up to a truncation degree,
with coefficients in either the rationals or a ring of truncated Laurent
series.  Characters (multiplicative, unital) and infinitesimal characters
(vanishing on nontrivial products) are built and recognized here, together
with the convolution product, its geometric-series inverse, exp/log, and the
dual basis delta_t / sigma(t) delta_t of the tree pairing.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Mapping

from .ck_hopf import coproduct
from .forests import EMPTY_FOREST, Forest, RootedTree, forests_up_to, symmetry_factor


@dataclass(frozen=True)
class Ring:
    """Coefficient ring tag: carries its zero and one."""

    name: str
    zero: Any
    one: Any


RATIONAL = Ring("rational", Fraction(0), Fraction(1))


class RingMismatchError(ValueError):
    pass


class Functional:
    """Linear form on forests, defined for vertex counts up to ``truncation``."""

    __slots__ = ("ring", "truncation", "_values")

    def __init__(self, ring: Ring, truncation: int, values: Mapping[Forest, Any]):
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "truncation", int(truncation))
        cleaned = {
            f: v
            for f, v in values.items()
            if f.vertex_count <= truncation and v != ring.zero
        }
        object.__setattr__(self, "_values", cleaned)

    def __setattr__(self, name, value):
        raise AttributeError("Functional is immutable")

    def value(self, f: Forest):
        if f.vertex_count > self.truncation:
            raise ValueError(
                f"forest {f.render()!r} has {f.vertex_count} vertices, beyond truncation {self.truncation}"
            )
        return self._values.get(f, self.ring.zero)

    def __call__(self, f: Forest):
        return self.value(f)

    def items(self):
        return self._values.items()

    def map_values(self, fn: Callable) -> Functional:
        return Functional(self.ring, self.truncation, {f: fn(v) for f, v in self._values.items()})

    def restrict(self, truncation: int) -> Functional:
        return Functional(self.ring, min(self.truncation, truncation), self._values)

    def __add__(self, other: Functional) -> Functional:
        _check_rings(self, other)
        trunc = min(self.truncation, other.truncation)
        values = dict(self._values)
        for f, v in other.items():
            values[f] = values.get(f, self.ring.zero) + v
        return Functional(self.ring, trunc, values)

    def __sub__(self, other: Functional) -> Functional:
        return self + other.map_values(lambda v: -v)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Functional)
            and self.ring == other.ring
            and self.truncation == other.truncation
            and self._values == other._values
        )

    def __repr__(self) -> str:
        return f"Functional({self.ring.name}, <= {self.truncation} vertices, {len(self._values)} terms)"

    def agrees_with(self, other: Functional, degree: int | None = None) -> bool:
        """Equality of values on every forest up to the common truncation."""
        if self.ring != other.ring:
            return False
        d = min(self.truncation, other.truncation)
        if degree is not None:
            d = min(d, degree)
        return all(self.value(f) == other.value(f) for f in forests_up_to(d, _colors_hint(self, other)))


def _colors_hint(*functionals: Functional) -> int:
    colors = 1
    for phi in functionals:
        for f in phi._values:
            for t in f:
                colors = max(colors, _max_color(t) + 1)
    return colors


def _max_color(t: RootedTree) -> int:
    return max([t.color] + [_max_color(c) for c in t.children])


def _check_rings(a: Functional, b: Functional) -> None:
    if a.ring != b.ring:
        raise RingMismatchError(f"coefficient rings differ: {a.ring.name} vs {b.ring.name}")


def unit_functional(ring: Ring = RATIONAL, truncation: int = 6) -> Functional:
    """The convolution unit e = u o eps: one on the empty forest, zero elsewhere."""
    return Functional(ring, truncation, {EMPTY_FOREST: ring.one})


def convolve(phi: Functional, psi: Functional) -> Functional:
    """(phi * psi)(x) = sum phi(crown) psi(trunk) over the full coproduct."""
    _check_rings(phi, psi)
    trunc = min(phi.truncation, psi.truncation)
    colors = _colors_hint(phi, psi)
    values: dict[Forest, Any] = {}
    for f in forests_up_to(trunc, colors):
        acc = phi.ring.zero
        for (crown, trunk), coeff in coproduct(f).items():
            term = phi.value(crown) * psi.value(trunk)
            acc = acc + coeff * term if coeff != 1 else acc + term
        if acc != phi.ring.zero:
            values[f] = acc
    return Functional(phi.ring, trunc, values)


def convolution_power(phi: Functional, k: int) -> Functional:
    out = unit_functional(phi.ring, phi.truncation)
    for _ in range(k):
        out = convolve(out, phi)
    return out


def conv_inverse(phi: Functional) -> Functional:
    """Geometric-series inverse sum_k (e - phi)^{*k}; needs phi(1) = 1."""
    if phi.value(EMPTY_FOREST) != phi.ring.one:
        raise ValueError("convolution inverse requires value 1 on the empty forest")
    e = unit_functional(phi.ring, phi.truncation)
    delta = e - phi
    acc, power = e, e
    for _ in range(phi.truncation):
        power = convolve(power, delta)
        acc = acc + power
    return acc


def conv_exp(alpha: Functional) -> Functional:
    """exp_*(alpha) = sum alpha^{*k} / k!; needs alpha(1) = 0."""
    if alpha.value(EMPTY_FOREST) != alpha.ring.zero:
        raise ValueError("convolution exponential requires value 0 on the empty forest")
    acc = unit_functional(alpha.ring, alpha.truncation)
    power = acc
    fact = 1
    for k in range(1, alpha.truncation + 1):
        power = convolve(power, alpha)
        fact *= k
        acc = acc + power.map_values(lambda v, s=Fraction(1, fact): s * v)
    return acc


def conv_log(phi: Functional) -> Functional:
    """log_*(phi) = sum (-1)^{k-1} (phi - e)^{*k} / k; needs phi(1) = 1."""
    if phi.value(EMPTY_FOREST) != phi.ring.one:
        raise ValueError("convolution logarithm requires value 1 on the empty forest")
    e = unit_functional(phi.ring, phi.truncation)
    gamma = phi - e
    acc = Functional(phi.ring, phi.truncation, {})
    power = e
    for k in range(1, phi.truncation + 1):
        power = convolve(power, gamma)
        acc = acc + power.map_values(lambda v, s=Fraction((-1) ** (k - 1), k): s * v)
    return acc


def character_from_tree_values(
    tree_values: Mapping[RootedTree, Any],
    truncation: int,
    ring: Ring = RATIONAL,
) -> Functional:
    """Multiplicative extension of tree values to all forests up to truncation."""
    colors = 1
    for t in tree_values:
        colors = max(colors, _max_color(t) + 1)
    values: dict[Forest, Any] = {}
    for f in forests_up_to(truncation, colors):
        acc = ring.one
        for t in f:
            if t.vertex_count <= truncation and t not in tree_values:
                raise ValueError(f"missing tree value for {t.render()!r} below truncation")
            acc = acc * tree_values[t]
        values[f] = acc
    return Functional(ring, truncation, values)


def dual_basis(t: RootedTree, normalized: bool = False, truncation: int | None = None, ring: Ring = RATIONAL) -> Functional:
    """delta_t picks the coefficient of the one-tree forest t; delta~_t = sigma(t) delta_t."""
    trunc = t.vertex_count if truncation is None else truncation
    scale = symmetry_factor(t) if normalized else 1
    return Functional(ring, trunc, {Forest((t,)): scale * ring.one})


def is_character(phi: Functional, degree: int | None = None) -> bool:
    """Unital and multiplicative on all forests within the truncation."""
    if phi.value(EMPTY_FOREST) != phi.ring.one:
        return False
    d = phi.truncation if degree is None else min(degree, phi.truncation)
    for f in forests_up_to(d, _colors_hint(phi)):
        prod = phi.ring.one
        for t in f:
            prod = prod * phi.value(Forest((t,)))
        if phi.value(f) != prod:
            return False
    return True


def is_infinitesimal_character(alpha: Functional, degree: int | None = None) -> bool:
    """Vanishes on the empty forest and on every forest with >= 2 components."""
    if alpha.value(EMPTY_FOREST) != alpha.ring.zero:
        return False
    d = alpha.truncation if degree is None else min(degree, alpha.truncation)
    for f in forests_up_to(d, _colors_hint(alpha)):
        if len(f) >= 2 and alpha.value(f) != alpha.ring.zero:
            return False
    return True


def bracket(alpha: Functional, beta: Functional) -> Functional:
    return convolve(alpha, beta) - convolve(beta, alpha)
