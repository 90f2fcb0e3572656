"""Finite formal linear combinations with exact rational coefficients."""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable


class LinComb:
    """Immutable map key -> Fraction with no zero entries stored.

    Subclasses fix the key type and, where meaningful, a multiplication.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Iterable | dict = ()):
        data: dict = {}
        items = terms.items() if isinstance(terms, dict) else terms
        for key, coeff in items:
            c = data.get(key, 0) + Fraction(coeff)
            if c:
                data[key] = c
            elif key in data:
                del data[key]
        object.__setattr__(self, "terms", data)

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    @classmethod
    def from_term(cls, key, coeff=1):
        return cls(((key, Fraction(coeff)),))

    def coefficient(self, key) -> Fraction:
        return self.terms.get(key, Fraction(0))

    def is_zero(self) -> bool:
        return not self.terms

    def support(self):
        return self.terms.keys()

    def items(self):
        return self.terms.items()

    def __add__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        data = dict(self.terms)
        for key, coeff in other.terms.items():
            c = data.get(key, 0) + coeff
            if c:
                data[key] = c
            else:
                del data[key]
        return type(self)(data)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return type(self)({k: -c for k, c in self.terms.items()})

    def scale(self, scalar):
        s = Fraction(scalar)
        if not s:
            return type(self)()
        return type(self)({k: s * c for k, c in self.terms.items()})

    def __rmul__(self, scalar):
        if isinstance(scalar, (int, Fraction)):
            return self.scale(scalar)
        return NotImplemented

    def __eq__(self, other) -> bool:
        return type(other) is type(self) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.terms!r})"


def bilinear(f: Callable, a: LinComb, b: LinComb, out_type=None):
    """Extend ``f`` on keys (returning a LinComb) bilinearly to combinations."""
    result: dict = {}
    sample = None
    for ka, ca in a.items():
        for kb, cb in b.items():
            part = f(ka, kb)
            sample = sample or type(part)
            for key, coeff in part.items():
                c = result.get(key, 0) + ca * cb * coeff
                if c:
                    result[key] = c
                elif key in result:
                    del result[key]
    cls = out_type or sample or type(a)
    return cls(result)
