"""Polynomial vector fields over the rationals: the concrete pre-Lie target.

Fields are n-tuples of polynomials in x1..xn with exact rational
coefficients.  They carry the flat-connection pre-Lie product
(f_i d_i) |> (g_j d_j) = f_i (d_i g_j) d_j, its frozen NAP variant where the
left factor is evaluated at an origin first, and the two Cayley maps (branch
recursion and closed multi-index formula) sending decorated trees to
elementary differentials.

A field may carry more polynomial variables than its dimension; the extra
variables are inert parameters (the B-series machinery threads the step
variable h through this way).
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product as _cartesian
from typing import Iterable, Mapping, Sequence

from .forests import RootedTree

MAX_FIELD_DEGREE = 6  # cap on user-supplied component degrees

Monomial = tuple[int, ...]


class Poly:
    """Dense-by-monomial polynomial with Fraction coefficients."""

    __slots__ = ("nvars", "coeffs")

    def __init__(self, nvars: int, coeffs: Mapping[Monomial, Fraction] | None = None):
        object.__setattr__(self, "nvars", int(nvars))
        data: dict[Monomial, Fraction] = {}
        for mono, c in (coeffs or {}).items():
            c = Fraction(c)
            if len(mono) != nvars:
                raise ValueError(f"monomial {mono} has wrong arity for {nvars} variables")
            if c:
                data[tuple(int(e) for e in mono)] = c
        object.__setattr__(self, "coeffs", data)

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @classmethod
    def zero(cls, nvars: int) -> Poly:
        return cls(nvars)

    @classmethod
    def const(cls, nvars: int, c) -> Poly:
        return cls(nvars, {(0,) * nvars: Fraction(c)})

    @classmethod
    def var(cls, nvars: int, i: int) -> Poly:
        mono = tuple(1 if j == i else 0 for j in range(nvars))
        return cls(nvars, {mono: Fraction(1)})

    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self) -> int:
        return max((sum(m) for m in self.coeffs), default=0)

    def var_degree(self, i: int) -> int:
        return max((m[i] for m in self.coeffs), default=0)

    def extend(self, nvars: int) -> Poly:
        """Reinterpret in a larger variable ring (new variables inert)."""
        if nvars < self.nvars:
            raise ValueError("cannot shrink the variable ring")
        pad = (0,) * (nvars - self.nvars)
        return Poly(nvars, {m + pad: c for m, c in self.coeffs.items()})

    def __add__(self, other: Poly) -> Poly:
        self._check(other)
        data = dict(self.coeffs)
        for m, c in other.coeffs.items():
            data[m] = data.get(m, Fraction(0)) + c
        return Poly(self.nvars, data)

    def __sub__(self, other: Poly) -> Poly:
        return self + (-other)

    def __neg__(self) -> Poly:
        return Poly(self.nvars, {m: -c for m, c in self.coeffs.items()})

    def __mul__(self, other: Poly) -> Poly:
        self._check(other)
        data: dict[Monomial, Fraction] = {}
        for ma, ca in self.coeffs.items():
            for mb, cb in other.coeffs.items():
                key = tuple(a + b for a, b in zip(ma, mb))
                data[key] = data.get(key, Fraction(0)) + ca * cb
        return Poly(self.nvars, data)

    def __rmul__(self, scalar) -> Poly:
        if isinstance(scalar, (int, Fraction)):
            s = Fraction(scalar)
            return Poly(self.nvars, {m: s * c for m, c in self.coeffs.items()})
        return NotImplemented

    def _check(self, other: Poly) -> None:
        if self.nvars != other.nvars:
            raise ValueError(f"variable counts differ: {self.nvars} vs {other.nvars}")

    def diff(self, i: int) -> Poly:
        data: dict[Monomial, Fraction] = {}
        for m, c in self.coeffs.items():
            if m[i]:
                key = m[:i] + (m[i] - 1,) + m[i + 1 :]
                data[key] = data.get(key, Fraction(0)) + c * m[i]
        return Poly(self.nvars, data)

    def eval(self, point: Sequence[Fraction]) -> Fraction:
        if len(point) != self.nvars:
            raise ValueError("point has wrong dimension")
        total = Fraction(0)
        for m, c in self.coeffs.items():
            term = c
            for x, e in zip(point, m):
                term *= Fraction(x) ** e
            total += term
        return total

    def eval_partial(self, assignments: Mapping[int, Fraction]) -> Poly:
        """Substitute rational values for some variables, keeping the rest."""
        data: dict[Monomial, Fraction] = {}
        for m, c in self.coeffs.items():
            coeff = c
            key = list(m)
            for i, v in assignments.items():
                coeff *= Fraction(v) ** m[i]
                key[i] = 0
            k = tuple(key)
            new = data.get(k, Fraction(0)) + coeff
            if new:
                data[k] = new
            elif k in data:
                del data[k]
        return Poly(self.nvars, data)

    def subs(self, args: Sequence[Poly], truncate_var: tuple[int, int] | None = None) -> Poly:
        """Substitute args[i] for variable i; optional (var, cap) degree pruning."""
        if len(args) != self.nvars:
            raise ValueError("need one substitution per variable")
        nvars = args[0].nvars if args else self.nvars
        out = Poly.zero(nvars)
        power_cache: dict[tuple[int, int], Poly] = {}

        def power(i: int, e: int) -> Poly:
            if e == 0:
                return Poly.const(nvars, 1)
            key = (i, e)
            if key not in power_cache:
                p = power(i, e - 1) * args[i]
                if truncate_var is not None:
                    p = p.truncate(*truncate_var)
                power_cache[key] = p
            return power_cache[key]

        for m, c in self.coeffs.items():
            term = Poly.const(nvars, c)
            for i, e in enumerate(m):
                if e:
                    term = term * power(i, e)
                    if truncate_var is not None:
                        term = term.truncate(*truncate_var)
            out = out + term
        return out

    def truncate(self, var: int, cap: int) -> Poly:
        return Poly(self.nvars, {m: c for m, c in self.coeffs.items() if m[var] <= cap})

    def __eq__(self, other) -> bool:
        return isinstance(other, Poly) and self.nvars == other.nvars and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.nvars, frozenset(self.coeffs.items())))

    def render(self, names: Sequence[str] | None = None) -> str:
        if not self.coeffs:
            return "0"
        names = names or [f"x{i + 1}" for i in range(self.nvars)]
        parts: list[str] = []
        for m in sorted(self.coeffs, key=lambda m: (sum(m), m), reverse=True):
            c = self.coeffs[m]
            factors = [
                names[i] + (f"^{e}" if e > 1 else "")
                for i, e in enumerate(m)
                if e
            ]
            if not factors:
                body = str(abs(c))
            elif abs(c) == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(abs(c))] + factors)
            if not parts:
                parts.append(body if c > 0 else "-" + body)
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"Poly({self.render()!r})"


class PolyVectorField:
    """Vector field sum_j components[j] d_j; components may use extra inert variables."""

    __slots__ = ("dim", "components")

    def __init__(self, components: Iterable[Poly], dim: int | None = None):
        comps = tuple(components)
        if not comps:
            raise ValueError("a vector field needs at least one component")
        n = dim if dim is not None else len(comps)
        if len(comps) != n:
            raise ValueError("component count must equal the dimension")
        nvars = comps[0].nvars
        if nvars < n or any(p.nvars != nvars for p in comps):
            raise ValueError("components must share a variable ring covering the dimension")
        object.__setattr__(self, "dim", n)
        object.__setattr__(self, "components", comps)

    def __setattr__(self, name, value):
        raise AttributeError("PolyVectorField is immutable")

    @property
    def nvars(self) -> int:
        return self.components[0].nvars

    def __add__(self, other: PolyVectorField) -> PolyVectorField:
        self._check(other)
        return PolyVectorField([a + b for a, b in zip(self.components, other.components)], self.dim)

    def __sub__(self, other: PolyVectorField) -> PolyVectorField:
        self._check(other)
        return PolyVectorField([a - b for a, b in zip(self.components, other.components)], self.dim)

    def __rmul__(self, scalar) -> PolyVectorField:
        if isinstance(scalar, (int, Fraction)):
            return PolyVectorField([Fraction(scalar) * p for p in self.components], self.dim)
        return NotImplemented

    def _check(self, other: PolyVectorField) -> None:
        if self.dim != other.dim or self.nvars != other.nvars:
            raise ValueError("dimension mismatch")

    def is_zero(self) -> bool:
        return all(p.is_zero() for p in self.components)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, PolyVectorField)
            and self.dim == other.dim
            and self.components == other.components
        )

    def __hash__(self) -> int:
        return hash((self.dim, self.components))

    def extend(self, nvars: int) -> PolyVectorField:
        return PolyVectorField([p.extend(nvars) for p in self.components], self.dim)

    def at_point(self, origin: Sequence[Fraction]) -> tuple[Fraction, ...]:
        if len(origin) != self.nvars:
            raise ValueError("origin has wrong dimension")
        return tuple(p.eval(origin) for p in self.components)

    def render(self) -> str:
        return " ; ".join(p.render() for p in self.components)

    def __repr__(self) -> str:
        return f"PolyVectorField({self.render()!r})"


def vf_prelie(x: PolyVectorField, y: PolyVectorField) -> PolyVectorField:
    """(f_i d_i) |> (g_j d_j) = sum_j (sum_i f_i d_i g_j) d_j."""
    x._check(y)
    out = []
    for g in y.components:
        acc = Poly.zero(x.nvars)
        for i in range(x.dim):
            acc = acc + x.components[i] * g.diff(i)
        out.append(acc)
    return PolyVectorField(out, x.dim)


def vf_frozen_nap(x: PolyVectorField, y: PolyVectorField, origin: Sequence[Fraction]) -> PolyVectorField:
    """Freeze x at the origin, then differentiate y along the constant field."""
    x._check(y)
    frozen = x.at_point(origin)
    out = []
    for g in y.components:
        acc = Poly.zero(x.nvars)
        for i in range(x.dim):
            if frozen[i]:
                acc = acc + frozen[i] * g.diff(i)
        out.append(acc)
    return PolyVectorField(out, x.dim)


def _multilinear_differential(f: Poly, dim: int, branches: Sequence[Sequence[Poly]]) -> Poly:
    """k-th differential of f contracted against branch component vectors."""
    k = len(branches)
    acc = Poly.zero(f.nvars)
    for idx in _cartesian(range(dim), repeat=k):
        deriv = f
        for i in idx:
            deriv = deriv.diff(i)
            if deriv.is_zero():
                break
        if deriv.is_zero():
            continue
        term = deriv
        for branch, i in zip(branches, idx):
            term = term * branch[i]
        acc = acc + term
    return acc


CAYLEY_METHODS = ("recursive", "closed")


def cayley(t: RootedTree, fields: Sequence[PolyVectorField], method: str = "recursive") -> PolyVectorField:
    """Elementary differential of a decorated tree (colours index ``fields``).

    recursive: the branch values feed the root's k-th differential.
    closed: multi-index sum over colourings of the vertices by coordinates,
    each non-root factor differentiated along its incoming vertices.
    """
    if method not in CAYLEY_METHODS:
        raise ValueError(f"method must be one of {CAYLEY_METHODS}")
    dim = fields[0].dim
    nvars = max(f.nvars for f in fields)
    fields = [f.extend(nvars) for f in fields]
    if method == "recursive":
        return _cayley_recursive(t, fields, dim, nvars)
    return _cayley_closed(t, fields, dim, nvars, origin=None)


def frozen_cayley(
    t: RootedTree,
    fields: Sequence[PolyVectorField],
    origin: Sequence[Fraction],
    method: str = "recursive",
) -> PolyVectorField:
    """Frozen elementary differential: branch values are evaluated at the origin."""
    if method not in CAYLEY_METHODS:
        raise ValueError(f"method must be one of {CAYLEY_METHODS}")
    dim = fields[0].dim
    nvars = max(f.nvars for f in fields)
    fields = [f.extend(nvars) for f in fields]
    origin = tuple(Fraction(v) for v in origin)
    if len(origin) != nvars:
        raise ValueError("origin has wrong dimension")
    if method == "recursive":
        return _frozen_cayley_recursive(t, fields, dim, origin)
    return _cayley_closed(t, fields, dim, nvars, origin=origin)


def _cayley_recursive(t: RootedTree, fields, dim: int, nvars: int) -> PolyVectorField:
    root_field = fields[t.color]
    branches = [_cayley_recursive(c, fields, dim, nvars).components for c in t.children]
    comps = [_multilinear_differential(f, dim, branches) for f in root_field.components]
    return PolyVectorField(comps, dim)


def _frozen_cayley_recursive(t: RootedTree, fields, dim: int, origin) -> PolyVectorField:
    root_field = fields[t.color]
    nvars = root_field.nvars
    branches = []
    for c in t.children:
        vals = _frozen_cayley_recursive(c, fields, dim, origin).at_point(origin)
        branches.append([Poly.const(nvars, v) for v in vals])
    comps = [_multilinear_differential(f, dim, branches) for f in root_field.components]
    return PolyVectorField(comps, dim)


def _cayley_closed(t: RootedTree, fields, dim: int, nvars: int, origin) -> PolyVectorField:
    vertices: list[RootedTree] = []
    parents: list[int] = []

    def walk(node: RootedTree, parent: int) -> None:
        idx = len(vertices)
        vertices.append(node)
        parents.append(parent)
        for c in node.children:
            walk(c, idx)

    walk(t, -1)
    n = len(vertices)
    comps = [Poly.zero(nvars) for _ in range(dim)]
    for coloring in _cartesian(range(dim), repeat=n):
        term = Poly.const(nvars, 1)
        for v in range(n):
            factor = fields[vertices[v].color].components[coloring[v]]
            for w in range(n):
                if parents[w] == v:
                    factor = factor.diff(coloring[w])
            if v != 0 and origin is not None:
                factor = Poly.const(nvars, factor.eval(origin))
            term = term * factor
            if term.is_zero():
                break
        if not term.is_zero():
            comps[coloring[0]] = comps[coloring[0]] + term
    return PolyVectorField(comps, dim)


def elementary_differential(t: RootedTree, x: PolyVectorField, method: str = "recursive") -> PolyVectorField:
    """F_X(t): decorate every vertex of t with the same field."""
    if any_color(t) != 0:
        raise ValueError("elementary differentials of a single field need an uncoloured tree")
    return cayley(t, [x], method)


def any_color(t: RootedTree) -> int:
    return max([t.color] + [any_color(c) for c in t.children])


def parse_poly(text: str, nvars: int) -> Poly:
    """Parse 'x1^2 - 1/2*x2' style polynomials."""
    text = text.strip()
    if not text:
        raise ValueError("empty polynomial")
    out = Poly.zero(nvars)
    pos = 0
    sign = 1
    # normalize leading sign
    while pos < len(text):
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos < len(text) and text[pos] in "+-":
            sign = 1 if text[pos] == "+" else -1
            pos += 1
            continue
        start = pos
        depth_guard = 0
        while pos < len(text) and text[pos] not in "+-":
            pos += 1
            depth_guard += 1
            if depth_guard > 10_000:
                raise ValueError("polynomial term too long")
        term_text = text[start:pos].strip()
        if not term_text:
            raise ValueError(f"dangling sign in polynomial {text!r}")
        out = out + sign * _parse_term(term_text, nvars)
        sign = 1
    return out


def _parse_term(term: str, nvars: int) -> Poly:
    coeff = Fraction(1)
    mono = [0] * nvars
    for factor in term.split("*"):
        factor = factor.strip()
        if not factor:
            raise ValueError(f"empty factor in term {term!r}")
        if factor[0] == "x":
            base, _, exp = factor.partition("^")
            i = int(base[1:]) - 1
            if not 0 <= i < nvars:
                raise ValueError(f"variable {base} out of range for {nvars} variables")
            mono[i] += int(exp) if exp else 1
        else:
            coeff *= Fraction(factor)
    return Poly(nvars, {tuple(mono): coeff})


def parse_vector_field(text: str, dim: int | None = None) -> PolyVectorField:
    """Parse ';'-separated components; enforces the input degree cap."""
    parts = [p for p in text.split(";")]
    n = dim if dim is not None else len(parts)
    comps = [parse_poly(p, n) for p in parts]
    field = PolyVectorField(comps, n)
    for p in comps:
        if p.degree() > MAX_FIELD_DEGREE:
            raise ValueError(f"component degree {p.degree()} exceeds the cap {MAX_FIELD_DEGREE}")
    return field
