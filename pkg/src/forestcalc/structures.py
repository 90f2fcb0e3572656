"""Axiom checkers for binary structures on concrete carriers.

One checker sweeps a named identity (pre-Lie, NAP, Novikov, assosymmetric,
Zinbiel-as-NAP) over all basis triples of a carrier: either a
finite-dimensional multiplication table or any basis-plus-product pair whose
elements support subtraction.  A second checker handles the three dendriform
axioms, the associativity of their sum, and the left pre-Lie product they
induce.  The shuffle algebra with its half-products is the built-in example;
the derivation product (Da)b on polynomials is the Novikov prototype.
"""

from __future__ import annotations

import operator
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product as _cartesian
from typing import Callable, Sequence

from .linear import LinComb
from .vector_fields import Poly

Word = tuple


class WordSum(LinComb):
    """Linear combination of words over an arbitrary alphabet."""

    @classmethod
    def word(cls, letters: Sequence) -> WordSum:
        return cls.from_term(tuple(letters))


def shuffle_words(u: Word, v: Word) -> WordSum:
    """All interleavings of u and v, with multiplicity."""
    if not u:
        return WordSum.from_term(tuple(v))
    if not v:
        return WordSum.from_term(tuple(u))
    left = WordSum({(u[0],) + w: c for w, c in shuffle_words(u[1:], v).items()})
    right = WordSum({(v[0],) + w: c for w, c in shuffle_words(u, v[1:]).items()})
    return left + right


def _require_nonempty(x: WordSum, side: str) -> None:
    if any(len(w) == 0 for w in x.support()):
        raise ValueError(f"half-products are undefined on the empty word ({side} operand)")


def half_shuffle_left(a: WordSum | Word, b: WordSum | Word) -> WordSum:
    """a < b: the shuffles starting with the first letter of a."""
    a, b = _as_wordsum(a), _as_wordsum(b)
    _require_nonempty(a, "left")
    _require_nonempty(b, "right")
    out = WordSum()
    for u, cu in a.items():
        for v, cv in b.items():
            part = WordSum({(u[0],) + w: c for w, c in shuffle_words(u[1:], v).items()})
            out = out + part.scale(cu * cv)
    return out


def half_shuffle_right(a: WordSum | Word, b: WordSum | Word) -> WordSum:
    """a > b: the shuffles starting with the first letter of b."""
    a, b = _as_wordsum(a), _as_wordsum(b)
    _require_nonempty(a, "left")
    _require_nonempty(b, "right")
    out = WordSum()
    for u, cu in a.items():
        for v, cv in b.items():
            part = WordSum({(v[0],) + w: c for w, c in shuffle_words(u, v[1:]).items()})
            out = out + part.scale(cu * cv)
    return out


def half_shuffles(a: WordSum | Word, b: WordSum | Word) -> tuple[WordSum, WordSum]:
    """(a < b, a > b); their sum is the full shuffle."""
    return half_shuffle_left(a, b), half_shuffle_right(a, b)


def _as_wordsum(x) -> WordSum:
    if isinstance(x, WordSum):
        return x
    return WordSum.from_term(tuple(x))


@dataclass(frozen=True)
class ProductTable:
    """Structure constants of a bilinear product on a d-dimensional space."""

    dimension: int
    entries: tuple[tuple[tuple[Fraction, ...], ...], ...]

    @classmethod
    def from_rows(cls, dimension: int, rows: dict[tuple[int, int], Sequence[Fraction]]) -> ProductTable:
        zero = tuple(Fraction(0) for _ in range(dimension))
        table = [[zero] * dimension for _ in range(dimension)]
        for (i, j), vec in rows.items():
            if not (0 <= i < dimension and 0 <= j < dimension):
                raise ValueError(f"basis index ({i}, {j}) out of range")
            if len(vec) != dimension:
                raise ValueError("structure-constant vector has wrong length")
            table[i][j] = tuple(Fraction(v) for v in vec)
        return cls(dimension, tuple(tuple(row) for row in table))

    def product(self, x: tuple[Fraction, ...], y: tuple[Fraction, ...]) -> tuple[Fraction, ...]:
        out = [Fraction(0)] * self.dimension
        for i, xi in enumerate(x):
            if not xi:
                continue
            for j, yj in enumerate(y):
                if not yj:
                    continue
                for k, c in enumerate(self.entries[i][j]):
                    if c:
                        out[k] += xi * yj * c
        return tuple(out)

    def basis(self) -> list[tuple[Fraction, ...]]:
        return [
            tuple(Fraction(1) if j == i else Fraction(0) for j in range(self.dimension))
            for i in range(self.dimension)
        ]


@dataclass(frozen=True)
class AlgebraCarrier:
    """A finite basis plus a bilinear product on elements supporting '-'."""

    basis: tuple
    product: Callable
    sub: Callable = operator.sub


def _vsub(x: tuple, y: tuple) -> tuple:
    return tuple(a - b for a, b in zip(x, y))


def carrier_of(table_or_carrier) -> AlgebraCarrier:
    if isinstance(table_or_carrier, ProductTable):
        t = table_or_carrier
        return AlgebraCarrier(tuple(t.basis()), t.product, _vsub)
    if isinstance(table_or_carrier, AlgebraCarrier):
        return table_or_carrier
    raise TypeError("expected a ProductTable or AlgebraCarrier")


@dataclass
class CheckReport:
    name: str
    checks: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def record(self, condition: bool, detail: str) -> None:
        self.checks += 1
        if not condition:
            self.failures.append(detail)

    def summary(self) -> str:
        status = "pass" if self.ok else f"FAIL ({len(self.failures)} violations)"
        return f"{self.name}: {self.checks} triples, {status}"


STRUCTURE_IDENTITIES = (
    "left_prelie",
    "right_prelie",
    "left_nap",
    "novikov",
    "assosymmetric",
    "zinbiel_nap",
)


def structure_axiom_check(table_or_carrier, which: str) -> CheckReport:
    """Exhaustively test the named identity on every basis triple.

    All violating triples are reported, none raise.
    """
    if which not in STRUCTURE_IDENTITIES:
        raise ValueError(f"unknown identity {which!r}; choose from {STRUCTURE_IDENTITIES}")
    carrier = carrier_of(table_or_carrier)
    mul, sub = carrier.product, carrier.sub
    report = CheckReport(which)

    def assoc(a, b, c):
        return sub(mul(mul(a, b), c), mul(a, mul(b, c)))

    for ia, a in enumerate(carrier.basis):
        for ib, b in enumerate(carrier.basis):
            for ic, c in enumerate(carrier.basis):
                where = f"basis triple ({ia}, {ib}, {ic})"
                if which == "left_prelie":
                    ok = assoc(a, b, c) == assoc(b, a, c)
                elif which == "right_prelie":
                    ok = assoc(a, b, c) == sub(mul(mul(a, c), b), mul(a, mul(c, b)))
                elif which in ("left_nap", "zinbiel_nap"):
                    ok = mul(a, mul(b, c)) == mul(b, mul(a, c))
                elif which == "novikov":
                    ok = assoc(a, b, c) == sub(mul(mul(a, c), b), mul(a, mul(c, b)))
                    ok = ok and mul(a, mul(b, c)) == mul(b, mul(a, c))
                elif which == "assosymmetric":
                    base = assoc(a, b, c)
                    ok = all(
                        assoc(x, y, z) == base
                        for x, y, z in (
                            (a, c, b),
                            (b, a, c),
                            (b, c, a),
                            (c, a, b),
                            (c, b, a),
                        )
                    )
                report.record(ok, where)
    return report


@dataclass(frozen=True)
class DendriformCarrier:
    """Left and right half-products over a finite test basis."""

    basis: tuple
    prec: Callable
    succ: Callable

    def star(self, a, b):
        return self.prec(a, b) + self.succ(a, b)


def shuffle_carrier(alphabet: Sequence, max_len: int = 3) -> DendriformCarrier:
    """All nonempty words up to max_len letters with the half-shuffles."""
    if max_len > 4 or len(alphabet) > 3:
        raise ValueError("exhaustive shuffle sweeps are capped at length 4 over 3 letters")
    words = []
    for length in range(1, max_len + 1):
        for combo in _cartesian(alphabet, repeat=length):
            words.append(WordSum.from_term(combo))
    return DendriformCarrier(tuple(words), half_shuffle_left, half_shuffle_right)


def dendriform_axiom_check(carrier: DendriformCarrier) -> CheckReport:
    """The three dendriform axioms plus associativity of their sum."""
    report = CheckReport("dendriform")
    prec, succ, star = carrier.prec, carrier.succ, carrier.star
    for ia, a in enumerate(carrier.basis):
        for ib, b in enumerate(carrier.basis):
            for ic, c in enumerate(carrier.basis):
                where = f"basis triple ({ia}, {ib}, {ic})"
                report.record(
                    prec(prec(a, b), c) == prec(a, star(b, c)), f"(A1) {where}"
                )
                report.record(
                    prec(succ(a, b), c) == succ(a, prec(b, c)), f"(A2) {where}"
                )
                report.record(
                    succ(a, succ(b, c)) == succ(star(a, b), c), f"(A3) {where}"
                )
                report.record(
                    star(star(a, b), c) == star(a, star(b, c)), f"(assoc) {where}"
                )
    return report


def derived_prelie(carrier: DendriformCarrier) -> Callable:
    """a |> b = a > b - b < a, left pre-Lie in any dendriform algebra."""

    def product(a, b):
        return carrier.succ(a, b) - carrier.prec(b, a)

    return product


def derived_prelie_check(carrier: DendriformCarrier) -> CheckReport:
    """Certify the induced |> on the carrier's basis."""
    return structure_axiom_check(
        AlgebraCarrier(carrier.basis, derived_prelie(carrier)), "left_prelie"
    )


def novikov_prototype(max_degree: int = 4) -> AlgebraCarrier:
    """Polynomials up to a degree cap with a * b = (da/dx) b."""
    basis = tuple(
        Poly(1, {(k,): Fraction(1)}) for k in range(max_degree + 1)
    )
    return AlgebraCarrier(basis, lambda a, b: a.diff(0) * b)


# fast exhaustive sweep over shuffle words ------------------------------------
#
# The dendriform and NAP identities for half-shuffles are equivariant under
# bijective letter renamings, so each triple of words is checked via the
# canonical representative of its renaming orbit (letters renamed in order of
# first occurrence across the concatenated triple).  Every concrete triple is
# still enumerated and its verdict recorded; only the expansion work is shared
# within an orbit.  Coefficients are plain integers here for speed.

from functools import lru_cache as _lru_cache


@_lru_cache(maxsize=300_000)
def _sh(u: str, v: str) -> dict:
    if not u:
        return {v: 1}
    if not v:
        return {u: 1}
    out: dict[str, int] = {}
    for w, c in _sh(u[1:], v).items():
        k = u[0] + w
        out[k] = out.get(k, 0) + c
    for w, c in _sh(u, v[1:]).items():
        k = v[0] + w
        out[k] = out.get(k, 0) + c
    return out


@_lru_cache(maxsize=300_000)
def _prec_w(u: str, v: str) -> dict:
    return {u[0] + w: c for w, c in _sh(u[1:], v).items()}


@_lru_cache(maxsize=300_000)
def _succ_w(u: str, v: str) -> dict:
    return {v[0] + w: c for w, c in _sh(u, v[1:]).items()}


def _merge(table, left, right) -> dict:
    """Bilinear extension of a cached word-pair table to sum x sum."""
    out: dict[str, int] = {}
    for u, cu in left.items():
        for v, cv in right.items():
            for k, m in table(u, v).items():
                out[k] = out.get(k, 0) + cu * cv * m
    return out


def _canonical_pattern(words: tuple[str, ...]) -> tuple[str, ...]:
    rename: dict[str, str] = {}
    symbols = "abcdefghij"
    out = []
    for w in words:
        buf = []
        for ch in w:
            if ch not in rename:
                rename[ch] = symbols[len(rename)]
            buf.append(rename[ch])
        out.append("".join(buf))
    return tuple(out)


_SHUFFLE_AXIOMS = ("A1", "A2", "A3", "star-assoc", "zinbiel-nap")


def _pattern_verdict(a: str, b: str, c: str) -> tuple[bool, ...]:
    one = lambda w: {w: 1}
    ab_prec, ab_succ = _prec_w(a, b), _succ_w(a, b)
    bc_prec, bc_succ = _prec_w(b, c), _succ_w(b, c)
    ab_star = dict(ab_prec)
    for k, v in ab_succ.items():
        ab_star[k] = ab_star.get(k, 0) + v
    bc_star = dict(bc_prec)
    for k, v in bc_succ.items():
        bc_star[k] = bc_star.get(k, 0) + v
    a1 = _merge(_prec_w, ab_prec, one(c)) == _merge(_prec_w, one(a), bc_star)
    a2 = _merge(_prec_w, ab_succ, one(c)) == _merge(_succ_w, one(a), bc_prec)
    a3 = _merge(_succ_w, one(a), bc_succ) == _merge(_succ_w, ab_star, one(c))
    lhs = _merge(_prec_w, ab_star, one(c))
    for k, v in _merge(_succ_w, ab_star, one(c)).items():
        lhs[k] = lhs.get(k, 0) + v
    rhs = _merge(_prec_w, one(a), bc_star)
    for k, v in _merge(_succ_w, one(a), bc_star).items():
        rhs[k] = rhs.get(k, 0) + v
    assoc = lhs == rhs
    nap = _merge(_succ_w, one(a), bc_succ) == _merge(_succ_w, one(b), _succ_w(a, c))
    return (a1, a2, a3, assoc, nap)


def shuffle_axiom_sweep(alphabet: Sequence[str] = ("a", "b", "c"), max_len: int = 3) -> CheckReport:
    """Exhaustive (A1)-(A3), star-associativity and right-half NAP over all
    word triples up to ``max_len`` letters, orbit-deduplicated."""
    if max_len > 4 or len(alphabet) > 3:
        raise ValueError("exhaustive shuffle sweeps are capped at length 4 over 3 letters")
    words = [
        "".join(combo)
        for length in range(1, max_len + 1)
        for combo in _cartesian(alphabet, repeat=length)
    ]
    report = CheckReport("shuffle-halves")
    verdicts: dict[tuple[str, str, str], tuple[bool, ...]] = {}
    for a in words:
        for b in words:
            for c in words:
                pattern = _canonical_pattern((a, b, c))
                if pattern not in verdicts:
                    verdicts[pattern] = _pattern_verdict(*pattern)
                for axiom, ok in zip(_SHUFFLE_AXIOMS, verdicts[pattern]):
                    report.record(ok, f"({axiom}) triple ({a!r}, {b!r}, {c!r})")
    return report
