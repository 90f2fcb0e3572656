"""Birkhoff decomposition of Laurent-valued characters under minimal subtraction.

The coefficient ring is a window-truncated Laurent algebra in one variable z
with exact rational coefficients.  Minimal subtraction projects onto strictly
negative powers; it is a Rota-Baxter projector, which is what makes both
Birkhoff factors of a character multiplicative again.  The decomposition is
computed either by the triangular recursion through the Bogoliubov
preparation map or by the iterated projection series phi_- = e + P(phi_- * alpha).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .ck_hopf import reduced_coproduct
from .conv import Functional, Ring, _colors_hint, convolve, unit_functional
from .forests import EMPTY_FOREST, Forest, forests_up_to


class WindowOverflowError(ArithmeticError):
    """A product produced a nonzero coefficient outside the series window."""


class LaurentSeries:
    """Laurent polynomial in z with exponents confined to a fixed window.

    Addition requires matching windows; multiplication truncates silently to
    the window (use :func:`mul_checked` where loss must raise instead).
    """

    __slots__ = ("window", "coeffs")

    def __init__(self, window: tuple[int, int], coeffs: Mapping[int, Fraction] | None = None):
        lo, hi = int(window[0]), int(window[1])
        if lo > hi:
            raise ValueError("window must satisfy min_exp <= max_exp")
        object.__setattr__(self, "window", (lo, hi))
        data = {}
        for k, v in (coeffs or {}).items():
            c = Fraction(v)
            if c and lo <= k <= hi:
                data[int(k)] = c
        object.__setattr__(self, "coeffs", data)

    def __setattr__(self, name, value):
        raise AttributeError("LaurentSeries is immutable")

    def is_zero(self) -> bool:
        return not self.coeffs

    def constant_term(self) -> Fraction:
        return self.coeffs.get(0, Fraction(0))

    def _require_window(self, other: LaurentSeries) -> None:
        if self.window != other.window:
            raise ValueError(f"window mismatch: {self.window} vs {other.window}")

    def __add__(self, other: LaurentSeries) -> LaurentSeries:
        self._require_window(other)
        data = dict(self.coeffs)
        for k, v in other.coeffs.items():
            data[k] = data.get(k, Fraction(0)) + v
        return LaurentSeries(self.window, data)

    def __sub__(self, other: LaurentSeries) -> LaurentSeries:
        return self + (-other)

    def __neg__(self) -> LaurentSeries:
        return LaurentSeries(self.window, {k: -v for k, v in self.coeffs.items()})

    def __mul__(self, other: LaurentSeries) -> LaurentSeries:
        self._require_window(other)
        lo, hi = self.window
        data: dict[int, Fraction] = {}
        for ka, va in self.coeffs.items():
            for kb, vb in other.coeffs.items():
                k = ka + kb
                if lo <= k <= hi:
                    data[k] = data.get(k, Fraction(0)) + va * vb
        return LaurentSeries(self.window, data)

    def __rmul__(self, scalar) -> LaurentSeries:
        if isinstance(scalar, (int, Fraction)):
            s = Fraction(scalar)
            return LaurentSeries(self.window, {k: s * v for k, v in self.coeffs.items()})
        return NotImplemented

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LaurentSeries)
            and self.window == other.window
            and self.coeffs == other.coeffs
        )

    def __hash__(self) -> int:
        return hash((self.window, frozenset(self.coeffs.items())))

    def render(self) -> str:
        if not self.coeffs:
            return "0"
        return ",".join(f"z^{k}:{self.coeffs[k]}" for k in sorted(self.coeffs))

    def __repr__(self) -> str:
        return f"LaurentSeries({self.render()!r}, window={self.window})"


def laurent_zero(window: tuple[int, int]) -> LaurentSeries:
    return LaurentSeries(window, {})


def laurent_one(window: tuple[int, int]) -> LaurentSeries:
    return LaurentSeries(window, {0: Fraction(1)})


def laurent_monomial(window: tuple[int, int], exponent: int, coeff=1) -> LaurentSeries:
    return LaurentSeries(window, {exponent: Fraction(coeff)})


def laurent_ring(window: tuple[int, int]) -> Ring:
    return Ring("laurent", laurent_zero(window), laurent_one(window))


def default_window(pole_order: int, degree: int) -> tuple[int, int]:
    """Window wide enough for every product met while renormalizing a
    character whose pole order per vertex is at most ``pole_order`` up to
    forests of ``degree`` vertices."""
    m = max(1, pole_order * degree)
    return (-m, m)


def mul_checked(a: LaurentSeries, b: LaurentSeries) -> LaurentSeries:
    """Multiply, raising WindowOverflowError if truncation would lose a term."""
    a._require_window(b)
    lo, hi = a.window
    data: dict[int, Fraction] = {}
    for ka, va in a.coeffs.items():
        for kb, vb in b.coeffs.items():
            data[ka + kb] = data.get(ka + kb, Fraction(0)) + va * vb
    for k, v in data.items():
        if v and not (lo <= k <= hi):
            raise WindowOverflowError(
                f"product exponent {k} escapes window [{lo}, {hi}]"
            )
    return LaurentSeries(a.window, data)


def ms_project(a: LaurentSeries) -> LaurentSeries:
    """Projection onto the polar part (strictly negative exponents)."""
    return LaurentSeries(a.window, {k: v for k, v in a.coeffs.items() if k < 0})


def ms_regular(a: LaurentSeries) -> LaurentSeries:
    return LaurentSeries(a.window, {k: v for k, v in a.coeffs.items() if k >= 0})


def rota_baxter_check(a: LaurentSeries, b: LaurentSeries) -> bool:
    """pi(a)pi(b) = pi(pi(a)b + a pi(b)) - pi(ab), verified exactly."""
    lhs = mul_checked(ms_project(a), ms_project(b))
    mixed = mul_checked(ms_project(a), b) + mul_checked(a, ms_project(b))
    rhs = ms_project(mixed) - ms_project(mul_checked(a, b))
    return lhs == rhs


@dataclass(frozen=True)
class BirkhoffPair:
    phi_minus: Functional
    phi_plus: Functional


BIRKHOFF_METHODS = ("recursive", "iterative")


def _prepare_recursive(phi: Functional, scheme) -> tuple[dict[Forest, LaurentSeries], dict[Forest, LaurentSeries]]:
    """Bogoliubov preparation and phi_- on the counit kernel, memoized."""
    prepared: dict[Forest, LaurentSeries] = {}
    minus: dict[Forest, LaurentSeries] = {}

    def phi_minus(f: Forest) -> LaurentSeries:
        if f.is_empty():
            return phi.ring.one
        if f not in minus:
            minus[f] = -scheme(prepare(f))
        return minus[f]

    def prepare(f: Forest) -> LaurentSeries:
        if f in prepared:
            return prepared[f]
        acc = phi.value(f)
        for (crown, trunk), coeff in reduced_coproduct(f, 1).items():
            acc = acc + coeff * mul_checked(phi_minus(crown), phi.value(trunk))
        prepared[f] = acc
        return acc

    for f in forests_up_to(phi.truncation, _colors_hint(phi)):
        if not f.is_empty():
            prepare(f)
    return prepared, minus


def bogoliubov_prepare(phi: Functional, scheme=ms_project) -> Functional:
    """b(phi)(x) = phi(x) + sum phi_-(x') phi(x'') on the counit kernel, 0 at 1."""
    if phi.value(EMPTY_FOREST) != phi.ring.one:
        raise ValueError("Bogoliubov preparation requires value 1 on the empty forest")
    prepared, _ = _prepare_recursive(phi, scheme)
    return Functional(phi.ring, phi.truncation, prepared)


def birkhoff(phi: Functional, method: str = "recursive", scheme=ms_project) -> BirkhoffPair:
    """Unique factorization phi = phi_-^{*-1} * phi_+ across a splitting scheme.

    The scheme is any idempotent projector whose image and kernel are
    subalgebras (with the unit on the kernel side); minimal subtraction is
    the built-in default.
    """
    if method not in BIRKHOFF_METHODS:
        raise ValueError(f"method must be one of {BIRKHOFF_METHODS}")
    if phi.ring.name != "laurent":
        raise ValueError("Birkhoff decomposition needs a Laurent-valued functional")
    if phi.value(EMPTY_FOREST) != phi.ring.one:
        raise ValueError("Birkhoff decomposition requires value 1 on the empty forest")

    if method == "recursive":
        prepared, minus = _prepare_recursive(phi, scheme)
        minus_values: dict[Forest, LaurentSeries] = {EMPTY_FOREST: phi.ring.one}
        plus_values: dict[Forest, LaurentSeries] = {EMPTY_FOREST: phi.ring.one}
        for f, b in prepared.items():
            minus_values[f] = -scheme(b)
            plus_values[f] = b - scheme(b)
        phi_minus = Functional(phi.ring, phi.truncation, minus_values)
        phi_plus = Functional(phi.ring, phi.truncation, plus_values)
        return BirkhoffPair(phi_minus, phi_plus)

    # iterative: phi_- = e + P(phi_- * alpha) with alpha = e - phi, iterated to
    # stationarity (one extra vertex of agreement per pass); then phi_+ = phi_- * phi.
    e = unit_functional(phi.ring, phi.truncation)
    alpha = e - phi
    phi_minus = e
    for _ in range(phi.truncation + 1):
        phi_minus = e + convolve(phi_minus, alpha).map_values(scheme)
    phi_plus = convolve(phi_minus, phi)
    return BirkhoffPair(phi_minus, phi_plus)


def renormalized_value(pair: BirkhoffPair, f: Forest) -> Fraction:
    """Evaluation of phi_+ at z = 0: the constant term of the regular factor."""
    return pair.phi_plus.value(f).constant_term()
