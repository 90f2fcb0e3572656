"""Text formats: coefficient files, B-series files, tableaus, tables, fields.

Coefficient file, one term per line:

    #truncation 4
    1<TAB>1
    []<TAB>-3/2
    [[]]<TAB>z^-1:1,z^2:3/4

Rational coefficients are p/q in lowest terms (bare integer when q = 1);
Laurent coefficients are comma-joined z^k:p/q pairs, exponents increasing.
A B-series file is a coefficient file over trees plus an '#empty p/q' line.
"""

from __future__ import annotations

from fractions import Fraction
from typing import TextIO

from .bseries import BSeries
from .conv import Functional, RATIONAL, Ring
from .forests import Forest, RootedTree, parse_forest, parse_tree
from .renorm import LaurentSeries, laurent_ring


def render_coefficient(value) -> str:
    if isinstance(value, LaurentSeries):
        return value.render()
    return str(Fraction(value))


def parse_coefficient(text: str, window: tuple[int, int] | None = None):
    text = text.strip()
    if "z^" in text:
        if window is None:
            raise ValueError("Laurent coefficients need a window")
        coeffs: dict[int, Fraction] = {}
        for pair in text.split(","):
            expo, _, value = pair.strip().partition(":")
            if not expo.startswith("z^"):
                raise ValueError(f"bad Laurent pair {pair!r}")
            coeffs[int(expo[2:])] = Fraction(value)
        return LaurentSeries(window, coeffs)
    if window is not None:
        return LaurentSeries(window, {0: Fraction(text)})
    return Fraction(text)


def write_functional(phi: Functional, stream: TextIO) -> None:
    stream.write(f"#truncation {phi.truncation}\n")
    for forest in sorted(forest for forest, _ in phi.items()):
        stream.write(f"{forest.render()}\t{render_coefficient(phi.value(forest))}\n")


def read_functional(stream: TextIO, window: tuple[int, int] | None = None) -> Functional:
    truncation = None
    entries: dict[Forest, str] = {}
    for raw in stream:
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#truncation"):
            truncation = int(line.split()[1])
            continue
        if line.startswith("#"):
            continue
        forest_text, _, coeff_text = line.partition("\t")
        entries[parse_forest(forest_text)] = coeff_text
    if truncation is None:
        raise ValueError("missing '#truncation <n>' header")
    laurent = window is not None or any("z^" in c for c in entries.values())
    if laurent and window is None:
        raise ValueError("Laurent coefficient file needs an explicit window")
    ring: Ring = laurent_ring(window) if laurent else RATIONAL
    values = {f: parse_coefficient(c, window if laurent else None) for f, c in entries.items()}
    return Functional(ring, truncation, values)


def file_pole_order(stream: TextIO) -> int:
    """Largest pole order per vertex appearing in a Laurent coefficient file."""
    worst = 1
    for raw in stream:
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        forest_text, _, coeff_text = line.partition("\t")
        forest = parse_forest(forest_text)
        if forest.vertex_count == 0 or "z^" not in coeff_text:
            continue
        for pair in coeff_text.split(","):
            expo = int(pair.strip().partition(":")[0][2:])
            if expo < 0:
                need = (-expo + forest.vertex_count - 1) // forest.vertex_count
                worst = max(worst, need)
    return worst


def write_bseries(series: BSeries, stream: TextIO) -> None:
    stream.write(f"#truncation {series.order}\n")
    stream.write(f"#empty {series.empty_coeff}\n")
    for tree in sorted(series.tree_coeffs, key=lambda t: (t.vertex_count, t.render())):
        stream.write(f"{tree.render()}\t{series.value(tree)}\n")


def read_bseries(stream: TextIO) -> BSeries:
    order = None
    empty = Fraction(0)
    values: dict[RootedTree, Fraction] = {}
    for raw in stream:
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#truncation"):
            order = int(line.split()[1])
            continue
        if line.startswith("#empty"):
            empty = Fraction(line.split()[1])
            continue
        if line.startswith("#"):
            continue
        tree_text, _, coeff_text = line.partition("\t")
        values[parse_tree(tree_text)] = Fraction(coeff_text)
    if order is None:
        raise ValueError("missing '#truncation <n>' header")
    return BSeries(empty, values, order)


def _parse_rational_list(text: str) -> list:
    """Parse nested [..] lists of rationals like [[0,0],[1/2,0]]."""
    pos = 0

    def parse_value():
        nonlocal pos
        while pos < len(text) and text[pos] in " \t":
            pos += 1
        if text[pos] == "[":
            pos += 1
            items = []
            while True:
                while pos < len(text) and text[pos] in " \t":
                    pos += 1
                if text[pos] == "]":
                    pos += 1
                    return items
                items.append(parse_value())
                while pos < len(text) and text[pos] in " \t":
                    pos += 1
                if text[pos] == ",":
                    pos += 1
                elif text[pos] != "]":
                    raise ValueError(f"expected ',' or ']' at {pos} in {text!r}")
        start = pos
        while pos < len(text) and text[pos] not in ",]":
            pos += 1
        return Fraction(text[start:pos].strip())

    value = parse_value()
    if text[pos:].strip():
        raise ValueError(f"trailing input in {text!r}")
    return value


def read_tableau(stream: TextIO) -> tuple[list[list[Fraction]], list[Fraction]]:
    a_matrix = None
    weights = None
    for raw in stream:
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        name, _, rhs = line.partition("=")
        name = name.strip()
        if name == "A":
            a_matrix = _parse_rational_list(rhs.strip())
        elif name == "b":
            weights = _parse_rational_list(rhs.strip())
        else:
            raise ValueError(f"unknown tableau entry {name!r}")
    if a_matrix is None or weights is None:
        raise ValueError("tableau file needs both 'A = [[...]]' and 'b = [...]'")
    return a_matrix, weights


def read_product_table(stream: TextIO):
    from .structures import ProductTable

    dimension = None
    rows = {}
    for raw in stream:
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if dimension is None:
            dimension = int(line)
            continue
        left, _, right = line.partition("->")
        i_text, j_text = left.split()
        vec = [Fraction(v) for v in right.strip().split(",")]
        rows[(int(i_text) - 1, int(j_text) - 1)] = vec
    if dimension is None:
        raise ValueError("product table file needs a leading dimension line")
    return ProductTable.from_rows(dimension, rows)
