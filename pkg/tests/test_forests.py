import random

import pytest

from conftest import brute_force_automorphisms, brute_force_trees, random_tree
from forestcalc.forests import (
    EMPTY_FOREST,
    Forest,
    ParseError,
    RootedTree,
    all_child_orderings,
    b_plus,
    canonical_form,
    enumerate_forests,
    enumerate_trees,
    leaf,
    parse_forest,
    parse_tree,
    symmetry_factor,
    tree_from_nested,
    trees_up_to,
)


def test_census_small():
    assert [len(enumerate_trees(n)) for n in range(1, 6)] == [1, 1, 2, 4, 9]


def test_census_against_brute_force():
    for n in range(1, 8):
        assert set(enumerate_trees(n)) == brute_force_trees(n)


def test_enumerate_zero_gives_nothing():
    assert enumerate_trees(0) == ()


def test_forest_counts_match_b_plus_bijection():
    # forests on n vertices correspond to trees on n + 1 vertices
    for n in range(0, 7):
        assert len(enumerate_forests(n)) == len(enumerate_trees(n + 1))


def test_two_colors_two_vertices():
    assert len(enumerate_trees(2, colors=2)) == 4
    assert set(enumerate_trees(2, colors=2)) == brute_force_trees(2, colors=2)


def test_colored_census_three_vertices():
    assert set(enumerate_trees(3, colors=2)) == brute_force_trees(3, colors=2)


def test_canonical_form_is_identity_on_leaf():
    assert canonical_form(leaf()) == leaf()


def test_cherry_orderings_collapse():
    cherry = parse_tree("[[][]]")
    chain = parse_tree("[[]]")
    assert RootedTree((cherry, leaf())) == RootedTree((leaf(), cherry))
    assert RootedTree((chain, leaf(), leaf())) == RootedTree((leaf(), chain, leaf()))


def test_all_orderings_of_bushy_tree_collapse():
    bushy = b_plus(Forest((leaf(), leaf(), parse_tree("[[]]"))))
    seen = {tree_from_nested(nested) for nested in all_child_orderings(bushy)}
    assert seen == {bushy}


def test_canonical_form_idempotent_on_random_trees():
    rng = random.Random(2024)
    for _ in range(50):
        t = random_tree(rng, 7)
        assert canonical_form(t) == t
        assert canonical_form(canonical_form(t)) == canonical_form(t)


def test_symmetry_factor_examples():
    assert symmetry_factor(leaf()) == 1
    assert symmetry_factor(parse_tree("[[][]]")) == 2
    assert symmetry_factor(parse_tree("[[][][]]")) == 6


def test_symmetry_factor_recursion_rule():
    # sigma(B+(t^m)) = m! sigma(t)^m for repeated branches
    cherry = parse_tree("[[][]]")
    twice = b_plus(Forest((cherry, cherry)))
    assert symmetry_factor(twice) == 2 * symmetry_factor(cherry) ** 2


def test_symmetry_factor_exhaustive_vs_automorphism_count():
    for n in range(1, 7):
        for t in enumerate_trees(n):
            assert symmetry_factor(t) == brute_force_automorphisms(t)


def test_symmetry_factor_colored_vs_automorphisms():
    for t in enumerate_trees(3, colors=2):
        assert symmetry_factor(t) == brute_force_automorphisms(t)


def test_b_plus_examples():
    assert b_plus(EMPTY_FOREST) == leaf()
    assert b_plus(Forest((leaf(), leaf()))) == parse_tree("[[][]]")
    assert b_plus(Forest((parse_tree("[[]]"),))) == parse_tree("[[[]]]")


def test_render_examples():
    assert leaf().render() == "[]"
    assert parse_tree("[[]]").render() == "[[]]"
    assert EMPTY_FOREST.render() == "1"
    assert RootedTree((leaf(0),), 1).render() == "[:1[]]"


def test_parse_round_trip_everything():
    for n in range(1, 7):
        for t in enumerate_trees(n):
            assert parse_tree(t.render()) == t
    for n in range(0, 6):
        for f in enumerate_forests(n):
            assert parse_forest(f.render()) == f


def test_parse_accepts_any_child_order():
    assert parse_tree("[[[]][]]") == parse_tree("[[][[]]]")
    assert parse_forest("[[]] []") == parse_forest("[] [[]]")


def test_parse_colored():
    t = parse_tree("[:1[:0]]")
    assert t.color == 1
    assert t.children[0].color == 0
    assert t.render() == "[:1[]]"


def test_parse_errors():
    with pytest.raises(ParseError):
        parse_tree("[[]")
    with pytest.raises(ParseError):
        parse_tree("][")
    with pytest.raises(ParseError):
        parse_tree("[:x]")
    with pytest.raises(ParseError):
        parse_forest("")


def test_vertex_and_edge_counts():
    t = parse_tree("[[[]][]]")
    assert t.vertex_count == 4
    assert t.edge_count == 3
    f = parse_forest("[[]] []")
    assert f.vertex_count == 3
    assert f.edge_count == 1


def test_forest_product_is_commutative_merge():
    a, b = parse_forest("[[]]"), parse_forest("[] []")
    assert a * b == b * a == parse_forest("[] [] [[]]")


def test_trees_up_to():
    assert [t.vertex_count for t in trees_up_to(3)] == [1, 2, 3, 3]
