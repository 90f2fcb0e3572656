import random
from fractions import Fraction

import pytest

from conftest import MagmaSum, magma_product, random_field, subset_coproduct
from forestcalc.ck_hopf import TreeSum
from forestcalc.forests import (
    Forest,
    leaf,
    parse_forest,
    parse_tree,
    symmetry_factor,
    trees_up_to,
)
from forestcalc.prelie import (
    apply_exp_L,
    bch,
    bernoulli_number,
    graft,
    grafting_counts,
    m_action,
    magnus_omega,
    omega_map,
    pre_lie_morphism,
    pre_lie_morphism_pinned,
    project_to_trees,
    sharp_inverse,
    sharp_product,
    star_exp,
    star_exp_product,
    tree_bracket,
    unnormalized_graft,
    w_map,
)
from forestcalc.vector_fields import vf_prelie

DOT = leaf()
CHAIN2 = parse_tree("[[]]")
CHAIN3 = parse_tree("[[[]]]")
CHERRY = parse_tree("[[][]]")


def one(t) -> TreeSum:
    return TreeSum.from_tree(t)


def test_graft_examples():
    assert graft(DOT, DOT) == one(CHAIN2)
    assert graft(DOT, CHAIN2) == one(CHAIN3) + one(CHERRY)
    assert graft(CHAIN2, DOT) == one(CHAIN3)


def test_left_prelie_identity_exhaustive():
    # associator symmetric in the first two arguments, up to 7 total vertices
    for a_size in range(1, 6):
        for b_size in range(1, 7 - a_size):
            for c_size in range(1, 8 - a_size - b_size):
                for a in trees_up_to(a_size):
                    if a.vertex_count != a_size:
                        continue
                    for b in trees_up_to(b_size):
                        if b.vertex_count != b_size:
                            continue
                        for c in trees_up_to(c_size):
                            if c.vertex_count != c_size:
                                continue
                            lhs = graft(graft(a, b), c) - graft(a, graft(b, c))
                            rhs = graft(graft(b, a), c) - graft(b, graft(a, c))
                            assert lhs == rhs


def test_l_operator_bracket_identity():
    # L_[a,b] = [L_a, L_b] on tree arguments
    for a in trees_up_to(2):
        for b in trees_up_to(2):
            for c in trees_up_to(1):
                lhs = graft(tree_bracket(a, b), c)
                rhs = graft(a, graft(b, c)) - graft(b, graft(a, c))
                assert lhs == rhs


def test_grafting_counts_examples():
    assert grafting_counts(DOT, DOT, CHAIN2) == (1, Fraction(1))
    n_prime, m_prime = grafting_counts(DOT, CHAIN2, CHERRY)
    assert (n_prime, m_prime) == (2, Fraction(1))
    assert symmetry_factor(CHERRY) == 2


def test_grafting_counts_sum_reproduces_graft():
    for t in trees_up_to(3):
        for u in trees_up_to(3):
            expected = graft(t, u)
            rebuilt = TreeSum()
            for v in trees_up_to(t.vertex_count + u.vertex_count):
                if v.vertex_count == t.vertex_count + u.vertex_count:
                    _, m_prime = grafting_counts(t, u, v)
                    if m_prime:
                        rebuilt = rebuilt + TreeSum.from_tree(v, m_prime)
            assert rebuilt == expected


def test_m_prime_is_integral():
    for t in trees_up_to(3):
        for u in trees_up_to(3):
            for v in trees_up_to(6):
                if v.vertex_count == t.vertex_count + u.vertex_count:
                    _, m_prime = grafting_counts(t, u, v)
                    assert m_prime.denominator == 1


def test_n_prime_against_subset_cut_oracle():
    for t in trees_up_to(2):
        for u in trees_up_to(3):
            for v in trees_up_to(5):
                if v.vertex_count != t.vertex_count + u.vertex_count:
                    continue
                n_prime, _ = grafting_counts(t, u, v)
                oracle = subset_coproduct(Forest((v,))).coefficient(
                    (Forest((t,)), Forest((u,)))
                )
                assert n_prime == oracle


def test_unnormalized_graft_trivial_bracket():
    assert unnormalized_graft(DOT, DOT) == one(CHAIN2)


def test_free_morphism_symbolic_values():
    a = MagmaSum.generator()

    def fa(t):
        return pre_lie_morphism(a, t, magma_product)

    aa = magma_product(a, a)
    assert fa(DOT) == a
    assert fa(CHAIN2) == aa
    assert fa(CHAIN3) == magma_product(aa, a)
    assert fa(CHERRY) == magma_product(a, aa) - magma_product(aa, a)


def test_free_morphism_branch_order_independence():
    rng = random.Random(31)
    x = random_field(rng, 2)
    for t in trees_up_to(5):
        values = {
            pre_lie_morphism_pinned(x, t, vf_prelie, pivot) for pivot in range(3)
        }
        assert len(values) == 1


def test_free_morphism_is_prelie_morphism():
    rng = random.Random(32)
    x = random_field(rng, 2)
    for s in trees_up_to(2):
        for t in trees_up_to(3):
            image = pre_lie_morphism(x, s, vf_prelie)
            lhs = vf_prelie(image, pre_lie_morphism(x, t, vf_prelie))
            rhs_sum = None
            for f, c in graft(s, t).items():
                term = c * pre_lie_morphism(x, f.trees[0], vf_prelie)
                rhs_sum = term if rhs_sum is None else rhs_sum + term
            assert lhs == rhs_sum


def test_bernoulli_numbers():
    values = [bernoulli_number(k) for k in range(7)]
    assert values == [
        Fraction(1),
        Fraction(-1, 2),
        Fraction(1, 6),
        Fraction(0),
        Fraction(-1, 30),
        Fraction(0),
        Fraction(1, 42),
    ]


def test_w_map_displayed_terms():
    # W(a) = a + 1/2 a|>a + 1/6 a|>(a|>a) + ...
    expected = (
        one(DOT)
        + graft(DOT, DOT).scale(Fraction(1, 2))
        + graft(DOT, graft(DOT, DOT)).scale(Fraction(1, 6))
    )
    assert w_map(DOT, 3) == expected


def test_magnus_displayed_coefficients():
    # Omega(a) = a - 1/2 a|>a + 1/4 (a|>a)|>a + 1/12 a|>(a|>a) + ...
    expected = (
        one(DOT)
        - graft(DOT, DOT).scale(Fraction(1, 2))
        + graft(graft(DOT, DOT), DOT).scale(Fraction(1, 4))
        + graft(DOT, graft(DOT, DOT)).scale(Fraction(1, 12))
    )
    assert magnus_omega(3) == expected


def test_w_omega_are_mutually_inverse():
    assert w_map(magnus_omega(5), 5) == one(DOT)
    assert omega_map(w_map(DOT, 5), 5) == one(DOT)
    # also from a non-generator starting element
    x = one(DOT) + one(CHAIN2).scale(Fraction(1, 3))
    assert w_map(omega_map(x, 5), 5) == x.truncate(5)
    assert omega_map(w_map(x, 5), 5) == x.truncate(5)


def test_order_zero_rejected():
    with pytest.raises(ValueError):
        w_map(DOT, 0)
    with pytest.raises(ValueError):
        omega_map(DOT, 0)


def test_sharp_unit_and_inverse():
    zero = TreeSum()
    a = w_map(DOT, 5)
    assert sharp_product(a, zero, 5) == a
    assert sharp_product(zero, a, 5) == a
    assert sharp_product(a, sharp_inverse(a, 5), 5).is_zero()
    assert sharp_product(sharp_inverse(a, 5), a, 5).is_zero()


def test_sharp_associative_through_order_4():
    a = w_map(DOT, 4)
    b = w_map(one(DOT).scale(Fraction(1, 2)), 4)
    c = w_map(one(CHAIN2), 4)
    lhs = sharp_product(sharp_product(a, b, 4), c, 4)
    rhs = sharp_product(a, sharp_product(b, c, 4), 4)
    assert lhs == rhs


def test_sharp_functorial_under_color_forgetting():
    # psi(a # b) = psi(a) # psi(b) for the colour-forgetting morphism
    red, blue = leaf(0), leaf(1)

    def forget(x: TreeSum) -> TreeSum:
        out = TreeSum()
        for f, c in x.items():
            from forestcalc.forests import RootedTree

            def strip(t):
                return RootedTree(tuple(strip(ch) for ch in t.children), 0)

            out = out + TreeSum.from_tree(strip(f.trees[0]), c)
        return out

    a, b = one(red), one(blue)
    lhs = forget(sharp_product(a, b, 4))
    rhs = sharp_product(forget(a), forget(b), 4)
    assert lhs == rhs


def test_bch_displayed_series():
    r, b = leaf(0), leaf(1)
    expected = (
        one(r)
        + one(b)
        + tree_bracket(r, b).scale(Fraction(1, 2))
        + (
            tree_bracket(r, tree_bracket(r, b))
            + tree_bracket(b, tree_bracket(b, r))
        ).scale(Fraction(1, 12))
    )
    assert bch(r, b, 3) == expected.truncate(3)


def test_m_action_examples():
    assert m_action(DOT, TreeSum.unit()) == one(DOT)
    assert m_action(DOT, one(DOT)) == TreeSum.from_forest(parse_forest("[] []")) + one(CHAIN2)


def test_star_exp_projection_identities():
    for a in (one(DOT), one(DOT) + one(CHAIN2).scale(Fraction(1, 2))):
        assert project_to_trees(star_exp(a, 4)) == w_map(a, 4)
    red, blue = one(leaf(0)), one(leaf(1))
    for a, b in ((one(DOT), one(DOT)), (red, blue), (one(DOT), one(CHAIN2))):
        lhs = project_to_trees(star_exp_product(a, b, 4))
        rhs = sharp_product(w_map(a, 4), w_map(b, 4), 4)
        assert lhs == rhs


def test_apply_exp_L_matches_grafting_series():
    b = one(CHAIN2)
    expected = b + graft(DOT, b).scale(Fraction(1)) + graft(DOT, graft(DOT, b)).scale(
        Fraction(1, 2)
    )
    assert apply_exp_L(one(DOT), b, 4) == expected.truncate(4)
