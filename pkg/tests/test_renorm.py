import random
from fractions import Fraction

import pytest

from forestcalc.conv import Functional, convolve, conv_inverse, is_character, unit_functional
from forestcalc.forests import Forest, forests_up_to, leaf, parse_forest, trees_up_to
from forestcalc.renorm import (
    LaurentSeries,
    WindowOverflowError,
    birkhoff,
    bogoliubov_prepare,
    default_window,
    laurent_monomial,
    laurent_ring,
    laurent_zero,
    mul_checked,
    ms_project,
    ms_regular,
    rota_baxter_check,
)

DOT = Forest((leaf(),))
W = (-10, 10)
RING = laurent_ring(W)


def series(pairs) -> LaurentSeries:
    return LaurentSeries(W, {k: Fraction(v) for k, v in pairs})


def random_series(rng: random.Random, lo=-3, hi=3, window=(-6, 6)) -> LaurentSeries:
    return LaurentSeries(
        window, {k: Fraction(rng.randint(-3, 3)) for k in range(lo, hi + 1)}
    )


def random_laurent_character(rng: random.Random, truncation: int, pole_order=2) -> Functional:
    window = default_window(pole_order, truncation)
    values = {}
    for t in trees_up_to(truncation):
        coeffs = {
            k: Fraction(rng.randint(-2, 2)) for k in range(-pole_order, pole_order + 1)
        }
        values[t] = LaurentSeries(window, coeffs)
    from forestcalc.conv import character_from_tree_values

    return character_from_tree_values(values, truncation, laurent_ring(window))


def test_ms_projection_examples():
    assert ms_project(series([(-1, 1), (0, 2), (1, 1)])) == series([(-1, 1)])
    polar = series([(-2, 3), (-1, -1)])
    assert ms_project(polar) == polar
    rng = random.Random(0)
    for _ in range(10):
        a = random_series(rng, window=W)
        assert ms_project(ms_project(a)) == ms_project(a)
        assert ms_project(a) + ms_regular(a) == a


def test_laurent_arithmetic_truncates_to_window():
    narrow = LaurentSeries((-2, 2), {2: Fraction(1)})
    assert (narrow * narrow).is_zero()
    with pytest.raises(WindowOverflowError):
        mul_checked(narrow, narrow)


def test_rota_baxter_simple_pole():
    a = LaurentSeries((-6, 6), {-1: Fraction(1)})
    assert mul_checked(ms_project(a), ms_project(a)) == LaurentSeries((-6, 6), {-2: Fraction(1)})
    assert rota_baxter_check(a, a)


def test_rota_baxter_regular_parts_vanish():
    rng = random.Random(1)
    for _ in range(5):
        a = ms_regular(random_series(rng))
        b = ms_regular(random_series(rng))
        assert ms_project(a * b).is_zero()
        assert rota_baxter_check(a, b)


def test_rota_baxter_random_pairs():
    rng = random.Random(2)
    for _ in range(100):
        a, b = random_series(rng), random_series(rng)
        assert rota_baxter_check(a, b)


def test_birkhoff_single_pole_example():
    window = default_window(1, 3)
    ring = laurent_ring(window)
    values = {
        t: (laurent_monomial(window, -1) if t == leaf() else laurent_zero(window))
        for t in trees_up_to(3)
    }
    from forestcalc.conv import character_from_tree_values

    phi = character_from_tree_values(values, 3, ring)
    pair = birkhoff(phi)
    assert pair.phi_minus.value(DOT) == laurent_monomial(window, -1, -1)
    assert pair.phi_plus.value(DOT) == laurent_zero(window)


def test_birkhoff_chain_cancellation_example():
    window = default_window(2, 3)
    ring = laurent_ring(window)
    chain = parse_forest("[[]]").trees[0]
    values = {}
    for t in trees_up_to(3):
        if t == leaf():
            values[t] = laurent_monomial(window, -1)
        elif t == chain:
            values[t] = laurent_monomial(window, -2)
        else:
            values[t] = laurent_zero(window)
    from forestcalc.conv import character_from_tree_values

    phi = character_from_tree_values(values, 3, ring)
    pair = birkhoff(phi)
    assert pair.phi_minus.value(Forest((chain,))) == laurent_zero(window)
    assert pair.phi_plus.value(Forest((chain,))) == laurent_zero(window)


def test_birkhoff_regular_character_is_untouched():
    rng = random.Random(3)
    window = default_window(2, 4)
    ring = laurent_ring(window)
    values = {
        t: LaurentSeries(window, {k: Fraction(rng.randint(-2, 2)) for k in range(0, 3)})
        for t in trees_up_to(4)
    }
    from forestcalc.conv import character_from_tree_values

    phi = character_from_tree_values(values, 4, ring)
    pair = birkhoff(phi)
    assert pair.phi_minus.agrees_with(unit_functional(ring, 4))
    assert pair.phi_plus.agrees_with(phi)


def test_birkhoff_random_characters_full_contract():
    rng = random.Random(4)
    for _ in range(5):
        phi = random_laurent_character(rng, 4)
        rec = birkhoff(phi, "recursive")
        ite = birkhoff(phi, "iterative")
        assert rec.phi_minus.agrees_with(ite.phi_minus)
        assert rec.phi_plus.agrees_with(ite.phi_plus)
        # range conditions
        for f in forests_up_to(4):
            if not f.is_empty():
                assert ms_regular(rec.phi_minus.value(f)).is_zero()
            assert ms_project(rec.phi_plus.value(f)).is_zero()
        # reconstruction and the phi_+ = phi_- * phi identity
        assert convolve(conv_inverse(rec.phi_minus), rec.phi_plus).agrees_with(phi)
        assert convolve(rec.phi_minus, phi).agrees_with(rec.phi_plus)
        # multiplicativity of both factors
        assert is_character(rec.phi_minus)
        assert is_character(rec.phi_plus)


def test_birkhoff_uniqueness_breaks_under_polar_perturbation():
    rng = random.Random(5)
    phi = random_laurent_character(rng, 3)
    window = phi.ring.one.window
    pair = birkhoff(phi)
    bad_values = dict(pair.phi_minus.items())
    bad_values[DOT] = bad_values.get(DOT, laurent_zero(window)) + laurent_monomial(window, -1)
    perturbed = Functional(phi.ring, 3, bad_values)
    assert not convolve(conv_inverse(perturbed), pair.phi_plus).agrees_with(phi)


def test_bogoliubov_preparation():
    rng = random.Random(6)
    phi = random_laurent_character(rng, 4)
    e = unit_functional(phi.ring, 4)
    b = bogoliubov_prepare(phi)
    assert b.value(DOT) == phi.value(DOT)
    # single-cut expansion on the 2-chain
    chain = parse_forest("[[]]")
    pair = birkhoff(phi)
    assert b.value(chain) == phi.value(chain) + pair.phi_minus.value(DOT) * phi.value(DOT)
    # b(phi) = phi_- * (phi - e)
    assert b.agrees_with(convolve(pair.phi_minus, phi - e))


def test_birkhoff_rejects_rational_target():
    from conftest import random_unital_functional

    with pytest.raises(ValueError):
        birkhoff(random_unital_functional(random.Random(7), 3))


def test_renormalized_value_is_constant_term():
    from forestcalc.renorm import renormalized_value

    rng = random.Random(8)
    phi = random_laurent_character(rng, 3)
    pair = birkhoff(phi)
    assert renormalized_value(pair, DOT) == pair.phi_plus.value(DOT).constant_term()


def test_birkhoff_with_trivial_scheme():
    # the zero projector leaves the character untouched: phi_- = e, phi_+ = phi
    rng = random.Random(9)
    phi = random_laurent_character(rng, 3)
    pair = birkhoff(phi, scheme=lambda a: LaurentSeries(a.window, {}))
    assert pair.phi_minus.agrees_with(unit_functional(phi.ring, 3))
    assert pair.phi_plus.agrees_with(phi)
