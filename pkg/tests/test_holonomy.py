import random
from fractions import Fraction

import pytest

from pantsunion.holonomy import (
    CuspModulus,
    b_type_modulus,
    build_generators,
    modulus_equality_residual,
    pair_commutator,
    solve_meridian_normalization,
)
from pantsunion.moebius import MoebiusElement, classify_element
from pantsunion.scalars import ComplexScalar

cs = ComplexScalar.from_rational


def rand_modulus(rng):
    return cs(
        Fraction(rng.randint(-8, 8), rng.randint(1, 6)),
        Fraction(rng.randint(1, 12), rng.randint(1, 6)),
    )


def test_generators_at_two_i():
    quad = build_generators(cs(0, 2), cs(0, 2))
    assert quad.x == MoebiusElement(1, 2, 0, 1)
    assert quad.y == MoebiusElement(1, 0, 2, 1)
    assert quad.z == MoebiusElement(1, cs(0, -1), 0, 1)
    assert quad.w == MoebiusElement(1, 0, cs(0, 4), 1)


def test_generators_at_i():
    quad = build_generators(cs(0, 1), cs(0, 1))
    assert quad.z == MoebiusElement(1, cs(0, -2), 0, 1)


def test_x_y_do_not_depend_on_moduli():
    rng = random.Random(211)
    a = build_generators(rand_modulus(rng), rand_modulus(rng))
    b = build_generators(rand_modulus(rng), rand_modulus(rng))
    assert a.x == b.x and a.y == b.y


def test_invalid_moduli_rejected():
    with pytest.raises(ValueError):
        build_generators(cs(1), cs(0, 2))  # real
    with pytest.raises(ValueError):
        build_generators(cs(0, -2), cs(0, 2))  # lower half-plane
    with pytest.raises(ValueError):
        CuspModulus(cs(0))


def test_all_generators_parabolic():
    rng = random.Random(223)
    for _ in range(12):
        quad = build_generators(rand_modulus(rng), rand_modulus(rng))
        for g in (quad.x, quad.y, quad.z, quad.w):
            assert classify_element(g) == "parabolic"


def test_solve_meridian_normalization():
    c = solve_meridian_normalization()
    assert c == Fraction(2)
    x = MoebiusElement(1, 2, 0, 1)
    y = MoebiusElement(1, 0, c, 1)
    assert classify_element(x * y.inverse()) == "parabolic"


def test_normalization_trace_is_affine():
    rng = random.Random(227)
    x = MoebiusElement(1, 2, 0, 1)
    for _ in range(20):
        c = Fraction(rng.randint(-20, 20), rng.randint(1, 10))
        y = MoebiusElement(1, 0, c, 1)
        assert (x * y.inverse()).trace() == cs(2 - 2 * c)


def test_modulus_equality_residual_examples():
    assert modulus_equality_residual(cs(0, 2), cs(0, 2)) == cs(-4)
    # unequal moduli: trace 2 - 4*tau'/tau = -6 here
    res = modulus_equality_residual(cs(0, 1), cs(0, 2))
    assert res == cs(-8)
    assert res + cs(2) == cs(-6)


def test_residual_certifies_equality_iff_equal():
    rng = random.Random(229)
    for _ in range(30):
        tau = rand_modulus(rng)
        quad = build_generators(tau, tau)
        assert classify_element(quad.z * quad.w.inverse()) == "parabolic"
        assert modulus_equality_residual(tau, tau) == cs(-4)
        other = rand_modulus(rng)
        if other == tau:
            continue
        quad = build_generators(tau, other)
        assert classify_element(quad.z * quad.w.inverse()) != "parabolic"
        assert modulus_equality_residual(tau, other) != cs(-4)


def test_commutator_matches_closed_form():
    rng = random.Random(233)
    seen = 0
    while seen < 20:
        t = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
        if t == 0:
            continue
        seen += 1
        tau = cs(t)
        inv = cs(1) / tau
        expected = MoebiusElement(
            cs(1) - 4 * inv,
            8 * inv * inv,
            -8 * inv,
            cs(1) + 4 * inv + 16 * inv * inv,
        )
        assert pair_commutator(tau) == expected
        assert pair_commutator(tau).trace() == cs(2) + 16 * inv * inv


def test_b_type_modulus_is_two_i():
    mod = b_type_modulus()
    assert mod.tau == cs(0, 2)
    assert pair_commutator(mod.tau).trace() == cs(-2)
    assert classify_element(pair_commutator(mod.tau)) == "parabolic"
