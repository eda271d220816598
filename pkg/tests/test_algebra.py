import random

import pytest

from podles.algebra import Automorphism, PodlesAlgebra, normal_form, sigma, tau
from podles.scalar import ONE, Params, q_pow


def test_defining_relations(alg):
    A, B, Bs = alg.A, alg.B, alg.Bs
    c, d = alg.params.c, alg.params.d
    q2, q4 = q_pow(2), q_pow(4)
    one = alg.one()
    assert B * A == (A * B).scale(q2)
    assert A * Bs == (Bs * A).scale(q2)
    assert Bs * B == one.scale(c * d) + A.scale(c - d) - A * A
    assert B * Bs == one.scale(c * d) + A.scale(q2 * (c - d)) - (A * A).scale(q4)


def test_associativity_on_random_monomials(alg):
    rng = random.Random(11)
    mons = alg.monomials(4)
    for _ in range(40):
        x, y, z = (alg.from_monomial(rng.choice(mons)) for _ in range(3))
        assert (x * y) * z == x * (y * z)


def test_words_reduce_to_the_same_element(alg):
    # B B* B via either bracketing
    left = normal_form(["B", "B*", "B"], alg.params)
    assert left == (alg.B * alg.Bs) * alg.B == alg.B * (alg.Bs * alg.B)


def test_monomial_count():
    alg = PodlesAlgebra((1, 0))
    # B^j A^k and B*^j A^k with j + k = n: 2n + 1 monomials of degree n
    assert [len(alg.monomials(n)) - len(alg.monomials(n - 1)) for n in range(1, 5)] == [3, 5, 7, 9]


def test_parse_matches_products(std):
    assert std.parse("B*^2 A") == std.Bs * std.Bs * std.A
    assert std.parse("2 A - q^2 B B*") == std.A.scale(2) - (std.B * std.Bs).scale(q_pow(2))


def test_automorphisms_preserve_relations():
    alg = PodlesAlgebra((1, 1))
    for sig in (sigma(q_pow(3)), tau(q_pow(-2))):
        f = lambda x: alg.apply_automorphism(sig, x)
        A, B, Bs = alg.A, alg.B, alg.Bs
        assert f(B * A) == f(B) * f(A)
        assert f(Bs * B) == f(Bs) * f(B)
        assert f(B * Bs) == f(B) * f(Bs)


def test_sign_flip_needs_equal_parameters():
    with pytest.raises(ValueError):
        tau(ONE).check_legal(Params(1, 0))
    tau(ONE).check_legal(Params(2, 2))


def test_eigenvalue():
    sig = Automorphism(q_pow(2), -1)
    assert sig.eigenvalue((2, 3)) == -q_pow(4)
    assert sig.eigenvalue((-1, 0)) == q_pow(-2)


def test_degenerate_parameters_rejected():
    with pytest.raises(ValueError):
        PodlesAlgebra((1, -1))
