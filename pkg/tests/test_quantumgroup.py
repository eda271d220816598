import random

import pytest

from podles.quantumgroup import SUq2Algebra, fixtures_version
from podles.scalar import ONE, ZERO, q_pow


@pytest.fixture(scope="module")
def G():
    return SUq2Algebra()


def _word(rng, n):
    return [rng.choice(["a", "a*", "c", "c*"]) for _ in range(n)]


def test_products_match_rewriting(G):
    rng = random.Random(3)
    for _ in range(30):
        w1, w2 = _word(rng, 3), _word(rng, 2)
        assert G.normal_form(w1) * G.normal_form(w2) == G.normal_form(w1 + w2)


def test_relations(G):
    a, ast, c, cs = G.a, G.astar, G.c, G.cstar
    q = q_pow(1)
    assert a * c == (c * a).scale(q)
    assert c * cs == cs * c
    assert ast * a + cs * c == G.one()
    assert a * ast + (cs * c).scale(q_pow(2)) == G.one()


def test_counit_is_a_counit(G):
    rng = random.Random(5)
    mons = G.monomials(3)
    for _ in range(10):
        x = G.from_monomial(rng.choice(mons))
        D = G.coproduct(x)
        assert D.apply_left(lambda m: G.counit(G.from_monomial(m))) == x
        assert D.apply_right(lambda m: G.counit(G.from_monomial(m))) == x


def test_coproduct_is_multiplicative(G):
    x, y = G.a * G.cstar, G.c * G.c
    assert G.coproduct(x * y) == G.coproduct(x) * G.coproduct(y)


def test_pairing_two_ways(G):
    for f in ("E", "F", "K"):
        for m in G.monomials(3):
            x = G.from_monomial(m)
            assert G.pairing(f, x) == G.pairing_by_coproduct(f, x)


def test_haar_values(G):
    assert G.haar(G.one()) == ONE
    assert G.haar(G.c * G.cstar) == ONE / (ONE + q_pow(2))
    assert G.haar(G.a) == ZERO


def test_haar_kills_derivatives(G):
    # invariance: h(x <| E) = eps(E) h(x) = 0
    for m in G.monomials(3):
        x = G.from_monomial(m)
        assert G.haar(G.act_right("E", x)).is_zero()
        assert G.haar(G.act_right("F", x)).is_zero()


def test_sphere_embedding_is_a_homomorphism(G, std):
    e = G.embed_sphere
    A, B, Bs = std.A, std.B, std.Bs
    for x, y in [(B, A), (A, Bs), (Bs, B), (B, Bs), (A * A, B)]:
        assert e(x * y) == e(x) * e(y)


def test_embedding_rejects_other_spheres(G):
    from podles.algebra import PodlesAlgebra

    with pytest.raises(ValueError):
        G.embed_sphere(PodlesAlgebra((1, 1)).A)


def test_fixtures_version():
    assert fixtures_version()


def test_sphere_embedding_is_K_invariant(G, std):
    for m in std.monomials(3):
        y = G.embed_sphere(std.from_monomial(m))
        assert G.act_right("K", y) == y
