import random

import pytest

from podles import resolution as res
from podles.algebra import PodlesAlgebra, sigma, tau
from podles.chains import b_sigma, is_degenerate, make_omega2
from podles.linalg import in_image
from podles.scalar import ONE, q_pow


@pytest.mark.parametrize("n", [2, 3, 4])
def test_module_differentials_compose_to_zero(alg, n):
    for row in res.module_composite(alg, n):
        assert all(u.is_zero() for u in row)


def test_first_differential_lands_in_kernel_of_multiplication(alg):
    for row in res.module_differential(alg, 1):
        total = alg.zero()
        for _, u in row:
            total = total + res.augmentation(u)
        assert total.is_zero()


@pytest.mark.parametrize("level", [1, 2])
def test_comparison_map_commutes(alg, level):
    for slot in range(res.RANKS[level]):
        assert res.chain_map_defect(alg, level, slot).is_zero()


def _random_vector(alg, rng, level, deg=2):
    mons = alg.monomials(deg)
    cs = [alg.from_monomial(rng.choice(mons)).scale(rng.randint(-3, 3)) for _ in range(res.RANKS[level])]
    return res.ModuleVector(level, tuple(cs))


@pytest.mark.parametrize("lam", ["q^3", "q^-2", "1"])
@pytest.mark.parametrize("level", [1, 2, 3, 4])
def test_tables_agree_with_closed_formulas(alg, lam, level):
    from podles.scalar import parse_scalar

    sig = sigma(parse_scalar(lam))
    rng = random.Random(level)
    for _ in range(4):
        v = _random_vector(alg, rng, level)
        assert res.induced(alg, sig, v) == res.displayed(alg, sig, v)


def test_closed_formulas_with_sign_flip():
    alg = PodlesAlgebra((1, 1))
    sig = tau(q_pow(2))
    rng = random.Random(0)
    for level in (1, 2, 3, 4):
        v = _random_vector(alg, rng, level)
        assert res.induced(alg, sig, v) == res.displayed(alg, sig, v)
        if level >= 2:
            assert res.induced(alg, sig, res.induced(alg, sig, v)).is_zero()


@pytest.mark.parametrize("b", [0, 1])
def test_level_two_cycles_map_to_bar_cycles(b):
    alg = PodlesAlgebra((2, 1))
    sig = sigma(q_pow(-(2 * b + 2)))
    # the degree-(b+1) kernel of d_2 on weight 0, pushed to the bar complex
    src = res.coordinate_basis(alg, 2, b + 3, 0)
    M, rows = res.differential_matrix(alg, sig, 2, src)
    from podles.linalg import kernel_basis

    for vec in kernel_basis(M):
        v = res.vector_from_coords(2, src, vec, alg)
        bd = b_sigma(sig, res.to_bar_cycle(alg, sig, v))
        # only degenerate tuples survive, which are zero in the normalized complex
        assert all(is_degenerate(t) for t in bd.terms)
    assert b_sigma(sig, make_omega2(alg, b)).is_zero()


def test_to_bar_cycle_rejects_non_cycles(std):
    sig = sigma(q_pow(3))
    with pytest.raises(res.NotACycle):
        res.to_bar_cycle(std, sig, res.ModuleVector.unit(std, 1, 2))


@pytest.mark.parametrize("lam", ["q^3", "q^-2"])
@pytest.mark.parametrize("j", [0, 1, 2])
def test_level_three_kernel_vector_is_a_boundary(lam, j):
    from podles.scalar import parse_scalar

    alg = PodlesAlgebra((2, 1))
    sig = sigma(parse_scalar(lam))
    target = res.hh3_kernel_vector(alg, sig, j)
    assert res.induced(alg, sig, target).is_zero()
    got = res.induced(alg, sig, res.hh3_witness(alg, sig, j, ONE))
    # the hand-written preimage is off by an overall factor 4
    assert got == target.scale(4)
    assert res.induced(alg, sig, res.hh3_witness(alg, sig, j, ONE).scale(ONE / 4)) == target


def test_level_three_kernel_vector_in_image_directly():
    alg = PodlesAlgebra((2, 1))
    sig = sigma(q_pow(3))
    target = res.hh3_kernel_vector(alg, sig, 1)
    src = res.coordinate_basis(alg, 4, 6, 0)
    tgt = res.coordinate_basis(alg, 3, 6, 0)
    M, _ = res.differential_matrix(alg, sig, 4, src, tgt)
    idx = {k: i for i, k in enumerate(tgt)}
    vec = {idx[(slot, m)]: c for slot, a in enumerate(target.coords) for m, c in a.terms.items()}
    assert in_image(M, vec) is not None


def test_witness_needs_generic_parameters(std):
    with pytest.raises(ValueError):
        res.hh3_witness(std, sigma(q_pow(3)), 0, ONE)
