import json

import pytest

from podles.algebra import PodlesAlgebra, sigma, tau
from podles.chains import S_pair, b_sigma, h_A, make_eta, tau_cocycle, tensor
from podles.homology import (
    RecurrencePredictor,
    TruncationWindow,
    beta_search,
    boundary_witness,
    hc_dims,
    hh,
    hh0_closed_form,
)
from podles.scalar import ONE, parse_scalar, q_pow

SMALL = {0: TruncationWindow(5, 2), 1: TruncationWindow(5, 2), 2: TruncationWindow(5, 2)}


def _sig(lam, sign=1):
    lam = parse_scalar(lam)
    return sigma(lam) if sign == 1 else tau(lam)


@pytest.mark.parametrize("lam", ["q^3", "q^-2", "q^-4"])
def test_engines_agree_on_small_windows(alg, lam):
    sig = _sig(lam)
    for n in (0, 1, 2):
        w = SMALL[n]
        bar = hh(alg, sig, n, TruncationWindow(w.N, w.M, excess=2), engine="bar", probe=False)
        resn = hh(alg, sig, n, w, engine="resolution", probe=False)
        assert bar.dims_by_block() == resn.dims_by_block()


def test_generic_twist_dimensions(std):
    sig = _sig("q^3")
    dims = [hh(std, sig, n, engine="resolution").dim for n in range(4)]
    assert dims == [2, 0, 0, 0]


def test_report_is_stable_and_serializable(std):
    rep = hh(std, _sig("q^-2"), 1, engine="resolution")
    assert rep.stable
    d = json.loads(rep.to_json())
    assert d["dims"]["total"] == rep.dim == 1
    assert d["window"] == {"N": 8, "M": 4}


def test_bar_probe_records_point(std):
    rep = hh(std, _sig("q^-2"), 0, engine="bar")
    assert rep.to_dict()["probe"]["point"] == "29/17"


def test_window_validation():
    with pytest.raises(ValueError):
        TruncationWindow(0, 1)


def test_hh_rejects_illegal_twist(std):
    with pytest.raises(ValueError):
        hh(std, tau(ONE), 0)


@pytest.mark.parametrize("lam", ["q^3", "q^2", "1"])
def test_one_A_is_a_boundary_off_the_special_twist(alg, lam):
    sig = _sig(lam)
    target = tensor(alg.one(), alg.A)
    w = boundary_witness(alg, sig, target, 3)
    assert w is not None
    assert b_sigma(sig, w) == target


def test_one_A_is_not_a_boundary_at_q_minus_two(std):
    sig = _sig("q^-2")
    assert boundary_witness(std, sig, tensor(std.one(), std.A), 4) is None


@pytest.mark.parametrize("lam", ["q^2", "q^-4", "3"])
def test_unit_is_a_boundary_for_sign_flip(lam):
    alg = PodlesAlgebra((1, 1))
    sig = _sig(lam, -1)
    A, B, Bs = alg.A, alg.B, alg.Bs
    c2 = alg.params.c * alg.params.c
    li = ONE / sig.lam
    # b(B, B*) = (1 - 1/lam) c^2 + (1/lam - q^4) A^2 and b(A, A) = 2 A^2
    assert b_sigma(sig, tensor(A, A)) == tensor(A * A).scale(2)
    w = (tensor(B, Bs) - tensor(A, A).scale((li - q_pow(4)) / 2)).scale(ONE / ((ONE - li) * c2))
    assert b_sigma(sig, w) == tensor(alg.one())
    assert hh(alg, sig, 0, engine="resolution").dim == 0


def test_sign_flip_identity_has_extra_weight_zero_class():
    alg = PodlesAlgebra((1, 1))
    rep = hh(alg, tau(ONE), 1, TruncationWindow(8, 4, weights=(0,)), engine="resolution")
    assert rep.dims_by_block() == {"w=0,p=0": 1}


@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_recurrence_witnesses(alg, n):
    assert RecurrencePredictor(alg, _sig("q^3")).check(n)


def test_closed_form_matches_engines(alg):
    for lam in ("q^3", "q^-2", "q^-6"):
        sig = _sig(lam)
        pred = hh0_closed_form(alg, sig)
        assert len(pred.basis) == hh(alg, sig, 0, engine="resolution").dim
        if pred.certificates:
            m = pred.pairing_matrix()
            assert not (m[0][0] * m[1][1] - m[0][1] * m[1][0]).is_zero()


def test_cyclic_dimensions_generic(std):
    rep = hc_dims(std, _sig("q^3"), 4)
    assert rep.hh == [2, 0, 0]
    assert rep.hc == [2, 0, 2, 0, 2]


def test_beta_matches_ratio_on_eta(std):
    r = beta_search(3)
    assert r.found
    eta = make_eta(std)
    assert r.beta == tau_cocycle(eta) / S_pair(h_A(std), eta)
    assert r.beta == -q_pow(2) / (q_pow(4) - ONE)


def test_beta_not_found_in_tiny_window():
    r = beta_search(2)
    assert not r.found and r.beta is None
