"""Twisted Hochschild and cyclic homology of the Podles spheres A(c, d) over Q(s), q = s^2."""

__version__ = "0.1.0"

from .scalar import ONE, ZERO, Params, ScalarK, parse_scalar, q_pow, s_pow  # noqa: E402
from .algebra import (  # noqa: E402
    IDENTITY,
    Automorphism,
    Element,
    PodlesAlgebra,
    normal_form,
    sigma,
    sigma_mod,
    tau,
)
from .chains import Chain, b_sigma, connes_B, make_eta, make_omega2, tau_cocycle, tensor  # noqa: E402
from .homology import TruncationWindow, beta_search, hc_dims, hh  # noqa: E402

__all__ = [
    "ONE", "ZERO", "Params", "ScalarK", "parse_scalar", "q_pow", "s_pow",
    "IDENTITY", "Automorphism", "Element", "PodlesAlgebra", "normal_form", "sigma", "sigma_mod", "tau",
    "Chain", "b_sigma", "connes_B", "make_eta", "make_omega2", "tau_cocycle", "tensor",
    "TruncationWindow", "beta_search", "hc_dims", "hh",
]
