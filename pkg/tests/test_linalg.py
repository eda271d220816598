from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from podles.linalg import (
    ContainmentError,
    SparseMatrix,
    export_triplets,
    import_triplets,
    in_image,
    kernel_basis,
    quotient_dim,
    rank,
    shadow_check,
    split_rank,
    truncated_homology_dim,
)
from podles.scalar import ONE, q_pow, s_pow


def frac_rank(rows):
    """Plain Gaussian elimination over Fraction."""
    m = [[Fraction(v) for v in r] for r in rows]
    r = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c] / m[r][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        r += 1
    return r


dense = st.integers(1, 6).flatmap(
    lambda n: st.lists(st.lists(st.integers(-2, 2), min_size=n, max_size=n), min_size=1, max_size=6)
)


@settings(max_examples=80, deadline=None)
@given(dense)
def test_rank_matches_fraction_elimination(rows):
    M = SparseMatrix.from_dense(rows)
    assert rank(M) == frac_rank(rows)
    assert rank(M, strategy="naive") == frac_rank(rows)


@settings(max_examples=40, deadline=None)
@given(dense)
def test_kernel_vectors_are_killed(rows):
    M = SparseMatrix.from_dense(rows)
    ker = kernel_basis(M)
    assert len(ker) == M.ncols - rank(M)
    for v in ker:
        assert M.apply(v) == {}


def _poly_matrix():
    # rank 2 by construction: outer products of two pairs of vectors
    s, q = s_pow(1), q_pow(1)
    u1, v1 = [ONE, s, q, ONE + s], [ONE, q, s * s]
    u2, v2 = [s, ONE, q - ONE, ONE], [q, ONE, ONE]
    rows = [[u1[i] * v1[j] + u2[i] * v2[j] for j in range(3)] for i in range(4)]
    return SparseMatrix.from_dense(rows)


def test_rank_over_rational_functions():
    M = _poly_matrix()
    assert rank(M) == 2
    assert len(kernel_basis(M)) == 1
    assert shadow_check(M, 2)["confirmed"]


def test_in_image_witness():
    M = _poly_matrix()
    target = M.apply({0: ONE, 2: q_pow(3)})
    x = in_image(M, target)
    assert x is not None and M.apply(x) == target
    assert in_image(SparseMatrix.from_dense([[1], [0]]), {1: ONE}) is None


def test_split_rank():
    M = SparseMatrix.from_dense([[1, 0, 1], [0, 1, 1], [1, 1, 2]])
    r, r_high = split_rank(M, [2])
    assert (r, r_high) == (2, 1)


def test_truncated_homology_small_complex():
    # C_1 = span(e1, e2) -> C_0 = span(f); d1 = [1, 1]; d2 from C_2 = span(g): g -> e1 - e2
    d_out = SparseMatrix.from_dense([[1, 1]])
    d_in = SparseMatrix.from_dense([[1], [-1]])
    out = truncated_homology_dim(d_out, d_in, [0, 1])
    assert out["dim_ker"] == 1 and out["dim"] == 0


def test_quotient_checks_containment():
    Z = [{0: ONE}]
    with pytest.raises(ContainmentError):
        quotient_dim(SparseMatrix.from_dense([[0], [1]]), Z)


def test_triplet_roundtrip():
    M = _poly_matrix()
    text = export_triplets(M)
    assert text.splitlines()[0] == f"4 3 {M.nnz()}"
    back = import_triplets(text)
    assert back.cols == M.cols and back.nrows == M.nrows
