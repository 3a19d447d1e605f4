from fractions import Fraction

import pytest

from ncpoisson.exactla import (
    NotAComplex,
    NotASubspace,
    RatMatrix,
    Subspace,
    homology_slice,
    image,
    kernel,
    quotient_basis,
    rank,
)

F = Fraction


def test_kernel_zero_map():
    m = RatMatrix(1, 1, {})
    assert kernel(m).dim == 1


def test_kernel_injective_map():
    m = RatMatrix(1, 1, {(0, 0): F(5)})
    assert kernel(m).dim == 0


def test_kernel_rank_one_2x2():
    m = RatMatrix(2, 2, {(0, 0): 1, (0, 1): 1, (1, 0): 1, (1, 1): 1})
    k = kernel(m)
    assert k.dim == 1
    # span{(1,-1)}
    assert k.contains({0: F(1), 1: F(-1)})
    assert not k.contains({0: F(1), 1: F(1)})


def test_image_zero_and_identity():
    assert image(RatMatrix(3, 2, {})).dim == 0
    eye = RatMatrix(3, 3, {(i, i): F(1) for i in range(3)})
    assert image(eye).dim == 3


def test_image_dependent_columns():
    m = RatMatrix(2, 2, {(0, 0): 1, (1, 0): 2, (0, 1): 2, (1, 1): 4})
    im = image(m)
    assert im.dim == 1
    assert im.contains({0: F(1), 1: F(2)})


def test_rank_nullity():
    m = RatMatrix(3, 4, {(0, 0): 2, (0, 2): 1, (1, 1): 3, (2, 0): 4, (2, 2): 2})
    assert rank(m) + kernel(m).dim == m.cols


def test_quotient_basis_trivial_cases():
    total = Subspace(2, [{0: F(1)}])
    assert quotient_basis(total, total) == []
    zero = Subspace(2, [])
    reps = quotient_basis(zero, total)
    assert len(reps) == 1 and reps[0] == {0: F(1)}


def test_quotient_basis_diagonal_sub():
    total = Subspace(2, [{0: F(1)}, {1: F(1)}])
    sub = Subspace(2, [{0: F(1), 1: F(1)}])
    reps = quotient_basis(sub, total)
    assert len(reps) == 1
    # the representative must be independent of sub
    assert not sub.contains(reps[0])


def test_quotient_basis_rejects_non_subspace():
    total = Subspace(2, [{0: F(1)}])
    sub = Subspace(2, [{1: F(1)}])
    with pytest.raises(NotASubspace):
        quotient_basis(sub, total)


def test_homology_zero_differentials():
    z = RatMatrix(3, 3, {})
    dim, reps = homology_slice(z, z)
    assert dim == 3 and len(reps) == 3


def test_homology_identity_in():
    eye = RatMatrix(2, 2, {(i, i): F(1) for i in range(2)})
    z = RatMatrix(2, 2, {})
    dim, _ = homology_slice(eye, z)
    assert dim == 0


def test_homology_rank_count():
    d_in = RatMatrix(2, 1, {(0, 0): 1, (1, 0): 1})
    d_out = RatMatrix(1, 2, {(0, 0): 1, (0, 1): -1})
    dim, _ = homology_slice(d_in, d_out)
    assert dim == 0


def test_homology_rejects_non_complex():
    d_in = RatMatrix(2, 1, {(0, 0): 1})
    d_out = RatMatrix(1, 2, {(0, 0): 1})
    with pytest.raises(NotAComplex):
        homology_slice(d_in, d_out)


def test_reduce_and_coordinates():
    s = Subspace(3, [{0: F(1), 2: F(2)}, {1: F(1)}])
    v = {0: F(3), 1: F(5), 2: F(6)}
    assert s.contains(v)
    coords = s.coordinates(v)
    assert coords == [F(3), F(5)]
    assert s.coordinates({2: F(1)}) is None


def test_echelon_basis_is_normalized():
    s = Subspace(3, [{0: F(2), 1: F(4)}, {0: F(1), 1: F(2), 2: F(2)}])
    for b in s.basis:
        assert b[min(b)] == 1
    pivots = [min(b) for b in s.basis]
    assert pivots == sorted(set(pivots))


def test_quotient_representatives_independent_mod_sub():
    # representatives stay independent after adjoining sub's echelon basis
    total = Subspace(4, [{i: F(1)} for i in range(4)])
    sub = Subspace(4, [{0: F(1), 1: F(-1)}, {2: F(1), 3: F(1)}])
    reps = quotient_basis(sub, total)
    assert len(reps) == 2
    grow = Subspace(4, sub.basis)
    for r in reps:
        assert not grow.contains(r)
        grow = Subspace(4, grow.basis + [r])
