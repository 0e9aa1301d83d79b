import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from hodgeorbit.linalg import (
    Matrix,
    Subspace,
    echelonize,
    image,
    intersect,
    is_positive_definite_hermitian,
    kernel,
    preimage,
    quotient_projection,
    quotient_section,
    solve,
    subspace_sum,
)
from hodgeorbit.scalars import GaussScalar, I, ONE, ZERO


def rand_matrix(rng, rows, cols, lo=-3, hi=3):
    return Matrix([[Fraction(rng.randint(lo, hi)) for _ in range(cols)] for _ in range(rows)])


# -- echelon form -----------------------------------------------------------


def test_echelonize_identity_is_canonical():
    m = Matrix.identity(3)
    assert echelonize(m) == m


def test_echelonize_collapses_dependent_rows():
    assert echelonize(Matrix([[2, 4], [1, 2]])) == Matrix([[1, 2]])


def test_echelonize_zero_matrix_drops_rows():
    out = echelonize(Matrix.zeros(2, 2))
    assert out.rows == 0 and out.cols == 2


def test_echelonize_idempotent_on_random_matrices():
    rng = random.Random(7)
    for _ in range(30):
        m = rand_matrix(rng, rng.randint(1, 8), rng.randint(1, 8))
        e = echelonize(m)
        assert echelonize(e) == e


# -- kernel / image ---------------------------------------------------------


def test_kernel_examples():
    assert kernel(Matrix.zeros(2, 2)).dim == 2
    assert kernel(Matrix.identity(2)).dim == 0
    k = kernel(Matrix([[0, 1], [0, 0]]))
    assert k == Subspace.from_vectors(2, [(1, 0)])


def test_rank_nullity_on_random_matrices():
    rng = random.Random(11)
    for _ in range(40):
        rows, cols = rng.randint(1, 8), rng.randint(1, 8)
        m = rand_matrix(rng, rows, cols)
        assert kernel(m).dim + echelonize(m).rows == cols
        assert image(m).dim == echelonize(m).rows


# -- lattice operations -----------------------------------------------------


def test_intersect_and_sum_examples():
    s = Subspace.from_vectors(3, [(1, 0, 0), (0, 1, 0)])
    full = Subspace.full(3)
    zero = Subspace.zero(3)
    assert intersect(s, full) == s
    assert subspace_sum(s, zero) == s
    a = Subspace.from_vectors(2, [(1, 0)])
    b = Subspace.from_vectors(2, [(0, 1)])
    assert intersect(a, b).dim == 0


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_dimension_formula(data):
    n = data.draw(st.integers(min_value=1, max_value=5))
    vecs = st.lists(
        st.lists(st.integers(min_value=-3, max_value=3), min_size=n, max_size=n),
        min_size=0,
        max_size=n,
    )
    a = Subspace.from_vectors(n, data.draw(vecs))
    b = Subspace.from_vectors(n, data.draw(vecs))
    assert a.dim + b.dim == intersect(a, b).dim + subspace_sum(a, b).dim


def test_preimage_semantics():
    m = Matrix([[1, 0], [0, 0]])
    s = Subspace.from_vectors(2, [(1, 0)])
    pre = preimage(m, s)
    assert pre == Subspace.full(2)
    s2 = Subspace.zero(2)
    assert preimage(m, s2) == Subspace.from_vectors(2, [(0, 1)])


def test_preimage_dimension_mismatch():
    with pytest.raises(ValueError):
        preimage(Matrix.zeros(2, 2), Subspace.zero(3))


# -- quotients ---------------------------------------------------------------


def test_quotient_projection_section_roundtrip():
    rng = random.Random(3)
    for _ in range(20):
        n = rng.randint(1, 6)
        s = Subspace.from_vectors(n, [[rng.randint(-2, 2) for _ in range(n)] for _ in range(rng.randint(0, n))])
        proj = quotient_projection(s)
        sec = quotient_section(s)
        assert proj.rows == n - s.dim
        assert (proj @ sec) == Matrix.identity(n - s.dim)
        for row in s.basis.entries:
            assert all(x.is_zero() for x in proj.apply(row))


# -- solving -----------------------------------------------------------------


def test_solve_is_canonical_and_checks_consistency():
    m = Matrix([[1, 1], [0, 0]])
    assert solve(m, [2, 0]) == (GaussScalar(2), ZERO)
    assert solve(m, [0, 1]) is None


# -- positivity --------------------------------------------------------------


def test_positive_definite_examples():
    assert is_positive_definite_hermitian(Matrix.identity(2))
    assert not is_positive_definite_hermitian(Matrix([[-1]]))
    m = Matrix([[GaussScalar(2), I], [-I, GaussScalar(2)]])
    assert is_positive_definite_hermitian(m)


def test_positivity_rejects_non_hermitian():
    with pytest.raises(ValueError):
        is_positive_definite_hermitian(Matrix([[0, 1], [0, 0]]))


def test_positivity_agrees_with_sampling_oracle():
    rng = random.Random(19)
    for _ in range(15):
        n = rng.randint(1, 6)
        a = Matrix(
            [
                [GaussScalar(rng.randint(-2, 2), rng.randint(-2, 2)) for _ in range(n)]
                for _ in range(n)
            ]
        )
        pd = a.conj_transpose() @ a + Matrix.identity(n)  # positive definite
        assert is_positive_definite_hermitian(pd)
        # necessary direction: every sampled vector has positive value
        for _ in range(8):
            v = [GaussScalar(rng.randint(-3, 3), rng.randint(-3, 3)) for _ in range(n)]
            val = ZERO
            mv = pd.apply([x.conjugate() for x in v])
            for x, y in zip(v, mv):
                val = val + x * y
            assert val.im == 0
            if any(not x.is_zero() for x in v):
                assert val.re > 0
        neg = -pd
        assert not is_positive_definite_hermitian(neg)
