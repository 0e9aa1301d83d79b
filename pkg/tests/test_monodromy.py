import random
from fractions import Fraction

import pytest

from hodgeorbit.catalog import oracle_monodromy_axioms, random_invertible, random_nilpotent
from hodgeorbit.datum import matrix_inverse
from hodgeorbit.filtration import Filtration, trivial_weight_filtration
from hodgeorbit.linalg import Matrix, Subspace, image_of_subspace
from hodgeorbit.monodromy import (
    admissibility_report,
    relative_monodromy,
    satisfies_monodromy_axioms,
    shift,
    weight_monodromy,
)


def jordan(n):
    rows = [[0] * n for _ in range(n)]
    for i in range(n - 1):
        rows[i][i + 1] = 1
    return Matrix(rows)


def dims(filt):
    return [(k, s.dim) for k, s in filt.steps]


# -- absolute ----------------------------------------------------------------


def test_zero_operator_concentrates_at_zero():
    m = weight_monodromy(Matrix.zeros(2, 2))
    assert dims(m.filtration) == [(0, 2)]


def test_jordan_two():
    m = weight_monodromy(jordan(2))
    assert dims(m.filtration) == [(-1, 1), (1, 2)]
    assert m.filtration.at(-1) == Subspace.from_vectors(2, [(1, 0)])


def test_jordan_three():
    m = weight_monodromy(jordan(3))
    assert dims(m.filtration) == [(-2, 1), (0, 2), (2, 3)]


def test_rejects_non_nilpotent():
    with pytest.raises(ValueError):
        weight_monodromy(Matrix.identity(2))


def test_shift_examples():
    m = weight_monodromy(jordan(2))
    assert shift(m, 0) == m.filtration
    assert shift(m, -1).jumps() == (-2, 0)
    assert shift(m, -1).shift(1) == m.filtration


def test_axioms_verified_for_random_operators():
    rng = random.Random(23)
    for _ in range(25):
        n = random_nilpotent(rng, rng.randint(1, 8))
        m = weight_monodromy(n)
        assert oracle_monodromy_axioms(n, m.filtration)
        assert satisfies_monodromy_axioms(n, m.filtration)


def test_oracle_rejects_shifted_filtration():
    n = jordan(2)
    m = weight_monodromy(n)
    assert not oracle_monodromy_axioms(n, m.filtration.shift(1))


def test_conjugation_equivariance():
    rng = random.Random(29)
    for _ in range(15):
        dim = rng.randint(1, 6)
        n = random_nilpotent(rng, dim)
        g = random_invertible(rng, dim)
        conj = g @ n @ matrix_inverse(g)
        moved = Filtration.make(
            dim, True, [(k, image_of_subspace(g, s)) for k, s in weight_monodromy(n).filtration.steps]
        )
        assert weight_monodromy(conj).filtration == moved


def test_jordan_type_counting_matches_rank_sequence():
    rng = random.Random(31)
    for _ in range(10):
        dim = rng.randint(2, 7)
        n = random_nilpotent(rng, dim)
        filt = weight_monodromy(n).filtration
        lo, hi = filt.min_index(), filt.max_index()
        for j in range(0, hi + 1):
            assert filt.graded_dim(j) == filt.graded_dim(-j)


# -- relative ----------------------------------------------------------------


def kummer_data():
    w = Filtration.make(2, True, [(-2, Subspace.from_vectors(2, [(1, 0)])), (0, Subspace.full(2))])
    n = Matrix([[0, 1], [0, 0]])
    return n, w


def test_relative_concentrated_equals_shifted_absolute():
    rng = random.Random(37)
    for _ in range(20):
        dim = rng.randint(1, 6)
        n = random_nilpotent(rng, dim)
        w = rng.randint(-3, 3)
        m = relative_monodromy(n, trivial_weight_filtration(dim, w))
        assert m is not None
        assert m.filtration == shift(weight_monodromy(n), w)


def test_relative_of_zero_is_the_weight_filtration():
    _, w = kummer_data()
    m = relative_monodromy(Matrix.zeros(2, 2), w)
    assert m is not None and m.filtration == w


def test_kummer_relative_is_the_weight_filtration():
    n, w = kummer_data()
    m = relative_monodromy(n, w)
    assert m is not None and m.filtration == w


def test_relative_can_fail_to_exist():
    w = Filtration.make(
        3, True, [(0, Subspace.from_vectors(3, [(1, 0, 0)])), (1, Subspace.full(3))]
    )
    n = Matrix([[0, 1, 0], [0, 0, 0], [0, 0, 0]])
    assert relative_monodromy(n, w) is None


def test_relative_requires_preserving_w():
    w = Filtration.make(2, True, [(-2, Subspace.from_vectors(2, [(0, 1)])), (0, Subspace.full(2))])
    n = Matrix([[0, 1], [0, 0]])  # sends W_{-2} outside itself
    with pytest.raises(ValueError):
        relative_monodromy(n, w)


def test_relative_pinned_lift():
    # block b0..b3 with m isolated at the bottom layer: the candidate lift
    # is pinned by the operator; the result interleaves the two parts.
    rows = [[0] * 5 for _ in range(5)]
    for i in range(3):
        rows[i][i + 1] = 1
    n = Matrix(rows)
    w = Filtration.make(
        5, True, [(-2, Subspace.from_vectors(5, [(0, 0, 0, 0, 1)])), (0, Subspace.full(5))]
    )
    m = relative_monodromy(n, w)
    assert m is not None
    assert [(k, s.dim) for k, s in m.filtration.steps] == [(-3, 1), (-2, 2), (-1, 3), (1, 4), (3, 5)]


def test_relative_chained_obstruction():
    # b1 -> b0 -> m2 -> m1 -> m0 with the m-chain at the bottom layer: the
    # needed graded isomorphisms cannot exist.
    rows = [[0] * 5 for _ in range(5)]
    rows[0][1] = 1
    rows[1][2] = 1
    rows[2][3] = 1
    rows[3][4] = 1
    n = Matrix(rows)
    w = Filtration.make(
        5,
        True,
        [(-2, Subspace.from_vectors(5, [(1, 0, 0, 0, 0), (0, 1, 0, 0, 0), (0, 0, 1, 0, 0)])), (0, Subspace.full(5))],
    )
    assert relative_monodromy(n, w) is None


def test_admissibility_report():
    n, w = kummer_data()
    rep = admissibility_report(w, [n, n.scale(Fraction(3))])
    assert rep.partial_sums_exist and rep.sampled_cone_constant and rep.admissible
    bad_w = Filtration.make(
        3, True, [(0, Subspace.from_vectors(3, [(1, 0, 0)])), (1, Subspace.full(3))]
    )
    bad_n = Matrix([[0, 1, 0], [0, 0, 0], [0, 0, 0]])
    rep = admissibility_report(bad_w, [bad_n])
    assert not rep.partial_sums_exist


def test_relative_of_operator_over_its_own_shifted_filtration():
    # W built as the shifted filtration of N itself: the relative
    # filtration exists and equals W (the induced graded operators vanish).
    rng = random.Random(43)
    for _ in range(15):
        dim = rng.randint(2, 6)
        n = random_nilpotent(rng, dim)
        w = shift(weight_monodromy(n), rng.randint(-2, 2))
        m = relative_monodromy(n, w)
        assert m is not None and m.filtration == w


def test_relative_duality_cross_check():
    # The relative filtration of the dual datum is the annihilator dual:
    # M(dual)_k = ann(M_{-k-1}).  Checked on admissible samples built from
    # shifted absolute filtrations and their operator polynomials.
    rng = random.Random(47)
    count = 0
    for _ in range(12):
        dim = rng.randint(2, 6)
        n = random_nilpotent(rng, dim)
        wshift = rng.randint(-2, 2)
        w = shift(weight_monodromy(n), wshift)
        op = n + (n @ n).scale(Fraction(rng.randint(-2, 2)))
        m = relative_monodromy(op, w)
        if m is None:
            continue
        dual_w = Filtration.make(dim, True, [(-k - 1, w.at(k).annihilator()) for k in range(w.min_index() - 2, w.max_index() + 2)])
        md = relative_monodromy(-op.transpose(), dual_w)
        assert md is not None
        lo = m.filtration.min_index() - 1
        hi = m.filtration.max_index() + 1
        for k in range(lo, hi + 1):
            assert md.filtration.at(k) == m.filtration.at(-k - 1).annihilator()
        count += 1
    assert count >= 6
