from fractions import Fraction

import pytest

from hodgeorbit.catalog import (
    gen_elliptic_orbit,
    gen_elliptic_sum_orbit,
    gen_hodge_tate_orbit,
    gen_kummer,
    gen_nonisotropic_parts,
    gen_rmf_missing_mixed,
    gen_stuck_orbit,
    gen_tate,
    gen_tate_curve_orbit,
    gen_three_weight_mixed,
    gen_two_operator_kummer,
)
from hodgeorbit.datum import OrbitDatum, Pairing
from hodgeorbit.filtration import Filtration
from hodgeorbit.linalg import Matrix, Subspace
from hodgeorbit.scalars import GaussScalar
from hodgeorbit.verify import (
    CERTIFIED,
    Policy,
    REFUTED,
    SUPPORTED,
    check_mixed_orbit,
    check_pure_orbit,
    griffiths_isotropy_checks,
    hodge_decomposition,
    is_mhs,
    is_polarized_hs,
    is_pure_hs,
    lefschetz_graded_pairings,
    mhs_failures,
    operator_sum_facts,
    primitive_parts,
    sampled_orbit_membership,
    shear_equivalence_report,
)


def filt(n, pairs):
    return Filtration.make(n, False, pairs)


# -- purity ------------------------------------------------------------------


def test_unit_is_pure():
    f = filt(1, [(0, Subspace.full(1)), (1, Subspace.zero(1))])
    assert is_pure_hs(0, f)


def test_weight_one_purity_needs_transverse_conjugate():
    good = filt(2, [(0, Subspace.full(2)), (1, Subspace.from_vectors(2, [(GaussScalar(0, 1), 1)])), (2, Subspace.zero(2))])
    assert is_pure_hs(1, good)
    bad = filt(2, [(0, Subspace.full(2)), (1, Subspace.from_vectors(2, [(1, 0)])), (2, Subspace.zero(2))])
    assert not is_pure_hs(1, bad)


def test_hodge_decomposition_pieces():
    f = filt(2, [(0, Subspace.full(2)), (1, Subspace.from_vectors(2, [(1, GaussScalar(0, 1))])), (2, Subspace.zero(2))])
    dec = hodge_decomposition(1, f)
    assert dec is not None
    assert sorted((p, q) for p, q, _ in dec.pieces) == [(0, 1), (1, 0)]
    conj = {(q, p) for p, q, _ in dec.pieces}
    assert conj == {(p, q) for p, q, _ in dec.pieces}


# -- polarization ------------------------------------------------------------


def test_unit_polarized():
    assert is_polarized_hs(0, gen_tate(0).hodge_filtration, Pairing(Matrix([[1]]), 0, 1))


def test_elliptic_sign_convention_pins_tau():
    s = Pairing(Matrix([[0, 1], [-1, 0]]), -1, -1)
    up = filt(2, [(0, Subspace.full(2)), (1, Subspace.from_vectors(2, [(1, GaussScalar(0, 1))])), (2, Subspace.zero(2))])
    down = filt(2, [(0, Subspace.full(2)), (1, Subspace.from_vectors(2, [(1, GaussScalar(0, -1))])), (2, Subspace.zero(2))])
    assert is_polarized_hs(1, up, s)
    assert not is_polarized_hs(1, down, s)
    assert not is_polarized_hs(1, up, s.negate())


def test_polarized_rejects_malformed_pairing():
    with pytest.raises(ValueError):
        is_polarized_hs(0, gen_tate(0).hodge_filtration, Pairing(Matrix([[1]]), 5, 1))


def test_polarized_forces_complementary_dims():
    o = gen_elliptic_orbit(tau=GaussScalar(0, 1))
    f = o.hodge_filtration
    assert is_polarized_hs(1, f, o.pairing)
    for p in f.jumps():
        assert f.at(p).dim + f.at(1 + 1 - p).dim == 2


# -- mixed -------------------------------------------------------------------


def test_is_mhs_on_catalog():
    assert is_mhs(gen_kummer(GaussScalar(0, 1)))
    assert is_mhs(gen_three_weight_mixed())
    assert is_mhs(gen_tate(1))


def test_mhs_failure_names_weight():
    bad = filt(2, [(0, Subspace.full(2)), (1, Subspace.from_vectors(2, [(1, 0)])), (2, Subspace.zero(2))])
    from hodgeorbit.datum import make_datum
    from hodgeorbit.filtration import trivial_weight_filtration

    h = make_datum(trivial_weight_filtration(2, 1), bad, [], {})
    assert mhs_failures(h) == [1]


# -- structural reports ------------------------------------------------------


def test_griffiths_isotropy_on_raw_negative():
    parts = gen_nonisotropic_parts()
    rep = griffiths_isotropy_checks(parts["weight"], parts["pairing"], parts["operators"], parts["hodge_filtration"])
    assert not all(rep.isotropy)
    with pytest.raises(ValueError):
        OrbitDatum(parts["weight"], parts["pairing"], parts["operators"], parts["hodge_filtration"])


def test_griffiths_all_pass_on_certified_orbit():
    o = gen_elliptic_orbit()
    rep = griffiths_isotropy_checks(o.weight, o.pairing, o.operators, o.hodge_filtration)
    assert rep.all_pass


def test_zero_operators_pass_structure():
    o = gen_elliptic_orbit(tau=GaussScalar(0, 1))
    rep = griffiths_isotropy_checks(o.weight, o.pairing, (), o.hodge_filtration)
    assert rep.all_pass


# -- primitive decomposition ---------------------------------------------------


def test_primitive_parts_zero_operator():
    o = gen_elliptic_orbit(tau=GaussScalar(0, 1))
    o0 = OrbitDatum(o.weight, o.pairing, (Matrix.zeros(2, 2),), o.hodge_filtration)
    dec = primitive_parts(o0)
    assert dec.lefschetz_ok
    assert [p.weight_k for p in dec.parts] == [1]
    assert dec.parts[0].subspace.dim == 2


def test_primitive_parts_jordan_two():
    dec = primitive_parts(gen_elliptic_orbit())
    assert dec.lefschetz_ok
    assert [(p.weight_k, p.subspace.dim) for p in dec.parts] == [(2, 1)]


def test_lefschetz_dimension_identity():
    for o in (gen_elliptic_orbit(), gen_hodge_tate_orbit(), gen_elliptic_sum_orbit(), gen_tate_curve_orbit()):
        dec = primitive_parts(o)
        total = sum((p.weight_k - o.weight + 1) * p.subspace.dim for p in dec.parts)
        assert total == o.dim and dec.lefschetz_ok


def test_lefschetz_graded_pairings_polarize():
    o = gen_hodge_tate_orbit()
    pairings = lefschetz_graded_pairings(o)
    from hodgeorbit.monodromy import shift, weight_monodromy

    wfilt = shift(weight_monodromy(o.operators[0]), o.weight)
    assert set(pairings) == set(wfilt.jumps())
    for w, p in pairings.items():
        assert p.symmetry == (-1) ** (w % 2) and p.is_perfect()


# -- sampling ----------------------------------------------------------------


def test_sampled_membership_examples():
    o = gen_elliptic_orbit()
    assert sampled_orbit_membership(o, y_grid=[(Fraction(4),)]).all_pass
    assert sampled_orbit_membership(o).all_pass
    assert not sampled_orbit_membership(gen_elliptic_orbit(flip=True)).all_pass
    o0 = OrbitDatum(1, o.pairing, (), gen_elliptic_orbit(tau=GaussScalar(0, 1)).hodge_filtration)
    assert sampled_orbit_membership(o0).all_pass


# -- verdicts ----------------------------------------------------------------


def test_check_pure_orbit_certified_and_refuted():
    assert check_pure_orbit(gen_elliptic_orbit()).status == CERTIFIED
    assert check_pure_orbit(gen_elliptic_orbit(flip=True)).status == REFUTED
    assert check_pure_orbit(gen_stuck_orbit()).status == REFUTED


def test_check_pure_orbit_zero_operator_case():
    o = gen_elliptic_orbit(tau=GaussScalar(0, 1))
    o0 = OrbitDatum(o.weight, o.pairing, (), o.hodge_filtration)
    assert check_pure_orbit(o0).status == CERTIFIED


def test_check_mixed_orbit_statuses():
    assert check_mixed_orbit(gen_tate(0)).status == CERTIFIED
    assert check_mixed_orbit(gen_kummer(GaussScalar(0, 1))).status == SUPPORTED
    v = check_mixed_orbit(gen_rmf_missing_mixed())
    assert v.status == REFUTED
    assert v.clause("admissibility_partial_sums") is False


def test_check_mixed_orbit_names_failing_weight():
    bad = gen_kummer(GaussScalar(0, 1), flip_weight=-2)
    v = check_mixed_orbit(bad)
    assert v.status == REFUTED
    assert v.clause("graded_-2") is False
    assert v.clause("graded_0") is True


def test_operator_sum_facts_all_pass():
    facts = operator_sum_facts(gen_two_operator_kummer())
    assert facts.all_pass


def test_operator_sum_facts_zero_second_operator():
    h = gen_kummer(GaussScalar(0, 1), n_ops=2)  # second operator is zero
    facts = operator_sum_facts(h)
    assert facts.all_pass


def test_operator_sum_facts_needs_two_operators():
    with pytest.raises(ValueError):
        operator_sum_facts(gen_kummer(GaussScalar(0, 1)))


def test_shear_equivalence_degenerate_single_operator():
    rep = shear_equivalence_report(gen_elliptic_orbit())
    assert rep.agree and rep.left_positive and rep.right_positive


def test_shear_equivalence_negative_agrees():
    rep = shear_equivalence_report(gen_elliptic_orbit(flip=True))
    assert rep.agree and not rep.left_positive and not rep.right_positive


def test_sampled_membership_monotone_stability_on_catalog():
    # regression property over the catalog positives: doubling the sample
    # point keeps membership
    from hodgeorbit.catalog import catalog_entries

    for entry in catalog_entries():
        if "orbit_positive" not in entry.tags:
            continue
        o = entry.build()
        n = len(o.operators)
        for y in ((Fraction(4),) * n, (Fraction(8),) * n):
            assert sampled_orbit_membership(o, y_grid=[y]).all_pass, entry.name


def test_operator_sum_facts_all_operators_zero():
    h = gen_kummer(GaussScalar(0, 1), n_ops=2)
    zeroed = h
    from hodgeorbit.datum import make_datum

    zeroed = make_datum(
        h.weight_filtration,
        h.hodge_filtration,
        [Matrix.zeros(2, 2), Matrix.zeros(2, 2)],
        dict(h.graded_pairings),
        h.twist_tag,
    )
    facts = operator_sum_facts(zeroed)
    assert facts.all_pass


def test_check_mixed_orbit_surjection_route():
    v = check_mixed_orbit(gen_kummer(GaussScalar(0, 1)), use_surjection_route=True)
    assert v.status == SUPPORTED
    assert v.clause("pure_surjection_witness") is True


def test_purity_invariant_under_rational_basis_change():
    import random as _random
    from hodgeorbit.catalog import random_invertible

    rng = _random.Random(71)
    f_good = Filtration.make(
        2,
        False,
        [(0, Subspace.full(2)), (1, Subspace.from_vectors(2, [(1, GaussScalar(0, 1))])), (2, Subspace.zero(2))],
    )
    f_bad = Filtration.make(
        2,
        False,
        [(0, Subspace.full(2)), (1, Subspace.from_vectors(2, [(1, 0)])), (2, Subspace.zero(2))],
    )
    for _ in range(8):
        g = random_invertible(rng, 2)
        assert is_pure_hs(1, f_good.map_image(g))
        assert not is_pure_hs(1, f_bad.map_image(g))


def test_transversality_detected_between_jumps():
    # an operator dropping the Hodge degree by two: the violated instance
    # sits strictly between stored filtration jumps
    from hodgeorbit.catalog import gen_tate
    from hodgeorbit.extensions import build_unit_extension

    bad = build_unit_extension(gen_tate(2, 1), [GaussScalar(0, 1)], monodromy_parts=[[1]])
    v = check_mixed_orbit(bad)
    assert v.status == REFUTED and v.clause("transversality") is False
    rep = griffiths_isotropy_checks(
        0,
        Pairing(Matrix.identity(2), 0, 1),
        bad.operators,
        bad.hodge_filtration,
    )
    assert not all(rep.transversality)


def test_deep_gap_extension_is_certified_mixed():
    from hodgeorbit.catalog import gen_tate
    from hodgeorbit.extensions import build_unit_extension

    deep = build_unit_extension(gen_tate(2, 0), [GaussScalar(0, 1)])
    assert deep.weights() == (-4, 0)
    assert check_mixed_orbit(deep).status == CERTIFIED
