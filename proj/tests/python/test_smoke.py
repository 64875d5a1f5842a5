import numpy as np
import pytest

import wka


def test_cube_family_passes_axioms():
    w = wka.cube_family(2)
    assert w.dim == 8
    assert w.block_shape == [2, 2]
    report = wka.verify(w)
    assert report.passed
    assert report.max_residual < 1e-8
    t = wka.triviality(w)
    assert t["commutator"] > 0.1 and t["cocommutator"] > 0.1


def test_function_algebra_counit_and_haar_projection():
    w = wka.groupoid_function_algebra(wka.pair_groupoid(2))
    # point masses d_(i,j) at index 2 i + j; eps is supported on units
    np.testing.assert_allclose(w.counit, [1, 0, 0, 1])
    np.testing.assert_allclose(wka.haar_projection(w), [1, 0, 0, 1], atol=1e-12)
    assert wka.cartan_dims(w) == (2, 2)


def test_zeroed_counit_fails():
    w = wka.groupoid_function_algebra(wka.pair_groupoid(2))
    report = wka.verify(w.with_counit(np.zeros(4, dtype=complex)))
    assert not report.passed
    assert not report.checks["counit.left"]["pass"]


def test_dual_and_biduality():
    w = wka.elementary([1, 2])
    d = wka.dual(w)
    assert sorted(d.block_shape) == [1, 2, 2, 4]
    assert wka.verify(d).passed
    assert wka.biduality_report(w).passed


def test_counit_recovery_from_haar_trace():
    w = wka.cube_family(3)
    phi = wka.normalized_haar_trace(w)
    np.testing.assert_allclose(wka.counit_from_haar(w, phi), w.counit, atol=1e-10)
    np.testing.assert_allclose(wka.recover_counit(w), w.counit, atol=1e-10)


def test_twist_untwists_to_elementary():
    lam = wka.random_cocycle(2, seed=5)
    t = wka.elementary_twist([1, 2], lam)
    pi = wka.untwist_isomorphism([1, 2], lam)
    assert wka.check_morphism(t, wka.elementary([1, 2]), pi).passed


def test_fusion_ring_of_group_algebra():
    f = wka.fusion_ring(wka.groupoid_algebra(wka.cyclic_group(3)))
    assert f["report"].passed
    n = np.array(f["multiplicities"])
    assert n.shape == (3, 3, 3)
    assert (n.sum(axis=2) == 1).all()


def test_text_round_trip_is_exact():
    w = wka.elementary([1, 2])
    back = wka.from_text(wka.to_text(w))
    assert np.array_equal(back.coproduct, w.coproduct)
    assert wka.to_text(back) == wka.to_text(w)


def test_errors_are_python_exceptions():
    with pytest.raises(wka.ParseError):
        wka.from_text("not a file")
    with pytest.raises(wka.WkaError):
        wka.elementary_twist([1, 1], np.array([[1, 2], [2, 1]], dtype=complex))
    with pytest.raises(wka.WkaError):
        wka.groupoid("units: e\nmorphisms: e g\ncompose: e e -> e\ninverse: e -> e\n")
