"""Similarity of ruled surfaces: invariant profiles, lambda tables, the
developable theorem, and family detection."""

import dataclasses

import numpy as np
import pytest
from scipy.interpolate import PchipInterpolator

from ruledsurf.corpus import (
    conoid_ntimes,
    cylinder_circular,
    cylinder_flat,
    h1,
    h1_shifted,
    hyperboloid,
    tangent_developable_disjoint,
    tangent_developable_quadratic,
    tangent_developable_timelike,
)
from ruledsurf.errors import (
    DegenerateK1Error,
    KindMismatchError,
    NotDevelopableError,
)
from ruledsurf.reconstruct import FrameKind, InvariantProfile, integrate_frenet
from ruledsurf.similarity import (
    SimilarityMode,
    are_similar_ruled,
    check_developable_similarity,
    curvature_ratio_profile,
    family_check,
    total_curvature_param,
)
from ruledsurf.surfaces import frame_field


def frame_for(f, k1, steps=2000, phi_range=(0.0, 2.0),
              kind=FrameKind.TIMELIKE_MINUS):
    return integrate_frenet(
        InvariantProfile(f=f, kind=kind, phi_range=phi_range, k1_of_s=k1),
        steps=steps)


@pytest.fixture(scope="module")
def f1():
    return frame_for(0.3, 1.0)


@pytest.fixture(scope="module")
def f2():
    return frame_for(0.3, 2.0)


@pytest.fixture(scope="module")
def fv():
    return frame_for(0.3, "1 + u")


# ---------------------------------------------------------------------------
# total-curvature parameter and the invariant profile
# ---------------------------------------------------------------------------

def test_total_curvature_parameter(f1):
    tab = total_curvature_param(f1)
    np.testing.assert_allclose(tab.phi, tab.s, atol=1e-9)  # k1 == 1
    tab3 = total_curvature_param(frame_for(0.3, 3.0, phi_range=(0.0, 3.0)))
    assert tab3.total == pytest.approx(3.0, abs=1e-9)
    assert tab3.s[-1] == pytest.approx(1.0, abs=1e-9)


def test_curvature_ratio_profile_is_f(f1):
    prof = curvature_ratio_profile(f1)
    np.testing.assert_allclose(prof.f, 0.3, atol=1e-9)
    assert prof.phi[0] == pytest.approx(0.0)
    assert np.all(np.diff(prof.phi) > 0)


def test_degenerate_k1_rejected(f1):
    broken = dataclasses.replace(f1, k1=np.zeros_like(f1.k1))
    with pytest.raises(DegenerateK1Error):
        total_curvature_param(broken)


# ---------------------------------------------------------------------------
# constant-k1 family
# ---------------------------------------------------------------------------

def test_constant_family_full_definition(f1, f2):
    rep = are_similar_ruled(f1, f2, mode=SimilarityMode.BY_DEFINITION)
    assert rep.is_similar
    assert rep.mode is SimilarityMode.BY_DEFINITION
    np.testing.assert_allclose(rep.lambda_table[:, 1], 2.0, atol=1e-5)
    assert rep.lambda_consistency < 1e-5
    assert rep.ruling_deviation < 1e-5
    assert rep.central_normal_deviation < 1e-5
    assert rep.asymptotic_normal_sign == 1


def test_similarity_is_reflexive(f1):
    rep = are_similar_ruled(f1, f1)
    assert rep.is_similar
    np.testing.assert_allclose(rep.lambda_table[:, 1], 1.0, atol=1e-9)


def test_swapping_sides_inverts_lambda(f1, f2):
    rep = are_similar_ruled(f2, f1)
    assert rep.is_similar
    np.testing.assert_allclose(rep.lambda_table[:, 1], 0.5, atol=1e-5)


def test_variable_k1_lambda_profile(f1, fv):
    rep = are_similar_ruled(f1, fv)
    assert rep.is_similar
    s_beta = rep.lambda_table[:, 0]
    np.testing.assert_allclose(rep.lambda_table[:, 1], 1.0 + s_beta, atol=1e-4)


def test_lambda_composes_transitively(f1, f2, fv):
    rep_ac = are_similar_ruled(f1, fv)
    rep_bc = are_similar_ruled(f2, fv)
    lam_ac = PchipInterpolator(rep_ac.lambda_table[:, 0],
                               rep_ac.lambda_table[:, 1])
    s_c = rep_bc.lambda_table[:, 0]
    composed = 2.0 * rep_bc.lambda_table[:, 1]  # lambda(A->B) == 2 everywhere
    np.testing.assert_allclose(composed, lam_ac(s_c), atol=1e-5)


def test_string_mode_accepted(f1, f2):
    rep = are_similar_ruled(f1, f2, mode="ByInvariants")
    assert rep.mode is SimilarityMode.BY_INVARIANTS
    assert np.isnan(rep.ruling_deviation)  # only computed ByDefinition


# ---------------------------------------------------------------------------
# rejection and mismatches
# ---------------------------------------------------------------------------

def test_different_f_profiles_rejected(f1):
    rep = are_similar_ruled(f1, frame_for(0.6, 1.0))
    assert not rep.is_similar
    assert rep.f_profile_deviation == pytest.approx(0.3, abs=1e-3)


def test_kind_mismatch_raises(f1):
    for kind in (FrameKind.TIMELIKE_PLUS, FrameKind.SPACELIKE):
        with pytest.raises(KindMismatchError):
            are_similar_ruled(f1, frame_for(0.3, 1.0, kind=kind))


def test_conoid_pair_k2_check_is_vacuous():
    rep = are_similar_ruled(frame_field(h1()), frame_field(h1_shifted()),
                            mode=SimilarityMode.BY_DEFINITION)
    assert rep.is_similar
    assert rep.lambda_consistency == 0.0
    assert any("vacuous" in note for note in rep.notes)


def test_phi_offset_search():
    base = frame_for("0.5 + 0.2*sin(u)", 1.0)
    shifted = frame_for("0.5 + 0.2*sin(u + 0.4)", 1.0)
    assert not are_similar_ruled(base, shifted).is_similar
    rep = are_similar_ruled(base, shifted, phi_offset_search=True)
    assert rep.is_similar


# ---------------------------------------------------------------------------
# developable surfaces: similar surfaces <-> similar striction curves
# ---------------------------------------------------------------------------

def test_tangent_developable_pair_theorem():
    alpha = tangent_developable_timelike()
    beta = tangent_developable_quadratic()
    rep = check_developable_similarity(alpha, beta)
    assert rep.surfaces_similar
    assert rep.striction_curves_similar
    assert rep.theorem_holds
    assert rep.hypothesis_character_ok

    lam = are_similar_ruled(frame_field(alpha), frame_field(beta),
                            mode=SimilarityMode.BY_DEFINITION).lambda_table
    t = lam[:, 0] + 0.5  # beta arc length starts at t = 0.5
    np.testing.assert_allclose(lam[:, 1], 2.0 * t, atol=1e-3)


def test_disjoint_indicatrices_fail_both_ways():
    rep = check_developable_similarity(tangent_developable_timelike(),
                                       tangent_developable_disjoint())
    assert not rep.surfaces_similar
    assert not rep.striction_curves_similar
    assert rep.theorem_holds


def test_theorem_check_requires_developable_inputs():
    with pytest.raises(NotDevelopableError):
        check_developable_similarity(tangent_developable_timelike(),
                                     hyperboloid())


# ---------------------------------------------------------------------------
# families
# ---------------------------------------------------------------------------

def test_conoid_family():
    rep = family_check([h1(), h1_shifted()])
    assert rep.family == "Conoid"
    assert rep.kind == "timelike"


def test_cylindrical_family():
    rep = family_check([cylinder_circular(), cylinder_flat()])
    assert rep.family == "Cylindrical"
    assert rep.kind == "timelike"


def test_mixed_kinds_have_no_family():
    rep = family_check([h1(), conoid_ntimes()])
    assert rep.family is None
    assert rep.kind == "mixed"


def test_cylinder_with_framed_surface_has_no_family():
    assert family_check([h1(), cylinder_circular()]).family is None
