"""Ruled-surface analysis: striction, frames, curvatures, developability."""

import dataclasses

import numpy as np
import pytest

from ruledsurf import corpus
from ruledsurf.errors import (
    CylindricalRulingError,
    NullTransitionError,
    SingularPointError,
)
from ruledsurf.lorentz import inner
from ruledsurf.surfaces import (
    RuledSurfaceSpec,
    SurfaceType,
    classify,
    developability,
    distribution_parameter,
    frame_field,
    frame_segments,
    is_torsal_ruling,
    striction_curve,
    surface_normal,
    surface_point,
    verify_frenet,
)


# ---------------------------------------------------------------------------
# the three closed-form frame surfaces
# ---------------------------------------------------------------------------

def test_nminus_frame_is_exact():
    F = frame_field(corpus.conoid_nminus())
    u = F.u
    ch, sh, z = np.cosh(u), np.sinh(u), np.zeros_like(u)
    np.testing.assert_allclose(F.q, np.stack([ch, sh, z], axis=-1), atol=1e-12)
    np.testing.assert_allclose(F.h, np.stack([sh, ch, z], axis=-1), atol=1e-10)
    np.testing.assert_allclose(F.a, np.stack([z, z, z + 1], axis=-1), atol=1e-10)
    np.testing.assert_allclose(F.k1, 1.0, atol=1e-10)
    np.testing.assert_allclose(F.k2, 0.0, atol=1e-10)
    assert F.surface_type is SurfaceType.NMINUS
    assert (F.eps_q, F.eps_h, F.eps_a) == (-1, 1, 1)
    assert F.is_timelike_surface


def test_nplus_frame_is_exact():
    F = frame_field(corpus.h1())
    u = F.u
    c, s, z = np.cos(u), np.sin(u), np.zeros_like(u)
    np.testing.assert_allclose(F.q, np.stack([z, c, s], axis=-1), atol=1e-12)
    np.testing.assert_allclose(F.h, np.stack([z, -s, c], axis=-1), atol=1e-10)
    np.testing.assert_allclose(F.a, np.stack([z + 1, z, z], axis=-1), atol=1e-10)
    np.testing.assert_allclose(F.k1, 1.0, atol=1e-10)
    np.testing.assert_allclose(F.k2, 0.0, atol=1e-10)
    assert F.surface_type is SurfaceType.NPLUS
    assert (F.eps_q, F.eps_h, F.eps_a) == (1, 1, -1)
    assert F.is_timelike_surface


def test_ntimes_frame_is_exact():
    F = frame_field(corpus.conoid_ntimes())
    u = F.u
    ch, sh, z = np.cosh(u), np.sinh(u), np.zeros_like(u)
    np.testing.assert_allclose(F.q, np.stack([sh, ch, z], axis=-1), atol=1e-12)
    np.testing.assert_allclose(F.h, np.stack([ch, sh, z], axis=-1), atol=1e-10)
    np.testing.assert_allclose(F.a, np.stack([z, z, z - 1], axis=-1), atol=1e-10)
    np.testing.assert_allclose(F.k1, 1.0, atol=1e-10)
    np.testing.assert_allclose(F.k2, 0.0, atol=1e-10)
    assert F.surface_type is SurfaceType.NTIMES
    assert (F.eps_q, F.eps_h, F.eps_a) == (1, -1, 1)
    assert not F.is_timelike_surface


def test_frenet_residuals_small_on_corpus():
    for spec in corpus.analytic_surfaces():
        res = verify_frenet(frame_field(spec))
        assert res.max_ode_residual < 1e-6, spec.name
        assert res.max_identity_residual < 1e-6, spec.name
        assert res.max_orthonormality_residual < 1e-6, spec.name


def test_frenet_detects_corruption():
    frame = frame_field(corpus.conoid_nminus())
    bad = dataclasses.replace(frame, h=frame.h * 1.01)
    res = verify_frenet(bad)
    worst = max(res.max_ode_residual, res.max_identity_residual,
                res.max_orthonormality_residual)
    assert worst > 1e-3


# ---------------------------------------------------------------------------
# striction curve
# ---------------------------------------------------------------------------

def test_striction_of_conoid_is_the_axis():
    spec = corpus.conoid_nminus()
    c = striction_curve(spec)
    u = spec.grid(64)
    np.testing.assert_allclose(
        c.position(u), np.stack([0 * u, 0 * u, u], axis=-1), atol=1e-12)


def test_striction_of_hyperboloid_is_the_circle():
    spec = corpus.hyperboloid()
    c = striction_curve(spec)
    u = spec.grid(64)
    np.testing.assert_allclose(
        c.position(u), np.stack([0 * u, np.cos(u), np.sin(u)], axis=-1),
        atol=1e-12)


def test_striction_of_tangent_developable_is_the_edge():
    spec = corpus.tangent_developable_timelike()
    c = striction_curve(spec)
    u = spec.grid(64)
    np.testing.assert_allclose(c.position(u), spec.base.position(u), atol=1e-12)


def test_striction_velocity_orthogonal_to_ruling_turn():
    for spec in corpus.analytic_surfaces():
        u = spec.grid(64)
        c = striction_curve(spec)
        dev = np.max(np.abs(inner(c.d1(u), spec.ruling.d1(u))))
        assert dev < 1e-9, spec.name


# ---------------------------------------------------------------------------
# surface map and normal
# ---------------------------------------------------------------------------

def test_surface_point_broadcasts():
    spec = corpus.h1()
    u = np.linspace(0.0, 2.0, 5)
    v = np.linspace(-1.0, 1.0, 3)
    pts = surface_point(spec, u[:, None], v[None, :])
    assert pts.shape == (5, 3, 3)
    np.testing.assert_allclose(pts[:, 2, 0], u, atol=1e-15)


def test_surface_normal_is_orthogonal_at_regular_point():
    spec = corpus.h1()
    n = surface_normal(spec, 0.0, 0.5)
    # tangents at (0, 0.5): phi_u = (1, 0, 0.5), phi_v = (0, 1, 0)
    assert inner(n, np.array([1.0, 0.0, 0.5])) == pytest.approx(0.0, abs=1e-12)
    assert inner(n, np.array([0.0, 1.0, 0.0])) == pytest.approx(0.0, abs=1e-12)
    assert abs(inner(n, n)) == pytest.approx(1.0, abs=1e-12)


def test_surface_normal_singular_where_cross_is_null():
    # on H1 at v = 1 the u-tangent (1, 0, 1) makes the cross product null
    with pytest.raises(SingularPointError):
        surface_normal(corpus.h1(), 0.0, 1.0)


def test_limit_normal_approaches_asymptotic_normal():
    spec = corpus.hyperboloid()
    F = frame_field(spec)
    i = F.sample_count // 2
    for v in (1e3, 1e4):
        n = surface_normal(spec, F.u[i], v)
        n = n / np.linalg.norm(n)
        a = F.a[i] / np.linalg.norm(F.a[i])
        dist = min(np.linalg.norm(n - a), np.linalg.norm(n + a))
        assert dist < 10.0 / v


# ---------------------------------------------------------------------------
# distribution parameter and developability
# ---------------------------------------------------------------------------

def test_distribution_parameter_of_h1():
    u = np.linspace(0.0, 2.0, 33)
    np.testing.assert_allclose(distribution_parameter(corpus.h1(), u), -1.0,
                               atol=1e-12)


def test_torsal_rulings():
    u = np.linspace(0.3, 2.2, 17)
    assert np.all(is_torsal_ruling(corpus.tangent_developable_timelike(), u))
    assert not np.any(is_torsal_ruling(corpus.h1(), u))


def test_developability_corpus_verdicts():
    for spec, expected in corpus.developability_corpus():
        rep = developability(spec)
        assert rep.developable == expected, spec.name
        delta = distribution_parameter(spec, spec.grid())
        assert (np.max(np.abs(delta)) <= 1e-6) == expected, spec.name


def test_theta_profile_consistent_with_delta():
    for spec, _ in corpus.developability_corpus():
        rep = developability(spec)
        delta = distribution_parameter(spec, spec.grid())
        np.testing.assert_allclose(rep.d_profile[:, 1], delta, atol=1e-6,
                                   err_msg=spec.name)
        if rep.theta is not None:
            assert rep.theta.shape == rep.d_profile.shape


def test_character_mismatch_reported_not_raised():
    rep = developability(corpus.h1())
    assert rep.character_mismatch
    assert rep.theta is None
    assert not rep.developable


def test_developable_report_of_tangent_surface():
    rep = developability(corpus.tangent_developable_timelike())
    assert rep.developable
    assert not rep.character_mismatch
    np.testing.assert_allclose(rep.theta[:, 1], 0.0, atol=1e-9)
    assert rep.max_ruling_deviation < 1e-9


# ---------------------------------------------------------------------------
# classification
# ---------------------------------------------------------------------------

def test_classify_all_types():
    assert classify(corpus.conoid_nminus()) is SurfaceType.NMINUS
    assert classify(corpus.h1()) is SurfaceType.NPLUS
    assert classify(corpus.conoid_ntimes()) is SurfaceType.NTIMES
    assert classify(corpus.cylinder_circular()) is SurfaceType.CYLINDRICAL


def test_cylinder_has_no_frame():
    with pytest.raises(CylindricalRulingError):
        frame_field(corpus.cylinder_circular())
    with pytest.raises(CylindricalRulingError):
        distribution_parameter(corpus.cylinder_circular(), np.array([0.5]))


def test_null_transitions_rejected():
    # ruling crosses the null cone at u = 1
    with pytest.raises(NullTransitionError):
        RuledSurfaceSpec.from_exprs(("0", "0", "u"), ("u", "1", "0"), 0.5, 1.5)
    # striction velocity changes character along the interval
    spec = RuledSurfaceSpec.from_exprs(("sinh(u)", "cosh(u)", "0"),
                                       ("0", "cos(u)", "sin(u)"), 0.0, 2.0)
    with pytest.raises(NullTransitionError):
        frame_field(spec)


def test_frame_segments_of_clean_surface_is_single_run():
    spec = corpus.hyperboloid()
    segs = frame_segments(spec)
    F = frame_field(spec)
    assert len(segs) == 1
    np.testing.assert_array_equal(segs[0].q, F.q)
    np.testing.assert_array_equal(segs[0].k1, F.k1)
