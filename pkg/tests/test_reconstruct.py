"""Frame integration from invariant profiles and surface rebuilding."""

import numpy as np
import pytest

from ruledsurf.errors import DegenerateFError
from ruledsurf.lorentz import inner
from ruledsurf.reconstruct import (
    FrameKind,
    InvariantProfile,
    build_surface,
    generate_similar_family,
    integrate_frenet,
    ode3_residual,
)
from ruledsurf.surfaces import (
    SurfaceType,
    classify,
    developability,
    distribution_parameter,
    frame_field,
    verify_frenet,
)


def profile(f=0.0, kind=FrameKind.TIMELIKE_MINUS, k1=1.0, phi=(0.0, 2.0), **kw):
    return InvariantProfile(f=f, kind=kind, phi_range=phi, k1_of_s=k1, **kw)


# ---------------------------------------------------------------------------
# closed-form solutions for f = 0
# ---------------------------------------------------------------------------

def test_flat_profile_timelike_minus_matches_closed_form():
    F = integrate_frenet(profile(kind=FrameKind.TIMELIKE_MINUS), steps=2000)
    phi = F.u
    np.testing.assert_allclose(
        F.q, np.stack([np.cosh(phi), np.sinh(phi), 0 * phi], axis=-1), atol=1e-12)
    np.testing.assert_allclose(
        F.h, np.stack([np.sinh(phi), np.cosh(phi), 0 * phi], axis=-1), atol=1e-12)
    np.testing.assert_allclose(F.a[:, 2], 1.0, atol=1e-12)
    assert F.surface_type is SurfaceType.NMINUS


def test_flat_profile_timelike_plus_matches_closed_form():
    F = integrate_frenet(profile(kind=FrameKind.TIMELIKE_PLUS), steps=2000)
    phi = F.u
    np.testing.assert_allclose(
        F.q, np.stack([0 * phi, np.cos(phi), np.sin(phi)], axis=-1), atol=1e-12)
    assert F.surface_type is SurfaceType.NPLUS


def test_flat_profile_spacelike_matches_closed_form():
    F = integrate_frenet(profile(kind=FrameKind.SPACELIKE), steps=2000)
    phi = F.u
    np.testing.assert_allclose(
        F.q, np.stack([np.sinh(phi), np.cosh(phi), 0 * phi], axis=-1), atol=1e-12)
    assert F.surface_type is SurfaceType.NTIMES


# ---------------------------------------------------------------------------
# conserved quantities
# ---------------------------------------------------------------------------

def test_frame_stays_on_pseudo_spheres():
    for kind in FrameKind:
        F = integrate_frenet(profile(f=0.4, kind=kind, k1="1 + 0.5*u"), steps=2000)
        np.testing.assert_allclose(inner(F.q, F.q), kind.eps_q, atol=1e-12)
        np.testing.assert_allclose(inner(F.h, F.h), kind.eps_h, atol=1e-12)
        np.testing.assert_allclose(inner(F.a, F.a), kind.eps_a, atol=1e-12)
        np.testing.assert_allclose(inner(F.q, F.h), 0.0, atol=1e-12)
        np.testing.assert_allclose(inner(F.q, F.a), 0.0, atol=1e-12)
        np.testing.assert_allclose(inner(F.h, F.a), 0.0, atol=1e-12)


def test_diagnostics_report_tiny_drift():
    F, diag = integrate_frenet(profile(f="0.5 + 0.2*sin(u)"), steps=2000,
                               return_diagnostics=True)
    assert diag.max_gram_deviation < 1e-12
    assert diag.max_step_drift < 1e-10
    res = verify_frenet(F)
    assert res.max_orthonormality_residual < 1e-12


def test_k2_follows_the_profile():
    F = integrate_frenet(profile(f=0.3, k1=2.0), steps=1000)
    np.testing.assert_allclose(F.k1, 2.0, atol=1e-12)
    np.testing.assert_allclose(F.k2, 0.6, atol=1e-12)
    np.testing.assert_allclose(F.s, F.u / 2.0, atol=1e-12)


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------

def test_integrate_rejects_few_steps():
    with pytest.raises(ValueError):
        integrate_frenet(profile(), steps=8)


def test_integrate_rejects_nonpositive_k1():
    with pytest.raises(ValueError):
        integrate_frenet(profile(k1="1 - u", phi=(0.0, 3.0)), steps=64)


def test_invalid_initial_frame_rejected():
    bad = (np.array([1.0, 0, 0]), np.array([0.1, 1.0, 0]), np.array([0.0, 0, 1]))
    with pytest.raises(ValueError):
        profile(initial_frame=bad)


def test_custom_initial_frame_is_honored():
    b = 0.7
    frame0 = (np.array([np.cosh(b), np.sinh(b), 0.0]),
              np.array([np.sinh(b), np.cosh(b), 0.0]),
              np.array([0.0, 0.0, 1.0]))
    F = integrate_frenet(profile(initial_frame=frame0), steps=2000)
    phi = F.u + b
    np.testing.assert_allclose(
        F.q, np.stack([np.cosh(phi), np.sinh(phi), 0 * phi], axis=-1), atol=1e-11)


def test_bad_phi_range_rejected():
    with pytest.raises(ValueError):
        profile(phi=(1.0, 1.0))


# ---------------------------------------------------------------------------
# third-order ruling ODE residual
# ---------------------------------------------------------------------------

def test_ode_residual_small_and_fourth_order():
    # The convergence order is measured on coarse grids: past ~256 steps the
    # residual sits on the 1/h^3 rounding floor of the third-derivative
    # stencil, so refinement cannot reduce it further.
    for f in (0.5, "1 + 0.1*sin(u)"):
        p = profile(f=f)
        residuals = {}
        for steps in (32, 64, 128, 2000):
            F = integrate_frenet(p, steps=steps)
            residuals[steps] = ode3_residual(F, f)
        assert residuals[2000] < 1e-4, f
        for coarse, fine in ((32, 64), (64, 128)):
            order = np.log2(residuals[coarse] / residuals[fine])
            assert order > 3.5, (f, residuals)


def test_ode_residual_spacelike_kind():
    F = integrate_frenet(profile(f=0.7, kind=FrameKind.SPACELIKE), steps=2000)
    assert ode3_residual(F, 0.7) < 1e-4


def test_ode_residual_needs_nonvanishing_f():
    F = integrate_frenet(profile(f=0.0), steps=200)
    with pytest.raises(DegenerateFError):
        ode3_residual(F, 0.0)


# ---------------------------------------------------------------------------
# surface rebuilding
# ---------------------------------------------------------------------------

def test_round_trip_recovers_curvatures():
    p = profile(f=0.3, k1="1 + u")
    F = integrate_frenet(p, steps=1000)
    spec = build_surface(F, mode="developable", name="round-trip")
    G = frame_field(spec)
    k1_expected = 1.0 + G.s
    np.testing.assert_allclose(G.k1 / k1_expected, 1.0, atol=1e-4)
    np.testing.assert_allclose(G.k2 / (0.3 * k1_expected), 1.0, atol=1e-4)
    assert developability(spec).developable


def test_angle_zero_build_equals_developable_build():
    F = integrate_frenet(profile(f=0.3), steps=500)
    dev = build_surface(F, mode="developable")
    ang = build_surface(F, mode="angle", theta=0.0)
    u = dev.grid(32)
    np.testing.assert_allclose(dev.base.position(u), ang.base.position(u),
                               atol=1e-12)


def test_angle_build_is_not_developable():
    F = integrate_frenet(profile(f=0.3), steps=1000)
    spec = build_surface(F, mode="angle", theta=0.3)
    rep = developability(spec)
    assert not rep.developable
    # recovered tilt angle is the one we built with
    np.testing.assert_allclose(rep.theta[:, 1], 0.3, atol=1e-6)
    # and the distribution parameter is consistent with it
    delta = distribution_parameter(spec, spec.grid())
    np.testing.assert_allclose(rep.d_profile[:, 1], delta, atol=1e-6)


def test_angle_accepts_expression():
    F = integrate_frenet(profile(f=0.3), steps=500)
    spec = build_surface(F, mode="angle", theta="0.1*u")
    rep = developability(spec)
    np.testing.assert_allclose(rep.theta[:, 1], 0.1 * rep.theta[:, 0], atol=1e-5)


def test_build_surface_validates_mode_and_theta():
    F = integrate_frenet(profile(), steps=100)
    with pytest.raises(ValueError):
        build_surface(F, mode="angle")
    with pytest.raises(ValueError):
        build_surface(F, mode="nope")


def test_generate_similar_family_members():
    members = generate_similar_family(0.3, FrameKind.TIMELIKE_MINUS,
                                      [1.0, 2.0, "1 + u"], steps=500)
    assert len(members) == 3
    for spec in members:
        assert classify(spec) is SurfaceType.NMINUS
        assert developability(spec).developable
