"""Named example surfaces used by the verification suite, tests, and demos.

Everything here is constructed so that its geometry is known in closed form
(or by construction, for the reconstructed surfaces): exact frame vectors,
curvatures, developability verdicts, and similarity relations.
"""

from __future__ import annotations

import numpy as np
from scipy.integrate import cumulative_simpson
from scipy.interpolate import PchipInterpolator

from .curves import CallableCurve, ExprCurve
from .reconstruct import FrameKind, InvariantProfile, build_surface, integrate_frenet
from .surfaces import RuledSurfaceSpec


def h1() -> RuledSurfaceSpec:
    """Helicoid-like conoid: straight timelike axis with a rotating spacelike
    ruling.  Type NPlus, k1 = 1, k2 = 0, delta = -1 (not developable)."""
    return RuledSurfaceSpec.from_exprs(
        ("u", "0", "0"), ("0", "cos(u)", "sin(u)"), 0.0, 2.0, name="H1")


def h1_shifted(offset: float = 2.0) -> RuledSurfaceSpec:
    """H1 translated along x3; same invariants as H1."""
    return RuledSurfaceSpec.from_exprs(
        ("u", "0", str(offset)), ("0", "cos(u)", "sin(u)"), 0.0, 2.0,
        name="H1-shifted")


def conoid_nminus() -> RuledSurfaceSpec:
    """Conoid with timelike ruling: type NMinus, k1 = 1, k2 = 0."""
    return RuledSurfaceSpec.from_exprs(
        ("0", "0", "u"), ("cosh(u)", "sinh(u)", "0"), 0.0, 2.0, name="conoid-nminus")


def conoid_ntimes() -> RuledSurfaceSpec:
    """Conoid with spacelike ruling and timelike central normal: type NTimes,
    k1 = 1, k2 = 0."""
    return RuledSurfaceSpec.from_exprs(
        ("0", "0", "u"), ("sinh(u)", "cosh(u)", "0"), 0.0, 2.0, name="conoid-ntimes")


def hyperboloid() -> RuledSurfaceSpec:
    """Ruled surface over a spacelike circle with a tilted ruling; type NPlus
    with nonvanishing k2, not developable."""
    return RuledSurfaceSpec.from_exprs(
        ("0", "cos(u)", "sin(u)"), ("0.5", "-sin(u)", "cos(u)"), 0.0, 2.0,
        name="hyperboloid")


def cylinder_circular() -> RuledSurfaceSpec:
    """Constant timelike ruling over a spacelike circle (Cylindrical)."""
    return RuledSurfaceSpec.from_exprs(
        ("0", "cos(u)", "sin(u)"), ("1", "0", "0"), 0.0, 2.0, name="cylinder-circular")


def cylinder_flat() -> RuledSurfaceSpec:
    """Constant timelike ruling over a straight spacelike line (a plane)."""
    return RuledSurfaceSpec.from_exprs(
        ("0", "u", "0"), ("1", "0", "0"), 0.0, 2.0, name="cylinder-flat")


def tangent_developable_timelike() -> RuledSurfaceSpec:
    """Tangent developable of the unit-speed timelike curve (sinh u, cosh u, 0);
    the ruling is the curve's own tangent, so the surface is developable."""
    return RuledSurfaceSpec.from_exprs(
        ("sinh(u)", "cosh(u)", "0"), ("cosh(u)", "sinh(u)", "0"),
        0.25, 2.25, name="td-timelike")


def tangent_developable_spacelike() -> RuledSurfaceSpec:
    """Tangent developable of the unit-speed spacelike curve (cosh u, sinh u, 0)."""
    return RuledSurfaceSpec.from_exprs(
        ("cosh(u)", "sinh(u)", "0"), ("sinh(u)", "cosh(u)", "0"),
        0.25, 2.25, name="td-spacelike")


def tangent_developable_disjoint() -> RuledSurfaceSpec:
    """Tangent developable whose tangent image lies in the x1-x3 plane, disjoint
    from the image of td-timelike; used as the negative pair for the
    developable-similarity check."""
    return RuledSurfaceSpec.from_exprs(
        ("sinh(u)", "0", "cosh(u)"), ("cosh(u)", "0", "sinh(u)"),
        0.25, 2.25, name="td-disjoint")


def tangent_developable_quadratic(samples: int = 4001) -> RuledSurfaceSpec:
    """Tangent developable of the timelike curve whose tangent angle grows as
    t^2 for t in [0.5, 1.5].  The base position has no elementary closed form
    and is carried by a monotone interpolant of a fine quadrature table; all
    derivatives are exact.  Its striction curve is similar to that of
    td-timelike with rate lambda(t) = 2t."""
    tt = np.linspace(0.5, 1.5, samples)
    pos = np.column_stack([
        cumulative_simpson(np.cosh(tt ** 2), x=tt, initial=0.0),
        cumulative_simpson(np.sinh(tt ** 2), x=tt, initial=0.0),
        np.zeros_like(tt),
    ])
    pos_interp = PchipInterpolator(tt, pos, axis=0)

    def d1(t):
        t = np.asarray(t, dtype=float)
        return np.stack([np.cosh(t ** 2), np.sinh(t ** 2), np.zeros_like(t)], axis=-1)

    def d2(t):
        t = np.asarray(t, dtype=float)
        return np.stack([2 * t * np.sinh(t ** 2), 2 * t * np.cosh(t ** 2),
                         np.zeros_like(t)], axis=-1)

    def d3(t):
        t = np.asarray(t, dtype=float)
        return np.stack([2 * np.sinh(t ** 2) + 4 * t ** 2 * np.cosh(t ** 2),
                         2 * np.cosh(t ** 2) + 4 * t ** 2 * np.sinh(t ** 2),
                         np.zeros_like(t)], axis=-1)

    base = CallableCurve(lambda t: pos_interp(t), d1=d1, d2=d2, d3=d3,
                         u_min=0.5, u_max=1.5)
    ruling = ExprCurve(("cosh(u^2)", "sinh(u^2)", "0"), 0.5, 1.5)
    return RuledSurfaceSpec(base, ruling, name="td-quadratic")


def angle_surface(theta: float = 0.3, kind: FrameKind = FrameKind.TIMELIKE_MINUS,
                  f: float = 0.3, steps: int = 2000) -> RuledSurfaceSpec:
    """Non-developable surface built from an integrated frame by tilting the
    striction tangent a constant angle theta away from the ruling."""
    frame = integrate_frenet(
        InvariantProfile(f=f, kind=kind, phi_range=(0.0, 2.0)), steps=steps)
    name = "angle-" + kind.name.lower().replace("_", "-")
    return build_surface(frame, mode="angle", theta=theta, name=name)


def developability_corpus() -> list[tuple[RuledSurfaceSpec, bool]]:
    """Ten surfaces with known developability: three developable by
    construction (tangent developables) and seven that are not."""
    return [
        (tangent_developable_timelike(), True),
        (tangent_developable_spacelike(), True),
        (tangent_developable_quadratic(), True),
        (h1(), False),
        (h1_shifted(), False),
        (conoid_nminus(), False),
        (conoid_ntimes(), False),
        (hyperboloid(), False),
        (angle_surface(kind=FrameKind.TIMELIKE_MINUS), False),
        (angle_surface(kind=FrameKind.SPACELIKE), False),
    ]


def analytic_surfaces() -> list[RuledSurfaceSpec]:
    """Closed-form surfaces whose frames exist everywhere; the list used for
    the integral and identity sweeps of the verification suite."""
    return [
        conoid_nminus(),
        h1(),
        conoid_ntimes(),
        hyperboloid(),
        tangent_developable_timelike(),
        tangent_developable_spacelike(),
    ]
