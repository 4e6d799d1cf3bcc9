"""Runnable invariant suite: every library-level guarantee as a named check.

`run_builtin_suite` sweeps the example corpus; `run_surface_checks` applies
the per-surface subset to one user-supplied surface.  Each check carries its
measured value and tolerance so failures are self-explaining.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass

import numpy as np

from . import corpus
from .lorentz import euclid_sq, inner, norm
from .numeric import fd_derivative, integral
from .reconstruct import (FrameKind, InvariantProfile, integrate_frenet,
                          ode3_residual)
from .surfaces import (RuledSurfaceSpec, SurfaceType, classify, developability,
                       distribution_parameter, frame_field, striction_curve,
                       surface_normal, verify_frenet)

FRAME_TOL = 1e-6
IMAGE_TOL = 1e-5
ORTHO_TOL = 1e-8
LIMIT_NORMAL_V = 1e4
LIMIT_NORMAL_TOL = 2e-3
ODE_RESIDUAL_TOL = 1e-4


@dataclass(frozen=True)
class VerifyCheck:
    name: str
    passed: bool
    measured: float
    tolerance: float
    detail: str = ""


def _check(name: str, measured: float, tolerance: float, detail: str = "") -> VerifyCheck:
    return VerifyCheck(name=name, passed=bool(measured <= tolerance),
                       measured=float(measured), tolerance=float(tolerance),
                       detail=detail)


def _frenet_check(spec: RuledSurfaceSpec, corrupt: bool = False) -> VerifyCheck:
    frame = frame_field(spec)
    if corrupt:
        frame = dataclasses.replace(frame, h=frame.h * 1.001)
    res = verify_frenet(frame)
    worst = max(res.max_ode_residual, res.max_identity_residual,
                res.max_orthonormality_residual)
    return _check(f"frame-identities/{spec.name}", worst, FRAME_TOL)


def _image_checks(spec: RuledSurfaceSpec) -> list[VerifyCheck]:
    frame = frame_field(spec)
    q_len = integral(frame.s, norm(fd_derivative(frame.s, frame.q, 1)))
    a_len = integral(frame.s, norm(fd_derivative(frame.s, frame.a, 1)))
    return [
        _check(f"ruling-image-length/{spec.name}",
               abs(q_len - integral(frame.s, frame.k1)), IMAGE_TOL,
               "arc length of the ruling's spherical image vs the k1 integral"),
        _check(f"asymptotic-image-length/{spec.name}",
               abs(a_len - integral(frame.s, np.abs(frame.k2))), IMAGE_TOL,
               "arc length of the asymptotic normal's image vs the |k2| integral"),
    ]


def _striction_check(spec: RuledSurfaceSpec) -> VerifyCheck:
    u = spec.grid()
    c = striction_curve(spec)
    dev = float(np.max(np.abs(inner(c.d1(u), spec.ruling.d1(u)))))
    return _check(f"striction-orthogonality/{spec.name}", dev, ORTHO_TOL,
                  "striction velocity is metric-orthogonal to the ruling's turn")


def _limit_normal_check(spec: RuledSurfaceSpec) -> VerifyCheck:
    frame = frame_field(spec)
    idx = np.arange(2, frame.sample_count - 2, max(1, frame.sample_count // 16))
    u = frame.u[idx]
    n = surface_normal(spec, u, LIMIT_NORMAL_V)
    n = n / np.sqrt(euclid_sq(n))[..., None]
    a = frame.a[idx]
    a = a / np.sqrt(euclid_sq(a))[..., None]
    dist = np.minimum(np.sqrt(euclid_sq(n - a)), np.sqrt(euclid_sq(n + a)))
    return _check(f"limit-normal/{spec.name}", float(np.max(dist)),
                  LIMIT_NORMAL_TOL,
                  "unit surface normal far along the ruling aligns with the "
                  "asymptotic normal")


def _developability_checks(spec: RuledSurfaceSpec, expected: bool | None = None
                           ) -> list[VerifyCheck]:
    rep = developability(spec)
    delta = distribution_parameter(spec, spec.grid())
    by_delta = bool(np.max(np.abs(delta)) <= 1e-6)
    checks = [VerifyCheck(
        name=f"developability-agreement/{spec.name}",
        passed=by_delta == rep.developable and
               (expected is None or rep.developable == expected),
        measured=float(np.max(np.abs(delta))),
        tolerance=1e-6,
        detail="ruling-vs-tangent verdict agrees with the distribution parameter")]
    if rep.theta is not None:
        dev = float(np.max(np.abs(rep.d_profile[:, 1] - delta)))
        checks.append(_check(f"angle-vs-distribution/{spec.name}", dev, 1e-6,
                             "the tilt-angle recovery of d matches delta"))
    return checks


def _ode_residual_checks() -> list[VerifyCheck]:
    checks = []
    for label, f in (("constant", 0.5), ("oscillating", "1 + 0.1*sin(u)")):
        profile = InvariantProfile(f=f, kind=FrameKind.TIMELIKE_MINUS,
                                   phi_range=(0.0, 2.0))
        frame = integrate_frenet(profile, steps=2000)
        res = ode3_residual(frame, profile.f_fn)
        checks.append(_check(f"frame-ode-residual/{label}", res, ODE_RESIDUAL_TOL,
                             "third-order ruling ODE residual of the "
                             "integrated frame"))
    return checks


def run_builtin_suite(corrupt_frame: bool = False) -> list[VerifyCheck]:
    """Every invariant of the library on the example corpus.

    `corrupt_frame` is a test hook: it perturbs one frame's central normal
    before checking so the corresponding named invariant must fail.
    """
    checks: list[VerifyCheck] = []
    analytic = corpus.analytic_surfaces()
    for i, spec in enumerate(analytic):
        checks.append(_frenet_check(spec, corrupt=corrupt_frame and i == 0))
        checks.extend(_image_checks(spec))
        checks.append(_striction_check(spec))
    for spec in analytic:
        if not developability(spec).developable:
            checks.append(_limit_normal_check(spec))
    for spec, expected in corpus.developability_corpus():
        checks.extend(_developability_checks(spec, expected))
    checks.extend(_ode_residual_checks())
    return checks


def run_surface_checks(spec: RuledSurfaceSpec) -> list[VerifyCheck]:
    """The per-surface subset of the suite for one user-supplied surface."""
    if classify(spec) is SurfaceType.CYLINDRICAL:
        return [VerifyCheck(name=f"cylindrical/{spec.name or 'surface'}",
                            passed=True, measured=0.0, tolerance=0.0,
                            detail="constant ruling: frame checks not applicable")]
    checks = [_frenet_check(spec)]
    checks.extend(_image_checks(spec))
    checks.append(_striction_check(spec))
    checks.extend(_developability_checks(spec))
    if not developability(spec).developable:
        checks.append(_limit_normal_check(spec))
    return checks
