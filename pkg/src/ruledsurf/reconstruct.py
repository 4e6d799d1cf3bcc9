"""Frame integration and surface reconstruction from invariants.

Given the invariant profile f = k2/k1 of a ruled surface (as a function of
the total-curvature parameter phi) plus a kind and an initial frame, this
module integrates the phi-parametrized frame system with fixed-step RK4,
re-orthonormalizing with the Minkowski metric after every step, recovers the
striction arc length s, rebuilds surfaces, and generates families of similar
surfaces for testing.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import cumulative_trapezoid
from scipy.interpolate import PchipInterpolator

from . import exprdsl
from .curves import SampledCurve
from .errors import (
    CharacterViolationError,
    DegenerateFError,
    FrameDegenerationError,
)
from .lorentz import inner, lorentz_cross
from .numeric import fd_derivative
from .surfaces import FrameField, RuledSurfaceSpec, SurfaceType

F_DEGENERATE_TOL = 1e-6


class FrameKind(enum.Enum):
    """Surface kind for integration: timelike surfaces with eps = <q,q> = +1
    or -1, or spacelike surfaces (h timelike)."""

    TIMELIKE_PLUS = "timelike+"
    TIMELIKE_MINUS = "timelike-"
    SPACELIKE = "spacelike"

    @property
    def eps_q(self) -> int:
        return {FrameKind.TIMELIKE_PLUS: 1, FrameKind.TIMELIKE_MINUS: -1,
                FrameKind.SPACELIKE: 1}[self]

    @property
    def eps_h(self) -> int:
        return -1 if self is FrameKind.SPACELIKE else 1

    @property
    def eps_a(self) -> int:
        return -self.eps_q * self.eps_h

    @property
    def surface_type(self) -> SurfaceType:
        return {FrameKind.TIMELIKE_PLUS: SurfaceType.NPLUS,
                FrameKind.TIMELIKE_MINUS: SurfaceType.NMINUS,
                FrameKind.SPACELIKE: SurfaceType.NTIMES}[self]


_CANONICAL_FRAMES = {
    FrameKind.TIMELIKE_MINUS: (np.array([1.0, 0.0, 0.0]),
                               np.array([0.0, 1.0, 0.0]),
                               np.array([0.0, 0.0, 1.0])),
    FrameKind.TIMELIKE_PLUS: (np.array([0.0, 1.0, 0.0]),
                              np.array([0.0, 0.0, 1.0]),
                              np.array([1.0, 0.0, 0.0])),
    FrameKind.SPACELIKE: (np.array([0.0, 1.0, 0.0]),
                          np.array([1.0, 0.0, 0.0]),
                          np.array([0.0, 0.0, -1.0])),
}


def _as_scalar_fn(spec, deriv_step: float = 1e-6):
    """Adapt float | str | Expr | callable | (x, y) table to (fn, dfn)."""
    if isinstance(spec, (int, float)):
        value = float(spec)
        return (lambda x: np.full_like(np.asarray(x, dtype=float), value),
                lambda x: np.zeros_like(np.asarray(x, dtype=float)))
    if isinstance(spec, str):
        spec = exprdsl.parse(spec)
    if isinstance(spec, exprdsl.Expr):
        d = exprdsl.differentiate(spec)
        return (lambda x: np.asarray(exprdsl.evaluate(spec, np.asarray(x, dtype=float))),
                lambda x: np.asarray(exprdsl.evaluate(d, np.asarray(x, dtype=float))))
    if isinstance(spec, tuple) and len(spec) == 2 and not callable(spec[0]):
        interp = PchipInterpolator(np.asarray(spec[0], float), np.asarray(spec[1], float))
        dinterp = interp.derivative()
        return (lambda x: np.asarray(interp(x)), lambda x: np.asarray(dinterp(x)))
    if callable(spec):
        fn = spec
        h = deriv_step
        return (lambda x: np.asarray(fn(np.asarray(x, dtype=float)), dtype=float),
                lambda x: (np.asarray(fn(np.asarray(x, dtype=float) + h), dtype=float)
                           - np.asarray(fn(np.asarray(x, dtype=float) - h), dtype=float)) / (2 * h))
    raise TypeError(f"cannot interpret {spec!r} as a scalar function")


def _check_initial_frame(kind: FrameKind, q0, h0, a0, tol: float = 1e-10):
    eps = np.array([kind.eps_q, kind.eps_h, kind.eps_a], dtype=float)
    vecs = [np.asarray(v, dtype=float) for v in (q0, h0, a0)]
    for i, v in enumerate(vecs):
        if abs(inner(v, v) - eps[i]) > tol:
            raise ValueError(
                f"initial frame vector {i} has <v,v> = {inner(v, v)}, expected {eps[i]}"
            )
    for i in range(3):
        for j in range(i + 1, 3):
            if abs(inner(vecs[i], vecs[j])) > tol:
                raise ValueError("initial frame vectors are not orthogonal")
    q0, h0, a0 = vecs
    e = kind.eps_q
    if kind is FrameKind.SPACELIKE:
        idents = [lorentz_cross(q0, h0) + a0, lorentz_cross(h0, a0) + q0,
                  lorentz_cross(a0, q0) - h0]
    else:
        idents = [lorentz_cross(q0, h0) - e * a0, lorentz_cross(h0, a0) + e * q0,
                  lorentz_cross(a0, q0) + h0]
    for r in idents:
        if np.max(np.abs(r)) > tol:
            raise ValueError("initial frame violates the product identities for its kind")
    return vecs


@dataclass
class InvariantProfile:
    """Inputs for frame integration: f = k2/k1 over phi, the surface kind,
    the phi range, k1 as a function of s (for recovering s and rebuilding),
    and an initial frame (kind-canonical if omitted)."""

    f: object
    kind: FrameKind
    phi_range: tuple[float, float]
    k1_of_s: object = 1.0
    initial_frame: tuple | None = None
    name: str = ""

    def __post_init__(self):
        lo, hi = self.phi_range
        if not (np.isfinite(lo) and np.isfinite(hi) and lo < hi):
            raise ValueError(f"bad phi range {self.phi_range}")
        if self.initial_frame is None:
            self.initial_frame = _CANONICAL_FRAMES[self.kind]
        self.initial_frame = tuple(
            _check_initial_frame(self.kind, *self.initial_frame)
        )
        self.f_fn, self.df_fn = _as_scalar_fn(self.f)
        self.k1_fn, _ = _as_scalar_fn(self.k1_of_s)


@dataclass(frozen=True)
class IntegrationDiagnostics:
    """Per-run integration health: worst pre-projection orthonormality drift
    in a single step, and worst post-projection Gram deviation overall."""
    max_step_drift: float
    max_gram_deviation: float


def _gram_deviation(q, h, a, eps) -> float:
    vals = [
        inner(q, q) - eps[0], inner(h, h) - eps[1], inner(a, a) - eps[2],
        inner(q, h), inner(q, a), inner(h, a),
    ]
    return float(np.max(np.abs(vals)))


def _reorthonormalize(q, h, a, eps):
    """Metric Gram-Schmidt in the order q, h, a, preserving causal characters."""
    out = []
    for v, e in ((q, eps[0]), (h, eps[1]), (a, eps[2])):
        for w, ew in zip(out, eps):
            v = v - (inner(v, w) / ew) * w
        nn = float(inner(v, v))
        if abs(nn) < 1e-12 or np.sign(nn) != e:
            raise FrameDegenerationError(
                "re-orthonormalization hit a near-null or wrong-character vector"
            )
        out.append(v / np.sqrt(abs(nn)))
    return out


def integrate_frenet(profile: InvariantProfile, steps: int,
                     return_diagnostics: bool = False):
    """RK4 integration of the phi-parametrized frame system.

    Timelike kinds: dq/dphi = h, dh/dphi = -eps*q + f*a, da/dphi = eps*f*h;
    spacelike: dq/dphi = h, dh/dphi = q + f*a, da/dphi = f*h.  The striction
    arc length rides along via ds/dphi = 1/k1(s), and the frame is projected
    back onto the Lorentz orthonormal frames after every step.
    """
    if steps < 16:
        raise ValueError("steps must be at least 16")
    kind = profile.kind
    eps = (kind.eps_q, kind.eps_h, kind.eps_a)
    e = kind.eps_q
    spacelike = kind is FrameKind.SPACELIKE
    f_fn = profile.f_fn
    k1_fn = profile.k1_fn
    lo, hi = profile.phi_range
    phi = np.linspace(lo, hi, steps + 1)
    dphi = (hi - lo) / steps

    def rhs(p, y):
        q, h, a, s = y[0:3], y[3:6], y[6:9], y[9]
        fv = float(f_fn(p))
        k1v = float(k1_fn(s))
        if k1v <= 0:
            raise ValueError(f"k1(s) must stay positive, got {k1v} at s={s}")
        if spacelike:
            dq, dh, da = h, q + fv * a, fv * h
        else:
            dq, dh, da = h, -e * q + fv * a, e * fv * h
        return np.concatenate([dq, dh, da, [1.0 / k1v]])

    q0, h0, a0 = profile.initial_frame
    y = np.concatenate([q0, h0, a0, [0.0]])
    n = steps + 1
    qs = np.empty((n, 3)); hs = np.empty((n, 3)); as_ = np.empty((n, 3))
    ss = np.empty(n)
    qs[0], hs[0], as_[0], ss[0] = q0, h0, a0, 0.0
    max_drift = 0.0
    max_gram = _gram_deviation(q0, h0, a0, eps)

    for i in range(steps):
        p = phi[i]
        k1_ = rhs(p, y)
        k2_ = rhs(p + dphi / 2, y + dphi / 2 * k1_)
        k3_ = rhs(p + dphi / 2, y + dphi / 2 * k2_)
        k4_ = rhs(p + dphi, y + dphi * k3_)
        y = y + dphi / 6 * (k1_ + 2 * k2_ + 2 * k3_ + k4_)
        drift = _gram_deviation(y[0:3], y[3:6], y[6:9], eps)
        max_drift = max(max_drift, drift)
        q, h, a = _reorthonormalize(y[0:3], y[3:6], y[6:9], eps)
        y[0:3], y[3:6], y[6:9] = q, h, a
        qs[i + 1], hs[i + 1], as_[i + 1], ss[i + 1] = q, h, a, y[9]
        max_gram = max(max_gram, _gram_deviation(q, h, a, eps))

    k1 = np.asarray(k1_fn(ss), dtype=float)
    k2 = np.asarray(f_fn(phi), dtype=float) * k1
    center = np.concatenate(
        [np.zeros((1, 3)), cumulative_trapezoid(qs, x=ss, axis=0)], axis=0
    )
    frame = FrameField(
        u=phi, s=ss, center=center, q=qs, h=hs, a=as_, k1=k1, k2=k2,
        eps_q=kind.eps_q, eps_h=kind.eps_h, surface_type=kind.surface_type,
        is_timelike_surface=not spacelike, name=profile.name,
    )
    if return_diagnostics:
        return frame, IntegrationDiagnostics(max_drift, max_gram)
    return frame


def ode3_residual(frame: FrameField, f) -> float:
    """Max residual of the third-order ruling equation and the a-identity.

    The ODE is evaluated per kind with 4th-order finite differences for the
    phi-derivatives of q and exact f' when f is an expression; the identity
    a = (q'' + eps*q)/f (timelike) or (q'' - q)/f (spacelike) is checked
    pointwise as well.  The third-order equation is scored only where fully
    centered stencils fit: one-sided third-derivative stencils amplify
    rounding noise by more than an order of magnitude and would mask the
    actual residual on fine grids.
    """
    if frame.sample_count < 9:
        raise ValueError("need at least 9 samples")
    phi = frame.u
    f_fn, df_fn = _as_scalar_fn(f)
    fv = np.asarray(f_fn(phi), dtype=float)
    if np.any(np.abs(fv) < F_DEGENERATE_TOL):
        raise DegenerateFError("f is below threshold somewhere on the range")
    dfv = np.asarray(df_fn(phi), dtype=float)
    q = frame.q
    d1 = fd_derivative(phi, q, 1)
    d2 = fd_derivative(phi, q, 2)
    d3 = fd_derivative(phi, q, 3)
    e = frame.eps_q
    if frame.is_timelike_surface:
        res = (d3 / fv[:, None] - d2 * (dfv / fv**2)[:, None]
               + d1 * (e * (1 - fv**2) / fv)[:, None]
               - q * (e * dfv / fv**2)[:, None])
        a_ident = (d2 + e * q) / fv[:, None] - frame.a
    else:
        res = (d3 / fv[:, None] - d2 * (dfv / fv**2)[:, None]
               - d1 * ((1 + fv**2) / fv)[:, None]
               + q * (dfv / fv**2)[:, None])
        a_ident = (d2 - q) / fv[:, None] - frame.a
    core = slice(3, -3)
    r1 = float(np.max(np.sqrt(np.sum(res[core] * res[core], axis=-1))))
    r2 = float(np.max(np.sqrt(np.sum(a_ident * a_ident, axis=-1))))
    return max(r1, r2)


def build_surface(frame: FrameField, mode: str = "developable",
                  theta=None, name: str = "") -> RuledSurfaceSpec:
    """Rebuild a ruled surface from a frame field.

    developable mode: the striction curve integrates dc/ds = q (trapezoid on
    the s grid), so the ruling equals the striction tangent.  angle mode:
    dc/ds = cosh(theta)*q + sinh(theta)*a (timelike kinds) or
    cos(theta)*q + sin(theta)*a (spacelike), theta a function of s.
    """
    s, q, a = frame.s, frame.q, frame.a
    if mode == "developable":
        center = frame.center
    elif mode == "angle":
        if theta is None:
            raise ValueError("angle mode needs theta")
        th_fn, _ = _as_scalar_fn(theta)
        th = np.asarray(th_fn(s), dtype=float)
        if frame.is_timelike_surface:
            tangent = np.cosh(th)[:, None] * q + np.sinh(th)[:, None] * a
        else:
            tangent = np.cos(th)[:, None] * q + np.sin(th)[:, None] * a
        ip = np.asarray(inner(tangent, tangent))
        if np.any(np.abs(ip) < 1e-6) or np.any(np.sign(ip) != frame.eps_q):
            raise CharacterViolationError(
                "angle mode produced a striction tangent of the wrong causal character"
            )
        center = frame.center[0] + np.concatenate(
            [np.zeros((1, 3)), cumulative_trapezoid(tangent, x=s, axis=0)], axis=0
        )
    else:
        raise ValueError(f"unknown mode {mode!r}")
    base = SampledCurve(s, center)
    ruling = SampledCurve(s, q)
    return RuledSurfaceSpec(base, ruling, name=name or f"{frame.name}:{mode}")


def generate_similar_family(f, kind: FrameKind, k1_list, initial_frame=None,
                            phi_range=(0.0, 2.0), steps: int = 2000,
                            name: str = "family") -> list[RuledSurfaceSpec]:
    """One striction-curve rebuild per k1, all sharing f, kind, and frame.

    The members are pairwise similar by construction: they share the ruling
    q(phi) exactly and differ only in how fast phi is traversed in s.
    """
    out = []
    for idx, k1 in enumerate(k1_list):
        profile = InvariantProfile(
            f=f, kind=kind, phi_range=phi_range, k1_of_s=k1,
            initial_frame=initial_frame, name=f"{name}[{idx}]",
        )
        frame = integrate_frenet(profile, steps)
        out.append(build_surface(frame, "developable", name=profile.name))
    return out
