"""Ruled-surface analysis in Minkowski 3-space.

A ruled surface is phi(u, v) = k(u) + v*q(u) with a non-null ruling
direction q.  This module computes the distribution parameter, striction
curve, the orthonormal moving frame {q, h, a} along the striction curve with
its curvatures k1 >= 0 and k2, the surface type (NMinus / NPlus / NTimes /
Cylindrical), and the developability test (ruling equals striction tangent).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .curves import ParamCurve
from .errors import (
    CharacterMismatchError,
    CylindricalRulingError,
    FrameDegenerationError,
    NullSphericalImageError,
    NullTransitionError,
    NullVectorError,
    SingularPointError,
)
from .lorentz import (
    DEFAULT_NULL_TOL,
    character_sign,
    euclid_sq,
    inner,
    lorentz_cross,
    normalize,
)
from .numeric import cumulative_integral, fd_derivative

DEFAULT_FRAME_TOL = 1e-6
CYLINDER_TOL = 1e-9
K1_DEGENERATE_TOL = 1e-9


class SurfaceType(enum.Enum):
    NMINUS = "NMinus"
    NPLUS = "NPlus"
    NTIMES = "NTimes"
    CYLINDRICAL = "Cylindrical"


class UnitRulingCurve(ParamCurve):
    """Pointwise Lorentz-normalization of a direction curve.

    Derivatives to order 3 are exact chain-rule expressions in the base
    curve's derivatives, so normalization adds no differentiation error.
    """

    def __init__(self, base: ParamCurve):
        super().__init__(base.u_min, base.u_max, base.sample_count)
        self.raw = base
        g = base.position(self.grid())
        signs = character_sign(g)
        if np.any(signs == 0) or np.any(euclid_sq(g) == 0.0):
            raise NullVectorError("ruling direction is null or zero at a sample")
        if np.any(signs != signs.flat[0]):
            raise NullTransitionError("ruling direction changes causal character")
        self.eps = int(signs.flat[0])

    def _parts(self, u, order: int):
        q = self.raw.position(u)
        d1 = self.raw.d1(u) if order >= 1 else None
        d2 = self.raw.d2(u) if order >= 2 else None
        d3 = self.raw.d3(u) if order >= 3 else None
        eps = self.eps
        p = eps * np.asarray(inner(q, q))
        m = p ** -0.5
        out = [q * m[..., None]]
        if order >= 1:
            dp = 2 * eps * np.asarray(inner(q, d1))
            dm = -0.5 * dp * p**-1.5
            out.append(d1 * m[..., None] + q * dm[..., None])
        if order >= 2:
            ddp = 2 * eps * (np.asarray(inner(d1, d1)) + np.asarray(inner(q, d2)))
            ddm = -0.5 * ddp * p**-1.5 + 0.75 * dp**2 * p**-2.5
            out.append(d2 * m[..., None] + 2 * d1 * dm[..., None] + q * ddm[..., None])
        if order >= 3:
            dddp = 2 * eps * (3 * np.asarray(inner(d1, d2)) + np.asarray(inner(q, d3)))
            dddm = (
                -0.5 * dddp * p**-1.5
                + 2.25 * dp * ddp * p**-2.5
                - 1.875 * dp**3 * p**-3.5
            )
            out.append(
                d3 * m[..., None]
                + 3 * d2 * dm[..., None]
                + 3 * d1 * ddm[..., None]
                + q * dddm[..., None]
            )
        return out

    def position(self, u):
        return self._parts(u, 0)[0]

    def d1(self, u):
        return self._parts(u, 1)[1]

    def d2(self, u):
        return self._parts(u, 2)[2]

    def d3(self, u):
        return self._parts(u, 3)[3]


class RuledSurfaceSpec:
    """phi(u, v) = base(u) + v * ruling(u), with the ruling unit-normalized."""

    def __init__(self, base: ParamCurve, ruling: ParamCurve, name: str = ""):
        u_min = max(base.u_min, ruling.u_min)
        u_max = min(base.u_max, ruling.u_max)
        if not u_min < u_max:
            raise ValueError("base and ruling parameter intervals do not overlap")
        self.u_min = u_min
        self.u_max = u_max
        self.sample_count = max(base.sample_count, ruling.sample_count)
        self.base = base
        self.direction = ruling
        self.ruling = UnitRulingCurve(ruling)
        self.name = name

    @classmethod
    def from_exprs(cls, base_components, ruling_components, u_min, u_max,
                   name: str = "", sample_count: int | None = None):
        from .curves import DEFAULT_SAMPLES, ExprCurve

        n = sample_count or DEFAULT_SAMPLES
        return cls(
            ExprCurve(base_components, u_min, u_max, n),
            ExprCurve(ruling_components, u_min, u_max, n),
            name=name,
        )

    def grid(self, n: int | None = None) -> np.ndarray:
        return np.linspace(self.u_min, self.u_max, n or self.sample_count)


def surface_point(surface: RuledSurfaceSpec, u, v) -> np.ndarray:
    """phi(u, v); u and v broadcast together."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    u, v = np.broadcast_arrays(u, v)
    return surface.base.position(u) + v[..., None] * surface.ruling.position(u)


def surface_normal(surface: RuledSurfaceSpec, u, v,
                   tol_null: float = DEFAULT_NULL_TOL) -> np.ndarray:
    """Unit normal lorentz_cross(phi_u, phi_v), normalized.

    Raises SingularPointError where the cross product is zero or null.
    """
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    u, v = np.broadcast_arrays(u, v)
    phi_u = surface.base.d1(u) + v[..., None] * surface.ruling.d1(u)
    phi_v = surface.ruling.position(u)
    m = lorentz_cross(phi_u, phi_v)
    try:
        return normalize(m, tol_null)
    except NullVectorError as exc:
        raise SingularPointError(
            "surface normal is null or zero at the requested point"
        ) from exc


def _ruling_derivative_data(surface: RuledSurfaceSpec, u):
    u = np.asarray(u, dtype=float)
    q, dq = surface.ruling._parts(u, 1)
    dk = surface.base.d1(u)
    ip_dq = np.asarray(inner(dq, dq))
    return q, dq, dk, ip_dq


def _check_spherical_image(dq: np.ndarray, ip_dq: np.ndarray,
                           tol_null: float = DEFAULT_NULL_TOL) -> None:
    e2 = np.asarray(euclid_sq(dq))
    band = tol_null * (1.0 + e2)
    if np.any(e2 <= tol_null):
        raise CylindricalRulingError("ruling direction is constant (dq = 0)")
    if np.any(np.abs(ip_dq) <= band):
        raise NullSphericalImageError("spherical image of the ruling has null velocity")


def distribution_parameter(surface: RuledSurfaceSpec, u):
    """delta = <dk, q x dq> / <dq, dq> (signed denominator)."""
    q, dq, dk, ip_dq = _ruling_derivative_data(surface, u)
    _check_spherical_image(dq, ip_dq)
    return np.asarray(inner(dk, lorentz_cross(q, dq))) / ip_dq


def is_torsal_ruling(surface: RuledSurfaceSpec, u, tol: float = 1e-9):
    """True where |<dk, q x dq>| <= tol (the developable/singular rulings)."""
    q, dq, dk, _ = _ruling_derivative_data(surface, u)
    return np.abs(np.asarray(inner(dk, lorentz_cross(q, dq)))) <= tol


class StrictionCurve(ParamCurve):
    """c(u) = k(u) - (<dq, dk>/<dq, dq>) q(u).

    Positions and first two derivatives are exact; the third derivative uses
    a small central difference of the exact second derivative (the factor
    <dq,dk>/<dq,dq> would need order-4 derivatives of the inputs otherwise).
    """

    _FD_STEP = 1e-5

    def __init__(self, surface: RuledSurfaceSpec):
        super().__init__(surface.u_min, surface.u_max, surface.sample_count)
        self.surface = surface
        _, dq, dk, ip_dq = _ruling_derivative_data(surface, self.grid())
        _check_spherical_image(dq, ip_dq)

    def _ratio(self, u, order: int):
        s = self.surface
        q, dq, ddq = s.ruling._parts(u, 2)
        dk, ddk = s.base.d1(u), s.base.d2(u)
        a = np.asarray(inner(dq, dk))
        b = np.asarray(inner(dq, dq))
        r = [a / b]
        if order >= 1:
            da = np.asarray(inner(ddq, dk)) + np.asarray(inner(dq, ddk))
            db = 2 * np.asarray(inner(ddq, dq))
            r.append((da * b - a * db) / b**2)
        if order >= 2:
            dddq = s.ruling._parts(u, 3)[3]
            dddk = s.base.d3(u)
            dda = (np.asarray(inner(dddq, dk)) + 2 * np.asarray(inner(ddq, ddk))
                   + np.asarray(inner(dq, dddk)))
            ddb = 2 * (np.asarray(inner(dddq, dq)) + np.asarray(inner(ddq, ddq)))
            r.append((dda * b**2 - 2 * da * db * b - a * ddb * b + 2 * a * db**2) / b**3)
        return r

    def position(self, u):
        u = np.asarray(u, dtype=float)
        r = self._ratio(u, 0)[0]
        return self.surface.base.position(u) - r[..., None] * self.surface.ruling.position(u)

    def d1(self, u):
        u = np.asarray(u, dtype=float)
        r, dr = self._ratio(u, 1)
        q, dq = self.surface.ruling._parts(u, 1)
        return self.surface.base.d1(u) - dr[..., None] * q - r[..., None] * dq

    def d2(self, u):
        u = np.asarray(u, dtype=float)
        r, dr, ddr = self._ratio(u, 2)
        q, dq, ddq = self.surface.ruling._parts(u, 2)
        return (self.surface.base.d2(u) - ddr[..., None] * q
                - 2 * dr[..., None] * dq - r[..., None] * ddq)

    def d3(self, u):
        h = self._FD_STEP
        return (self.d2(np.asarray(u, dtype=float) + h) - self.d2(np.asarray(u, dtype=float) - h)) / (2 * h)


def striction_curve(surface: RuledSurfaceSpec) -> StrictionCurve:
    """The striction curve of the surface; satisfies <dq, dc> = 0."""
    return StrictionCurve(surface)


@dataclass(frozen=True)
class FrameField:
    """Moving frame {q, h, a} with curvatures along the striction curve.

    Arrays are sampled over the surface parameter grid u; s is the striction
    arc length (starting at 0).  eps_q = <q,q>, eps_h = <h,h>.
    """
    u: np.ndarray
    s: np.ndarray
    center: np.ndarray
    q: np.ndarray
    h: np.ndarray
    a: np.ndarray
    k1: np.ndarray
    k2: np.ndarray
    eps_q: int
    eps_h: int
    surface_type: SurfaceType
    is_timelike_surface: bool
    name: str = ""

    @property
    def eps_a(self) -> int:
        # Signature (-,+,+): exactly one frame vector is timelike.
        return -self.eps_q * self.eps_h

    @property
    def sample_count(self) -> int:
        return len(self.s)


def _common_sign(vectors: np.ndarray, what: str) -> int:
    signs = character_sign(vectors)
    if np.any(signs == 0) or np.any(euclid_sq(vectors) == 0.0):
        raise NullTransitionError(f"{what} is null or zero at a sample")
    if np.any(signs != signs.flat[0]):
        raise NullTransitionError(f"{what} changes causal character on the interval")
    return int(signs.flat[0])


def _frame_arrays(surface: RuledSurfaceSpec, n: int | None):
    u = surface.grid(n)
    c = StrictionCurve(surface)
    dc = c.d1(u)
    eps_c = _common_sign(dc, "striction-curve velocity")
    w_c = np.sqrt(eps_c * np.asarray(inner(dc, dc)))
    s = cumulative_integral(u, w_c)

    q, dq, ddq = surface.ruling._parts(u, 2)
    eps_q = surface.ruling.eps
    eps_h = _common_sign(dq, "dq/ds")
    r = np.sqrt(eps_h * np.asarray(inner(dq, dq)))
    h = dq / r[:, None]
    k1 = r / w_c

    timelike_surface = eps_h == 1
    if timelike_surface:
        surface_type = SurfaceType.NMINUS if eps_q == -1 else SurfaceType.NPLUS
        a = eps_q * lorentz_cross(q, h)
    else:
        surface_type = SurfaceType.NTIMES
        a = -lorentz_cross(q, h)

    dr = eps_h * np.asarray(inner(dq, ddq)) / r
    dh = ddq / r[:, None] - dq * (dr / r**2)[:, None]
    da_du = lorentz_cross(dq, h) + lorentz_cross(q, dh)
    da_du = eps_q * da_du if timelike_surface else -da_du
    da_ds = da_du / w_c[:, None]
    k2 = np.asarray(inner(da_ds, h)) * eps_h
    if timelike_surface:
        k2 = eps_q * k2

    center = c.position(u)
    T = dc / w_c[:, None]
    return dict(u=u, s=s, center=center, q=q, h=h, a=a, k1=k1, k2=k2,
                eps_q=eps_q, eps_h=eps_h, surface_type=surface_type,
                is_timelike_surface=timelike_surface, T=T, eps_c=eps_c)


def _build_frame(data: dict, sl: slice, name: str) -> FrameField:
    s = data["s"][sl]
    return FrameField(
        u=data["u"][sl], s=s - s[0], center=data["center"][sl], q=data["q"][sl],
        h=data["h"][sl], a=data["a"][sl], k1=data["k1"][sl], k2=data["k2"][sl],
        eps_q=data["eps_q"], eps_h=data["eps_h"],
        surface_type=data["surface_type"],
        is_timelike_surface=data["is_timelike_surface"], name=name,
    )


def frame_field(surface: RuledSurfaceSpec, n: int | None = None) -> FrameField:
    """Frenet frame field along the striction curve, sampled on the u grid.

    Raises FrameDegenerationError when k1 drops below tolerance somewhere;
    use frame_segments to get per-segment frames around the degeneracy.
    """
    data = _frame_arrays(surface, n)
    if np.any(data["k1"] < K1_DEGENERATE_TOL):
        raise FrameDegenerationError(
            "k1 is degenerate on part of the interval; "
            "use frame_segments for per-segment frames"
        )
    return _build_frame(data, slice(None), surface.name)


def frame_segments(surface: RuledSurfaceSpec, n: int | None = None,
                   min_samples: int = 8) -> list[FrameField]:
    """Maximal sub-frames on which k1 stays above the degeneracy tolerance."""
    data = _frame_arrays(surface, n)
    good = data["k1"] >= K1_DEGENERATE_TOL
    segments = []
    i = 0
    m = len(good)
    while i < m:
        if not good[i]:
            i += 1
            continue
        j = i
        while j < m and good[j]:
            j += 1
        if j - i >= min_samples:
            segments.append(_build_frame(data, slice(i, j),
                                         f"{surface.name}[{len(segments)}]"))
        i = j
    return segments


@dataclass(frozen=True)
class FrenetResiduals:
    """Max deviations of a frame field from the frame ODE and identities."""
    max_ode_residual: float
    max_identity_residual: float
    max_orthonormality_residual: float


def verify_frenet(frame: FrameField) -> FrenetResiduals:
    """Check the frame against its derivative equations and product identities.

    Derivatives along s use 4th-order finite differences of the samples, so
    the residual floor scales with the sampling density, not with the frame's
    construction accuracy.
    """
    if frame.sample_count < 5:
        raise ValueError("need at least 5 samples to verify a frame")
    s, q, h, a = frame.s, frame.q, frame.h, frame.a
    k1 = frame.k1[:, None]
    k2 = frame.k2[:, None]
    eps = frame.eps_q
    dq = fd_derivative(s, q, 1)
    dh = fd_derivative(s, h, 1)
    da = fd_derivative(s, a, 1)
    if frame.is_timelike_surface:
        rows = [dq - k1 * h, dh - (-eps * k1 * q + k2 * a), da - eps * k2 * h]
        idents = [
            lorentz_cross(q, h) - eps * a,
            lorentz_cross(h, a) + eps * q,
            lorentz_cross(a, q) + h,
        ]
    else:
        rows = [dq - k1 * h, dh - (k1 * q + k2 * a), da - k2 * h]
        idents = [
            lorentz_cross(q, h) + a,
            lorentz_cross(h, a) + q,
            lorentz_cross(a, q) - h,
        ]
    ode_res = max(float(np.max(np.sqrt(np.sum(r * r, axis=-1)))) for r in rows)
    ident_res = max(float(np.max(np.sqrt(np.sum(r * r, axis=-1)))) for r in idents)

    gram_target = np.diag([frame.eps_q, frame.eps_h, frame.eps_a]).astype(float)
    vecs = np.stack([q, h, a], axis=1)
    gram = np.empty((frame.sample_count, 3, 3))
    for i in range(3):
        for j in range(3):
            gram[:, i, j] = inner(vecs[:, i], vecs[:, j])
    ortho_res = float(np.max(np.abs(gram - gram_target)))
    return FrenetResiduals(ode_res, ident_res, ortho_res)


@dataclass(frozen=True)
class DevelopabilityReport:
    """Developability verdict with supporting profiles.

    theta is an (n, 2) table (s, theta) when the striction tangent shares the
    ruling's causal character, else None with character_mismatch set;
    d_profile is (n, 2) over s — from theta when available, otherwise the
    distribution parameter directly.
    """
    developable: bool
    theta: np.ndarray | None
    d_profile: np.ndarray
    max_ruling_deviation: float
    character_mismatch: bool
    frame: FrameField = field(repr=False)


def developability(surface: RuledSurfaceSpec, tol: float = DEFAULT_FRAME_TOL,
                   n: int | None = None) -> DevelopabilityReport:
    """Developable iff the striction curve's unit tangent equals the ruling."""
    data = _frame_arrays(surface, n)
    frame = _build_frame(data, slice(None), surface.name)
    T = data["T"]
    q = data["q"]
    deviation = float(np.max(np.sqrt(np.sum((T - q) ** 2, axis=-1))))
    developable = deviation <= tol

    theta = None
    mismatch = data["eps_c"] != data["eps_q"]
    if not mismatch:
        ta = np.asarray(inner(T, frame.a))
        tq = np.asarray(inner(T, q))
        if frame.is_timelike_surface:
            if np.any(frame.eps_q * tq <= 0):
                mismatch = True  # opposite branch of the hyperbola: no angle
            else:
                th = np.arcsinh(frame.eps_a * ta)
                d = -np.sinh(th) / frame.k1
        else:
            th = np.arctan2(ta, frame.eps_q * tq)
            d = np.sin(th) / frame.k1
        if not mismatch:
            recon = np.cosh(th) if frame.is_timelike_surface else np.cos(th)
            resid = T - recon[:, None] * q - (np.sinh(th) if frame.is_timelike_surface
                                              else np.sin(th))[:, None] * frame.a
            if float(np.max(np.abs(resid))) > 1e-6:
                mismatch = True
    if not mismatch:
        theta = np.column_stack([frame.s, th])
        d_profile = np.column_stack([frame.s, d])
    else:
        delta = distribution_parameter(surface, data["u"])
        d_profile = np.column_stack([frame.s, delta])
    return DevelopabilityReport(
        developable=developable,
        theta=theta,
        d_profile=d_profile,
        max_ruling_deviation=deviation,
        character_mismatch=bool(mismatch),
        frame=frame,
    )


def classify(surface: RuledSurfaceSpec, n: int | None = None) -> SurfaceType:
    """Cylindrical if the ruling direction is constant, else the frame type."""
    u = surface.grid(n)
    dq = surface.ruling.d1(u)
    if np.all(euclid_sq(dq) <= CYLINDER_TOL):
        return SurfaceType.CYLINDRICAL
    return frame_field(surface, n).surface_type
