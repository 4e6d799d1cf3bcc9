"""Parametric curves in Minkowski 3-space and the similar-curve test.

A curve carries its position together with exact (or best-available)
derivatives to order 3.  Similarity of two curves — equality of unit tangents
under some monotone variable transformation — is decided by matching both
curves against a transformation-invariant clock: normalized arc length of the
tangent indicatrix.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.integrate import cumulative_simpson
from scipy.interpolate import PchipInterpolator, make_interp_spline

from . import exprdsl
from .errors import DegenerateIndicatrixError, NullTangentError
from .lorentz import character_sign, euclid_sq, inner, norm
from .numeric import cumulative_integral, fd_derivative

DEFAULT_SAMPLES = 512
DEFAULT_SIMILAR_TOL = 1e-6


class ParamCurve:
    """Base class: position plus derivatives d1, d2, d3 on [u_min, u_max].

    All evaluators accept scalar or array arguments and return arrays of
    shape (..., 3).
    """

    def __init__(self, u_min: float, u_max: float, sample_count: int = DEFAULT_SAMPLES):
        if not (np.isfinite(u_min) and np.isfinite(u_max) and u_min < u_max):
            raise ValueError(f"bad parameter interval [{u_min}, {u_max}]")
        if sample_count < 8:
            raise ValueError("sample_count must be at least 8")
        self.u_min = float(u_min)
        self.u_max = float(u_max)
        self.sample_count = int(sample_count)

    def grid(self, n: int | None = None) -> np.ndarray:
        return np.linspace(self.u_min, self.u_max, n or self.sample_count)

    def position(self, u) -> np.ndarray:
        raise NotImplementedError

    def d1(self, u) -> np.ndarray:
        raise NotImplementedError

    def d2(self, u) -> np.ndarray:
        raise NotImplementedError

    def d3(self, u) -> np.ndarray:
        raise NotImplementedError

    def validate_derivatives(self, rel_tol: float = 1e-4, n: int = 10) -> None:
        """Check each derivative against a central difference of the one below."""
        span = self.u_max - self.u_min
        h = 1e-4 * span
        u = np.linspace(self.u_min + 2 * h, self.u_max - 2 * h, n)
        pairs = [(self.position, self.d1), (self.d1, self.d2), (self.d2, self.d3)]
        for low, high in pairs:
            fd = (low(u + h) - low(u - h)) / (2 * h)
            exact = high(u)
            scale = 1.0 + np.max(np.abs(exact))
            err = np.max(np.abs(fd - exact)) / scale
            if err > rel_tol:
                raise ValueError(
                    f"derivative inconsistent with position: relative error {err:.2e}"
                )


class ExprCurve(ParamCurve):
    """Curve whose components are expressions in u; derivatives are exact."""

    def __init__(self, components, u_min, u_max, sample_count=DEFAULT_SAMPLES):
        super().__init__(u_min, u_max, sample_count)
        comps = [
            exprdsl.parse(c) if isinstance(c, str) else c for c in components
        ]
        if len(comps) != 3:
            raise ValueError("need exactly 3 components")
        self.components = tuple(comps)
        self._derivs = [self.components]
        for _ in range(3):
            self._derivs.append(tuple(exprdsl.differentiate(c) for c in self._derivs[-1]))

    def _eval(self, order: int, u) -> np.ndarray:
        u = np.asarray(u, dtype=float)
        cols = [np.broadcast_to(exprdsl.evaluate(c, u), u.shape) for c in self._derivs[order]]
        return np.stack(cols, axis=-1)

    def position(self, u):
        return self._eval(0, u)

    def d1(self, u):
        return self._eval(1, u)

    def d2(self, u):
        return self._eval(2, u)

    def d3(self, u):
        return self._eval(3, u)


class CallableCurve(ParamCurve):
    """Curve from vectorized callables u -> (..., 3).

    Derivatives not supplied fall back to central differences of the highest
    exact level available (step ``fd_step``), which costs roughly two digits
    of accuracy per missing level.
    """

    def __init__(self, position, u_min, u_max, d1=None, d2=None, d3=None,
                 sample_count=DEFAULT_SAMPLES, fd_step=1e-5):
        super().__init__(u_min, u_max, sample_count)
        self._fns = [position, d1, d2, d3]
        self._h = float(fd_step)

    def _eval(self, order: int, u) -> np.ndarray:
        u = np.asarray(u, dtype=float)
        if self._fns[order] is not None:
            return np.asarray(self._fns[order](u), dtype=float)
        lower = order - 1
        while self._fns[lower] is None:
            lower -= 1
        h = self._h

        def central(fn):
            return lambda x: (np.asarray(fn(x + h), dtype=float)
                              - np.asarray(fn(x - h), dtype=float)) / (2 * h)

        fn = self._fns[lower]
        for _ in range(order - lower):
            fn = central(fn)
        return fn(u)

    def position(self, u):
        return self._eval(0, u)

    def d1(self, u):
        return self._eval(1, u)

    def d2(self, u):
        return self._eval(2, u)

    def d3(self, u):
        return self._eval(3, u)


class SampledCurve(ParamCurve):
    """Curve reconstructed from samples by a quintic spline.

    Derivatives come from the spline, so order 3 is still smooth; expect
    roughly spline-order accuracy rather than machine precision.
    """

    def __init__(self, u: np.ndarray, points: np.ndarray, sample_count: int | None = None):
        u = np.asarray(u, dtype=float)
        points = np.asarray(points, dtype=float)
        if u.ndim != 1 or points.shape != (len(u), 3):
            raise ValueError("need u of shape (n,) and points of shape (n, 3)")
        if len(u) < 6:
            raise ValueError("need at least 6 samples for a quintic spline")
        if np.any(np.diff(u) <= 0):
            raise ValueError("u must be strictly increasing")
        super().__init__(u[0], u[-1], sample_count or max(len(u), 64))
        self._spline = make_interp_spline(u, points, k=5, axis=0)
        self._dsplines = [self._spline.derivative(k) for k in (1, 2, 3)]

    def position(self, u):
        return self._spline(np.asarray(u, dtype=float))

    def d1(self, u):
        return self._dsplines[0](np.asarray(u, dtype=float))

    def d2(self, u):
        return self._dsplines[1](np.asarray(u, dtype=float))

    def d3(self, u):
        return self._dsplines[2](np.asarray(u, dtype=float))


# ---------------------------------------------------------------------------
# Arc length and tangents
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ArcLengthTable:
    """Monotone (u, s) table with the total length; s starts at 0."""
    u: np.ndarray
    s: np.ndarray
    total: float


def _velocity_character(d1_grid: np.ndarray) -> int:
    """Common causal sign of the velocity samples; raises on null/mixed/zero."""
    signs = character_sign(d1_grid)
    if np.any(signs == 0) or np.any(euclid_sq(d1_grid) == 0.0):
        raise NullTangentError("curve velocity is null or zero on the interval")
    if np.any(signs != signs.flat[0]):
        raise NullTangentError("curve velocity changes causal character on the interval")
    return int(signs.flat[0])


def arc_length_table(curve: ParamCurve, n: int | None = None) -> ArcLengthTable:
    """s(u) = integral of sqrt(|<c', c'>|) du by composite Simpson on the grid."""
    u = curve.grid(n)
    d1 = curve.d1(u)
    _velocity_character(d1)
    speed = np.asarray(norm(d1))
    s = cumulative_simpson(speed, x=u, initial=0.0)
    if np.any(np.diff(s) <= 0):
        raise NullTangentError("arc length failed to increase strictly")
    return ArcLengthTable(u=u, s=s, total=float(s[-1]))


def unit_tangent(curve: ParamCurve, u) -> np.ndarray:
    """d1(u) / sqrt(|<d1, d1>|); raises NullTangentError on null velocity."""
    d1 = curve.d1(u)
    signs = character_sign(d1)
    if np.any(signs == 0) or np.any(euclid_sq(d1) == 0.0):
        raise NullTangentError("velocity is null or zero at the requested parameter")
    return d1 / np.asarray(norm(d1))[..., np.newaxis]


def _indicatrix_clock(curve: ParamCurve, u: np.ndarray) -> np.ndarray:
    """Cumulative Euclidean arc length of the unit-tangent image over u.

    Invariant under monotone reparametrization, which is what makes it usable
    as the common clock for the similarity test.
    """
    d1 = curve.d1(u)
    d2 = curve.d2(u)
    eps = _velocity_character(d1)
    p = eps * np.asarray(inner(d1, d1))          # = |<d1,d1>| > 0
    dp_half = eps * np.asarray(inner(d1, d2))     # = p' / 2
    w = np.sqrt(p)
    dT = d2 / w[:, None] - d1 * (dp_half / w**3)[:, None]
    rate = np.sqrt(np.sum(dT * dT, axis=-1))
    sigma = cumulative_integral(u, rate)
    span = u[-1] - u[0]
    if sigma[-1] <= 1e-12 * span or np.any(np.diff(sigma) <= 1e-14 * max(sigma[-1], 1e-300)):
        raise DegenerateIndicatrixError(
            "unit tangent is constant on a subinterval; matching is ambiguous"
        )
    return sigma


@dataclass(frozen=True)
class SimilarCurveReport:
    """Outcome of the similar-curve test.

    lambda_samples and s_alpha_of_s_beta are (n, 2) tables keyed by s_beta;
    lambda is ds_alpha/ds_beta along the matching.
    """
    is_similar: bool
    lambda_samples: np.ndarray
    s_alpha_of_s_beta: np.ndarray
    max_tangent_deviation: float


def are_similar_curves(c_alpha: ParamCurve, c_beta: ParamCurve,
                       tol: float = DEFAULT_SIMILAR_TOL) -> SimilarCurveReport:
    """Decide whether two curves share unit tangents up to a monotone
    variable transformation, and recover that transformation.

    Both curves are reduced to the same clock — normalized tangent-indicatrix
    arc length — and their tangents are compared pointwise on it.  The
    transformation s_alpha(s_beta) and its rate lambda are read off the
    matched arc-length tables.
    """
    n = max(c_alpha.sample_count, c_beta.sample_count)
    tau = np.linspace(0.0, 1.0, n)

    matched_u = []
    matched_s = []
    tangents = []
    for curve in (c_alpha, c_beta):
        u = curve.grid(n)
        sigma = _indicatrix_clock(curve, u)
        sigma /= sigma[-1]
        u_of_tau = PchipInterpolator(sigma, u)(tau)
        u_of_tau[0], u_of_tau[-1] = u[0], u[-1]
        table = arc_length_table(curve, n)
        s_of_tau = PchipInterpolator(table.u, table.s)(u_of_tau)
        matched_u.append(u_of_tau)
        matched_s.append(s_of_tau)
        tangents.append(unit_tangent(curve, u_of_tau))

    deviation = float(np.max(np.sqrt(np.sum((tangents[0] - tangents[1]) ** 2, axis=-1))))
    s_a, s_b = matched_s
    monotone = bool(np.all(np.diff(s_a) > 0) and np.all(np.diff(s_b) > 0))
    if monotone:
        lam = fd_derivative(s_b, s_a, 1)
    else:
        lam = np.gradient(s_a, s_b)
    is_similar = deviation <= tol and monotone and bool(np.all(lam > 0))
    return SimilarCurveReport(
        is_similar=is_similar,
        lambda_samples=np.column_stack([s_b, lam]),
        s_alpha_of_s_beta=np.column_stack([s_b, s_a]),
        max_tangent_deviation=deviation,
    )


class NormalizedCurve(ParamCurve):
    """Arc-length reparametrization of a base curve.

    The parameter is s in [0, total]; positions come from inverting the
    arc-length table, derivatives from exact chain-rule formulas at the
    mapped parameter (so no extra differentiation error is introduced).
    """

    def __init__(self, base: ParamCurve, n: int | None = None):
        table = arc_length_table(base, n or max(base.sample_count, 512))
        super().__init__(0.0, table.total, base.sample_count)
        self.base = base
        self.table = table
        self._u_of_s = PchipInterpolator(table.s, table.u)
        eps = _velocity_character(base.d1(table.u))
        self.velocity_sign = eps

    def _map(self, s) -> np.ndarray:
        s = np.clip(np.asarray(s, dtype=float), 0.0, self.table.total)
        return np.asarray(self._u_of_s(s), dtype=float)

    def position(self, s):
        return self.base.position(self._map(s))

    def d1(self, s):
        u = self._map(s)
        d1 = self.base.d1(u)
        return d1 / np.asarray(norm(d1))[..., np.newaxis]

    def d2(self, s):
        u = self._map(s)
        d1, d2 = self.base.d1(u), self.base.d2(u)
        eps = self.velocity_sign
        p = eps * np.asarray(inner(d1, d1))
        dp = 2 * eps * np.asarray(inner(d1, d2))
        return d2 / p[..., None] - d1 * (dp / (2 * p**2))[..., None]

    def d3(self, s):
        u = self._map(s)
        d1, d2, d3 = self.base.d1(u), self.base.d2(u), self.base.d3(u)
        eps = self.velocity_sign
        p = eps * np.asarray(inner(d1, d1))
        dp = 2 * eps * np.asarray(inner(d1, d2))
        ddp = 2 * eps * (np.asarray(inner(d2, d2)) + np.asarray(inner(d1, d3)))
        coeff_d1 = dp**2 / p**3 - ddp / (2 * p**2)
        out = d3 / p[..., None] - d2 * (3 * dp / (2 * p**2))[..., None] + d1 * coeff_d1[..., None]
        return out / np.sqrt(p)[..., None]
