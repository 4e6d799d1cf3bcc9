"""The similar-ruled-surfaces relation and its invariant criterion.

Two framed ruled surfaces are similar under a variable transformation when
their rulings coincide after a monotone reparametrization of the striction
arc lengths.  The workable criterion: reparametrize each surface by its total
curvature parameter phi (the integral of k1 over s); similarity then reduces
to equality of the curvature-ratio profiles f = k2/k1 over phi, and the rate
lambda = ds_alpha/ds_beta comes out as a ratio of first curvatures.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import cumulative_simpson
from scipy.interpolate import PchipInterpolator

from .curves import are_similar_curves
from .errors import (
    DegenerateK1Error,
    KindMismatchError,
    NotDevelopableError,
)
from .lorentz import character_sign, euclid_sq, lorentz_cross
from .surfaces import (
    FrameField,
    RuledSurfaceSpec,
    SurfaceType,
    classify,
    developability,
    frame_field,
    striction_curve,
)

DEFAULT_SIMILARITY_TOL = 1e-4
K2_CONOID_TOL = 1e-8


class SimilarityMode(enum.Enum):
    BY_INVARIANTS = "ByInvariants"
    BY_DEFINITION = "ByDefinition"


@dataclass(frozen=True)
class TotalCurvatureTable:
    """Strictly increasing (s, phi) table with phi anchored to 0 at the start."""
    s: np.ndarray
    phi: np.ndarray

    @property
    def total(self) -> float:
        return float(self.phi[-1])


def _check_k1(frame: FrameField) -> None:
    if np.any(frame.k1 <= 1e-9):
        raise DegenerateK1Error("k1 vanishes on part of the interval")


def total_curvature_param(frame: FrameField) -> TotalCurvatureTable:
    """phi(s) = integral of k1 ds (composite Simpson), anchored at 0."""
    _check_k1(frame)
    phi = cumulative_simpson(frame.k1, x=frame.s, initial=0.0)
    if np.any(np.diff(phi) <= 0):
        raise DegenerateK1Error("total curvature parameter failed to increase")
    return TotalCurvatureTable(s=frame.s, phi=phi)


@dataclass(frozen=True)
class CurvatureRatioProfile:
    """f = k2/k1 resampled onto a uniform phi grid."""
    phi: np.ndarray
    f: np.ndarray


def curvature_ratio_profile(frame: FrameField) -> CurvatureRatioProfile:
    """The invariant profile f(phi) = k2/k1 on a uniform phi grid."""
    table = total_curvature_param(frame)
    f_samples = frame.k2 / frame.k1
    phi_uniform = np.linspace(0.0, table.total, len(table.phi))
    f_uniform = PchipInterpolator(table.phi, f_samples)(phi_uniform)
    return CurvatureRatioProfile(phi=phi_uniform, f=f_uniform)


@dataclass
class SimilarityReport:
    """Outcome of the similar-ruled-surfaces test.

    lambda_table is (n, 2) keyed by s_beta.  lambda_consistency is the max
    disagreement between the two curvature-ratio recoveries of lambda (k1
    ratio vs k2 ratio) where the latter is defined.  ruling_deviation and
    central_normal_deviation are populated in ByDefinition mode.
    """
    is_similar: bool
    mode: SimilarityMode
    lambda_table: np.ndarray
    lambda_consistency: float
    f_profile_deviation: float
    ruling_deviation: float
    central_normal_deviation: float
    asymptotic_normal_sign: int
    notes: list[str] = field(default_factory=list)


def _golden_offset_search(dev_fn, lo: float, hi: float, iters: int = 60) -> float:
    """Golden-section minimizer for the phi-offset between two profiles."""
    invphi = (np.sqrt(5.0) - 1) / 2
    a, b = lo, hi
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = dev_fn(c), dev_fn(d)
    for _ in range(iters):
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = dev_fn(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = dev_fn(d)
    return (a + b) / 2


def are_similar_ruled(frame_a: FrameField, frame_b: FrameField,
                      tol: float = DEFAULT_SIMILARITY_TOL,
                      mode: SimilarityMode = SimilarityMode.BY_INVARIANTS,
                      phi_offset_search: bool = False) -> SimilarityReport:
    """Decide similarity of two framed surfaces.

    ByInvariants: similar iff the f = k2/k1 profiles agree to tol on the
    common phi range (both anchored at phi = 0, optionally with a searched
    scalar offset).  ByDefinition additionally requires the rulings and
    central normals to coincide pointwise under the recovered matching.
    In both modes lambda(s_beta) = k1_beta(s_beta) / k1_alpha(s_alpha).
    """
    if isinstance(mode, str):
        mode = SimilarityMode(mode)
    if frame_a.surface_type != frame_b.surface_type:
        raise KindMismatchError(
            f"cannot compare a {frame_a.surface_type.value} surface "
            f"with a {frame_b.surface_type.value} surface"
        )
    _check_k1(frame_a)
    _check_k1(frame_b)
    notes: list[str] = []

    tab_a = total_curvature_param(frame_a)
    tab_b = total_curvature_param(frame_b)
    f_a = frame_a.k2 / frame_a.k1
    f_b = frame_b.k2 / frame_b.k1
    fa_of_phi = PchipInterpolator(tab_a.phi, f_a)
    fb_of_phi = PchipInterpolator(tab_b.phi, f_b)
    n = max(frame_a.sample_count, frame_b.sample_count)

    def deviation_for_offset(c: float) -> float:
        lo = max(0.0, c)
        hi = min(tab_a.total, tab_b.total + c)
        if hi - lo < 0.1 * min(tab_a.total, tab_b.total):
            return np.inf
        grid = np.linspace(lo, hi, n)
        return float(np.max(np.abs(fa_of_phi(grid) - fb_of_phi(grid - c))))

    offset = 0.0
    if phi_offset_search:
        half = 0.5 * min(tab_a.total, tab_b.total)
        offset = _golden_offset_search(deviation_for_offset, -half, half)
        if abs(offset) < 1e-12:
            offset = 0.0
        else:
            notes.append(f"phi offset {offset:.6g} applied to the second surface")

    lo = max(0.0, offset)
    hi = min(tab_a.total, tab_b.total + offset)
    phi_grid = np.linspace(lo, hi, n)
    f_dev = float(np.max(np.abs(fa_of_phi(phi_grid) - fb_of_phi(phi_grid - offset))))

    s_a_of_phi = PchipInterpolator(tab_a.phi, tab_a.s)
    s_b_of_phi = PchipInterpolator(tab_b.phi, tab_b.s)
    s_a = s_a_of_phi(phi_grid)
    s_b = s_b_of_phi(phi_grid - offset)
    k1_a = PchipInterpolator(frame_a.s, frame_a.k1)(s_a)
    k1_b = PchipInterpolator(frame_b.s, frame_b.k1)(s_b)
    lam = k1_b / k1_a
    lambda_table = np.column_stack([s_b, lam])

    k2_a = PchipInterpolator(frame_a.s, frame_a.k2)(s_a)
    k2_b = PchipInterpolator(frame_b.s, frame_b.k2)(s_b)
    k2_scale = max(float(np.max(np.abs(k2_a))), float(np.max(np.abs(k2_b))))
    defined = (np.abs(k2_a) > max(K2_CONOID_TOL, 1e-6 * k2_scale))
    if np.any(defined):
        lam_consistency = float(np.max(np.abs(lam[defined] - k2_b[defined] / k2_a[defined])))
    else:
        lam_consistency = 0.0
        notes.append(
            "k2 vanishes along both surfaces (conoids): the second-curvature "
            "recovery of lambda is vacuous and the curvature is unchanged by "
            "the transformation"
        )

    sign = frame_a.eps_q * frame_b.eps_q
    ruling_dev = float("nan")
    central_dev = float("nan")
    is_similar = f_dev <= tol
    if mode is SimilarityMode.BY_DEFINITION:
        q_a = PchipInterpolator(frame_a.s, frame_a.q, axis=0)(s_a)
        q_b = PchipInterpolator(frame_b.s, frame_b.q, axis=0)(s_b)
        h_a = PchipInterpolator(frame_a.s, frame_a.h, axis=0)(s_a)
        h_b = PchipInterpolator(frame_b.s, frame_b.h, axis=0)(s_b)
        ruling_dev = float(np.max(np.sqrt(np.sum((q_a - q_b) ** 2, axis=-1))))
        central_dev = float(np.max(np.sqrt(np.sum((h_a - h_b) ** 2, axis=-1))))
        is_similar = is_similar and ruling_dev <= tol and central_dev <= tol
        if frame_a.is_timelike_surface:
            a_a = PchipInterpolator(frame_a.s, frame_a.a, axis=0)(s_a)
            a_b = PchipInterpolator(frame_b.s, frame_b.a, axis=0)(s_b)
            a_dev = float(np.max(np.sqrt(np.sum((a_a - sign * a_b) ** 2, axis=-1))))
            if is_similar and a_dev > 10 * tol:
                notes.append(
                    f"asymptotic normals disagree with the expected sign "
                    f"relation (deviation {a_dev:.3g})"
                )

    return SimilarityReport(
        is_similar=bool(is_similar),
        mode=mode,
        lambda_table=lambda_table,
        lambda_consistency=lam_consistency,
        f_profile_deviation=f_dev,
        ruling_deviation=ruling_dev,
        central_normal_deviation=central_dev,
        asymptotic_normal_sign=int(sign),
        notes=notes,
    )


@dataclass(frozen=True)
class DevelopableSimilarityReport:
    """Whether developable surfaces and their striction curves agree on
    similarity, as the theorem predicts."""
    surfaces_similar: bool
    striction_curves_similar: bool
    theorem_holds: bool
    hypothesis_character_ok: bool


def check_developable_similarity(surf_a: RuledSurfaceSpec, surf_b: RuledSurfaceSpec,
                                 tol: float = DEFAULT_SIMILARITY_TOL
                                 ) -> DevelopableSimilarityReport:
    """For developable surfaces, surface similarity should match
    striction-curve similarity (with the same variable transformation).

    Surfaces are compared literally (rulings under the recovered matching):
    invariant profiles can coincide — every planar developable has f = 0 —
    while the striction curves' tangent images are disjoint, so the profile
    alone cannot decide this case.
    """
    rep_a = developability(surf_a)
    rep_b = developability(surf_b)
    if not rep_a.developable:
        raise NotDevelopableError(f"first surface is not developable "
                                  f"(ruling deviation {rep_a.max_ruling_deviation:.3g})")
    if not rep_b.developable:
        raise NotDevelopableError(f"second surface is not developable "
                                  f"(ruling deviation {rep_b.max_ruling_deviation:.3g})")
    hypothesis_ok = not (rep_a.character_mismatch or rep_b.character_mismatch)

    surf_report = are_similar_ruled(rep_a.frame, rep_b.frame, tol=tol,
                                    mode=SimilarityMode.BY_DEFINITION)
    curve_report = are_similar_curves(striction_curve(surf_a), striction_curve(surf_b))
    return DevelopableSimilarityReport(
        surfaces_similar=surf_report.is_similar,
        striction_curves_similar=curve_report.is_similar,
        theorem_holds=surf_report.is_similar == curve_report.is_similar,
        hypothesis_character_ok=hypothesis_ok,
    )


@dataclass(frozen=True)
class FamilyReport:
    """Outcome of the family classification for a list of surfaces."""
    family: str | None           # "Cylindrical", "Conoid", or None
    kind: str                    # "timelike", "spacelike", or "mixed"
    notes: list[str]


def _cylinder_kind(surface: RuledSurfaceSpec) -> str:
    u = surface.grid(32)
    m = lorentz_cross(surface.base.d1(u), surface.ruling.position(u))
    signs = character_sign(m)
    if np.any(signs == 0) or np.any(euclid_sq(m) == 0.0) or np.any(signs != signs.flat[0]):
        return "mixed"
    # A spacelike normal means the tangent planes contain timelike directions.
    return "timelike" if int(signs.flat[0]) == 1 else "spacelike"


def family_check(surfaces: list[RuledSurfaceSpec]) -> FamilyReport:
    """Classify a list as a cylindrical family, a conoid family, or neither.

    Cylindrical: every ruling direction is constant.  Conoid: every surface
    has k1 > 0 and k2 identically ~0 and all share the same kind (timelike or
    spacelike).  Cylindrical families are classified without a lambda: their
    members need not share rulings as literal vectors.
    """
    if not surfaces:
        return FamilyReport(family=None, kind="mixed", notes=["empty input"])
    notes: list[str] = []
    types = [classify(s) for s in surfaces]
    if all(t is SurfaceType.CYLINDRICAL for t in types):
        kinds = {_cylinder_kind(s) for s in surfaces}
        kind = kinds.pop() if len(kinds) == 1 else "mixed"
        notes.append(
            "cylindrical surfaces form one family by convention even though "
            "their constant rulings may differ as vectors"
        )
        return FamilyReport(family="Cylindrical", kind=kind, notes=notes)
    if any(t is SurfaceType.CYLINDRICAL for t in types):
        return FamilyReport(family=None, kind="mixed",
                            notes=["mix of cylindrical and framed surfaces"])

    frames = [frame_field(s) for s in surfaces]
    kinds = {"timelike" if f.is_timelike_surface else "spacelike" for f in frames}
    kind = kinds.pop() if len(kinds) == 1 else "mixed"
    conoid = all(
        np.all(f.k1 > 1e-9) and np.max(np.abs(f.k2)) <= K2_CONOID_TOL for f in frames
    )
    if conoid and kind != "mixed":
        return FamilyReport(family="Conoid", kind=kind, notes=notes)
    if conoid:
        notes.append("all members are conoids but their kinds differ")
    return FamilyReport(family=None, kind=kind, notes=notes)
