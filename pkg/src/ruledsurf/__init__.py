"""Ruled surfaces in Minkowski 3-space: frames, invariants, similarity,
and reconstruction.

The package treats a ruled surface phi(u, v) = k(u) + v*q(u) through the
moving frame attached to its striction curve: the unit ruling q, the central
normal h, and the asymptotic normal a, with curvatures k1 and k2.  On top of
that frame it provides developability tests, the similar-surfaces relation
under variable transformations, and reconstruction of surfaces from their
invariant profile f = k2/k1 by integrating the frame equations.
"""

from .curves import (
    ArcLengthTable,
    CallableCurve,
    ExprCurve,
    NormalizedCurve,
    ParamCurve,
    SampledCurve,
    SimilarCurveReport,
    arc_length_table,
    are_similar_curves,
    unit_tangent,
)
from .errors import (
    CharacterViolationError,
    CylindricalRulingError,
    DegenerateFError,
    DegenerateIndicatrixError,
    DegenerateK1Error,
    DomainError,
    FrameDegenerationError,
    GeometryError,
    KindMismatchError,
    NotDevelopableError,
    NullSphericalImageError,
    NullTangentError,
    NullTransitionError,
    NullVectorError,
    ParseError,
    SingularPointError,
)
from .exprdsl import Expr, differentiate, evaluate, parse, to_string
from .lorentz import (
    CausalCharacter,
    PseudoSphere,
    causal_character,
    character_sign,
    inner,
    lorentz_cross,
    norm,
    normalize,
    null_band,
    pseudo_sphere_membership,
    triple,
)
from .reconstruct import (
    FrameKind,
    IntegrationDiagnostics,
    InvariantProfile,
    build_surface,
    generate_similar_family,
    integrate_frenet,
    ode3_residual,
)
from .similarity import (
    CurvatureRatioProfile,
    DevelopableSimilarityReport,
    FamilyReport,
    SimilarityMode,
    SimilarityReport,
    TotalCurvatureTable,
    are_similar_ruled,
    check_developable_similarity,
    curvature_ratio_profile,
    family_check,
    total_curvature_param,
)
from .surfacefile import (
    ProfileFile,
    SurfaceDefinition,
    load_profile,
    load_surface,
    parse_definition,
    parse_profile,
    read_samples_csv,
    sample_surface,
    save_sampled_surface,
    write_definition,
    write_obj,
    write_samples_csv,
)
from .surfaces import (
    DevelopabilityReport,
    FrameField,
    FrenetResiduals,
    RuledSurfaceSpec,
    StrictionCurve,
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
from .verify import VerifyCheck, run_builtin_suite, run_surface_checks

__version__ = "0.1.0"

__all__ = [
    "ArcLengthTable", "CallableCurve", "CausalCharacter",
    "CharacterViolationError", "CurvatureRatioProfile",
    "CylindricalRulingError", "DegenerateFError", "DegenerateIndicatrixError",
    "DegenerateK1Error", "DevelopabilityReport", "DevelopableSimilarityReport",
    "DomainError", "Expr", "ExprCurve", "FamilyReport", "FrameDegenerationError",
    "FrameField", "FrameKind", "FrenetResiduals", "GeometryError",
    "IntegrationDiagnostics", "InvariantProfile", "KindMismatchError",
    "NormalizedCurve", "NotDevelopableError", "NullSphericalImageError",
    "NullTangentError", "NullTransitionError", "NullVectorError", "ParamCurve",
    "ParseError", "ProfileFile", "PseudoSphere", "RuledSurfaceSpec",
    "SampledCurve", "SimilarCurveReport", "SimilarityMode", "SimilarityReport",
    "SingularPointError", "StrictionCurve", "SurfaceDefinition", "SurfaceType",
    "TotalCurvatureTable", "VerifyCheck",
    "arc_length_table", "are_similar_curves", "are_similar_ruled",
    "build_surface", "causal_character", "character_sign",
    "check_developable_similarity", "classify", "curvature_ratio_profile",
    "developability", "differentiate", "distribution_parameter", "evaluate",
    "family_check", "frame_field", "frame_segments", "generate_similar_family",
    "inner", "integrate_frenet", "is_torsal_ruling", "load_profile",
    "load_surface", "lorentz_cross", "norm", "normalize", "null_band",
    "ode3_residual", "parse", "parse_definition", "parse_profile",
    "pseudo_sphere_membership", "read_samples_csv", "run_builtin_suite",
    "run_surface_checks", "sample_surface", "save_sampled_surface",
    "striction_curve",
    "surface_normal", "surface_point", "to_string", "total_curvature_param",
    "triple", "unit_tangent", "verify_frenet", "write_definition", "write_obj",
    "write_samples_csv",
]
