"""Minkowski 3-space vector algebra with signature (-, +, +).

All operations accept arrays of shape ``(..., 3)`` and broadcast over the
leading dimensions; a single vector is just shape ``(3,)``.
"""

from __future__ import annotations

import enum

import numpy as np

from .errors import NullVectorError

DEFAULT_NULL_TOL = 1e-9


class CausalCharacter(enum.Enum):
    SPACELIKE = "spacelike"
    TIMELIKE = "timelike"
    NULL = "null"


class PseudoSphere(enum.Enum):
    ON_S12 = "S12"      # Lorentzian sphere <v,v> = r^2
    ON_H02 = "H02"      # hyperbolic sphere <v,v> = -r^2
    NEITHER = "neither"


def mvec3(x1: float, x2: float, x3: float) -> np.ndarray:
    """Build a vector, rejecting non-finite components."""
    v = np.array([x1, x2, x3], dtype=float)
    if not np.all(np.isfinite(v)):
        raise ValueError(f"vector components must be finite, got {v}")
    return v


def inner(x: np.ndarray, y: np.ndarray) -> np.ndarray | float:
    """Lorentzian inner product -x1*y1 + x2*y2 + x3*y3."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    return -x[..., 0] * y[..., 0] + x[..., 1] * y[..., 1] + x[..., 2] * y[..., 2]


def lorentz_cross(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Lorentzian vector product (x2*y3 - x3*y2, x1*y3 - x3*y1, x2*y1 - x1*y2).

    The result is inner-orthogonal to both arguments and antisymmetric.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    return np.stack(
        [
            x[..., 1] * y[..., 2] - x[..., 2] * y[..., 1],
            x[..., 0] * y[..., 2] - x[..., 2] * y[..., 0],
            x[..., 1] * y[..., 0] - x[..., 0] * y[..., 1],
        ],
        axis=-1,
    )


def triple(a: np.ndarray, b: np.ndarray, c: np.ndarray) -> np.ndarray | float:
    """Mixed product |a, b, c| := inner(a, lorentz_cross(b, c)).

    This fixes the sign convention used by the distribution parameter; the
    zero set (torsality/developability) does not depend on it.
    """
    return inner(a, lorentz_cross(b, c))


def norm(v: np.ndarray) -> np.ndarray | float:
    """sqrt(|inner(v, v)|); zero exactly for null and zero vectors."""
    return np.sqrt(np.abs(inner(v, v)))


def euclid_sq(v: np.ndarray) -> np.ndarray | float:
    v = np.asarray(v, dtype=float)
    return np.sum(v * v, axis=-1)


def null_band(v: np.ndarray, tol_null: float = DEFAULT_NULL_TOL) -> np.ndarray | float:
    """Relative tolerance band: |<v,v>| below this counts as null.

    The band scales with the squared Euclidean size so large near-null
    vectors classify the same way as small ones.
    """
    return tol_null * (1.0 + euclid_sq(v))


def character_sign(v: np.ndarray, tol_null: float = DEFAULT_NULL_TOL) -> np.ndarray:
    """Vectorized classification: +1 spacelike, -1 timelike, 0 null.

    The zero vector maps to +1 (spacelike by definition).
    """
    v = np.asarray(v, dtype=float)
    ip = np.asarray(inner(v, v), dtype=float)
    band = np.asarray(null_band(v, tol_null))
    sign = np.where(ip < -band, -1, 1)
    is_null = (np.abs(ip) <= band) & (euclid_sq(v) > 0.0)
    return np.where(is_null, 0, sign)


def causal_character(v: np.ndarray, tol_null: float = DEFAULT_NULL_TOL) -> CausalCharacter:
    """Classify a single vector as spacelike, timelike, or null."""
    s = int(character_sign(v, tol_null))
    if s == 0:
        return CausalCharacter.NULL
    return CausalCharacter.TIMELIKE if s < 0 else CausalCharacter.SPACELIKE


def normalize(v: np.ndarray, tol_null: float = DEFAULT_NULL_TOL) -> np.ndarray:
    """v / sqrt(|<v,v>|); raises NullVectorError on null or zero input.

    Vectorized: raises if any of the broadcast vectors is null or zero.
    """
    v = np.asarray(v, dtype=float)
    sign = character_sign(v, tol_null)
    if np.any(sign == 0) or np.any(euclid_sq(v) == 0.0):
        raise NullVectorError("cannot normalize a null or zero vector")
    return v / np.asarray(norm(v))[..., np.newaxis]


def pseudo_sphere_membership(v: np.ndarray, r: float, tol: float) -> PseudoSphere:
    """Membership of a single vector on the radius-r pseudo-spheres."""
    if r <= 0 or tol <= 0:
        raise ValueError("r and tol must be positive")
    ip = float(inner(v, v))
    if abs(ip - r * r) <= tol:
        return PseudoSphere.ON_S12
    if abs(ip + r * r) <= tol:
        return PseudoSphere.ON_H02
    return PseudoSphere.NEITHER
