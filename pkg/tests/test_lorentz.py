"""Vector algebra of the (-,+,+) metric: products, characters, pseudo-spheres."""

import numpy as np
import pytest

from ruledsurf.errors import NullVectorError
from ruledsurf.lorentz import (
    CausalCharacter,
    PseudoSphere,
    causal_character,
    character_sign,
    euclid_sq,
    inner,
    lorentz_cross,
    mvec3,
    norm,
    normalize,
    null_band,
    pseudo_sphere_membership,
    triple,
)


# ---------------------------------------------------------------------------
# inner product
# ---------------------------------------------------------------------------

def test_inner_signature_examples():
    assert inner(mvec3(1, 0, 0), mvec3(1, 0, 0)) == -1.0
    assert inner(mvec3(0, 1, 0), mvec3(0, 1, 0)) == 1.0
    assert inner(mvec3(5, 3, 4), mvec3(5, 3, 4)) == 0.0


def test_inner_is_symmetric_bilinear():
    rng = np.random.default_rng(7)
    x, y, z = rng.normal(size=(3, 200, 3))
    np.testing.assert_allclose(inner(x, y), inner(y, x), rtol=0, atol=0)
    np.testing.assert_allclose(inner(x + z, y), inner(x, y) + inner(z, y),
                               rtol=1e-12, atol=1e-12)


def test_inner_broadcasts():
    x = np.ones((4, 1, 3))
    y = np.ones((5, 3))
    assert inner(x, y).shape == (4, 5)


# ---------------------------------------------------------------------------
# lorentz cross product
# ---------------------------------------------------------------------------

def test_cross_basis_example():
    np.testing.assert_array_equal(lorentz_cross(mvec3(1, 0, 0), mvec3(0, 1, 0)),
                                  mvec3(0, 0, -1))


def test_cross_self_is_zero():
    rng = np.random.default_rng(11)
    v = rng.normal(size=(50, 3))
    np.testing.assert_array_equal(lorentz_cross(v, v), np.zeros((50, 3)))


def test_cross_rotating_family():
    u = np.linspace(0.0, 7.0, 64)
    x = np.stack([np.zeros_like(u), np.cos(u), np.sin(u)], axis=-1)
    y = np.stack([np.zeros_like(u), -np.sin(u), np.cos(u)], axis=-1)
    expected = np.tile(mvec3(1, 0, 0), (64, 1))
    np.testing.assert_allclose(lorentz_cross(x, y), expected, atol=1e-15)


def test_cross_is_antisymmetric_and_orthogonal():
    rng = np.random.default_rng(13)
    x = rng.normal(size=(1000, 3))
    y = rng.normal(size=(1000, 3))
    c = lorentz_cross(x, y)
    np.testing.assert_allclose(c, -lorentz_cross(y, x), atol=0)
    # metric-orthogonal to both factors
    np.testing.assert_allclose(inner(c, x), 0.0, atol=1e-12)
    np.testing.assert_allclose(inner(c, y), 0.0, atol=1e-12)


def test_lagrange_identity():
    rng = np.random.default_rng(17)
    x = rng.normal(size=(1000, 3))
    y = rng.normal(size=(1000, 3))
    c = lorentz_cross(x, y)
    lhs = inner(c, c)
    rhs = inner(x, y) ** 2 - inner(x, x) * inner(y, y)
    np.testing.assert_allclose(lhs, rhs, rtol=1e-10, atol=1e-10)


def test_triple_product_matches_cross():
    rng = np.random.default_rng(19)
    a, b, c = rng.normal(size=(3, 500, 3))
    np.testing.assert_allclose(triple(a, b, c), inner(a, lorentz_cross(b, c)),
                               rtol=1e-12, atol=1e-12)
    # alternating in its arguments
    np.testing.assert_allclose(triple(a, b, c), -triple(b, a, c), atol=1e-12)


# ---------------------------------------------------------------------------
# causal character
# ---------------------------------------------------------------------------

def test_character_examples():
    assert causal_character(mvec3(2, 0, 0)) is CausalCharacter.TIMELIKE
    assert causal_character(mvec3(0, 3, 4)) is CausalCharacter.SPACELIKE
    assert causal_character(mvec3(5, 3, 4)) is CausalCharacter.NULL


def test_zero_vector_is_spacelike_by_convention():
    assert causal_character(mvec3(0, 0, 0)) is CausalCharacter.SPACELIKE
    assert int(character_sign(mvec3(0, 0, 0))) == 1


def test_null_band_is_relative():
    # a tiny perturbation of a huge null vector still counts as null
    v = mvec3(1e8, 1e8, 0) + mvec3(0, 1e-6, 0)
    assert causal_character(v) is CausalCharacter.NULL
    # the same absolute perturbation at unit scale does not
    w = mvec3(1, 1, 0) + mvec3(0, 1e-6, 0)
    assert causal_character(w) is CausalCharacter.SPACELIKE
    # the band width itself grows with the squared Euclidean size
    assert null_band(mvec3(1, 1, 0)) == pytest.approx(3e-9)
    assert null_band(mvec3(100, 100, 0)) == pytest.approx(1e-9 * 20001)


def test_character_sign_vectorized():
    v = np.array([[2.0, 0, 0], [0, 3, 4], [5, 3, 4], [0, 0, 0]])
    np.testing.assert_array_equal(character_sign(v), [-1, 1, 0, 1])


# ---------------------------------------------------------------------------
# normalize / norms
# ---------------------------------------------------------------------------

def test_normalize_examples():
    np.testing.assert_allclose(normalize(mvec3(2, 0, 0)), mvec3(1, 0, 0))
    np.testing.assert_allclose(normalize(mvec3(0, 3, 4)), mvec3(0, 0.6, 0.8))


def test_normalize_rejects_null_and_zero():
    with pytest.raises(NullVectorError):
        normalize(mvec3(1, 1, 0))
    with pytest.raises(NullVectorError):
        normalize(mvec3(0, 0, 0))
    # vectorized input with one bad row fails as a whole
    with pytest.raises(NullVectorError):
        normalize(np.array([[0.0, 3, 4], [1.0, 1, 0]]))


def test_normalize_gives_unit_lorentz_norm():
    rng = np.random.default_rng(23)
    v = rng.normal(size=(500, 3)) * rng.uniform(0.1, 100, size=(500, 1))
    good = np.abs(inner(v, v)) > 1e-6
    unit = normalize(v[good])
    np.testing.assert_allclose(np.abs(inner(unit, unit)), 1.0, atol=1e-12)


def test_norm_and_euclid():
    assert norm(mvec3(2, 0, 0)) == 2.0
    assert norm(mvec3(1, 1, 0)) == 0.0
    assert euclid_sq(mvec3(1, 2, 2)) == 9.0


def test_mvec3_rejects_nonfinite():
    with pytest.raises(ValueError):
        mvec3(np.nan, 0, 0)
    with pytest.raises(ValueError):
        mvec3(np.inf, 0, 0)


# ---------------------------------------------------------------------------
# pseudo-spheres
# ---------------------------------------------------------------------------

def test_pseudo_sphere_examples():
    assert pseudo_sphere_membership(mvec3(0, 1, 0), 1.0, 1e-9) is PseudoSphere.ON_S12
    assert pseudo_sphere_membership(mvec3(1, 0, 0), 1.0, 1e-9) is PseudoSphere.ON_H02
    assert pseudo_sphere_membership(mvec3(1, 1, 0), 1.0, 1e-9) is PseudoSphere.NEITHER


def test_pseudo_sphere_radius_and_validation():
    assert pseudo_sphere_membership(mvec3(0, 0, 2), 2.0, 1e-9) is PseudoSphere.ON_S12
    assert pseudo_sphere_membership(mvec3(3, 0, 0), 3.0, 1e-9) is PseudoSphere.ON_H02
    with pytest.raises(ValueError):
        pseudo_sphere_membership(mvec3(0, 1, 0), -1.0, 1e-9)
    with pytest.raises(ValueError):
        pseudo_sphere_membership(mvec3(0, 1, 0), 1.0, 0.0)
