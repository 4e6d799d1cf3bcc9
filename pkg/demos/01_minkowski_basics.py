"""
Vector algebra in Minkowski 3-space
===================================

The whole library is built on one bilinear form: the Lorentzian inner
product <x, y> = -x1*y1 + x2*y2 + x3*y3.  This script walks through the
basic consequences: causal characters, the Lorentzian cross product and
its sign quirks, normalization, and the two unit pseudo-spheres that
replace the Euclidean unit sphere.
"""

import numpy as np

from ruledsurf import (
    CausalCharacter,
    causal_character,
    inner,
    lorentz_cross,
    norm,
    normalize,
    pseudo_sphere_membership,
)

# ---------------------------------------------------------------------------
# 1. The inner product and causal characters
# ---------------------------------------------------------------------------
# The first coordinate carries the minus sign, so a vector can have negative
# self-inner-product (timelike), positive (spacelike), or zero (null).

e1 = np.array([1.0, 0.0, 0.0])
e2 = np.array([0.0, 1.0, 0.0])
light = np.array([1.0, 1.0, 0.0])

for label, v in [("e1", e1), ("e2", e2), ("e1+e2", light)]:
    print(f"<{label},{label}> = {inner(v, v):+.1f}  ->  "
          f"{causal_character(v).value}")

# The classification is exposed both as an enum and as a vectorized sign;
# a whole array of vectors is classified in one call.
bundle = np.array([[2.0, 1.0, 0.0], [1.0, 2.0, 0.0], [0.0, 0.0, 1.0]])
print("characters of a bundle:",
      [causal_character(v).value for v in bundle])
assert causal_character(e1) is CausalCharacter.TIMELIKE

# ---------------------------------------------------------------------------
# 2. The Lorentzian cross product
# ---------------------------------------------------------------------------
# lorentz_cross(x, y) is the vector dual to the 2-form x ^ y under the
# Lorentzian metric.  It is orthogonal to both factors -- in the Lorentzian
# sense -- but the basis products pick up signs that differ from the
# Euclidean ones:

print("\ne1 x e2 =", lorentz_cross(e1, e2))
print("e2 x e3 =", lorentz_cross(e2, np.array([0.0, 0.0, 1.0])))

x = np.array([0.3, 1.2, -0.4])
y = np.array([1.1, 0.2, 0.9])
c = lorentz_cross(x, y)
print("orthogonality check:  <x, x^y> =", f"{inner(x, c):.2e}",
      "  <y, x^y> =", f"{inner(y, c):.2e}")

# ---------------------------------------------------------------------------
# 3. Normalization and the unit pseudo-spheres
# ---------------------------------------------------------------------------
# Unit vectors come in two species.  Spacelike directions live on the
# Lorentzian sphere S1^2 = {<v,v> = +1}; timelike directions live on the
# hyperbolic sphere H0^2 = {<v,v> = -1}.  normalize() divides by
# sqrt(|<v,v>|) and refuses null input, where no unit vector exists.

for v in (np.array([3.0, 1.0, 1.0]), np.array([1.0, 3.0, 1.0])):
    u = normalize(v)
    where = pseudo_sphere_membership(u, 1.0, 1e-12)
    print(f"normalize({v}) -> {np.round(u, 4)}   |<u,u>| = "
          f"{abs(inner(u, u)):.12f}   on {where.value}")

# A boost moves a vector along its pseudo-sphere without leaving it: the
# hyperbolic angle plays the role the rotation angle plays in Euclidean
# geometry.
phi = np.linspace(0.0, 2.0, 5)
orbit = np.stack([np.cosh(phi), np.sinh(phi), np.zeros_like(phi)], axis=-1)
print("\nboost orbit stays on H0^2:",
      np.allclose(inner(orbit, orbit), -1.0, atol=1e-15))
print("norm() of every point on the orbit:", np.round(norm(orbit), 12))
