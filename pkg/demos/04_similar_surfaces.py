"""
Similar ruled surfaces
======================

Two ruled surfaces are similar when a monotone reparametrization of the
striction curves carries one ruling onto the other.  Read in the
total-curvature parameter phi, similarity is simply equality of the
curvature-ratio profiles f = k2/k1 -- so surfaces with very different
k1 can still be similar, and the rate lambda(s) of the reparametrization
is the ratio of their k1 profiles.
"""

import numpy as np

from ruledsurf import (
    FrameKind,
    InvariantProfile,
    are_similar_curves,
    are_similar_ruled,
    check_developable_similarity,
    family_check,
    frame_field,
    generate_similar_family,
    integrate_frenet,
    striction_curve,
)
from ruledsurf.corpus import (
    h1,
    h1_shifted,
    tangent_developable_quadratic,
    tangent_developable_timelike,
)

# ---------------------------------------------------------------------------
# 1. A family of similar surfaces
# ---------------------------------------------------------------------------
# Same f, same kind, three different k1 profiles: the members share the
# ruling as a function of phi and differ only in how fast phi advances.

members = generate_similar_family(0.3, FrameKind.TIMELIKE_MINUS,
                                  [1.0, 2.0, "1 + u"], steps=2000)
frames = [frame_field(m) for m in members]
rep = are_similar_ruled(frames[0], frames[2])
s_beta = rep.lambda_table[:, 0]
print(f"k1=1 vs k1=1+s: similar = {rep.is_similar}")
print(f"lambda(s_beta) recovers 1 + s_beta to "
      f"{np.max(np.abs(rep.lambda_table[:, 1] - (1 + s_beta))):.2e}")

# A mismatched profile is rejected, and the deviation measures how far
# apart the f profiles are.
other = integrate_frenet(InvariantProfile(f=0.6, kind=FrameKind.TIMELIKE_MINUS,
                                          phi_range=(0.0, 2.0)), 2000)
rej = are_similar_ruled(frames[0], other)
print(f"f=0.3 vs f=0.6: similar = {rej.is_similar}, profile deviation = "
      f"{rej.f_profile_deviation:.3f}")

# ---------------------------------------------------------------------------
# 2. Developables: the surface question reduces to a curve question
# ---------------------------------------------------------------------------
# For tangent developables, the surfaces are similar exactly when their
# striction curves (the edges of regression) are similar curves.  The pair
# below realizes the variable transformation u(t) = t^2.

alpha = tangent_developable_timelike()
beta = tangent_developable_quadratic()
rep_td = check_developable_similarity(alpha, beta)
print(f"\ntangent developables: surfaces similar = {rep_td.surfaces_similar}, "
      f"striction curves similar = {rep_td.striction_curves_similar}, "
      f"agreement = {rep_td.theorem_holds}")

curves = are_similar_curves(striction_curve(alpha), striction_curve(beta))
t = curves.s_alpha_of_s_beta[:, 0] + 0.5
u_of_t = curves.s_alpha_of_s_beta[:, 1] + 0.25
print(f"recovered u(t) = t^2 to {np.max(np.abs(u_of_t - t**2)):.2e}; "
      f"lambda(t) = 2t to "
      f"{np.max(np.abs(curves.lambda_samples[:, 1] - 2 * t)):.2e}")

# ---------------------------------------------------------------------------
# 3. Families with unchanged curvature
# ---------------------------------------------------------------------------
# Two special families keep k2 fixed under every similarity: conoids
# (k2 = 0 identically) and cylinders (no frame at all).  family_check
# recognizes both.

fam = family_check([h1(), h1_shifted()])
print(f"\nH1 and its shift form a family: {fam.family} ({fam.kind})")
for note in fam.notes:
    print(" -", note)
