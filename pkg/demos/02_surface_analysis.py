"""
Anatomy of a ruled surface
==========================

A ruled surface is a base curve with a straight line (the ruling) attached
at every parameter value.  This script loads three surfaces from definition
files and extracts everything the library knows about them: the striction
curve, the moving frame {q, h, a}, the curvatures k1 and k2, the
distribution parameter, and the developability verdict.
"""

from pathlib import Path

import numpy as np

from ruledsurf import (
    classify,
    developability,
    distribution_parameter,
    frame_field,
    load_surface,
    striction_curve,
    verify_frenet,
)

DATA = Path(__file__).parent / "data"

# ---------------------------------------------------------------------------
# 1. Load and classify
# ---------------------------------------------------------------------------
# The type records the causal characters of the ruling q and the central
# normal h: NMinus (q timelike), NPlus (q, h spacelike), NTimes (q spacelike,
# h timelike).  Surfaces with a constant ruling direction are Cylindrical
# and have no ruled frame at all.

specs = [load_surface(str(DATA / name))[0]
         for name in ("h1.surface", "conoid_nminus.surface",
                      "hyperboloid.surface")]
for spec in specs:
    print(f"{spec.name:16s} -> {classify(spec).value}")

# ---------------------------------------------------------------------------
# 2. The striction curve and the frame
# ---------------------------------------------------------------------------
# The striction curve threads the narrowest points of the surface; its
# velocity is Lorentz-orthogonal to the turning of the ruling.  The frame
# field samples q, h, a along it, together with the curvatures.

h1 = specs[0]
frame = frame_field(h1)
print(f"\n{h1.name}: eps = ({frame.eps_q:+d}, {frame.eps_h:+d}, "
      f"{frame.eps_a:+d}), {frame.sample_count} samples")
print("k1 is identically 1:", np.allclose(frame.k1, 1.0, atol=1e-10))
print("k2 is identically 0:", np.allclose(frame.k2, 0.0, atol=1e-10))

# The frame must satisfy its own structural equations; verify_frenet
# measures how well the sampled frame does.
res = verify_frenet(frame)
print(f"frame residuals: ode {res.max_ode_residual:.2e}, identities "
      f"{res.max_identity_residual:.2e}, orthonormality "
      f"{res.max_orthonormality_residual:.2e}")

# For this surface the striction curve is the base axis itself.
sc = striction_curve(h1)
u = np.linspace(0.0, 2.0, 5)
print("striction curve positions:\n", np.round(sc.position(u), 12))

# ---------------------------------------------------------------------------
# 3. Developability
# ---------------------------------------------------------------------------
# Three equivalent diagnostics: the striction tangent equals the ruling,
# the distribution parameter delta vanishes, and (when the tilt angle is
# defined) the angle is identically zero.  The hyperboloid fails all three.

for spec in specs:
    rep = developability(spec)
    delta = distribution_parameter(spec, spec.grid())
    print(f"\n{spec.name}: developable = {rep.developable}")
    print(f"  max |delta|          = {np.max(np.abs(delta)):.3e}")
    print(f"  max ruling deviation = {rep.max_ruling_deviation:.3e}")
    if rep.theta is not None:
        print(f"  tilt angle range     = [{rep.theta[:, 1].min():+.4f}, "
              f"{rep.theta[:, 1].max():+.4f}]")
    else:
        print("  tilt angle undefined: striction tangent and ruling have "
              "different causal characters")
