"""Predict the JSJ shape of the surgered manifold.

For |q| > 2 the filling core lands in a single piece.  Usually that is
the outermost piece (case I); for a cable knot whose parameters satisfy
|p - q*r*s| = 1 the filling descends into the companion piece and the
slope denominator picks up a factor s^2 (case II).
"""

import charslope as cs

cable = cs.parse("cable(3,2;hyp(fig8))")

print("cable(3,2; fig8), sweeping slopes p/3:")
for p in range(15, 24):
    if cs.Slope.normalized(p, 3).q != 3:
        continue
    res = cs.surgery_jsj(cable, cs.Slope.normalized(p, 3))
    print("  %3d/3 -> case %-3s filled slope %-7s piece %s"
          % (p, res.case_tag, res.filled_slope, list(res.surgered_piece_path)))

# Case II happens exactly on the two integer lines p = q*r*s +- 1.
hits = []
for q in range(3, 13):
    for p in range(-60, 61):
        try:
            slope = cs.Slope(p, q)
        except ValueError:
            continue
        if cs.surgery_jsj(cable, slope).case_tag == "II":
            hits.append((p, q))
assert all(abs(p - q * 6) == 1 for p, q in hits)
print("\ncase II slopes for this cable all satisfy |p - 6q| = 1:",
      hits[:6], "...")

# Non-cable roots always keep the filling in the outermost piece.
tree = cs.parse("hyp(borromean;hyp(whitehead;torus(2,3)),"
                "sum(hyp(fig8),hyp(stevedore)))")
res = cs.surgery_jsj(tree, cs.Slope(5, 3))
print("\nhyperbolic root, slope 5/3 -> case %s, slope %s"
      % (res.case_tag, res.filled_slope))

# |q| <= 2 is outside the prediction's range.
try:
    cs.surgery_jsj(tree, cs.Slope(1, 2))
except cs.PreconditionError as exc:
    print("slope 1/2 rejected:", exc)
