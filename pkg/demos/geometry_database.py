"""Inspect the bundled geometry database and the formula kernels.

Each entry stores the systole of a hyperbolic link exterior plus the
meridian lengths and linking numbers of its non-outermost components.
Three kernels turn these into integer thresholds: q and s from the
systole, r from the longest meridian.
"""

import charslope as cs

db = cs.bundled_db()

print("entry              comp systole        q    r    s")
for name in db:
    g = db.get(name)
    print("%-18s %3d  %-13g %4d %4d %4d"
          % (name, g.components, g.systole,
             cs.q_frak(g).value, cs.r_frak(g).value, cs.s_frak(g).value))

# The kernels come with defining threshold properties: one past the
# s value the filling core is forced shorter than every geodesic, and
# one past the r value every meridian filling clears the length-6 bar.
print("\nverification:")
for name in db:
    problems = cs.threshold_problems(db.get(name))
    print("  %-18s %s" % (name, "ok" if not problems else problems))

# The pieces behind the thresholds, on synthetic data:
g = cs.HyperbolicGeometry.for_knot(systole=0.0141687)
s = cs.s_frak(g).value
print("\nsystole 0.0141687 -> s threshold %d" % s)
b = s + 1
lhat = cs.normalized_length_lower_bound(b)
print("denominator %d has normalised length >= %.4f" % (b, lhat))
print("so the filling core is shorter than %.6f < systole %.6f"
      % (cs.core_length_upper_bound(lhat), g.systole))

# Floors near an integer boundary are rounded up and flagged; bounds
# only ever grow, so the rounded value stays sound.
flagged = cs.guarded_floor(35.999999999999)
print("\nguarded floor of 35.999999999999 ->", flagged)
print("slope distance of 19/3 and 1/0:",
      cs.slope_distance((19, 3), (1, 0)))
