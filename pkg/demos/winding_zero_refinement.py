"""Refined bounds for satellites whose patterns all have winding number zero.

For such knots the R and S terms can be traded for a term T built from
unknotting-twist data about the companion.  The annotations are user
facts the library cannot derive: a signature, fibredness, or an actual
maximal twist coefficient.  Coverage of every JSJ torus must be asserted
explicitly; partial knowledge is an error, never a silent bound.
"""

import charslope as cs

db = cs.bundled_db()


def annotated(evidence):
    return [cs.SpliceAnnotation(cs.TorusId((0,)), evidence)]


# A Whitehead double of a companion with a tiny systole: the plain bound
# is dominated by the companion's s-kernel.
double = cs.parse("hyp(whitehead;hyp({sys=0.0141687}))")
plain = cs.bound(double, db)
print("Whitehead double, plain bound: C = %d (S = %d)" % (plain.C, plain.S))

# The companion has signature -38, so no single twist unknots it and the
# description is never splicifiable: T = 0.
refined = cs.refined_bound(double, db, annotated(cs.SignatureObstruction(-38)),
                           complete=True)
print("with the signature annotation: C = %d (T = %d)" % (refined.C, refined.T))

# A fibred companion: a single unknotting twist is possible but bounded,
# so T = 1 and the bound again collapses to Q.
fibred = cs.parse("hyp(whitehead;hyp(pretzel_m2_m77_77))")
print("\nfibred companion, plain bound: C = %d" % cs.bound(fibred, db).C)
refined = cs.refined_bound(fibred, db, annotated(cs.CompositeOrFibred()),
                           complete=True)
print("with the fibred annotation:    C = %d" % refined.C)

# The systole threshold that guarantees S >= Q in such examples:
check = cs.q_leq_s_check(fibred, db)
print("s-dominates-q threshold: %.7f (holds: %s)" % (check.threshold,
                                                     check.holds))

# When the companion is unknotted by a t-twist, 1/t is expected to be a
# non-characterising slope, and C = max(Q, t) is attained.
twisty = annotated(cs.TwistCoefficient(77))
refined = cs.refined_bound(double, db, twisty, complete=True)
witnesses = cs.noncharacterising_witnesses(double, db, twisty)
print("\ntwist coefficient 77: C = %d, witness slopes: %s"
      % (refined.C, ", ".join(str(w) for w in witnesses)))

# Trees with nonzero winding are rejected up front.
try:
    cs.refined_bound(cs.parse("cable(1,2;torus(2,3))"), db, [], complete=True)
except cs.WindingError as exc:
    print("\ncable pattern rejected:", exc)
