"""Walk through the denominator bound for a satellite knot of hyperbolic type.

The knot is described by its JSJ tree: a Borromean-rings piece spliced
with a Whitehead double of the trefoil and with a connected sum of the
figure-eight and stevedore knots.  Every slope p/q with |q| above the
reported C is a characterising slope.
"""

import charslope as cs

db = cs.bundled_db()

# The same tree can be written as an expression or built from nodes.
expr = "hyp(borromean;hyp(whitehead;torus(2,3)),sum(hyp(fig8),hyp(stevedore)))"
knot = cs.parse(expr)
print("knot:", cs.render(knot))
print("class:", type(cs.classify(knot)).__name__)

report = cs.bound(knot, db)
print("\nC = %d   (Q = %d, R = %d, S = %d)" % (report.C, report.Q,
                                               report.R, report.S))
for piece in report.per_piece:
    cells = ", ".join("%s = %d" % (k, v) for k, v in
                      (("q", piece.q), ("r", piece.r), ("s", piece.s))
                      if v is not None)
    print("  hyperbolic piece at %s: %s" % (list(piece.path), cells))

# Wrapping the knot in a single cable does not change the bound: the
# outermost-piece term is computed one level down and the new piece's
# s-kernel never beats its q-kernel.
cabled = cs.parse("cable(1,2;%s)" % expr)
print("\nafter a (1,2)-cable: C = %d" % cs.bound(cabled, db).C)

# Twisting the pattern links leaves systoles alone but stretches the
# cusp meridians, which only the R term can see.
twisted = cs.parse("hyp(borromean_m5_2;hyp(whitehead_m7;torus(2,3)),"
                   "sum(hyp(fig8),hyp(stevedore)))")
trep = cs.bound(twisted, db)
print("twisted variant: C = %d   (Q = %d, R = %d, S = %d)"
      % (trep.C, trep.Q, trep.R, trep.S))

# Graph-manifold knots use closed formulas instead of geometry.
for text in ("torus(2,3)", "torus(2,11)", "cable(9,2;torus(2,3))",
             "cable(7,2;cable(5,2;torus(2,3)))",
             "sum(torus(2,3),torus(2,5))",
             "cable(1,2;sum(torus(2,3),torus(2,5)))"):
    print("%-42s C = %d" % (text, cs.bound(cs.parse(text), db).C))
