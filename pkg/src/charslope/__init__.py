"""Characterising-slope denominator bounds from JSJ satellite descriptions.

The package models a knot exterior's JSJ decomposition as a recursive
satellite tree, stores the hyperbolic invariants of the pieces, and
computes the denominator threshold beyond which every surgery slope
characterises the knot, together with the winding-zero refinement and
the surgered-manifold JSJ predictor.
"""

from .bounds import (BoundReport, CompositeOrFibred, NotSplicifiable,
                     PatternKnotted, PieceContribution, QLeqSResult,
                     SignatureObstruction, Slope, SpliceAnnotation,
                     SurgeryJsjResult, TwistCoefficient, bound, compute_Q,
                     compute_R, compute_S, noncharacterising_witnesses,
                     q_leq_s_check, refined_bound, sd_lower_bound, surgery_jsj)
from .errors import (AnnotationError, CharslopeError, DbFormatError,
                     KnotSyntaxError, MissingGeometryError, PreconditionError,
                     ValidationError, WindingError)
from .expr import KnotExpression, load_knot_file, parse, parse_expression, render
from .geometry import (AREA_MIN, FPS_MIN_NORMALIZED, FPS_OFFSET, LEMMA58_NUM,
                       LEMMA58_OFF, Q_FACTOR, Q_FLOOR, S_FLOOR, SIX, GeometryDb,
                       GuardedInt, HyperbolicGeometry, bundled_db,
                       core_length_upper_bound, guarded_floor, load_db,
                       normalized_length_lower_bound, q_frak, r_frak, s_frak,
                       slope_distance, threshold_problems)
from .tree import (CableNode, Composite, ComposingNode, GraphPrime,
                   HyperbolicNode, HyperbolicType, SatelliteTree, TorusId,
                   TorusLeaf, Unknot, UnknotLeaf, Violation, all_winding_zero,
                   classify, cumulative_winding, edge_winding, iter_nodes,
                   iter_tori, node_at, resolve_geometry, validate)

__version__ = "0.1.0"
