"""Bound computations over satellite trees.

The headline operation is ``bound``: a total dispatcher over the four
knot classes that returns the denominator threshold beyond which every
surgery slope characterises the knot.  Around it sit the refined
winding-zero bound driven by splice annotations, the predictor for the
JSJ shape of the surgered manifold, and a few smaller checks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (AnnotationError, MissingGeometryError, PreconditionError,
                     ValidationError, WindingError)
from .geometry import (LEMMA58_NUM, LEMMA58_OFF, Q_FLOOR, S_FLOOR, GuardedInt,
                       q_frak, r_frak, s_frak)
from .tree import (CableNode, Composite, GraphPrime, HyperbolicNode,
                   HyperbolicType, TorusId, TorusLeaf, Unknot, UnknotLeaf,
                   all_winding_zero, check_valid, classify, cumulative_winding,
                   iter_nodes, iter_tori, resolve_geometry)

__all__ = [
    "Slope",
    "TwistCoefficient",
    "SignatureObstruction",
    "CompositeOrFibred",
    "PatternKnotted",
    "NotSplicifiable",
    "SpliceAnnotation",
    "PieceContribution",
    "BoundReport",
    "SurgeryJsjResult",
    "QLeqSResult",
    "compute_Q",
    "compute_R",
    "compute_S",
    "bound",
    "refined_bound",
    "surgery_jsj",
    "sd_lower_bound",
    "q_leq_s_check",
    "noncharacterising_witnesses",
]


# -- slopes -------------------------------------------------------------------

@dataclass(frozen=True)
class Slope:
    """A surgery slope p/q in lowest terms, identified up to sign (q >= 0)."""

    p: int
    q: int

    def __post_init__(self):
        if math.gcd(abs(self.p), abs(self.q)) != 1:
            raise ValueError("slope %d/%d is not in lowest terms" % (self.p, self.q))
        if self.q < 0:
            raise ValueError("slope denominator must be normalised to q >= 0")
        if self.q == 0 and self.p != 1:
            raise ValueError("the meridian slope is written 1/0")

    @classmethod
    def normalized(cls, p, q):
        if p == 0 and q == 0:
            raise ValueError("0/0 is not a slope")
        if q == 0:
            return cls(1, 0)
        g = math.gcd(abs(p), abs(q))
        p, q = p // g, q // g
        if q < 0:
            p, q = -p, -q
        return cls(p, q)

    @classmethod
    def parse(cls, text):
        parts = text.strip().split("/")
        if len(parts) != 2:
            raise ValueError("slope must be written p/q, got %r" % text)
        try:
            p, q = int(parts[0]), int(parts[1])
        except ValueError:
            raise ValueError("slope must be written p/q with integers, got %r"
                             % text) from None
        return cls.normalized(p, q)

    def __str__(self):
        return "%d/%d" % (self.p, self.q)


# -- splice annotations --------------------------------------------------------

@dataclass(frozen=True)
class TwistCoefficient:
    """Asserted maximal unknotting twist coefficient of the companion."""

    t: int


@dataclass(frozen=True)
class SignatureObstruction:
    """Companion signature; |sigma| >= 4 rules splicifiability out."""

    sigma: int


@dataclass(frozen=True)
class CompositeOrFibred:
    """Companion composite or fibred: twist coefficient at most 1."""


@dataclass(frozen=True)
class PatternKnotted:
    """The pattern knot is knotted, so the description is not splicifiable."""


@dataclass(frozen=True)
class NotSplicifiable:
    """Direct user assertion that the description is not splicifiable."""


@dataclass(frozen=True)
class SpliceAnnotation:
    torus: TorusId
    evidence: object

    def __post_init__(self):
        if not isinstance(self.torus, TorusId):
            object.__setattr__(self, "torus", TorusId(tuple(self.torus)))


def _twist_contribution(evidence):
    if isinstance(evidence, TwistCoefficient):
        if evidence.t < 0:
            raise AnnotationError("twist coefficient must be nonnegative")
        return evidence.t
    if isinstance(evidence, CompositeOrFibred):
        return 1
    if isinstance(evidence, SignatureObstruction):
        if abs(evidence.sigma) < 4:
            raise AnnotationError(
                "signature obstruction needs |sigma| >= 4, got %d" % evidence.sigma)
        return 0
    if isinstance(evidence, (PatternKnotted, NotSplicifiable)):
        return 0
    raise AnnotationError("unknown annotation evidence %r" % (evidence,))


# -- reports --------------------------------------------------------------------

@dataclass(frozen=True)
class PieceContribution:
    """Kernel values of one hyperbolic piece (path in the tree)."""

    path: tuple
    q: int | None = None
    r: int | None = None
    s: int | None = None


@dataclass(frozen=True)
class BoundReport:
    case_tag: str
    C: int
    Q: int | None = None
    R: int | None = None
    S: int | None = None
    T: int | None = None
    per_piece: tuple = ()
    warnings: tuple = ()


@dataclass(frozen=True)
class SurgeryJsjResult:
    case_tag: str                  # "I" or "II"
    surgered_piece_path: tuple
    filled_slope: Slope
    cable_multiplier: int


@dataclass(frozen=True)
class QLeqSResult:
    threshold: float
    holds: bool


# -- kernel evaluation over trees ------------------------------------------------

@dataclass(frozen=True)
class ComputedBound:
    value: int
    contributions: tuple = ()      # (path, kernel letter, GuardedInt)


def _require_hyperbolic_type(tree):
    if not isinstance(classify(tree), HyperbolicType):
        raise PreconditionError("operation needs a knot of hyperbolic type")


def _check_with_geometry(tree, db):
    """Structural check, then key resolution, then full consistency check.

    Unresolved keys surface as MissingGeometryError rather than as tree
    violations, so callers can tell the two failure modes apart.
    """
    check_valid(tree)
    for _path, node in iter_nodes(tree):
        if isinstance(node, HyperbolicNode):
            resolve_geometry(node, db)
    check_valid(tree, db)


def _hyperbolic_pieces(tree, db):
    out = []
    for path, node in iter_nodes(tree):
        if isinstance(node, HyperbolicNode):
            out.append((path, resolve_geometry(node, db)))
    return out


def compute_Q(tree, db):
    """Outermost-piece threshold: max(34, q kernel) if that piece is hyperbolic.

    For a cable the relevant piece is the companion's outermost piece,
    one cable layer down; an iterated cable therefore scores 0.
    """
    _require_hyperbolic_type(tree)
    if isinstance(tree, CableNode):
        y_path, y_node = (0,), tree.child
    else:
        y_path, y_node = (), tree
    if isinstance(y_node, HyperbolicNode):
        fr = q_frak(resolve_geometry(y_node, db))
        return ComputedBound(max(Q_FLOOR, fr.value), ((y_path, "q", fr),))
    return ComputedBound(0, ())


def compute_R(tree, db):
    """Largest r kernel over every hyperbolic piece of the tree."""
    _require_hyperbolic_type(tree)
    contribs = []
    for path, g in _hyperbolic_pieces(tree, db):
        contribs.append((path, "r", r_frak(g)))
    return ComputedBound(max(c[2].value for c in contribs), tuple(contribs))


def compute_S(tree, db):
    """Max of 25 and the s kernels of the non-outermost hyperbolic pieces."""
    _require_hyperbolic_type(tree)
    contribs = []
    for path, g in _hyperbolic_pieces(tree, db):
        if path == ():
            continue      # the outermost piece carries the knot boundary
        contribs.append((path, "s", s_frak(g)))
    value = max([S_FLOOR, *(c[2].value for c in contribs)])
    return ComputedBound(value, tuple(contribs))


def _merge_contributions(*computed):
    rows = {}
    warnings = []
    for comp in computed:
        for path, kernel, fr in comp.contributions:
            rows.setdefault(path, {})[kernel] = fr.value
            if fr.boundary_warning:
                warnings.append(
                    "%s kernel at piece %s rounded up at an integer boundary"
                    % (kernel, list(path)))
    pieces = tuple(PieceContribution(path, q=vals.get("q"), r=vals.get("r"),
                                     s=vals.get("s"))
                   for path, vals in sorted(rows.items()))
    return pieces, tuple(warnings)


# -- the dispatcher ---------------------------------------------------------------

def bound(tree, db=None):
    """Denominator bound report for any valid tree.

    Unknot 0; composite 1; graph-type prime knots by the closed cable
    formulas; hyperbolic type by max(Q, R, S) with per-piece detail.
    """
    check_valid(tree)
    kind = classify(tree)
    if isinstance(kind, Unknot):
        return BoundReport("Unknot", C=0)
    if isinstance(kind, Composite):
        return BoundReport("Composite", C=1)
    if isinstance(kind, GraphPrime):
        return _graph_prime_report(kind)
    _check_with_geometry(tree, db)
    q = compute_Q(tree, db)
    r = compute_R(tree, db)
    s = compute_S(tree, db)
    pieces, warnings = _merge_contributions(q, r, s)
    return BoundReport("HyperbolicType",
                       C=max(q.value, r.value, s.value),
                       Q=q.value, R=r.value, S=s.value,
                       per_piece=pieces, warnings=warnings)


def _graph_prime_report(kind):
    # cables are stored outermost first; the closed formulas are indexed
    # from the innermost cable, the one adjacent to the core
    n = len(kind.cables)
    core = kind.core
    if isinstance(core, TorusLeaf):
        a, b = abs(core.a), abs(core.b)
        if n == 0:
            c = max(8, a, b)
        else:
            r1, s1 = kind.cables[-1]
            if n == 1:
                c = max(8, abs(s1), abs(r1) + a, abs(r1) + b)
            else:
                c = max(abs(r1) + a, abs(r1) + b)
    else:
        c = 2     # iterated cable over a composite core
    return BoundReport("GraphPrime", C=c)


# -- refined winding-zero bound ----------------------------------------------------

def _check_annotations(tree, db, annotations):
    tori = {t.path for t in iter_tori(tree)}
    covered = set()
    contributions = []
    for ann in annotations:
        path = ann.torus.path
        if path not in tori:
            raise AnnotationError("annotation addresses no torus at %s" % (list(path),))
        if cumulative_winding(tree, path, db) != 0:
            raise AnnotationError(
                "annotation at %s sits on a torus of nonzero winding" % (list(path),))
        contributions.append(_twist_contribution(ann.evidence))
        covered.add(path)
    return tori, covered, contributions


def refined_bound(tree, db, annotations, complete=False):
    """Winding-zero refinement: C = max(Q, T) from splice annotations.

    Every satellite description of the knot must have a winding-zero
    pattern, every torus must carry an annotation, and the caller must
    assert coverage with ``complete=True``; anything less is an error
    rather than a silently unsound bound.
    """
    _check_with_geometry(tree, db)
    if not all_winding_zero(tree, db):
        raise WindingError(
            "refined bound needs winding number zero across every torus")
    tori, covered, contributions = _check_annotations(tree, db, annotations)
    if not complete:
        raise AnnotationError(
            "annotation coverage must be asserted with complete=True")
    missing = tori - covered
    if missing:
        raise AnnotationError(
            "tori without annotations: %s"
            % ", ".join(str(list(p)) for p in sorted(missing)))
    t_value = max([0, *contributions])
    q = compute_Q(tree, db)
    pieces, warnings = _merge_contributions(q)
    return BoundReport("Refined",
                       C=max(q.value, t_value),
                       Q=q.value, T=t_value,
                       per_piece=pieces, warnings=warnings)


def noncharacterising_witnesses(tree, db, annotations):
    """Candidate non-characterising slopes 1/t from twist annotations."""
    _check_with_geometry(tree, db)
    if not all_winding_zero(tree, db):
        raise WindingError(
            "witness slopes need winding number zero across every torus")
    _check_annotations(tree, db, annotations)
    out = []
    for ann in annotations:
        ev = ann.evidence
        if isinstance(ev, TwistCoefficient) and ev.t >= 1:
            out.append(Slope(1, ev.t))
    return out


# -- surgered-manifold JSJ prediction -----------------------------------------------

def surgery_jsj(tree, slope):
    """Predicted JSJ form of the surgered manifold for |q| > 2.

    The filling descends into the companion piece exactly when the root
    is a cable with |s| >= 2 and |p - q*r*s| = 1; the slope is then
    divided by s^2 and stays reduced.
    """
    check_valid(tree)
    if isinstance(tree, UnknotLeaf):
        raise PreconditionError("surgery prediction needs a non-trivial knot")
    if slope.q <= 2:
        raise PreconditionError("surgery prediction needs |q| > 2")
    if (isinstance(tree, CableNode) and abs(tree.s) >= 2
            and abs(slope.p - slope.q * tree.r * tree.s) == 1):
        t = abs(tree.s)
        return SurgeryJsjResult("II", (0,),
                                Slope.normalized(slope.p, slope.q * t * t), t)
    return SurgeryJsjResult("I", (), slope, 1)


# -- small helpers -------------------------------------------------------------------

def sd_lower_bound(sigma):
    """Lower bound ceil(|sigma| / 2) for the surgery description number."""
    return (abs(sigma) + 1) // 2


def q_leq_s_check(tree, db):
    """Systole threshold below which the S term dominates the Q term.

    Returns the threshold and whether every non-outermost hyperbolic
    piece sits below it; when that holds, Q <= S is verified outright.
    """
    _require_hyperbolic_type(tree)
    q = compute_Q(tree, db)
    denom = q.value * q.value - LEMMA58_OFF * math.sqrt(3.0)
    if denom <= 0:
        raise PreconditionError(
            "threshold needs Q^2 > %.2f*sqrt(3), got Q=%d" % (LEMMA58_OFF, q.value))
    threshold = LEMMA58_NUM / denom
    non_root = [g for path, g in _hyperbolic_pieces(tree, db) if path != ()]
    holds = all(g.systole <= threshold for g in non_root)
    # the conclusion Q <= S needs the hypothesis to bite at least once;
    # with no non-root hyperbolic piece S floors at 25 below Q
    if holds and non_root:
        s = compute_S(tree, db)
        if q.value > s.value:
            raise AssertionError(
                "threshold held but Q=%d exceeds S=%d" % (q.value, s.value))
    return QLeqSResult(threshold=threshold, holds=holds)
