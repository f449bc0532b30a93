"""Recursive satellite-tree model of a knot exterior's JSJ decomposition.

A tree node stands for one JSJ piece; the edge above a node is the JSJ
torus along which the piece is spliced into its parent.  Nodes are
immutable values, so trees can be shared freely and all operations here
are pure functions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

from .errors import MissingGeometryError, ValidationError
from .geometry import HyperbolicGeometry

__all__ = [
    "UnknotLeaf",
    "TorusLeaf",
    "CableNode",
    "ComposingNode",
    "HyperbolicNode",
    "SatelliteTree",
    "TorusId",
    "Violation",
    "Unknot",
    "Composite",
    "GraphPrime",
    "HyperbolicType",
    "KnotClass",
    "children_of",
    "node_at",
    "iter_nodes",
    "iter_tori",
    "resolve_geometry",
    "validate",
    "check_valid",
    "edge_winding",
    "cumulative_winding",
    "all_winding_zero",
    "classify",
]


# -- node types ---------------------------------------------------------------

@dataclass(frozen=True)
class UnknotLeaf:
    """The trivial knot; only legal as an entire tree."""


@dataclass(frozen=True)
class TorusLeaf:
    """Torus-knot exterior piece with cone orders |a| and |b|."""

    a: int
    b: int


@dataclass(frozen=True)
class CableNode:
    """Cable-space piece; the pattern has winding number s."""

    r: int
    s: int
    child: "SatelliteTree"


@dataclass(frozen=True)
class ComposingNode:
    """Composing-space piece realising the connected sum of its children."""

    children: tuple

    def __post_init__(self):
        object.__setattr__(self, "children", tuple(self.children))


@dataclass(frozen=True)
class HyperbolicNode:
    """Hyperbolic piece; child i is spliced along link component i+1.

    ``geometry`` is either a name to be resolved in a database or an
    inline ``HyperbolicGeometry`` record.
    """

    geometry: Union[str, HyperbolicGeometry]
    children: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "children", tuple(self.children))


SatelliteTree = Union[UnknotLeaf, TorusLeaf, CableNode, ComposingNode, HyperbolicNode]


@dataclass(frozen=True)
class TorusId:
    """Addresses the JSJ torus above the subtree reached by ``path``."""

    path: tuple

    def __post_init__(self):
        object.__setattr__(self, "path", tuple(self.path))


@dataclass(frozen=True)
class Violation:
    path: tuple
    message: str

    def __str__(self):
        return "at %s: %s" % (list(self.path), self.message)


# -- classification results ---------------------------------------------------

@dataclass(frozen=True)
class Unknot:
    pass


@dataclass(frozen=True)
class Composite:
    pass


@dataclass(frozen=True)
class GraphPrime:
    """Iterated cable over a torus-knot or composite core, no hyperbolic piece.

    ``cables`` lists (r, s) pairs outermost first; empty for a bare core.
    """

    cables: tuple
    core: SatelliteTree

    def __post_init__(self):
        object.__setattr__(self, "cables", tuple(tuple(c) for c in self.cables))


@dataclass(frozen=True)
class HyperbolicType:
    pass


KnotClass = Union[Unknot, Composite, GraphPrime, HyperbolicType]


# -- traversal ----------------------------------------------------------------

def children_of(node):
    if isinstance(node, CableNode):
        return (node.child,)
    if isinstance(node, (ComposingNode, HyperbolicNode)):
        return node.children
    return ()


def iter_nodes(tree):
    """Yield (path, node) pairs in preorder; the root has path ()."""
    stack = [((), tree)]
    while stack:
        path, node = stack.pop()
        yield path, node
        kids = children_of(node)
        for i in range(len(kids) - 1, -1, -1):
            stack.append((path + (i,), kids[i]))


def iter_tori(tree):
    """Yield the TorusId of every JSJ torus (one per non-root node)."""
    for path, _node in iter_nodes(tree):
        if path:
            yield TorusId(path)


def node_at(tree, path):
    node = tree
    for i in path:
        kids = children_of(node)
        if not 0 <= i < len(kids):
            raise ValueError("no node at path %s" % (list(path),))
        node = kids[i]
    return node


def _torus_path(torus):
    if isinstance(torus, TorusId):
        return torus.path
    return tuple(torus)


def resolve_geometry(node, db=None):
    """Geometry record of a hyperbolic node, resolving named keys in ``db``."""
    if isinstance(node.geometry, HyperbolicGeometry):
        return node.geometry
    if db is None:
        raise MissingGeometryError(
            "geometry key %r needs a database to resolve" % node.geometry)
    return db.get(node.geometry)


# -- validation ---------------------------------------------------------------

def validate(tree, db=None):
    """Collect invariant violations; an empty report means the tree is valid.

    Structural rules are always checked.  Geometry-dependent rules (child
    count versus link components, record consistency) are checked for
    inline geometry always, and for named keys only when ``db`` is given.
    """
    out = []
    for path, node in iter_nodes(tree):
        if isinstance(node, UnknotLeaf):
            if path:
                out.append(Violation(path, "unknot leaf below the root"))
        elif isinstance(node, TorusLeaf):
            if abs(node.a) < 2 or abs(node.b) < 2:
                out.append(Violation(path, "torus parameters need |a|, |b| >= 2"))
            if math.gcd(abs(node.a), abs(node.b)) != 1:
                out.append(Violation(path, "gcd(a,b) != 1"))
        elif isinstance(node, CableNode):
            if abs(node.s) < 2:
                out.append(Violation(path, "cable winding needs |s| >= 2"))
            if isinstance(node.child, UnknotLeaf):
                out.append(Violation(path, "cable companion trivial"))
        elif isinstance(node, ComposingNode):
            if len(node.children) < 2:
                out.append(Violation(path, "composing node needs at least two factors"))
            for i, kid in enumerate(node.children):
                if isinstance(kid, UnknotLeaf):
                    out.append(Violation(path + (i,), "composite factor trivial"))
        elif isinstance(node, HyperbolicNode):
            for i, kid in enumerate(node.children):
                if isinstance(kid, UnknotLeaf):
                    out.append(Violation(path + (i,), "satellite companion trivial"))
            geometry = None
            if isinstance(node.geometry, HyperbolicGeometry):
                geometry = node.geometry
                for problem in geometry.problems():
                    out.append(Violation(path, problem))
            elif db is not None:
                if node.geometry in db:
                    geometry = db.get(node.geometry)
                else:
                    out.append(Violation(path, "unknown geometry key %r" % node.geometry))
            if geometry is not None and isinstance(geometry.components, int):
                if geometry.components - 1 != len(node.children):
                    out.append(Violation(
                        path,
                        "geometry has %d components but node has %d children"
                        % (geometry.components, len(node.children))))
        else:
            out.append(Violation(path, "unknown node type %r" % type(node).__name__))
    return out


def check_valid(tree, db=None):
    violations = validate(tree, db)
    if violations:
        raise ValidationError(violations)


# -- winding numbers ----------------------------------------------------------

def edge_winding(tree, torus, db=None):
    """Winding number of the pattern across one JSJ torus.

    |s| below a cable node, 1 below a composing node, and the stored
    |lk(L_0, L_i)| below a hyperbolic node.
    """
    path = _torus_path(torus)
    if not path:
        raise ValueError("a torus path must have at least one index")
    parent = node_at(tree, path[:-1])
    index = path[-1]
    kids = children_of(parent)
    if not 0 <= index < len(kids):
        raise ValueError("no edge at path %s" % (list(path),))
    if isinstance(parent, CableNode):
        return abs(parent.s)
    if isinstance(parent, ComposingNode):
        return 1
    geometry = resolve_geometry(parent, db)
    if geometry.linking_numbers is None:
        raise MissingGeometryError(
            "linking numbers unknown for %s" % (geometry.name or "inline geometry"))
    if index >= len(geometry.linking_numbers):
        raise MissingGeometryError(
            "no linking number stored for child %d of %s"
            % (index, geometry.name or "inline geometry"))
    return abs(geometry.linking_numbers[index])


def cumulative_winding(tree, torus, db=None):
    """Product of edge windings along the path from the root to ``torus``."""
    path = _torus_path(torus)
    if not path:
        raise ValueError("a torus path must have at least one index")
    total = 1
    for k in range(1, len(path) + 1):
        total *= edge_winding(tree, path[:k], db)
        if total == 0:
            return 0
    return total


def all_winding_zero(tree, db=None):
    """True when every JSJ torus of the tree has cumulative winding zero."""
    check_valid(tree)
    return all(cumulative_winding(tree, t, db) == 0 for t in iter_tori(tree))


# -- classification -----------------------------------------------------------

def _contains_hyperbolic(tree):
    return any(isinstance(n, HyperbolicNode) for _p, n in iter_nodes(tree))


def classify(tree):
    """Top-level class of a valid tree: unknot, composite, graph or hyperbolic.

    Graph-type trees are returned with the root cable chain peeled off
    (outermost first) and the residual torus-knot or composing core.
    """
    check_valid(tree)
    if isinstance(tree, UnknotLeaf):
        return Unknot()
    if isinstance(tree, ComposingNode):
        return Composite()
    if _contains_hyperbolic(tree):
        return HyperbolicType()
    cables = []
    core = tree
    while isinstance(core, CableNode):
        cables.append((core.r, core.s))
        core = core.child
    return GraphPrime(tuple(cables), core)
